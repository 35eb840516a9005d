#pragma once

// Divisor and curve classes of a complete simplicial toric variety, and the
// nef, pseudo-effective and Mori cones in fixed rational coordinates.
//
// Coordinates. Let R be the m x n ray matrix and Q the rho x m matrix whose
// rows are the Hermite-normal-form lattice basis of {c : c R = 0}. A divisor
// sum_i d_i D_i has N^1 coordinates Q d; its kernel is exactly the image of
// M -> Z^m. A curve class, given as a relation c with c R = 0, has N_1
// coordinates t with c = Q^T t. The intersection pairing is then the plain
// dot product: c . d = t . (Q d).

#include <cstddef>
#include <optional>
#include <vector>

#include "toricnef/cone_engine.hpp"
#include "toricnef/exact_linalg.hpp"
#include "toricnef/fan_model.hpp"

namespace toricnef {

/// Divisor with its integral coefficients over the invariant prime divisors
/// and its class in N^1.
struct DivisorClass {
  RatVector coefficients;  // length m
  RatVector coordinates;   // length rho
};

/// Curve class given by a relation among the rays.
struct CurveClass {
  RatVector relation;     // length m, relation . R = 0
  RatVector coordinates;  // length rho
};

class DivisorClassSpace {
 public:
  explicit DivisorClassSpace(const Fan& f) : dim_(f.dim), ray_matrix_(f.ray_matrix()) {
    if (!is_simplicial(f) || !is_complete(f))
      throw PreconditionError("divisor classes need a complete simplicial fan");
    projection_ = integer_kernel(ray_matrix_);
    if (projection_.rows() + dim_ != ray_matrix_.rows())
      throw PreconditionError("rays of a complete fan must span the lattice");
  }

  std::size_t ray_count() const { return ray_matrix_.rows(); }
  std::size_t picard_rank() const { return projection_.rows(); }
  const IntMatrix& projection() const { return projection_; }
  const IntMatrix& ray_matrix() const { return ray_matrix_; }

  RatVector divisor_coordinates(const RatVector& coefficients) const {
    if (coefficients.size() != ray_count()) throw PreconditionError("divisor needs one coefficient per ray");
    RatVector y(picard_rank());
    for (std::size_t r = 0; r < picard_rank(); ++r)
      for (std::size_t i = 0; i < ray_count(); ++i) y[r] += projection_(r, i) * coefficients[i];
    return y;
  }

  DivisorClass divisor(const RatVector& coefficients) const {
    return {coefficients, divisor_coordinates(coefficients)};
  }

  DivisorClass divisor(const IntVector& coefficients) const { return divisor(to_rational(coefficients)); }

  /// Class of the prime invariant divisor D_i.
  DivisorClass prime_divisor(std::size_t i) const {
    RatVector e(ray_count());
    e.at(i) = 1;
    return divisor(e);
  }

  /// A divisor (integral coefficients) whose class is a positive multiple of
  /// the given N^1 coordinates.
  DivisorClass divisor_with_class(const RatVector& coordinates) const {
    auto d = solve(to_rational(projection_), coordinates);
    if (!d) throw PreconditionError("divisor_with_class: coordinates outside N^1");
    return divisor(to_rational(primitive_scaling(*d)));
  }

  RatVector curve_coordinates(const RatVector& relation) const {
    if (relation.size() != ray_count()) throw PreconditionError("relation needs one coefficient per ray");
    for (std::size_t j = 0; j < dim_; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < ray_count(); ++i) s += relation[i] * ray_matrix_(i, j);
      if (s != 0) throw PreconditionError("relation is not orthogonal to the rays");
    }
    auto t = solve(to_rational(projection_.transposed()), relation);
    if (!t) throw PreconditionError("relation outside the span of the relation lattice");
    return *t;
  }

  CurveClass curve(const RatVector& relation) const { return {relation, curve_coordinates(relation)}; }
  CurveClass curve(const IntVector& relation) const { return curve(to_rational(relation)); }

  /// Intersection number of a curve class with a divisor class.
  static Rational pairing(const CurveClass& c, const DivisorClass& d) { return dot(c.coordinates, d.coordinates); }

 private:
  std::size_t dim_;
  IntMatrix ray_matrix_;
  IntMatrix projection_;
};

inline DivisorClassSpace class_space(const Fan& f) { return DivisorClassSpace(f); }

/// Everything needed to answer nefness and bigness questions for one fan,
/// computed once: walls, the class space and the three cones.
class DivisorCones {
 public:
  explicit DivisorCones(const Fan& f)
      : space_(f), walls_(walls(f)) {
    std::vector<RatVector> curves;
    for (const auto& w : walls_) curves.push_back(space_.curve_coordinates(to_rational(w.relation)));
    mori_ = RationalCone::from_generators(space_.picard_rank(), curves);
    nef_ = mori_.dual();
    std::vector<RatVector> primes;
    for (std::size_t i = 0; i < space_.ray_count(); ++i) primes.push_back(space_.prime_divisor(i).coordinates);
    pseudo_effective_ = RationalCone::from_generators(space_.picard_rank(), primes);
  }

  const DivisorClassSpace& space() const { return space_; }
  const std::vector<Wall>& wall_list() const { return walls_; }
  std::size_t picard_rank() const { return space_.picard_rank(); }

  /// Generated by the wall curve classes.
  const RationalCone& mori_cone() const { return mori_; }
  /// Dual of the Mori cone.
  const RationalCone& nef_cone() const { return nef_; }
  /// Generated by the invariant prime divisors; full dimensional.
  const RationalCone& pseudo_effective_cone() const { return pseudo_effective_; }

  bool is_nef(const DivisorClass& d) const { return nef_.contains(d.coordinates); }
  bool is_big(const DivisorClass& d) const {
    return pseudo_effective_.membership(d.coordinates) == Membership::interior;
  }

  /// Kleiman: an ample class exists iff the nef cone has full dimension.
  bool is_projective() const { return nef_.dim() == picard_rank(); }

  /// Membership of each extremal ray of the nef cone in the pseudo-effective cone.
  std::vector<Membership> nef_ray_verdicts() const {
    std::vector<Membership> out;
    for (const auto& r : nef_.extremal_rays()) out.push_back(pseudo_effective_.membership(r));
    return out;
  }

  /// Whether the boundaries of Nef and PE meet only at the origin, i.e. every
  /// nonzero nef class is big. It suffices to test the extremal rays of Nef:
  /// a nonzero nef class is a nonnegative combination of them with some
  /// positive coefficient, and adding a class of PE to an interior point of PE
  /// stays interior, so if all extremal rays are big every nonzero nef class is.
  /// The converse is immediate.
  bool boundary_meets_only_at_zero() const { return !nontrivial_nonbig_nef().has_value(); }

  /// An extremal nef ray on the boundary of PE, as a divisor, if one exists.
  std::optional<DivisorClass> nontrivial_nonbig_nef() const {
    for (const auto& r : nef_.extremal_rays())
      if (pseudo_effective_.membership(r) != Membership::interior)
        return space_.divisor_with_class(to_rational(r));
    return std::nullopt;
  }

  bool nef_equals_pe() const { return nef_ == pseudo_effective_; }

 private:
  DivisorClassSpace space_;
  std::vector<Wall> walls_;
  RationalCone mori_;
  RationalCone nef_;
  RationalCone pseudo_effective_;
};

inline RationalCone mori_cone(const Fan& f) { return DivisorCones(f).mori_cone(); }
inline RationalCone nef_cone(const Fan& f) { return DivisorCones(f).nef_cone(); }
inline RationalCone pseudo_effective_cone(const Fan& f) { return DivisorCones(f).pseudo_effective_cone(); }
inline bool is_projective(const Fan& f) { return DivisorCones(f).is_projective(); }
inline bool boundary_meets_only_at_zero(const Fan& f) { return DivisorCones(f).boundary_meets_only_at_zero(); }
inline bool nef_equals_pe(const Fan& f) { return DivisorCones(f).nef_equals_pe(); }
inline std::optional<DivisorClass> has_nontrivial_nonbig_nef(const Fan& f) {
  return DivisorCones(f).nontrivial_nonbig_nef();
}
inline bool is_big(const Fan& f, const DivisorClass& d) { return DivisorCones(f).is_big(d); }
inline bool is_nef(const Fan& f, const DivisorClass& d) { return DivisorCones(f).is_nef(d); }

}  // namespace toricnef
