#pragma once

// Rational polyhedral cones with both descriptions held in canonical form.
//
// A cone C in Q^d is stored as
//   rays       extremal rays of C modulo its lineality space, each projected
//              orthogonally onto the complement of the lineality space;
//   lineality  a basis of the largest linear subspace inside C;
//   facets     inner facet normals, each projected onto span(C);
//   equations  a basis of span(C)^perp.
// Rays and facets are scaled by positive factors to coprime integers and
// sorted lexicographically; subspace bases are the primitive rows of a
// reduced echelon form. Two cones are equal iff their canonical data match,
// and the dual cone is obtained by swapping rays<->facets and
// lineality<->equations.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "toricnef/exact_linalg.hpp"

namespace toricnef {

enum class Membership { outside, boundary, interior };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::outside:
      return "outside";
    case Membership::boundary:
      return "boundary";
    case Membership::interior:
      return "interior";
  }
  return "?";
}

namespace detail {

using Bits = boost::dynamic_bitset<>;

struct DdRay {
  IntVector coords;
  Bits tight;  // processed inequality rows vanishing on this ray
};

/// Extreme rays of {y in Q^r : a . y >= 0 for every row a}. The rows must
/// span Q^r, so the cone is pointed. Rows are inserted in index order.
inline std::vector<IntVector> double_description(const std::vector<IntVector>& rows, std::size_t r) {
  if (r == 0) return {};
  const std::size_t k = rows.size();

  // Initial simplicial cone from the lexicographically first independent rows.
  std::vector<std::size_t> basis_rows;
  {
    std::vector<RatVector> chosen;
    for (std::size_t i = 0; i < k && basis_rows.size() < r; ++i) {
      chosen.push_back(to_rational(rows[i]));
      if (rank(chosen, r) == chosen.size())
        basis_rows.push_back(i);
      else
        chosen.pop_back();
    }
  }
  if (basis_rows.size() != r) throw PreconditionError("double_description: inequality rows do not span");

  RatMatrix b(r, r);
  for (std::size_t l = 0; l < r; ++l)
    for (std::size_t j = 0; j < r; ++j) b(l, j) = rows[basis_rows[l]][j];

  std::vector<DdRay> rays;
  for (std::size_t j = 0; j < r; ++j) {
    RatVector unit(r);
    unit[j] = 1;
    auto col = solve(b, unit);  // b * col = e_j
    DdRay ray{primitive_scaling(*col), Bits(k)};
    for (std::size_t l = 0; l < r; ++l)
      if (l != j) ray.tight.set(basis_rows[l]);
    rays.push_back(std::move(ray));
  }

  Bits processed(k);
  for (auto i : basis_rows) processed.set(i);

  for (std::size_t i = 0; i < k; ++i) {
    if (processed.test(i)) continue;
    processed.set(i);
    const auto& a = rows[i];
    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<DdRay> next;
    for (std::size_t q = 0; q < rays.size(); ++q) {
      value[q] = dot(a, rays[q].coords);
      if (value[q] > 0)
        pos.push_back(q);
      else if (value[q] < 0)
        neg.push_back(q);
    }
    for (std::size_t q = 0; q < rays.size(); ++q) {
      if (value[q] < 0) continue;
      DdRay kept = rays[q];
      if (value[q] == 0) kept.tight.set(i);
      next.push_back(std::move(kept));
    }
    for (auto p : pos)
      for (auto n : neg) {
        Bits common = rays[p].tight & rays[n].tight;
        if (common.count() + 2 < r) continue;
        bool adjacent = true;
        for (std::size_t q = 0; q < rays.size() && adjacent; ++q)
          if (q != p && q != n && common.is_subset_of(rays[q].tight)) adjacent = false;
        if (!adjacent) continue;
        IntVector coords(r);
        for (std::size_t j = 0; j < r; ++j) coords[j] = value[p] * rays[n].coords[j] - value[n] * rays[p].coords[j];
        common.set(i);
        next.push_back({primitive_part(coords), std::move(common)});
      }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.coords));
  std::sort(out.begin(), out.end());
  return out;
}

/// Primitive rows of the reduced echelon form of span(vectors).
inline std::vector<IntVector> canonical_subspace_basis(const std::vector<RatVector>& vectors, std::size_t d) {
  if (vectors.empty()) return {};
  auto [red, pivots] = rref(rows_to_matrix(vectors, d));
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i) basis.push_back(primitive_scaling(red.row_vector(i)));
  return basis;
}

/// Orthogonal projection of x onto span(basis) (basis linearly independent).
inline RatVector project_onto(const std::vector<RatVector>& basis, const RatVector& x) {
  const std::size_t b = basis.size();
  if (b == 0) return RatVector(x.size());
  RatMatrix gram(b, b);
  RatVector rhs(b);
  for (std::size_t i = 0; i < b; ++i) {
    rhs[i] = dot(basis[i], x);
    for (std::size_t j = 0; j < b; ++j) gram(i, j) = dot(basis[i], basis[j]);
  }
  auto c = solve(gram, rhs);
  RatVector out(x.size());
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[j] += (*c)[i] * basis[i][j];
  return out;
}

inline std::vector<RatVector> to_rational(const std::vector<IntVector>& vs) {
  std::vector<RatVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(toricnef::to_rational(v));
  return out;
}

}  // namespace detail

class RationalCone {
 public:
  /// The zero cone in Q^0.
  RationalCone() = default;

  /// Conical hull of `generators` in Q^ambient_dim. An empty list gives the zero cone.
  static RationalCone from_generators(std::size_t ambient_dim, const std::vector<RatVector>& generators) {
    std::vector<IntVector> gens;
    for (const auto& g : generators) {
      if (g.size() != ambient_dim) throw PreconditionError("cone generator has wrong ambient dimension");
      IntVector s = primitive_scaling(g);
      if (!is_zero(s)) gens.push_back(std::move(s));
    }
    return build(ambient_dim, gens);
  }

  static RationalCone from_generators(std::size_t ambient_dim, const std::vector<IntVector>& generators) {
    return from_generators(ambient_dim, detail::to_rational(generators));
  }

  /// {x : a . x >= 0 for a in inequalities, e . x = 0 for e in equations}.
  static RationalCone from_inequalities(std::size_t ambient_dim, const std::vector<RatVector>& inequalities,
                                        const std::vector<RatVector>& equations = {}) {
    std::vector<RatVector> gens = inequalities;
    for (const auto& e : equations) {
      gens.push_back(e);
      RatVector neg = e;
      for (auto& x : neg) x = -x;
      gens.push_back(std::move(neg));
    }
    return from_generators(ambient_dim, gens).dual();
  }

  RationalCone dual() const {
    RationalCone d;
    d.ambient_dim_ = ambient_dim_;
    d.rays_ = facets_;
    d.facets_ = rays_;
    d.lineality_ = equations_;
    d.equations_ = lineality_;
    return d;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return ambient_dim_ - equations_.size(); }
  bool is_full_dimensional() const { return equations_.empty(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_zero_cone() const { return rays_.empty() && lineality_.empty(); }

  const std::vector<IntVector>& extremal_rays() const { return rays_; }
  const std::vector<IntVector>& facets() const { return facets_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  const std::vector<IntVector>& equations() const { return equations_; }

  /// A generating set: extremal rays plus +/- each lineality basis vector.
  std::vector<IntVector> generators() const {
    std::vector<IntVector> out = rays_;
    for (const auto& l : lineality_) {
      out.push_back(l);
      IntVector neg = l;
      for (auto& x : neg) x = -x;
      out.push_back(std::move(neg));
    }
    return out;
  }

  /// Position of x relative to the cone. For cones that are not full
  /// dimensional, points off the linear span are outside and "interior"
  /// means the relative interior.
  Membership membership(const RatVector& x) const {
    if (x.size() != ambient_dim_) throw PreconditionError("membership: ambient dimension mismatch");
    for (const auto& e : equations_)
      if (dot(toricnef::to_rational(e), x) != 0) return Membership::outside;
    bool strict = true;
    for (const auto& f : facets_) {
      Rational v = dot(toricnef::to_rational(f), x);
      if (v < 0) return Membership::outside;
      if (v == 0) strict = false;
    }
    return strict ? Membership::interior : Membership::boundary;
  }

  Membership membership(const IntVector& x) const { return membership(toricnef::to_rational(x)); }

  bool contains(const RatVector& x) const { return membership(x) != Membership::outside; }
  bool contains(const IntVector& x) const { return membership(x) != Membership::outside; }

  /// True when every generator of `other` lies in this cone.
  bool contains(const RationalCone& other) const {
    for (const auto& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  friend bool operator==(const RationalCone&, const RationalCone&) = default;

 private:
  static RationalCone build(std::size_t d, const std::vector<IntVector>& gens) {
    RationalCone c;
    c.ambient_dim_ = d;
    if (gens.empty()) {
      std::vector<RatVector> unit;
      for (std::size_t i = 0; i < d; ++i) {
        RatVector e(d);
        e[i] = 1;
        unit.push_back(std::move(e));
      }
      c.equations_ = detail::canonical_subspace_basis(unit, d);
      return c;
    }

    const auto rat_gens = detail::to_rational(gens);
    auto [span_red, pivots] = rref(rows_to_matrix(rat_gens, d));
    const std::size_t r = pivots.size();
    std::vector<RatVector> span_basis;
    for (std::size_t i = 0; i < r; ++i) span_basis.push_back(span_red.row_vector(i));

    c.equations_ = detail::canonical_subspace_basis(rational_kernel(rows_to_matrix(rat_gens, d)), d);

    // Work in the coordinates given by the pivot columns, where span(C) is
    // all of Q^r and the dual cone is pointed.
    std::vector<IntVector> restricted;
    for (const auto& g : gens) {
      IntVector y(r);
      for (std::size_t j = 0; j < r; ++j) y[j] = g[pivots[j]];
      restricted.push_back(std::move(y));
    }
    const auto dual_rays = detail::double_description(restricted, r);

    for (const auto& y : dual_rays) {
      RatVector lifted(d);
      for (std::size_t j = 0; j < r; ++j) lifted[pivots[j]] = y[j];
      c.facets_.push_back(primitive_scaling(detail::project_onto(span_basis, lifted)));
    }
    std::sort(c.facets_.begin(), c.facets_.end());

    // Lineality: points of span(C) on which every facet vanishes.
    std::vector<RatVector> lineality;
    {
      std::vector<RatVector> z_basis;
      if (dual_rays.empty()) {
        for (std::size_t j = 0; j < r; ++j) {
          RatVector e(r);
          e[j] = 1;
          z_basis.push_back(std::move(e));
        }
      } else {
        z_basis = rational_kernel(rows_to_matrix(detail::to_rational(dual_rays), r));
      }
      for (const auto& z : z_basis) {
        RatVector x(d);
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t t = 0; t < d; ++t) x[t] += z[j] * span_basis[j][t];
        lineality.push_back(std::move(x));
      }
    }
    c.lineality_ = detail::canonical_subspace_basis(lineality, d);
    const auto lineality_basis = detail::to_rational(c.lineality_);

    const auto dual_rat = detail::to_rational(dual_rays);
    const std::size_t facet_rank = dual_rays.empty() ? 0 : rank(dual_rat, r);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      std::vector<RatVector> tight;
      bool in_lineality = true;
      for (const auto& y : dual_rays) {
        if (dot(y, restricted[gi]) == 0)
          tight.push_back(toricnef::to_rational(y));
        else
          in_lineality = false;
      }
      if (in_lineality) continue;
      if (rank(tight, r) + 1 != facet_rank) continue;
      RatVector g = rat_gens[gi];
      RatVector along = detail::project_onto(lineality_basis, g);
      for (std::size_t t = 0; t < d; ++t) g[t] -= along[t];
      IntVector ray = primitive_scaling(g);
      if (std::find(c.rays_.begin(), c.rays_.end(), ray) == c.rays_.end()) c.rays_.push_back(std::move(ray));
    }
    std::sort(c.rays_.begin(), c.rays_.end());
    return c;
  }

  std::size_t ambient_dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> equations_;
};

inline RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw PreconditionError("intersect: ambient dimension mismatch");
  std::vector<RatVector> ineqs, eqs;
  for (const auto& f : a.facets()) ineqs.push_back(to_rational(f));
  for (const auto& f : b.facets()) ineqs.push_back(to_rational(f));
  for (const auto& e : a.equations()) eqs.push_back(to_rational(e));
  for (const auto& e : b.equations()) eqs.push_back(to_rational(e));
  return RationalCone::from_inequalities(a.ambient_dim(), ineqs, eqs);
}

}  // namespace toricnef
