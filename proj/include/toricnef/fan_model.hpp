#pragma once

// Simplicial lattice fans: validation, completeness and smoothness, star
// subdivision, walls with their integer relations, point location,
// star-quotient fans and images under lattice projections.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "toricnef/cone_engine.hpp"
#include "toricnef/exact_linalg.hpp"

namespace toricnef {

/// Sorted indices into a fan's ray list.
using ConeIndices = std::vector<std::size_t>;

/// A fan given by its primitive rays and its maximal cones.
struct Fan {
  std::size_t dim = 0;
  std::vector<LatticeVector> rays;
  std::vector<ConeIndices> max_cones;

  std::size_t ray_count() const { return rays.size(); }

  /// m x n matrix whose i-th row is the i-th ray.
  IntMatrix ray_matrix() const { return IntMatrix::from_rows(rays, dim); }

  std::vector<LatticeVector> cone_rays(const ConeIndices& cone) const {
    std::vector<LatticeVector> out;
    out.reserve(cone.size());
    for (auto i : cone) out.push_back(rays.at(i));
    return out;
  }

  /// True if `cone` is a face of some maximal cone (for simplicial fans, any
  /// subset of a maximal cone's rays).
  bool is_cone(const ConeIndices& cone) const {
    for (const auto& mc : max_cones)
      if (std::includes(mc.begin(), mc.end(), cone.begin(), cone.end())) return true;
    return false;
  }

  friend bool operator==(const Fan&, const Fan&) = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  dimension_mismatch,
  zero_ray,
  non_primitive_ray,
  duplicate_ray,
  malformed_cone,
  non_simplicial_cone,
  bad_intersection,
  orphan_ray,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::dimension_mismatch:
      return "dimension_mismatch";
    case ViolationKind::zero_ray:
      return "zero_ray";
    case ViolationKind::non_primitive_ray:
      return "non_primitive_ray";
    case ViolationKind::duplicate_ray:
      return "duplicate_ray";
    case ViolationKind::malformed_cone:
      return "malformed_cone";
    case ViolationKind::non_simplicial_cone:
      return "non_simplicial_cone";
    case ViolationKind::bad_intersection:
      return "bad_intersection";
    case ViolationKind::orphan_ray:
      return "orphan_ray";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> cones;  // indices into max_cones
  std::vector<std::size_t> rays;   // indices into rays
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
  }
};

inline ValidationReport validate(const Fan& f) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::vector<std::size_t> cones, std::vector<std::size_t> rays, std::string msg) {
    report.violations.push_back({k, std::move(cones), std::move(rays), std::move(msg)});
  };

  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const auto& v = f.rays[i];
    if (v.size() != f.dim) {
      add(ViolationKind::dimension_mismatch, {}, {i}, "ray " + std::to_string(i) + " has wrong dimension");
      continue;
    }
    if (is_zero(v))
      add(ViolationKind::zero_ray, {}, {i}, "ray " + std::to_string(i) + " is zero");
    else if (!is_primitive(v))
      add(ViolationKind::non_primitive_ray, {}, {i}, "ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (f.rays[j] == v)
        add(ViolationKind::duplicate_ray, {}, {j, i},
            "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (!report.ok()) return report;

  std::vector<bool> used(f.rays.size(), false);
  std::vector<bool> usable(f.max_cones.size(), true);
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    bool sorted = std::is_sorted(cone.begin(), cone.end()) &&
                  std::adjacent_find(cone.begin(), cone.end()) == cone.end();
    bool in_range = std::all_of(cone.begin(), cone.end(), [&](std::size_t i) { return i < f.rays.size(); });
    if (!sorted || !in_range || cone.empty()) {
      add(ViolationKind::malformed_cone, {c}, {},
          "cone " + std::to_string(c) + " must list distinct in-range ray indices in ascending order");
      usable[c] = false;
      continue;
    }
    for (auto i : cone) used[i] = true;
    if (rank(IntMatrix::from_rows(f.cone_rays(cone))) != cone.size()) {
      add(ViolationKind::non_simplicial_cone, {c}, {}, "cone " + std::to_string(c) + " has dependent generators");
      usable[c] = false;
    }
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (!used[i]) add(ViolationKind::orphan_ray, {}, {i}, "ray " + std::to_string(i) + " lies in no maximal cone");

  // Simplicial cones meet in a common face iff their intersection is the
  // cone on their shared rays.
  std::vector<RationalCone> cones(f.max_cones.size());
  for (std::size_t c = 0; c < f.max_cones.size(); ++c)
    if (usable[c]) cones[c] = RationalCone::from_generators(f.dim, f.cone_rays(f.max_cones[c]));
  for (std::size_t a = 0; a < f.max_cones.size(); ++a) {
    if (!usable[a]) continue;
    for (std::size_t b = a + 1; b < f.max_cones.size(); ++b) {
      if (!usable[b]) continue;
      const auto& ca = f.max_cones[a];
      const auto& cb = f.max_cones[b];
      if (std::includes(ca.begin(), ca.end(), cb.begin(), cb.end()) ||
          std::includes(cb.begin(), cb.end(), ca.begin(), ca.end())) {
        add(ViolationKind::bad_intersection, {a, b}, {},
            "cones " + std::to_string(a) + " and " + std::to_string(b) + " are nested or repeated");
        continue;
      }
      ConeIndices common;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
      auto face = RationalCone::from_generators(f.dim, f.cone_rays(common));
      if (intersect(cones[a], cones[b]) != face)
        add(ViolationKind::bad_intersection, {a, b}, {},
            "cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
    }
  }
  return report;
}

inline void require_valid(const Fan& f) {
  auto report = validate(f);
  if (!report.ok()) throw PreconditionError("invalid fan: " + report.violations.front().message);
}

// ---------------------------------------------------------------------------
// Global properties

namespace detail {

// Each codimension-one face of a maximal cone, with the maximal cones containing it.
inline std::map<ConeIndices, std::vector<std::size_t>> facet_incidence(const Fan& f) {
  std::map<ConeIndices, std::vector<std::size_t>> incidence;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    for (std::size_t skip = 0; skip < cone.size(); ++skip) {
      ConeIndices facet;
      for (std::size_t t = 0; t < cone.size(); ++t)
        if (t != skip) facet.push_back(cone[t]);
      incidence[facet].push_back(c);
    }
  }
  return incidence;
}

}  // namespace detail

/// Pure n-dimensional and every facet of a maximal cone lies in exactly two
/// maximal cones. Assumes a valid fan.
inline bool is_complete(const Fan& f) {
  if (f.max_cones.empty()) return false;
  for (const auto& cone : f.max_cones)
    if (cone.size() != f.dim) return false;
  for (const auto& [facet, cones] : detail::facet_incidence(f))
    if (cones.size() != 2) return false;
  return true;
}

/// Every maximal cone's generators are part of a lattice basis.
inline bool is_smooth(const Fan& f) {
  for (const auto& cone : f.max_cones) {
    auto divisors = smith_normal_form(IntMatrix::from_rows(f.cone_rays(cone)));
    if (divisors.size() != cone.size()) return false;
    for (const auto& d : divisors)
      if (d != 1) return false;
  }
  return true;
}

inline bool is_simplicial(const Fan& f) {
  for (const auto& cone : f.max_cones)
    if (rank(IntMatrix::from_rows(f.cone_rays(cone))) != cone.size()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Point location

/// The cone whose relative interior contains x, or nullopt when x lies
/// outside the support. The zero vector gives the zero cone (empty indices).
inline std::optional<ConeIndices> minimal_cone_containing(const Fan& f, const RatVector& x) {
  if (x.size() != f.dim) throw PreconditionError("minimal_cone_containing: dimension mismatch");
  if (is_zero(x)) return ConeIndices{};
  for (const auto& cone : f.max_cones) {
    auto coeffs = express_in(detail::to_rational(f.cone_rays(cone)), x);
    if (!coeffs) continue;
    if (std::any_of(coeffs->begin(), coeffs->end(), [](const Rational& c) { return c < 0; })) continue;
    ConeIndices support;
    for (std::size_t t = 0; t < cone.size(); ++t)
      if ((*coeffs)[t] > 0) support.push_back(cone[t]);
    return support;
  }
  return std::nullopt;
}

inline std::optional<ConeIndices> minimal_cone_containing(const Fan& f, const LatticeVector& x) {
  return minimal_cone_containing(f, to_rational(x));
}

// ---------------------------------------------------------------------------
// Star subdivision

/// Inserts the primitive vector w as a new ray (appended last). Every maximal
/// cone containing the cone sigma with w in its relative interior is replaced,
/// in place, by the cones spanned by w and the facets of it not containing
/// sigma; all other cones are kept.
inline Fan star_subdivision(const Fan& f, const LatticeVector& w) {
  if (w.size() != f.dim) throw PreconditionError("star_subdivision: dimension mismatch");
  if (is_zero(w) || !is_primitive(w)) throw PreconditionError("star_subdivision: center must be primitive");
  auto sigma = minimal_cone_containing(f, w);
  if (!sigma) throw PreconditionError("star_subdivision: center lies outside the support of the fan");
  if (sigma->size() == 1) throw PreconditionError("star_subdivision: center lies on an existing ray");

  Fan out{f.dim, f.rays, {}};
  const std::size_t center = f.rays.size();
  out.rays.push_back(w);
  for (const auto& cone : f.max_cones) {
    if (!std::includes(cone.begin(), cone.end(), sigma->begin(), sigma->end())) {
      out.max_cones.push_back(cone);
      continue;
    }
    for (auto drop : *sigma) {
      ConeIndices piece;
      for (auto i : cone)
        if (i != drop) piece.push_back(i);
      piece.push_back(center);
      out.max_cones.push_back(std::move(piece));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Walls

/// A codimension-one cone shared by two maximal cones, with the linear
/// relation among its rays and the two opposite rays.
struct Wall {
  ConeIndices ray_indices;
  std::size_t left = 0;   // maximal cone index
  std::size_t right = 0;  // maximal cone index, right > left
  std::size_t left_opposite = 0;
  std::size_t right_opposite = 0;
  IntVector relation;  // length m, relation . (ray matrix) = 0
};

/// Walls of a complete simplicial fan in lexicographic order of their rays.
/// The relation is the primitive integer relation among the wall rays and the
/// two opposite rays with positive coefficients on the opposite rays. For a
/// smooth fan both opposite coefficients are 1 and the remaining entries are
/// the intersection numbers of the wall curve with the invariant divisors; for
/// a simplicial fan that is not smooth it agrees with the curve class up to a
/// positive factor.
inline std::vector<Wall> walls(const Fan& f) {
  if (!is_complete(f)) throw PreconditionError("walls: fan is not complete");
  std::vector<Wall> out;
  for (const auto& [facet, cones] : detail::facet_incidence(f)) {
    Wall w;
    w.ray_indices = facet;
    w.left = cones[0];
    w.right = cones[1];
    auto opposite = [&](std::size_t c) {
      for (auto i : f.max_cones[c])
        if (!std::binary_search(facet.begin(), facet.end(), i)) return i;
      throw PreconditionError("walls: degenerate cone");
    };
    w.left_opposite = opposite(w.left);
    w.right_opposite = opposite(w.right);

    std::vector<std::size_t> involved{w.left_opposite, w.right_opposite};
    involved.insert(involved.end(), facet.begin(), facet.end());
    IntMatrix local(involved.size(), f.dim);
    for (std::size_t r = 0; r < involved.size(); ++r)
      for (std::size_t j = 0; j < f.dim; ++j) local(r, j) = f.rays[involved[r]][j];
    IntMatrix kernel = integer_kernel(local);
    if (kernel.rows() != 1) throw PreconditionError("walls: wall relation is not unique");
    IntVector k = kernel.row_vector(0);
    if (k[0] < 0)
      for (auto& x : k) x = -x;
    if (k[0] <= 0 || k[1] <= 0) throw PreconditionError("walls: opposite rays on the same side of a wall");
    w.relation.assign(f.rays.size(), 0);
    for (std::size_t r = 0; r < involved.size(); ++r) w.relation[involved[r]] += k[r];
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Star-quotient fans

namespace detail {

// Unimodular V such that for x in Z^n, x in span(sigma) iff the last n-k
// coordinates of x*V vanish (k = rank of sigma's generators).
inline IntMatrix quotient_transform(const Fan& f, const ConeIndices& sigma) {
  if (sigma.empty()) return IntMatrix::identity(f.dim);
  IntMatrix s = IntMatrix::from_rows(f.cone_rays(sigma));
  return hermite_normal_form(s.transposed()).u.transposed();
}

}  // namespace detail

/// Fan of the invariant subvariety of the cone sigma: the cones containing
/// sigma, pushed to N / (N ∩ span sigma). Link rays keep their relative order.
inline Fan star_quotient_fan(const Fan& f, const ConeIndices& sigma) {
  ConeIndices s = sigma;
  std::sort(s.begin(), s.end());
  if (!f.is_cone(s)) throw PreconditionError("star_quotient_fan: not a cone of the fan");
  if (s.empty()) return f;

  const std::size_t k = s.size();
  IntMatrix v = detail::quotient_transform(f, s);
  std::vector<bool> in_link(f.rays.size(), false);
  std::vector<ConeIndices> star;
  for (const auto& cone : f.max_cones)
    if (std::includes(cone.begin(), cone.end(), s.begin(), s.end())) {
      star.push_back(cone);
      for (auto i : cone)
        if (!std::binary_search(s.begin(), s.end(), i)) in_link[i] = true;
    }

  Fan out;
  out.dim = f.dim - k;
  std::vector<std::size_t> new_index(f.rays.size(), 0);
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    if (!in_link[i]) continue;
    LatticeVector image(out.dim);
    for (std::size_t j = 0; j < out.dim; ++j)
      for (std::size_t t = 0; t < f.dim; ++t) image[j] += f.rays[i][t] * v(t, k + j);
    new_index[i] = out.rays.size();
    out.rays.push_back(primitive_part(image));
  }
  for (const auto& cone : star) {
    ConeIndices c;
    for (auto i : cone)
      if (!std::binary_search(s.begin(), s.end(), i)) c.push_back(new_index[i]);
    std::sort(c.begin(), c.end());
    if (!c.empty()) out.max_cones.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projections

enum class OverlapReason { overlapping_images, image_not_strongly_convex };

inline const char* to_string(OverlapReason r) {
  return r == OverlapReason::overlapping_images ? "overlapping_images" : "image_not_strongly_convex";
}

/// Two maximal cones whose images under the projection meet in a
/// full-dimensional set without being equal (or one image containing a line).
struct OverlapCertificate {
  OverlapReason reason;
  std::size_t first = 0;
  std::size_t second = 0;
  RationalCone first_image;
  RationalCone second_image;
};

using ProjectionResult = std::variant<Fan, OverlapCertificate>;

/// Image of a maximal cone under the lattice map given by the d x n matrix pi.
inline RationalCone image_cone(const Fan& f, const IntMatrix& pi, const ConeIndices& cone) {
  std::vector<IntVector> gens;
  for (auto i : cone) {
    IntVector g(pi.rows());
    for (std::size_t r = 0; r < pi.rows(); ++r)
      for (std::size_t t = 0; t < f.dim; ++t) g[r] += pi(r, t) * f.rays[i][t];
    gens.push_back(std::move(g));
  }
  return RationalCone::from_generators(pi.rows(), gens);
}

/// True when the images of maximal cones a and b meet in a full-dimensional set.
inline bool images_overlap(const Fan& f, const IntMatrix& pi, std::size_t a, std::size_t b) {
  auto ia = image_cone(f, pi, f.max_cones.at(a));
  auto ib = image_cone(f, pi, f.max_cones.at(b));
  return intersect(ia, ib).dim() == pi.rows();
}

/// Tries to push the fan forward along pi: N -> Z^d. Returns the image fan
/// when the full-dimensional images of maximal cones form a simplicial fan,
/// otherwise the first offending pair of maximal cones (lexicographic).
inline ProjectionResult project_fan(const Fan& f, const IntMatrix& pi) {
  if (pi.cols() != f.dim) throw PreconditionError("project_fan: matrix must have one column per lattice coordinate");
  auto divisors = smith_normal_form(pi);
  if (divisors.size() != pi.rows() ||
      std::any_of(divisors.begin(), divisors.end(), [](const Integer& d) { return d != 1; }))
    throw PreconditionError("project_fan: lattice map is not surjective");

  const std::size_t d = pi.rows();
  std::vector<RationalCone> images;
  for (const auto& cone : f.max_cones) images.push_back(image_cone(f, pi, cone));

  for (std::size_t a = 0; a < images.size(); ++a) {
    if (images[a].dim() != d) continue;
    if (!images[a].is_pointed()) {
      std::size_t partner = a;
      for (std::size_t b = 0; b < images.size(); ++b)
        if (b != a && images[b].dim() == d && intersect(images[a], images[b]).dim() == d) {
          partner = b;
          break;
        }
      return OverlapCertificate{OverlapReason::image_not_strongly_convex, a, partner, images[a], images[partner]};
    }
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      if (images[b].dim() != d || images[a] == images[b]) continue;
      if (intersect(images[a], images[b]).dim() == d)
        return OverlapCertificate{OverlapReason::overlapping_images, a, b, images[a], images[b]};
    }
  }

  Fan out;
  out.dim = d;
  std::vector<RationalCone> seen;
  for (const auto& img : images) {
    if (img.dim() != d || std::find(seen.begin(), seen.end(), img) != seen.end()) continue;
    seen.push_back(img);
    if (img.extremal_rays().size() != d) throw PreconditionError("project_fan: image fan is not simplicial");
    ConeIndices cone;
    for (const auto& r : img.extremal_rays()) {
      auto it = std::find(out.rays.begin(), out.rays.end(), r);
      if (it == out.rays.end()) {
        cone.push_back(out.rays.size());
        out.rays.push_back(r);
      } else {
        cone.push_back(static_cast<std::size_t>(it - out.rays.begin()));
      }
    }
    std::sort(cone.begin(), cone.end());
    out.max_cones.push_back(std::move(cone));
  }
  return out;
}

}  // namespace toricnef
