#pragma once

// Primitive collections, foci and primitive relations of a complete fan, the
// Mori cone generated by primitive relations, and the 'general' / 'special'
// classification by positive relations among at most n rays.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "toricnef/cone_engine.hpp"
#include "toricnef/divisor_theory.hpp"
#include "toricnef/exact_linalg.hpp"
#include "toricnef/fan_model.hpp"

namespace toricnef {

/// Ray indices, ascending, forming a minimal non-face.
using PrimitiveCollection = std::vector<std::size_t>;

struct PrimitiveRelation {
  PrimitiveCollection collection;
  ConeIndices focus;
  std::vector<Integer> focus_coefficients;  // a_j > 0, aligned with focus
  IntVector relation;                       // +1 on the collection, -a_j on the focus
};

namespace detail {

using RayMask = std::uint64_t;

inline RayMask mask_of(const std::vector<std::size_t>& indices) {
  RayMask m = 0;
  for (auto i : indices) m |= RayMask{1} << i;
  return m;
}

struct FaceOracle {
  std::vector<RayMask> max_masks;
  bool is_face(RayMask s) const {
    return std::any_of(max_masks.begin(), max_masks.end(), [s](RayMask m) { return (s & m) == s; });
  }
};

inline FaceOracle face_oracle(const Fan& f) {
  if (f.rays.size() > 64) throw PreconditionError("primitive collections: at most 64 rays supported");
  FaceOracle o;
  for (const auto& c : f.max_cones) o.max_masks.push_back(mask_of(c));
  return o;
}

// Depth-first search over faces in lexicographic order; a non-face reached by
// adding one ray to a face is minimal iff dropping any other ray leaves a face.
inline void collect_minimal_nonfaces(const FaceOracle& faces, std::size_t m, std::vector<std::size_t>& current,
                                     RayMask current_mask, std::vector<PrimitiveCollection>& out) {
  const std::size_t start = current.empty() ? 0 : current.back() + 1;
  for (std::size_t j = start; j < m; ++j) {
    RayMask next = current_mask | (RayMask{1} << j);
    if (faces.is_face(next)) {
      current.push_back(j);
      collect_minimal_nonfaces(faces, m, current, next, out);
      current.pop_back();
      continue;
    }
    bool minimal = true;
    for (auto i : current)
      if (!faces.is_face(next & ~(RayMask{1} << i))) {
        minimal = false;
        break;
      }
    if (minimal) {
      PrimitiveCollection p = current;
      p.push_back(j);
      out.push_back(std::move(p));
    }
  }
}

}  // namespace detail

/// Minimal subsets of rays that span no cone of the fan. Sorted by size, then
/// lexicographically.
inline std::vector<PrimitiveCollection> primitive_collections(const Fan& f) {
  auto faces = detail::face_oracle(f);
  std::vector<PrimitiveCollection> out;
  std::vector<std::size_t> current;
  detail::collect_minimal_nonfaces(faces, f.rays.size(), current, 0, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline LatticeVector collection_sum(const Fan& f, const PrimitiveCollection& p) {
  LatticeVector s(f.dim, 0);
  for (auto i : p)
    for (std::size_t j = 0; j < f.dim; ++j) s[j] += f.rays.at(i)[j];
  return s;
}

/// Smallest cone containing the sum of the collection's rays.
inline ConeIndices focus(const Fan& f, const PrimitiveCollection& p) {
  auto c = minimal_cone_containing(f, collection_sum(f, p));
  if (!c) throw PreconditionError("focus: sum of the collection lies outside the fan");
  return *c;
}

/// Writes the collection's sum as a positive integer combination of its
/// focus generators. A non-integral coefficient means the fan is not smooth.
inline PrimitiveRelation primitive_relation(const Fan& f, const PrimitiveCollection& p) {
  PrimitiveRelation r;
  r.collection = p;
  r.focus = focus(f, p);
  auto coeffs = express_in(detail::to_rational(f.cone_rays(r.focus)), to_rational(collection_sum(f, p)));
  r.relation.assign(f.rays.size(), 0);
  for (auto i : p) r.relation[i] += 1;
  for (std::size_t t = 0; t < r.focus.size(); ++t) {
    const Rational& a = (*coeffs)[t];
    if (boost::multiprecision::denominator(a) != 1 || a <= 0)
      throw PreconditionError("primitive_relation: non-integral focus coefficients (fan not smooth)");
    Integer ai = boost::multiprecision::numerator(a);
    r.focus_coefficients.push_back(ai);
    r.relation[r.focus[t]] -= ai;
  }
  return r;
}

inline std::vector<PrimitiveRelation> primitive_relations(const Fan& f) {
  std::vector<PrimitiveRelation> out;
  for (const auto& p : primitive_collections(f)) out.push_back(primitive_relation(f, p));
  return out;
}

/// Cone generated by the classes of all primitive relations in the N_1
/// coordinates of DivisorClassSpace. Equals the Mori cone for smooth
/// projective fans.
inline RationalCone mori_cone_via_relations(const Fan& f) {
  DivisorClassSpace space(f);
  std::vector<RatVector> gens;
  for (const auto& r : primitive_relations(f)) gens.push_back(space.curve_coordinates(to_rational(r.relation)));
  return RationalCone::from_generators(space.picard_rank(), gens);
}

/// First primitive collection (size, then lexicographic) whose focus is the
/// zero cone, i.e. whose rays sum to zero.
inline std::optional<PrimitiveCollection> zero_focus_collection(const Fan& f) {
  for (const auto& p : primitive_collections(f))
    if (is_zero(collection_sum(f, p))) return p;
  return std::nullopt;
}

/// Certificate of a positive relation sum_j a_j v_{i_j} = 0.
struct PositiveRelation {
  std::vector<std::size_t> rays;  // distinct ray indices, ascending
  IntVector coefficients;         // positive, coprime
};

struct GeneralityVerdict {
  bool general = true;
  std::optional<PositiveRelation> certificate;  // present when special
};

/// 'special' iff some k <= n distinct rays satisfy a relation with all
/// coefficients positive. Subsets are searched by size, then lexicographically,
/// so the certificate is one of smallest size.
inline GeneralityVerdict is_general(const Fan& f) {
  const std::size_t m = f.rays.size(), n = f.dim;
  std::vector<std::size_t> subset;
  std::optional<PositiveRelation> found;
  auto search = [&](auto&& self, std::size_t start, std::size_t size) -> void {
    if (found) return;
    if (subset.size() == size) {
      IntMatrix a = IntMatrix::from_rows(f.cone_rays(subset));
      if (auto c = strict_positive_kernel_exists(a)) found = PositiveRelation{subset, *c};
      return;
    }
    for (std::size_t j = start; j < m && !found; ++j) {
      subset.push_back(j);
      self(self, j + 1, size);
      subset.pop_back();
    }
  };
  for (std::size_t size = 2; size <= std::min(n, m) && !found; ++size) search(search, 0, size);
  if (found) return {false, std::move(found)};
  return {true, std::nullopt};
}

}  // namespace toricnef
