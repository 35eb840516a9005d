#pragma once

// Builders for the fans studied here. Most are produced by replaying a chain
// of star subdivisions, so the construction itself is exercised by tests.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toricnef/fan_model.hpp"

namespace toricnef::catalog {

inline LatticeVector unit_vector(std::size_t n, std::size_t i) {
  LatticeVector v(n, 0);
  v[i] = 1;
  return v;
}

inline LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Rays e_1..e_n, -(e_1+...+e_n); maximal cones omit one ray each.
inline Fan projective_space(std::size_t n) {
  if (n < 1) throw PreconditionError("projective_space: n must be at least 1");
  Fan f;
  f.dim = n;
  for (std::size_t i = 0; i < n; ++i) f.rays.push_back(unit_vector(n, i));
  f.rays.push_back(LatticeVector(n, -1));
  for (std::size_t skip = n + 1; skip-- > 0;) {
    ConeIndices cone;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) cone.push_back(i);
    f.max_cones.push_back(std::move(cone));
  }
  return f;
}

/// P^n with rays ordered v1, v2, v3, v4 = -(1,...,1), w_1, ..., w_{n-3},
/// where v_i = e_i for i <= 3 and w_j = e_{3+j}.
inline Fan projective_space_v_order(std::size_t n) {
  if (n < 3) throw PreconditionError("projective_space_v_order: n must be at least 3");
  Fan f;
  f.dim = n;
  for (std::size_t i = 0; i < 3; ++i) f.rays.push_back(unit_vector(n, i));
  f.rays.push_back(LatticeVector(n, -1));
  for (std::size_t i = 3; i < n; ++i) f.rays.push_back(unit_vector(n, i));
  for (std::size_t skip = n + 1; skip-- > 0;) {
    ConeIndices cone;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) cone.push_back(i);
    f.max_cones.push_back(std::move(cone));
  }
  return f;
}

/// Blow-up centers v5, v6, v7, v8 in dimension n >= 3:
///   v5 = 3v1 + v2 + 2v4       = (1, -1, -2, ..., -2)
///   v6 = (v1 + v2 + v5) / 2    = (1, 0, -1, ..., -1)
///   v7 = (v2 + 2v4 + 2v5) / 3  = (0, -1, -2, ..., -2)
///   v8 = (v2 + v7) / 2         = (0, 0, -1, ..., -1)
inline std::vector<LatticeVector> blowup_centers(std::size_t n) {
  LatticeVector v5(n, -2), v6(n, -1), v7(n, -2), v8(n, -1);
  v5[0] = 1;
  v5[1] = -1;
  v6[0] = 1;
  v6[1] = 0;
  v7[0] = 0;
  v7[1] = -1;
  v8[0] = 0;
  v8[1] = 0;
  return {v5, v6, v7, v8};
}

/// The smooth projective threefold with rho = 5 obtained from P^3 by
/// subdividing inside <v1, v2, v4> at v5, v6, v7, v8 in turn.
/// Ray indices 0..7 are v1..v8.
inline Fan example_8_10() {
  Fan f = projective_space_v_order(3);
  for (const auto& w : blowup_centers(3)) f = star_subdivision(f, w);
  return f;
}

/// The k-th member (k >= 6) of the tower of blow-ups inside <v5, v7, v8>:
/// u6 = v5 + v7 + v8 and u_{j+1} = v5 + v7 + u_j. rho(X_k) = k.
inline Fan example_xk(std::size_t k) {
  if (k < 6) throw PreconditionError("example_xk: k must be at least 6");
  Fan f = example_8_10();
  const LatticeVector v5 = f.rays[4];
  const LatticeVector v7 = f.rays[6];
  LatticeVector u = f.rays[7];
  for (std::size_t j = 6; j <= k; ++j) {
    u = add(add(v5, v7), u);
    f = star_subdivision(f, u);
  }
  return f;
}

/// The smooth complete non-projective threefold of Miyake and Oda, transcribed
/// ray for ray and cone for cone. Ray indices 0..6 are v1..v7.
inline Fan miyake_oda() {
  Fan f;
  f.dim = 3;
  f.rays = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {0, -1, -1}, {-1, 0, -1}, {-1, -1, 0}};
  f.max_cones = {{0, 1, 2}, {3, 4, 5}, {3, 5, 6}, {3, 4, 6}, {0, 1, 4},
                 {1, 4, 5}, {1, 2, 5}, {2, 5, 6}, {0, 2, 6}, {0, 4, 6}};
  return f;
}

/// The n-dimensional (n >= 4) analogue of example_8_10: P^n subdivided at the
/// n-dimensional v5, v6, v7, v8. Ray order v1, v2, v3, v4, w_1..w_{n-3},
/// v5, v6, v7, v8.
inline Fan general_ndim(std::size_t n) {
  if (n < 4) throw PreconditionError("general_ndim: n must be at least 4");
  Fan f = projective_space_v_order(n);
  for (const auto& w : blowup_centers(n)) f = star_subdivision(f, w);
  return f;
}

/// Fan of the product variety in N1 + N2. Rays of the first factor come first.
inline Fan product(const Fan& a, const Fan& b) {
  Fan f;
  f.dim = a.dim + b.dim;
  for (const auto& v : a.rays) {
    LatticeVector r(f.dim, 0);
    std::copy(v.begin(), v.end(), r.begin());
    f.rays.push_back(std::move(r));
  }
  for (const auto& v : b.rays) {
    LatticeVector r(f.dim, 0);
    std::copy(v.begin(), v.end(), r.begin() + static_cast<std::ptrdiff_t>(a.dim));
    f.rays.push_back(std::move(r));
  }
  for (const auto& ca : a.max_cones)
    for (const auto& cb : b.max_cones) {
      ConeIndices c = ca;
      for (auto i : cb) c.push_back(i + a.rays.size());
      f.max_cones.push_back(std::move(c));
    }
  return f;
}

/// P^{n_1} x ... x P^{n_r}.
inline Fan product_of_projective_spaces(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw PreconditionError("product_of_projective_spaces: no factors");
  Fan f = projective_space(dims.front());
  for (std::size_t i = 1; i < dims.size(); ++i) f = product(f, projective_space(dims[i]));
  return f;
}

/// Fan of P(O^k + L) over the variety of `base`, where L = O(sum_i l_i D_i).
/// Lattice N + Z^k; fiber rays f_1..f_k = unit vectors and f_0 = -(f_1+...+f_k).
/// The base ray v_i lifts to (v_i, 0) + l_i f_0, i.e. the twist by L sits on
/// the f_0 side. Maximal cones: a lifted base cone plus all fiber rays but one.
/// Ray order: lifted base rays, f_1..f_k, f_0.
inline Fan projectivized_split_bundle(const Fan& base, const IntVector& twist, std::size_t k) {
  if (k < 1) throw PreconditionError("projectivized_split_bundle: k must be at least 1");
  if (twist.size() != base.rays.size())
    throw PreconditionError("projectivized_split_bundle: twist needs one coefficient per ray");
  const std::size_t n = base.dim, m = base.rays.size();
  Fan f;
  f.dim = n + k;
  for (std::size_t i = 0; i < m; ++i) {
    LatticeVector r(f.dim, 0);
    std::copy(base.rays[i].begin(), base.rays[i].end(), r.begin());
    for (std::size_t j = 0; j < k; ++j) r[n + j] = -twist[i];
    f.rays.push_back(primitive_part(r));
  }
  for (std::size_t j = 0; j < k; ++j) f.rays.push_back(unit_vector(f.dim, n + j));
  LatticeVector f0(f.dim, 0);
  for (std::size_t j = 0; j < k; ++j) f0[n + j] = -1;
  f.rays.push_back(std::move(f0));

  for (const auto& cone : base.max_cones)
    for (std::size_t skip = k + 1; skip-- > 0;) {
      ConeIndices c = cone;
      for (std::size_t j = 0; j <= k; ++j)
        if (j != skip) c.push_back(m + j);
      f.max_cones.push_back(std::move(c));
    }
  return f;
}

/// Hirzebruch surface F_a: rays (1,0), (0,1), (-1,a), (0,-1).
inline Fan hirzebruch(long a) {
  Fan f;
  f.dim = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  return f;
}

/// P^2 blown up at a torus-fixed point: star subdivision at (1,1).
inline Fan blown_up_p2() { return star_subdivision(projective_space(2), {1, 1}); }

/// Names accepted by `by_name`.
inline std::vector<std::string> names() {
  return {"p",         "example-8-10", "xk",       "miyake-oda", "general-ndim",
          "pxp",       "blown-up-p2",  "p1xp1",    "p1xp2",      "hirzebruch"};
}

struct CatalogParams {
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<long> a;
  std::vector<std::size_t> dims;
};

/// Looks a builder up by its command-line name.
inline Fan by_name(const std::string& name, const CatalogParams& p = {}) {
  auto need = [&](const std::optional<std::size_t>& v, const char* what) {
    if (!v) throw PreconditionError("catalog " + name + " needs " + what);
    return *v;
  };
  if (name == "p") return projective_space(need(p.n, "--n"));
  if (name == "example-8-10") return example_8_10();
  if (name == "xk") return example_xk(need(p.k, "--k"));
  if (name == "miyake-oda") return miyake_oda();
  if (name == "general-ndim") return general_ndim(need(p.n, "--n"));
  if (name == "pxp") return product_of_projective_spaces(p.dims);
  if (name == "blown-up-p2") return blown_up_p2();
  if (name == "p1xp1") return product_of_projective_spaces({1, 1});
  if (name == "p1xp2") return product_of_projective_spaces({1, 2});
  if (name == "hirzebruch") return hirzebruch(p.a.value_or(1));
  throw PreconditionError("unknown catalog fan: " + name);
}

}  // namespace toricnef::catalog
