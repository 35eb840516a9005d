#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "toricnef/divisor_theory.hpp"
#include "toricnef/fan_model.hpp"

using namespace toricnef;

namespace {

std::size_t cone_index(const Fan& f, ConeIndices c) {
  std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    auto m = f.max_cones[i];
    std::sort(m.begin(), m.end());
    if (m == c) return i;
  }
  ADD_FAILURE() << "cone not found";
  return 0;
}

Fan orthant_fan() {
  Fan f;
  f.dim = 2;
  f.rays = {{1, 0}, {0, 1}};
  f.max_cones = {{0, 1}};
  return f;
}

}  // namespace

TEST(Validate, CatalogFansAreValid) {
  for (const auto& [name, f] : oracle::catalog_fans()) EXPECT_TRUE(validate(f).ok()) << name;
}

TEST(Validate, ReportsEachViolationKind) {
  Fan p3 = catalog::projective_space(3);

  Fan dup_cone = p3;
  dup_cone.max_cones.push_back(dup_cone.max_cones[0]);
  EXPECT_TRUE(validate(dup_cone).has(ViolationKind::bad_intersection));

  Fan nonprim = p3;
  nonprim.rays[0] = {2, 0, 0};
  EXPECT_TRUE(validate(nonprim).has(ViolationKind::non_primitive_ray));

  Fan zero = p3;
  zero.rays[0] = {0, 0, 0};
  EXPECT_TRUE(validate(zero).has(ViolationKind::zero_ray));

  Fan dim = p3;
  dim.rays[1] = {0, 1};
  EXPECT_TRUE(validate(dim).has(ViolationKind::dimension_mismatch));

  Fan dup_ray = p3;
  dup_ray.rays.push_back({1, 0, 0});
  dup_ray.max_cones.push_back({4});
  EXPECT_TRUE(validate(dup_ray).has(ViolationKind::duplicate_ray));

  Fan orphan = p3;
  orphan.rays.push_back({1, 1, 1});
  EXPECT_TRUE(validate(orphan).has(ViolationKind::orphan_ray));

  Fan bad_index = p3;
  bad_index.max_cones[0] = {0, 1, 9};
  EXPECT_TRUE(validate(bad_index).has(ViolationKind::malformed_cone));

  Fan square;
  square.dim = 3;
  square.rays = {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
  square.max_cones = {{0, 1, 2, 3}};
  EXPECT_TRUE(validate(square).has(ViolationKind::non_simplicial_cone));

  // Two 2-cones in the plane that cross.
  Fan crossing;
  crossing.dim = 2;
  crossing.rays = {{1, 0}, {0, 1}, {1, 1}, {-1, 2}};
  crossing.max_cones = {{0, 1}, {2, 3}};
  auto rep = validate(crossing);
  EXPECT_TRUE(rep.has(ViolationKind::bad_intersection));
  EXPECT_THROW(require_valid(crossing), PreconditionError);
}

TEST(Validate, MiyakeOdaIsValid) { EXPECT_TRUE(validate(catalog::miyake_oda()).ok()); }

TEST(Completeness, Examples) {
  EXPECT_TRUE(is_complete(catalog::projective_space(1)));
  EXPECT_TRUE(is_complete(catalog::projective_space(3)));
  EXPECT_FALSE(is_complete(orthant_fan()));
  auto f = catalog::example_8_10();
  EXPECT_EQ(f.rays.size(), 8u);
  EXPECT_EQ(f.max_cones.size(), 12u);
  EXPECT_TRUE(is_complete(f));
}

TEST(Completeness, ThreefoldConeCount) {
  for (const auto& [name, f] : oracle::catalog_fans()) {
    if (f.dim == 3 && is_complete(f)) {
      EXPECT_EQ(f.max_cones.size(), 2 * (f.rays.size() - 2)) << name;
    }
  }
}

TEST(Smoothness, Examples) {
  EXPECT_TRUE(is_smooth(catalog::projective_space(3)));
  EXPECT_TRUE(is_smooth(catalog::example_8_10()));
  Fan f;
  f.dim = 2;
  f.rays = {{1, 0}, {1, 2}};
  f.max_cones = {{0, 1}};
  EXPECT_TRUE(validate(f).ok());
  EXPECT_FALSE(is_smooth(f));
  EXPECT_TRUE(is_simplicial(f));
}

TEST(StarSubdivision, FirstBlowUpOfP3) {
  auto f = star_subdivision(catalog::projective_space_v_order(3), {1, -1, -2});
  EXPECT_EQ(f.rays.size(), 5u);
  EXPECT_EQ(f.max_cones.size(), 6u);
  EXPECT_EQ(f.rays.back(), (LatticeVector{1, -1, -2}));
  EXPECT_TRUE(validate(f).ok());
  // 3v1 + v2 + 2v4 is not the sum of the cone's rays: a weighted blow-up.
  EXPECT_FALSE(is_smooth(f));
}

TEST(StarSubdivision, ChainToExample810) {
  Fan f = catalog::projective_space_v_order(3);
  std::size_t rho = 1;
  for (const auto& w : catalog::blowup_centers(3)) {
    f = star_subdivision(f, w);
    ASSERT_TRUE(validate(f).ok());
    ASSERT_TRUE(is_complete(f));
    ASSERT_EQ(DivisorClassSpace(f).picard_rank(), ++rho);
  }
  EXPECT_TRUE(is_smooth(f));
  EXPECT_EQ(f.rays.size(), 8u);
  EXPECT_EQ(f.max_cones.size(), 12u);
  EXPECT_EQ(f, catalog::example_8_10());
}

TEST(StarSubdivision, SubdividingATwoDimensionalCone) {
  // v8 = (v2 + v7) / 2 sits in the relative interior of the 2-cone <v2, v7>.
  Fan f = catalog::projective_space_v_order(3);
  auto centers = catalog::blowup_centers(3);
  for (std::size_t i = 0; i < 3; ++i) f = star_subdivision(f, centers[i]);
  auto sigma = minimal_cone_containing(f, centers[3]);
  ASSERT_TRUE(sigma.has_value());
  EXPECT_EQ(*sigma, (ConeIndices{1, 6}));
}

TEST(StarSubdivision, RhoGrowsAlongTheXkTower) {
  auto f = catalog::example_8_10();
  LatticeVector u6 = catalog::add(catalog::add(f.rays[4], f.rays[6]), f.rays[7]);
  auto g = star_subdivision(f, u6);
  EXPECT_EQ(DivisorClassSpace(g).picard_rank(), DivisorClassSpace(f).picard_rank() + 1);
  EXPECT_EQ(g, catalog::example_xk(6));
}

TEST(StarSubdivision, Rejections) {
  auto p3 = catalog::projective_space(3);
  EXPECT_THROW(star_subdivision(p3, {1, 0, 0}), PreconditionError);
  EXPECT_THROW(star_subdivision(p3, {2, 2, 0}), PreconditionError);
  EXPECT_THROW(star_subdivision(orthant_fan(), {-1, 1}), PreconditionError);
}

TEST(StarSubdivision, CoarseningRecoversTheReplacedCones) {
  for (const auto& [name, f] : oracle::catalog_fans()) {
    if (!is_smooth(f) || !is_complete(f)) continue;
    // Blow up the first maximal cone at the sum of its rays and at the sum of
    // its first two rays.
    for (std::size_t take : {f.dim, std::size_t{2}}) {
      if (take > f.dim) continue;
      const auto& base = f.max_cones.front();
      LatticeVector w(f.dim, 0);
      for (std::size_t i = 0; i < take; ++i) w = catalog::add(w, f.rays[base[i]]);
      if (std::find(f.rays.begin(), f.rays.end(), w) != f.rays.end()) continue;
      auto g = star_subdivision(f, w);
      ASSERT_EQ(g.rays.size(), f.rays.size() + 1) << name;
      ASSERT_TRUE(validate(g).ok()) << name;
      ASSERT_TRUE(is_complete(g)) << name;
      ASSERT_TRUE(is_smooth(g)) << name;
      const std::size_t wi = f.rays.size();
      ConeIndices sigma(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(take));
      std::sort(sigma.begin(), sigma.end());
      for (const auto& old : f.max_cones) {
        const bool contains_sigma = std::includes(old.begin(), old.end(), sigma.begin(), sigma.end());
        if (!contains_sigma) {
          ASSERT_TRUE(g.is_cone(old)) << name;
          continue;
        }
        // Cones of g through w whose other rays lie in old tile old.
        std::vector<IntVector> gens;
        std::size_t pieces = 0;
        for (const auto& c : g.max_cones) {
          if (std::find(c.begin(), c.end(), wi) == c.end()) continue;
          bool inside = true;
          for (auto i : c)
            if (i != wi && std::find(old.begin(), old.end(), i) == old.end()) inside = false;
          if (!inside) continue;
          ++pieces;
          for (auto i : c) gens.push_back(g.rays[i]);
        }
        EXPECT_EQ(pieces, take) << name;
        EXPECT_EQ(RationalCone::from_generators(f.dim, gens), RationalCone::from_generators(f.dim, f.cone_rays(old)))
            << name;
      }
    }
  }
}

TEST(Walls, ProjectiveSpace) {
  auto ws = walls(catalog::projective_space(3));
  ASSERT_EQ(ws.size(), 6u);
  for (const auto& w : ws) EXPECT_EQ(w.relation, (IntVector{1, 1, 1, 1}));
}

TEST(Walls, Example810) {
  auto f = catalog::example_8_10();
  auto ws = walls(f);
  EXPECT_EQ(ws.size(), 18u);
  EXPECT_EQ(ws.size(), 3 * f.rays.size() - 6);
}

TEST(Walls, RelationsAreLatticeRelationsWithPositiveOppositeEntries) {
  for (const auto& [name, f] : oracle::catalog_fans()) {
    if (!is_complete(f)) continue;
    auto ws = walls(f);
    EXPECT_EQ(ws.size() * 2, f.max_cones.size() * f.dim) << name;
    for (const auto& w : ws) {
      for (std::size_t j = 0; j < f.dim; ++j) {
        Integer s = 0;
        for (std::size_t i = 0; i < f.rays.size(); ++i) s += w.relation[i] * f.rays[i][j];
        ASSERT_EQ(s, 0) << name;
      }
      ASSERT_EQ(w.relation[w.left_opposite], 1) << name;
      ASSERT_EQ(w.relation[w.right_opposite], 1) << name;
      for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const bool involved = i == w.left_opposite || i == w.right_opposite ||
                              std::find(w.ray_indices.begin(), w.ray_indices.end(), i) != w.ray_indices.end();
        if (!involved) {
          ASSERT_EQ(w.relation[i], 0) << name;
        }
      }
    }
    for (std::size_t i = 1; i < ws.size(); ++i) EXPECT_LT(ws[i - 1].ray_indices, ws[i].ray_indices) << name;
  }
}

TEST(Walls, MiyakeOdaHasWallCurvesKilledByEveryNefClass) {
  auto f = catalog::miyake_oda();
  DivisorCones c(f);
  std::set<RatVector> killed;
  for (const auto& w : c.wall_list()) {
    auto curve = c.space().curve(w.relation);
    bool zero = true;
    for (const auto& g : c.nef_cone().generators())
      if (dot(curve.coordinates, to_rational(g)) != 0) zero = false;
    if (zero) killed.insert(curve.coordinates);
  }
  EXPECT_GE(killed.size(), 3u);
}

TEST(Walls, RequireCompleteness) { EXPECT_THROW(walls(orthant_fan()), PreconditionError); }

TEST(MinimalCone, Examples) {
  auto f = catalog::example_8_10();
  EXPECT_EQ(minimal_cone_containing(f, LatticeVector{0, 0, 0}), ConeIndices{});
  EXPECT_EQ(minimal_cone_containing(f, LatticeVector{0, 0, -2}), ConeIndices{7});
  auto p3 = catalog::projective_space(3);
  LatticeVector sum(3, 0);
  for (const auto& r : p3.rays) sum = catalog::add(sum, r);
  EXPECT_EQ(minimal_cone_containing(p3, sum), ConeIndices{});
  EXPECT_EQ(minimal_cone_containing(p3, LatticeVector{1, 1, 0}), (ConeIndices{0, 1}));
  EXPECT_EQ(minimal_cone_containing(orthant_fan(), LatticeVector{-1, 0}), std::nullopt);
}

TEST(StarQuotient, Examples) {
  auto p3 = catalog::projective_space(3);
  EXPECT_EQ(star_quotient_fan(p3, {}), p3);
  auto q = star_quotient_fan(p3, {0});
  EXPECT_EQ(q.dim, 2u);
  EXPECT_TRUE(oracle::unimodular_equivalent(q, catalog::projective_space(2)));

  auto p1p1 = catalog::product_of_projective_spaces({1, 1});
  auto r = star_quotient_fan(p1p1, {0});
  EXPECT_TRUE(oracle::unimodular_equivalent(r, catalog::projective_space(1)));

  EXPECT_THROW(star_quotient_fan(p3, {0, 1, 2, 3}), PreconditionError);
}

TEST(StarQuotient, DivisorsOfExample810AreValidCompleteSurfaces) {
  auto f = catalog::example_8_10();
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    auto q = star_quotient_fan(f, {i});
    EXPECT_EQ(q.dim, 2u);
    EXPECT_TRUE(validate(q).ok());
    EXPECT_TRUE(is_complete(q));
    EXPECT_TRUE(is_smooth(q));
  }
}

TEST(Projection, Example810ToThePlaneOverlaps) {
  auto f = catalog::example_8_10();
  auto pi = IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}});
  auto res = project_fan(f, pi);
  ASSERT_TRUE(std::holds_alternative<OverlapCertificate>(res));
  const auto& cert = std::get<OverlapCertificate>(res);
  EXPECT_TRUE(images_overlap(f, pi, cert.first, cert.second));

  const auto a = cone_index(f, {1, 4, 7});  // <v2, v5, v8>
  const auto b = cone_index(f, {0, 3, 4});  // <v1, v4, v5>
  EXPECT_TRUE(images_overlap(f, pi, a, b));
  EXPECT_EQ(image_cone(f, pi, f.max_cones[a]), RationalCone::from_generators(2, std::vector<IntVector>{{0, 1}, {1, -1}}));
  EXPECT_EQ(image_cone(f, pi, f.max_cones[b]), RationalCone::from_generators(2, std::vector<IntVector>{{1, 0}, {-1, -1}}));
}

TEST(Projection, Example810ToTheLineOverlaps) {
  auto f = catalog::example_8_10();
  auto pi = IntMatrix::from_rows({{0, 0, 1}});
  auto res = project_fan(f, pi);
  ASSERT_TRUE(std::holds_alternative<OverlapCertificate>(res));
  const auto& cert = std::get<OverlapCertificate>(res);
  EXPECT_TRUE(images_overlap(f, pi, cert.first, cert.second));
}

TEST(Projection, ProductProjectsToFactor) {
  auto f = catalog::product_of_projective_spaces({1, 1});
  auto res = project_fan(f, IntMatrix::from_rows({{1, 0}}));
  ASSERT_TRUE(std::holds_alternative<Fan>(res));
  EXPECT_TRUE(oracle::unimodular_equivalent(std::get<Fan>(res), catalog::projective_space(1)));

  auto g = catalog::product_of_projective_spaces({1, 2});
  auto res2 = project_fan(g, IntMatrix::from_rows({{0, 1, 0}, {0, 0, 1}}));
  ASSERT_TRUE(std::holds_alternative<Fan>(res2));
  EXPECT_TRUE(oracle::unimodular_equivalent(std::get<Fan>(res2), catalog::projective_space(2)));
}

TEST(Projection, Rejections) {
  auto f = catalog::projective_space(2);
  EXPECT_THROW(project_fan(f, IntMatrix::from_rows({{2, 0}})), PreconditionError);
  EXPECT_THROW(project_fan(f, IntMatrix::from_rows({{1, 0, 0}})), PreconditionError);
}
