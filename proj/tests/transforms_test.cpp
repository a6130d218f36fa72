#include "glc3d/error.hpp"
#include "glc3d/transforms.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace glc3d;

namespace {

CaseRecord point(std::vector<double> v, std::size_t id = 0) {
    return CaseRecord{id, std::move(v), "A", 0, std::nullopt};
}

void expect_vec(const Vec3& got, Vec3 want, double tol = 1e-15) {
    EXPECT_NEAR(got.x, want.x, tol);
    EXPECT_NEAR(got.y, want.y, tol);
    EXPECT_NEAR(got.z, want.z, tol);
}

const CaseRecord paper_point = point({0.1, 0.4, 0.5, 0.7});
const LinearModel ones = LinearModel::from_coefficients({1, 1, 1, 1});

}  // namespace

TEST(Spc2d, NodesAndStrokes) {
    const Glyph g = map_spc2d(paper_point, {});
    ASSERT_EQ(g.nodes.size(), 2u);
    expect_vec(g.nodes[0], {0.1, 0.4, 0.0});
    expect_vec(g.nodes[1], {1.75, 0.7, 0.0});
    ASSERT_EQ(g.strokes.size(), 1u);
    EXPECT_EQ(g.strokes[0], (std::vector<std::uint32_t>{0, 1}));

    const Glyph zero = map_spc2d(point({0, 0, 0, 0}), {});
    expect_vec(zero.nodes[0], {0.0, 0.0, 0.0});
    expect_vec(zero.nodes[1], {1.25, 0.0, 0.0});

    const Glyph six = map_spc2d(point({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}), {});
    EXPECT_EQ(six.nodes.size(), 3u);
    EXPECT_EQ(six.strokes[0].size() - 1, 2u);

    EXPECT_THROW((void)map_spc2d(point({0.1, 1.5}), {}), ValidationError);
}

TEST(Spc3d, ApexesAndContributionDots) {
    const Glyph g = map_spc3d(paper_point, ones, {});
    ASSERT_EQ(g.nodes.size(), 4u);
    EXPECT_NEAR(g.nodes[1].z, 1.7, 1e-15);
    EXPECT_NEAR(g.nodes[3].z, 1.7, 1e-15);
    std::vector<double> dots;
    for (const auto& m : g.markers) {
        if (m.role == MarkerRole::contribution_dot) {
            dots.push_back(m.position.z);
        }
    }
    ASSERT_EQ(dots.size(), 2u);
    EXPECT_NEAR(dots[0], 0.5, 1e-15);
    EXPECT_NEAR(dots[1], 1.2, 1e-15);

    const Glyph zero = map_spc3d(point({0, 0, 0, 0}), ones, {});
    for (const auto& m : zero.markers) {
        EXPECT_EQ(m.position.z, 0.0);
    }
}

TEST(Spc3d, SharedFirstPairDifferentApex) {
    const Glyph a = map_spc3d(paper_point, ones, {});
    const Glyph b = map_spc3d(point({0.1, 0.4, 0.2, 0.8}), ones, {});
    EXPECT_EQ(a.nodes[0], b.nodes[0]);
    EXPECT_NE(a.nodes[2], b.nodes[2]);
    EXPECT_NE(a.nodes[1].z, b.nodes[1].z);
}

TEST(Spc3d, TopViewMatchesSpc2d) {
    std::mt19937_64 rng(1);
    for (std::size_t n : {2u, 5u, 8u}) {
        const LinearModel m = test::random_model(rng, n);
        const CaseRecord x = test::unit_case(rng, n);
        const Glyph flat = map_spc2d(x, {});
        const Glyph tall = map_spc3d(x, m, {});
        for (std::size_t k = 0; k < flat.nodes.size(); ++k) {
            EXPECT_EQ(tall.nodes[2 * k], flat.nodes[k]);
        }
    }
}

TEST(Stc, NodesAndPadding) {
    const Glyph g = map_stc(point({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}), {});
    ASSERT_EQ(g.nodes.size(), 2u);
    expect_vec(g.nodes[0], {0.1, 0.2, 0.3});
    expect_vec(g.nodes[1], {1.25 + 0.4, 0.5, 0.6});

    const Glyph padded = map_stc(paper_point, {});
    EXPECT_EQ(padded.nodes.size(), 2u);
    EXPECT_EQ(padded.padding, 2u);
    EXPECT_EQ(reconstruct(padded, {}).values, paper_point.values);

    const Glyph zero = map_stc(point({0, 0, 0}), {});
    expect_vec(zero.nodes[0], {0, 0, 0});
}

TEST(Glcl, WorkedExample) {
    const LinearModel m = LinearModel::from_coefficients({0.4, 0.2});
    const Glyph g = map_glcl(point({0.4, 0.4}), m, {0, 0, 0}, {});
    ASSERT_EQ(g.nodes.size(), 3u);
    EXPECT_NEAR(g.nodes[1].z - g.nodes[0].z, 0.4, 1e-12);
    EXPECT_NEAR(g.nodes[2].z - g.nodes[1].z, 0.2, 1e-12);
    EXPECT_NEAR(g.nodes[2].z, 0.6, 1e-12);
}

TEST(Glcl, FlatWhenAllAnglesAreRight) {
    // Coefficients of exactly zero are only reachable by bypassing from_coefficients' max|a| = 1,
    // so use a model where every attribute but a zero-valued one has Q = pi/2.
    const LinearModel m = LinearModel::from_coefficients({0.0, 0.0, 1.0});
    const Vec3 anchor{2.0, 3.0, 0.5};
    const Glyph g = map_glcl(point({0.3, 0.8, 0.0}), m, anchor, {});
    EXPECT_EQ(g.nodes.back().z, anchor.z);
}

TEST(Glcl, EndpointHeightIsPlacementInvariant) {
    std::mt19937_64 rng(4);
    LayoutConfig free_cfg;
    free_cfg.glcl_placement = GlclPlacement::free_3d;
    free_cfg.random_seed = 99;
    for (std::size_t t = 0; t < 100; ++t) {
        const LinearModel m = test::random_model(rng, 5);
        const CaseRecord x = test::unit_case(rng, 5, t);
        const Glyph anchored = map_glcl(x, m, {0, 0, 0}, {});
        const Glyph free = map_glcl(x, m, {0, 0, 0}, free_cfg);
        EXPECT_NEAR(anchored.nodes.back().z, evaluate(m, x), 1e-12);
        EXPECT_NEAR(free.nodes.back().z, anchored.nodes.back().z, 1e-12);
        EXPECT_EQ(free, map_glcl(x, m, {0, 0, 0}, free_cfg));
    }
}

TEST(Glc3sl, OnePolylinePerCubeEndingAtF) {
    const Dataset iris = test::iris();
    const LinearModel m = LinearModel::from_coefficients({0.5, -0.3, 1.0, 0.8});
    for (const auto& x : iris.cases()) {
        const Glyph g = map_glc3sl(x, m, {});
        ASSERT_EQ(g.strokes.size(), 2u);
        ASSERT_EQ(g.nodes.size(), 10u);
        const double f = evaluate(m, x);
        for (const auto& stroke : g.strokes) {
            ASSERT_EQ(stroke.size(), 5u);
            EXPECT_NEAR(g.nodes[stroke.back()].z - g.nodes[stroke.front()].z, f, 1e-12);
        }
    }
    const Glyph zero = map_glc3sl(point({0, 0, 0, 0}), m, {});
    for (const auto& stroke : zero.strokes) {
        for (auto i : stroke) {
            EXPECT_EQ(zero.nodes[i], zero.nodes[stroke.front()]);
        }
    }
}

TEST(MapCase, RequiresModel) {
    EXPECT_THROW((void)map_case(GlyphKind::spc3d, paper_point, nullptr, {}), ConfigurationError);
    EXPECT_THROW((void)map_case(GlyphKind::glc3sl, paper_point, nullptr, {}), ConfigurationError);
    EXPECT_NO_THROW((void)map_case(GlyphKind::stc, paper_point, nullptr, {}));
    const LinearModel two = LinearModel::from_coefficients({1, 1});
    EXPECT_THROW((void)map_case(GlyphKind::spc3d, paper_point, &two, {}), ContractError);
}

TEST(Reconstruct, AllKindsRoundTrip) {
    std::mt19937_64 rng(8);
    LayoutConfig scaled;
    scaled.cube_size = 2.5;
    scaled.cube_spacing = 0.4;
    scaled.glcl_placement = GlclPlacement::free_3d;
    for (std::size_t n : {1u, 3u, 4u, 7u}) {
        for (int t = 0; t < 20; ++t) {
            const LinearModel m = test::random_model(rng, n);
            const CaseRecord x = test::unit_case(rng, n);
            for (auto kind : {GlyphKind::spc2d, GlyphKind::spc3d, GlyphKind::stc, GlyphKind::glcl, GlyphKind::glc3sl}) {
                for (const LayoutConfig& cfg : {LayoutConfig{}, scaled}) {
                    const CaseRecord back = reconstruct(map_case(kind, x, &m, cfg), cfg, &m);
                    ASSERT_EQ(back.values.size(), n);
                    for (std::size_t i = 0; i < n; ++i) {
                        EXPECT_NEAR(back.values[i], x.values[i], 1e-9) << to_string(kind);
                    }
                }
            }
        }
    }
}

TEST(Reconstruct, DetectsInconsistentGlyphs) {
    Glyph g = map_spc3d(paper_point, ones, {});
    g.nodes[1].z += 0.1;
    EXPECT_THROW((void)reconstruct(g, {}, &ones), ContractError);

    Glyph moved = map_glc3sl(paper_point, ones, {});
    for (auto& p : moved.nodes) {
        p.x += 0.3;
    }
    EXPECT_THROW((void)reconstruct(moved, {}, &ones), ContractError);

    Glyph short_glyph = map_spc2d(paper_point, {});
    short_glyph.nodes.pop_back();
    EXPECT_THROW((void)reconstruct(short_glyph, {}), ContractError);
}

TEST(Names, ParseBothSpellings) {
    EXPECT_EQ(parse_glyph_kind("spc3d"), GlyphKind::spc3d);
    EXPECT_EQ(parse_glyph_kind("spc3d-figure"), GlyphKind::spc3d);
    EXPECT_THROW((void)parse_glyph_kind("spc4d"), LookupError);
    EXPECT_EQ(parse_glcl_placement("free-3d"), GlclPlacement::free_3d);
    LayoutConfig bad;
    bad.cube_size = 0.0;
    EXPECT_THROW(bad.validate(), ValidationError);
}
