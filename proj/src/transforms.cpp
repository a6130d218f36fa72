#include "glc3d/transforms.hpp"

#include "glc3d/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace glc3d {

namespace {

constexpr double reconstruction_slack = 1e-9;

void require_unit_values(const CaseRecord& x) {
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        const double v = x.values[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError("case " + std::to_string(x.id) + " attribute " + std::to_string(i) +
                                  " is outside [0, 1]; normalize the dataset first");
        }
    }
}

void require_model(const LinearModel& model, const CaseRecord& x) {
    if (model.dimension() != x.dimension()) {
        throw ContractError("model has " + std::to_string(model.dimension()) + " coefficients, case has " +
                            std::to_string(x.dimension()) + " values");
    }
}

Glyph start_glyph(const CaseRecord& x, GlyphKind kind, std::size_t padding) {
    Glyph g;
    g.case_id = x.id;
    g.kind = kind;
    g.class_label = x.class_label;
    g.dimension = x.dimension();
    g.padding = padding;
    return g;
}

std::vector<std::uint32_t> index_range(std::size_t begin, std::size_t end, std::size_t step = 1) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = begin; i < end; i += step) {
        out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

Vec3 spc_base(const CaseRecord& padded, std::size_t cube, const LayoutConfig& cfg) {
    return {cfg.cube_origin_x(cube) + padded.values[2 * cube] * cfg.cube_size,
            padded.values[2 * cube + 1] * cfg.cube_size, 0.0};
}

// Horizontal azimuths for free-3d GLC-L, one per attribute, fixed per (seed, case).
std::vector<double> azimuths(std::uint64_t seed, std::size_t case_id, std::size_t count) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(case_id) + 1)));
    std::vector<double> out(count);
    for (auto& phi : out) {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
        phi = 2.0 * std::numbers::pi * unit;
    }
    return out;
}

// Appends the n-segment GLC-L polyline starting at `anchor`; returns its node indices.
std::vector<std::uint32_t> append_glcl_polyline(Glyph& g, const CaseRecord& x, const LinearModel& model, Vec3 anchor,
                                                const LayoutConfig& cfg) {
    const auto& a = model.normalized_coefficients();
    const auto& q = model.angles();
    const std::size_t n = x.dimension();
    std::vector<double> phi;
    if (cfg.glcl_placement == GlclPlacement::free_3d) {
        phi = azimuths(cfg.random_seed, x.id, n);
    }
    const std::size_t first = g.nodes.size();
    g.nodes.push_back(anchor);
    Vec3 p = anchor;
    for (std::size_t i = 0; i < n; ++i) {
        const double horizontal = std::sin(q[i]) * x.values[i];
        if (cfg.glcl_placement == GlclPlacement::free_3d) {
            p.x += horizontal * std::cos(phi[i]);
            p.y += horizontal * std::sin(phi[i]);
        } else {
            p.y += horizontal;
        }
        p.z += a[i] * x.values[i];
        g.nodes.push_back(p);
    }
    return index_range(first, g.nodes.size());
}

double norm(const Vec3& from, const Vec3& to) {
    return std::sqrt((to.x - from.x) * (to.x - from.x) + (to.y - from.y) * (to.y - from.y) +
                     (to.z - from.z) * (to.z - from.z));
}

void check_structure(bool ok, const Glyph& g, const char* what) {
    if (!ok) {
        throw ContractError("glyph for case " + std::to_string(g.case_id) + " (" + std::string(to_string(g.kind)) +
                            ") does not match the layout: " + what);
    }
}

void check_unit(double v, const Glyph& g) {
    check_structure(v >= -reconstruction_slack && v <= 1.0 + reconstruction_slack, g, "coordinate outside its cube");
}

CaseRecord finish(const Glyph& g, std::vector<double> values) {
    CaseRecord out;
    out.id = g.case_id;
    out.class_label = g.class_label;
    values.resize(g.dimension);
    out.values = std::move(values);
    return out;
}

std::vector<double> glcl_lengths(const Glyph& g, std::size_t first_node, const LinearModel* model) {
    std::vector<double> values(g.dimension);
    for (std::size_t i = 0; i < g.dimension; ++i) {
        const Vec3& from = g.nodes[first_node + i];
        const Vec3& to = g.nodes[first_node + i + 1];
        values[i] = norm(from, to);
        check_unit(values[i], g);
        if (model != nullptr) {
            const double dz = to.z - from.z;
            check_structure(std::abs(dz - model->normalized_coefficients()[i] * values[i]) <= reconstruction_slack, g,
                            "segment height disagrees with the model");
        }
    }
    return values;
}

}  // namespace

std::string_view to_string(GlclPlacement placement) noexcept {
    return placement == GlclPlacement::free_3d ? "free-3d" : "anchored-plane";
}

GlclPlacement parse_glcl_placement(std::string_view text) {
    if (text == "anchored-plane") {
        return GlclPlacement::anchored_plane;
    }
    if (text == "free-3d") {
        return GlclPlacement::free_3d;
    }
    throw LookupError("unknown GLC-L placement '" + std::string(text) + "' (valid: anchored-plane, free-3d)");
}

void LayoutConfig::validate() const {
    if (!(std::isfinite(cube_size) && cube_size > 0.0)) {
        throw ValidationError("cube_size must be positive");
    }
    if (!(std::isfinite(cube_spacing) && cube_spacing > 0.0)) {
        throw ValidationError("cube_spacing must be positive");
    }
}

std::string_view to_string(GlyphKind kind) noexcept {
    switch (kind) {
        case GlyphKind::spc2d: return "spc2d-polyline";
        case GlyphKind::spc3d: return "spc3d-figure";
        case GlyphKind::stc: return "stc-polyline";
        case GlyphKind::glcl: return "glcl-polyline";
        case GlyphKind::glc3sl: return "glc3sl-figure";
    }
    return "unknown";
}

std::string_view view_name(GlyphKind kind) noexcept {
    switch (kind) {
        case GlyphKind::spc2d: return "spc2d";
        case GlyphKind::spc3d: return "spc3d";
        case GlyphKind::stc: return "stc";
        case GlyphKind::glcl: return "glcl";
        case GlyphKind::glc3sl: return "glc3sl";
    }
    return "unknown";
}

GlyphKind parse_glyph_kind(std::string_view text) {
    for (GlyphKind kind : {GlyphKind::spc2d, GlyphKind::spc3d, GlyphKind::stc, GlyphKind::glcl, GlyphKind::glc3sl}) {
        if (text == to_string(kind) || text == view_name(kind)) {
            return kind;
        }
    }
    throw LookupError("unknown view kind '" + std::string(text) + "' (valid: spc2d, spc3d, stc, glcl, glc3sl)");
}

bool needs_model(GlyphKind kind) noexcept {
    return kind == GlyphKind::spc3d || kind == GlyphKind::glcl || kind == GlyphKind::glc3sl;
}

std::string_view to_string(MarkerRole role) noexcept {
    switch (role) {
        case MarkerRole::contribution_dot: return "contribution-dot";
        case MarkerRole::apex: return "apex";
        case MarkerRole::origin: return "origin";
    }
    return "unknown";
}

MarkerRole parse_marker_role(std::string_view text) {
    for (MarkerRole role : {MarkerRole::contribution_dot, MarkerRole::apex, MarkerRole::origin}) {
        if (text == to_string(role)) {
            return role;
        }
    }
    throw LookupError("unknown marker role '" + std::string(text) + "'");
}

Glyph map_spc2d(const CaseRecord& x, const LayoutConfig& cfg) {
    cfg.validate();
    require_unit_values(x);
    const CaseRecord padded = pad_to_multiple(x, 2);
    Glyph g = start_glyph(x, GlyphKind::spc2d, padded.padding);
    const std::size_t cubes = padded.values.size() / 2;
    for (std::size_t k = 0; k < cubes; ++k) {
        g.nodes.push_back(spc_base(padded, k, cfg));
    }
    g.strokes.push_back(index_range(0, g.nodes.size()));
    return g;
}

Glyph map_spc3d(const CaseRecord& x, const LinearModel& model, const LayoutConfig& cfg) {
    cfg.validate();
    require_unit_values(x);
    require_model(model, x);
    const CaseRecord padded = pad_to_multiple(x, 2);
    Glyph g = start_glyph(x, GlyphKind::spc3d, padded.padding);
    const double f = evaluate(model, x);
    const std::size_t cubes = padded.values.size() / 2;
    for (std::size_t k = 0; k < cubes; ++k) {
        const Vec3 base = spc_base(padded, k, cfg);
        const Vec3 apex{base.x, base.y, f};
        g.nodes.push_back(base);
        g.nodes.push_back(apex);
        g.strokes.push_back({static_cast<std::uint32_t>(2 * k), static_cast<std::uint32_t>(2 * k + 1)});
        g.markers.push_back({apex, MarkerRole::apex, k});
        g.markers.push_back({{base.x, base.y, contribution(model, x, k)}, MarkerRole::contribution_dot, k});
    }
    if (cubes > 1) {
        g.strokes.push_back(index_range(1, g.nodes.size(), 2));
    }
    return g;
}

Glyph map_stc(const CaseRecord& x, const LayoutConfig& cfg) {
    cfg.validate();
    require_unit_values(x);
    const CaseRecord padded = pad_to_multiple(x, 3);
    Glyph g = start_glyph(x, GlyphKind::stc, padded.padding);
    const std::size_t cubes = padded.values.size() / 3;
    for (std::size_t k = 0; k < cubes; ++k) {
        const auto* v = padded.values.data() + 3 * k;
        g.nodes.push_back({cfg.cube_origin_x(k) + v[0] * cfg.cube_size, v[1] * cfg.cube_size, v[2] * cfg.cube_size});
    }
    g.strokes.push_back(index_range(0, g.nodes.size()));
    return g;
}

Glyph map_glcl(const CaseRecord& x, const LinearModel& model, Vec3 anchor, const LayoutConfig& cfg) {
    cfg.validate();
    require_unit_values(x);
    require_model(model, x);
    Glyph g = start_glyph(x, GlyphKind::glcl, 0);
    g.strokes.push_back(append_glcl_polyline(g, strip_padding(x), model, anchor, cfg));
    g.markers.push_back({anchor, MarkerRole::origin, 0});
    return g;
}

Glyph map_glc3sl(const CaseRecord& x, const LinearModel& model, const LayoutConfig& cfg) {
    cfg.validate();
    require_unit_values(x);
    require_model(model, x);
    const CaseRecord padded = pad_to_multiple(x, 2);
    const CaseRecord plain = strip_padding(x);
    Glyph g = start_glyph(x, GlyphKind::glc3sl, padded.padding);
    const std::size_t cubes = padded.values.size() / 2;
    for (std::size_t k = 0; k < cubes; ++k) {
        const Vec3 anchor = spc_base(padded, k, cfg);
        g.strokes.push_back(append_glcl_polyline(g, plain, model, anchor, cfg));
        g.markers.push_back({anchor, MarkerRole::origin, k});
    }
    return g;
}

Glyph map_case(GlyphKind kind, const CaseRecord& x, const LinearModel* model, const LayoutConfig& cfg) {
    if (needs_model(kind) && model == nullptr) {
        throw ConfigurationError("view '" + std::string(view_name(kind)) + "' requires a linear model");
    }
    switch (kind) {
        case GlyphKind::spc2d: return map_spc2d(x, cfg);
        case GlyphKind::spc3d: return map_spc3d(x, *model, cfg);
        case GlyphKind::stc: return map_stc(x, cfg);
        case GlyphKind::glcl: return map_glcl(x, *model, {cfg.cube_origin_x(0), 0.0, 0.0}, cfg);
        case GlyphKind::glc3sl: return map_glc3sl(x, *model, cfg);
    }
    throw ContractError("unknown glyph kind");
}

CaseRecord reconstruct(const Glyph& g, const LayoutConfig& cfg, const LinearModel* model) {
    cfg.validate();
    const std::size_t padded_n = g.dimension + g.padding;
    check_structure(g.dimension > 0, g, "empty glyph");
    if (model != nullptr && model->dimension() != g.dimension) {
        throw ContractError("reconstruct: model dimensionality differs from the glyph");
    }

    const auto spc_values = [&](std::size_t node_step) {
        std::vector<double> values(padded_n);
        for (std::size_t k = 0; k < padded_n / 2; ++k) {
            const Vec3& base = g.nodes[node_step * k];
            check_structure(base.z == 0.0, g, "base node above the cube floor");
            values[2 * k] = (base.x - cfg.cube_origin_x(k)) / cfg.cube_size;
            values[2 * k + 1] = base.y / cfg.cube_size;
            check_unit(values[2 * k], g);
            check_unit(values[2 * k + 1], g);
        }
        return values;
    };

    switch (g.kind) {
        case GlyphKind::spc2d: {
            check_structure(padded_n % 2 == 0 && g.nodes.size() == padded_n / 2, g, "node count");
            return finish(g, spc_values(1));
        }
        case GlyphKind::spc3d: {
            check_structure(padded_n % 2 == 0 && g.nodes.size() == padded_n, g, "node count");
            CaseRecord out = finish(g, spc_values(2));
            if (model != nullptr) {
                const double f = evaluate(*model, out);
                for (std::size_t k = 1; k < g.nodes.size(); k += 2) {
                    check_structure(std::abs(g.nodes[k].z - f) <= reconstruction_slack, g,
                                    "apex height disagrees with the model");
                }
            }
            return out;
        }
        case GlyphKind::stc: {
            check_structure(padded_n % 3 == 0 && g.nodes.size() == padded_n / 3, g, "node count");
            std::vector<double> values(padded_n);
            for (std::size_t k = 0; k < g.nodes.size(); ++k) {
                const Vec3& p = g.nodes[k];
                values[3 * k] = (p.x - cfg.cube_origin_x(k)) / cfg.cube_size;
                values[3 * k + 1] = p.y / cfg.cube_size;
                values[3 * k + 2] = p.z / cfg.cube_size;
                for (std::size_t i = 0; i < 3; ++i) {
                    check_unit(values[3 * k + i], g);
                }
            }
            return finish(g, std::move(values));
        }
        case GlyphKind::glcl: {
            check_structure(g.nodes.size() == g.dimension + 1, g, "node count");
            return finish(g, glcl_lengths(g, 0, model));
        }
        case GlyphKind::glc3sl: {
            const std::size_t per_cube = g.dimension + 1;
            const std::size_t cubes = padded_n / 2;
            check_structure(padded_n % 2 == 0 && g.nodes.size() == cubes * per_cube, g, "node count");
            std::vector<double> values = glcl_lengths(g, 0, model);
            // Anchors must sit at the SPC base node each cube encodes.
            const CaseRecord padded = pad_to_multiple(finish(g, values), 2);
            for (std::size_t k = 0; k < cubes; ++k) {
                const Vec3 expected = spc_base(padded, k, cfg);
                const Vec3& anchor = g.nodes[k * per_cube];
                check_structure(std::abs(anchor.x - expected.x) <= reconstruction_slack &&
                                    std::abs(anchor.y - expected.y) <= reconstruction_slack && anchor.z == 0.0,
                                g, "polyline anchor is not at its SPC base node");
            }
            return finish(g, std::move(values));
        }
    }
    throw ContractError("unknown glyph kind");
}

}  // namespace glc3d
