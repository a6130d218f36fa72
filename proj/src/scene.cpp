#include "glc3d/scene.hpp"

#include "glc3d/canonical_json.hpp"
#include "glc3d/error.hpp"
#include "glc3d/rule_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace glc3d {

using nlohmann::json;

std::string_view to_string(Visibility v) noexcept {
    switch (v) {
        case Visibility::normal: return "normal";
        case Visibility::grayed: return "grayed";
        case Visibility::hidden: return "hidden";
    }
    return "unknown";
}

std::string_view to_string(OverlayKind k) noexcept {
    switch (k) {
        case OverlayKind::threshold_plane: return "threshold-plane";
        case OverlayKind::regression_plane: return "regression-plane";
        case OverlayKind::rule_rectangle: return "rule-rectangle";
        case OverlayKind::interval_plane_pair: return "interval-plane-pair";
    }
    return "unknown";
}

std::string_view to_string(Projection p) noexcept {
    return p == Projection::orthographic ? "orthographic" : "perspective";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<Enum, N>& values, const char* what) {
    for (Enum e : values) {
        if (to_string(e) == text) {
            return e;
        }
    }
    throw ParseError(std::string("unknown ") + what + " '" + std::string(text) + "'");
}

constexpr std::array all_visibilities{Visibility::normal, Visibility::grayed, Visibility::hidden};
constexpr std::array all_overlay_kinds{OverlayKind::threshold_plane, OverlayKind::regression_plane,
                                       OverlayKind::rule_rectangle, OverlayKind::interval_plane_pair};
constexpr std::array all_projections{Projection::perspective, Projection::orthographic};

Vec3 sub(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 scale(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
Vec3 normalized(Vec3 a) { return scale(a, 1.0 / std::sqrt(dot(a, a))); }

CameraPreset make_camera(std::string name, Vec3 position, Vec3 look_at, Vec3 up, Projection projection) {
    // Gram-Schmidt: up loses its component along the view direction.
    const Vec3 forward = normalized(sub(look_at, position));
    const Vec3 ortho_up = normalized(sub(up, scale(forward, dot(up, forward))));
    return {std::move(name), position, look_at, ortho_up, projection};
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

struct Extent {
    double x0, x1, y0, y1;
};

Quad horizontal_quad(const Extent& e, double z) {
    return {{Vec3{e.x0, e.y0, z}, Vec3{e.x1, e.y0, z}, Vec3{e.x1, e.y1, z}, Vec3{e.x0, e.y1, z}}};
}

}  // namespace

const std::vector<std::string>& camera_preset_names() {
    static const std::vector<std::string> names{"front",       "top",    "ortho-left", "low-front",
                                                "middle-front", "center", "left",       "right"};
    return names;
}

CameraPreset camera_preset(std::string_view name, const LayoutConfig& layout, std::size_t cubes) {
    const std::size_t count = std::max<std::size_t>(cubes, 1);
    const double size = layout.cube_size;
    const double x0 = 0.0;
    const double x1 = layout.cube_origin_x(count - 1) + size;
    const Vec3 center{(x0 + x1) / 2.0, size / 2.0, size / 2.0};
    const double distance = 1.5 * std::max(x1 - x0, size) + 2.0 * size;
    constexpr Vec3 z_up{0.0, 0.0, 1.0};

    if (name == "front") {
        return make_camera("front", {center.x, center.y + distance, center.z}, center, z_up,
                           Projection::perspective);
    }
    if (name == "top") {
        return make_camera("top", {center.x, center.y, center.z + distance}, center, {0.0, 1.0, 0.0},
                           Projection::orthographic);
    }
    if (name == "ortho-left") {
        return make_camera("ortho-left", {x0 - distance, center.y, center.z}, center, z_up, Projection::orthographic);
    }
    if (name == "low-front") {
        return make_camera("low-front", {center.x, center.y + distance, center.z - 0.75 * size}, center, z_up,
                           Projection::perspective);
    }
    if (name == "middle-front") {
        return make_camera("middle-front", {center.x, center.y + distance, center.z + 0.75 * size}, center, z_up,
                           Projection::perspective);
    }
    if (name == "center") {
        return make_camera("center", {center.x, center.y + 0.7 * distance, center.z + 0.7 * distance}, center, z_up,
                           Projection::perspective);
    }
    if (name == "left") {
        return make_camera("left", {x0 - distance, center.y, center.z}, center, z_up, Projection::perspective);
    }
    if (name == "right") {
        return make_camera("right", {x1 + distance, center.y, center.z}, center, z_up, Projection::perspective);
    }
    std::string valid;
    for (const auto& n : camera_preset_names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw LookupError("unknown camera preset '" + std::string(name) + "' (valid: " + valid + ")");
}

CameraPreset camera_preset(std::string_view name) {
    return camera_preset(name, LayoutConfig{}, 2);
}

std::map<std::string, std::string> default_palette(std::span<const std::string> class_labels) {
    static const std::array<const char*, 8> cycle{"#d62728", "#2ca02c", "#1f77b4", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    std::map<std::string, std::string> palette;
    std::vector<bool> used(cycle.size(), false);
    for (const auto& label : class_labels) {
        const std::string lower = lowercase(label);
        std::optional<std::size_t> fixed;
        if (lower.find("setosa") != std::string::npos) {
            fixed = 0;
        } else if (lower.find("versicolor") != std::string::npos) {
            fixed = 1;
        } else if (lower.find("virginica") != std::string::npos) {
            fixed = 2;
        }
        if (fixed && !used[*fixed]) {
            palette[label] = cycle[*fixed];
            used[*fixed] = true;
        }
    }
    std::size_t next = 0;
    for (const auto& label : class_labels) {
        if (palette.contains(label)) {
            continue;
        }
        if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) {
            std::fill(used.begin(), used.end(), false);
        }
        while (used[next % cycle.size()]) {
            ++next;
        }
        palette[label] = cycle[next % cycle.size()];
        used[next % cycle.size()] = true;
    }
    return palette;
}

Scene build_scene(const Dataset& dataset, GlyphKind view, const LinearModel* model, std::span<const Rule> rules,
                  const SceneOptions& options) {
    if (!dataset.is_normalized()) {
        throw ValidationError("build_scene requires a normalized dataset");
    }
    if (needs_model(view) && model == nullptr) {
        throw ConfigurationError("view '" + std::string(view_name(view)) + "' requires a linear model");
    }
    if (model != nullptr && model->dimension() != dataset.dimension()) {
        throw ContractError("model has " + std::to_string(model->dimension()) + " coefficients, data has " +
                            std::to_string(dataset.dimension()) + " attributes");
    }
    if (options.select_by_model && (model == nullptr || !model->threshold())) {
        throw ConfigurationError("select_by_model needs a model with a threshold");
    }
    options.layout.validate();

    Scene scene;
    scene.view = view;
    scene.layout = options.layout;
    if (model != nullptr) {
        scene.model = *model;
    }
    scene.palette = default_palette(dataset.class_labels());

    scene.toggles = {{"threshold_plane", true},
                     {"interval_planes", true},
                     {"contribution_dots", true},
                     {"grayed_cases", true},
                     {"glcl_overlay", view == GlyphKind::glc3sl || view == GlyphKind::glcl}};
    for (const auto& label : dataset.class_labels()) {
        scene.toggles["class:" + label] = true;
    }
    for (const auto& [key, value] : options.toggles) {
        scene.toggles[key] = value;
    }

    std::vector<std::uint8_t> selected(dataset.size(), 1);
    std::vector<Hyperblock> regions;
    for (const auto& rule : rules) {
        regions.push_back(rule_region(rule, dataset.dimension()));
        const auto mask = coverage_mask(dataset, regions.back());
        for (std::size_t j = 0; j < selected.size(); ++j) {
            selected[j] &= mask[j];
        }
    }
    if (options.select_by_model) {
        const auto mask = discriminant_mask(*model, dataset);
        for (std::size_t j = 0; j < selected.size(); ++j) {
            selected[j] &= mask[j];
        }
    }

    const std::size_t n = dataset.dimension();
    const std::size_t cubes = view == GlyphKind::stc ? (n + 2) / 3 : pair_count(n);
    Extent extent{0.0, options.layout.cube_origin_x(cubes - 1) + options.layout.cube_size, 0.0,
                  options.layout.cube_size};

    scene.glyphs.reserve(dataset.size());
    for (std::size_t j = 0; j < dataset.size(); ++j) {
        const CaseRecord& record = dataset.cases()[j];
        SceneGlyph sg{map_case(view, record, model, options.layout), Visibility::normal};
        for (const auto& p : sg.glyph.nodes) {
            extent.x0 = std::min(extent.x0, p.x);
            extent.x1 = std::max(extent.x1, p.x);
            extent.y0 = std::min(extent.y0, p.y);
            extent.y1 = std::max(extent.y1, p.y);
        }
        const auto toggle = scene.toggles.find("class:" + record.class_label);
        if (toggle != scene.toggles.end() && !toggle->second) {
            sg.visibility = Visibility::hidden;
        } else if (selected[j] == 0) {
            sg.visibility = Visibility::grayed;
            sg.glyph.strokes.clear();
        }
        scene.glyphs.push_back(std::move(sg));
    }

    const bool f_view = needs_model(view);
    if (f_view && model->threshold()) {
        Overlay plane;
        plane.kind = OverlayKind::threshold_plane;
        plane.color_role = "threshold";
        plane.interactive = true;
        plane.levels = {*model->threshold()};
        plane.quads = {horizontal_quad(extent, *model->threshold())};
        scene.overlays.push_back(std::move(plane));
    }

    const bool pair_view = view == GlyphKind::spc2d || view == GlyphKind::spc3d || view == GlyphKind::glc3sl;
    const double size = options.layout.cube_size;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        if (pair_view) {
            const auto& bounds = regions[r].bounds();
            for (std::size_t k = 0; k < pair_count(n); ++k) {
                const Interval bx = bounds[2 * k];
                const Interval by = bounds[std::min(2 * k + 1, n - 1)];
                const bool restricted = bx != Interval{0.0, 1.0} || by != Interval{0.0, 1.0};
                const auto* rect = std::get_if<RectangleRule>(&rules[r]);
                const bool listed = rect != nullptr && std::any_of(rect->rectangles.begin(), rect->rectangles.end(),
                                                                   [&](const PairBox& b) { return b.pair == k; });
                if (!restricted && !listed) {
                    continue;
                }
                const double ox = options.layout.cube_origin_x(k);
                Overlay rectangle;
                rectangle.kind = OverlayKind::rule_rectangle;
                rectangle.color_role = "rule";
                rectangle.interactive = true;
                rectangle.rule_index = r;
                rectangle.pair_index = k;
                rectangle.quads = {horizontal_quad({ox + bx.lo * size, ox + bx.hi * size, by.lo * size, by.hi * size},
                                                   0.0)};
                scene.overlays.push_back(std::move(rectangle));
            }
        }
        if (f_view) {
            const auto [f1, f2] = regression_interval(regions[r], *model);
            Overlay pair;
            pair.kind = OverlayKind::interval_plane_pair;
            pair.color_role = "interval";
            pair.rule_index = r;
            pair.levels = {f1, f2};
            pair.quads = {horizontal_quad(extent, f1), horizontal_quad(extent, f2)};
            scene.overlays.push_back(std::move(pair));
        }
    }

    if (options.regression_reference) {
        if (model == nullptr) {
            throw ConfigurationError("a regression plane needs a linear model");
        }
        if (*options.regression_reference >= dataset.size()) {
            throw ContractError("regression reference case index out of range");
        }
        const CaseRecord& reference = dataset.cases()[*options.regression_reference];
        for (std::size_t k = 0; k < pair_count(n); ++k) {
            const RegressionPlane rp = build_regression_plane(*model, reference, k);
            const double ox = options.layout.cube_origin_x(k);
            const auto& c = rp.corner_values;  // (0,0), (0,1), (1,0), (1,1)
            Overlay plane;
            plane.kind = OverlayKind::regression_plane;
            plane.color_role = "regression";
            plane.pair_index = k;
            plane.quads = {Quad{{Vec3{ox, 0.0, c[0]}, Vec3{ox + size, 0.0, c[2]}, Vec3{ox + size, size, c[3]},
                                 Vec3{ox, size, c[1]}}}};
            scene.overlays.push_back(std::move(plane));
        }
    }

    for (const auto& name : camera_preset_names()) {
        scene.cameras.emplace(name, camera_preset(name, options.layout, cubes));
    }
    validate_scene(scene);
    return scene;
}

void validate_scene(const Scene& scene) {
    for (const auto& sg : scene.glyphs) {
        if (!scene.palette.contains(sg.glyph.class_label)) {
            throw ValidationError("class '" + sg.glyph.class_label + "' has no palette entry");
        }
        if (sg.visibility == Visibility::grayed && !sg.glyph.strokes.empty()) {
            throw ValidationError("grayed glyph " + std::to_string(sg.glyph.case_id) + " still has strokes");
        }
        for (const auto& stroke : sg.glyph.strokes) {
            for (auto index : stroke) {
                if (index >= sg.glyph.nodes.size()) {
                    throw ValidationError("glyph " + std::to_string(sg.glyph.case_id) + " stroke index out of range");
                }
            }
        }
    }
    for (const auto& overlay : scene.overlays) {
        const bool horizontal =
            overlay.kind == OverlayKind::threshold_plane || overlay.kind == OverlayKind::interval_plane_pair;
        if (horizontal) {
            const std::size_t planes = overlay.kind == OverlayKind::threshold_plane ? 1 : 2;
            if (overlay.quads.size() != planes || overlay.levels.size() != planes) {
                throw ValidationError(std::string(to_string(overlay.kind)) + " needs " + std::to_string(planes) +
                                      " plane(s)");
            }
            for (std::size_t q = 0; q < planes; ++q) {
                for (const auto& corner : overlay.quads[q].corners) {
                    if (corner.z != overlay.levels[q]) {
                        throw ValidationError(std::string(to_string(overlay.kind)) + " is not horizontal at its level");
                    }
                }
            }
        }
    }
    for (const auto& [name, camera] : scene.cameras) {
        if (name != camera.name) {
            throw ValidationError("camera key '" + name + "' does not match its name");
        }
    }
}

namespace {

json vec_json(const Vec3& v) {
    return json::array({v.x, v.y, v.z});
}

const json& field(const json& object, const char* key) {
    const auto it = object.find(key);
    if (it == object.end()) {
        throw ParseError(std::string("scene: missing field '") + key + "'");
    }
    return *it;
}

Vec3 vec_from(const json& value) {
    if (!value.is_array() || value.size() != 3) {
        throw ParseError("scene: expected a 3-element point");
    }
    return {value[0].get<double>(), value[1].get<double>(), value[2].get<double>()};
}

std::optional<std::size_t> optional_index(const json& object, const char* key) {
    const auto it = object.find(key);
    if (it == object.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<std::size_t>();
}

}  // namespace

std::string serialize(const Scene& scene) {
    validate_scene(scene);
    json glyphs = json::array();
    for (const auto& sg : scene.glyphs) {
        const Glyph& g = sg.glyph;
        json nodes = json::array();
        for (const auto& p : g.nodes) {
            nodes.push_back(vec_json(p));
        }
        json markers = json::array();
        for (const auto& m : g.markers) {
            markers.push_back({{"role", to_string(m.role)}, {"cube", m.cube}, {"position", vec_json(m.position)}});
        }
        glyphs.push_back({{"case_id", g.case_id},
                          {"kind", to_string(g.kind)},
                          {"class_label", g.class_label},
                          {"visibility", to_string(sg.visibility)},
                          {"dimension", g.dimension},
                          {"padding", g.padding},
                          {"nodes", nodes},
                          {"strokes", g.strokes},
                          {"markers", markers}});
    }
    json overlays = json::array();
    for (const auto& o : scene.overlays) {
        json quads = json::array();
        for (const auto& q : o.quads) {
            json corners = json::array();
            for (const auto& c : q.corners) {
                corners.push_back(vec_json(c));
            }
            quads.push_back(corners);
        }
        overlays.push_back({{"kind", to_string(o.kind)},
                            {"color_role", o.color_role},
                            {"interactive", o.interactive},
                            {"levels", o.levels},
                            {"quads", quads},
                            {"rule_index", o.rule_index ? json(*o.rule_index) : json(nullptr)},
                            {"pair_index", o.pair_index ? json(*o.pair_index) : json(nullptr)}});
    }
    json cameras = json::object();
    for (const auto& [name, c] : scene.cameras) {
        cameras[name] = {{"position", vec_json(c.position)},
                         {"look_at", vec_json(c.look_at)},
                         {"up", vec_json(c.up)},
                         {"projection", to_string(c.projection)}};
    }
    const json doc = {
        {"format_version", scene_format_version},
        {"view", view_name(scene.view)},
        {"layout",
         {{"cube_size", scene.layout.cube_size},
          {"cube_spacing", scene.layout.cube_spacing},
          {"glcl_placement", to_string(scene.layout.glcl_placement)},
          {"random_seed", scene.layout.random_seed}}},
        {"model", scene.model ? model_to_json(*scene.model) : json(nullptr)},
        {"palette", scene.palette},
        {"toggles", scene.toggles},
        {"cameras", cameras},
        {"glyphs", glyphs},
        {"overlays", overlays},
    };
    return canonical_dump(doc) + "\n";
}

Scene deserialize(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scene is not valid JSON: ") + e.what());
    }
    try {
        const json& version = field(doc, "format_version");
        if (!version.is_number_integer() || version.get<int>() != scene_format_version) {
            throw ParseError("unsupported scene format_version " + version.dump() + " (supported: 1)");
        }
        Scene scene;
        scene.view = parse_glyph_kind(field(doc, "view").get<std::string>());
        const json& layout = field(doc, "layout");
        scene.layout.cube_size = field(layout, "cube_size").get<double>();
        scene.layout.cube_spacing = field(layout, "cube_spacing").get<double>();
        scene.layout.glcl_placement = parse_glcl_placement(field(layout, "glcl_placement").get<std::string>());
        scene.layout.random_seed = field(layout, "random_seed").get<std::uint64_t>();
        if (const json& model = field(doc, "model"); !model.is_null()) {
            scene.model = model_from_json(model, "model");
        }
        scene.palette = field(doc, "palette").get<std::map<std::string, std::string>>();
        scene.toggles = field(doc, "toggles").get<std::map<std::string, bool>>();
        for (const auto& [name, c] : field(doc, "cameras").items()) {
            scene.cameras[name] = {name, vec_from(field(c, "position")), vec_from(field(c, "look_at")),
                                   vec_from(field(c, "up")),
                                   parse_enum(field(c, "projection").get<std::string>(), all_projections, "projection")};
        }
        for (const auto& g : field(doc, "glyphs")) {
            SceneGlyph sg;
            sg.glyph.case_id = field(g, "case_id").get<std::size_t>();
            sg.glyph.kind = parse_glyph_kind(field(g, "kind").get<std::string>());
            sg.glyph.class_label = field(g, "class_label").get<std::string>();
            sg.visibility = parse_enum(field(g, "visibility").get<std::string>(), all_visibilities, "visibility");
            sg.glyph.dimension = field(g, "dimension").get<std::size_t>();
            sg.glyph.padding = field(g, "padding").get<std::size_t>();
            for (const auto& p : field(g, "nodes")) {
                sg.glyph.nodes.push_back(vec_from(p));
            }
            sg.glyph.strokes = field(g, "strokes").get<std::vector<std::vector<std::uint32_t>>>();
            for (const auto& m : field(g, "markers")) {
                sg.glyph.markers.push_back({vec_from(field(m, "position")),
                                            parse_marker_role(field(m, "role").get<std::string>()),
                                            field(m, "cube").get<std::size_t>()});
            }
            scene.glyphs.push_back(std::move(sg));
        }
        for (const auto& o : field(doc, "overlays")) {
            Overlay overlay;
            overlay.kind = parse_enum(field(o, "kind").get<std::string>(), all_overlay_kinds, "overlay kind");
            overlay.color_role = field(o, "color_role").get<std::string>();
            overlay.interactive = field(o, "interactive").get<bool>();
            overlay.levels = field(o, "levels").get<std::vector<double>>();
            for (const auto& q : field(o, "quads")) {
                Quad quad;
                if (!q.is_array() || q.size() != 4) {
                    throw ParseError("scene: a quad needs 4 corners");
                }
                for (std::size_t c = 0; c < 4; ++c) {
                    quad.corners[c] = vec_from(q[c]);
                }
                overlay.quads.push_back(quad);
            }
            overlay.rule_index = optional_index(o, "rule_index");
            overlay.pair_index = optional_index(o, "pair_index");
            scene.overlays.push_back(std::move(overlay));
        }
        validate_scene(scene);
        return scene;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scene: ") + e.what());
    } catch (const LookupError& e) {
        throw ParseError(std::string("malformed scene: ") + e.what());
    }
}

}  // namespace glc3d
