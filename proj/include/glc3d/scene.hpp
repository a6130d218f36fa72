#pragma once

#include "glc3d/dataset.hpp"
#include "glc3d/linear_model.hpp"
#include "glc3d/rules.hpp"
#include "glc3d/transforms.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glc3d {

inline constexpr int scene_format_version = 1;

enum class Visibility { normal, grayed, hidden };
enum class OverlayKind { threshold_plane, regression_plane, rule_rectangle, interval_plane_pair };
enum class Projection { perspective, orthographic };

[[nodiscard]] std::string_view to_string(Visibility v) noexcept;
[[nodiscard]] std::string_view to_string(OverlayKind k) noexcept;
[[nodiscard]] std::string_view to_string(Projection p) noexcept;

/// Four corners listed counter-clockwise (seen from +Z) starting at the
/// (low x, low y) corner.
struct Quad {
    std::array<Vec3, 4> corners{};

    friend bool operator==(const Quad&, const Quad&) = default;
};

struct Overlay {
    OverlayKind kind = OverlayKind::threshold_plane;
    std::vector<Quad> quads;
    std::string color_role;
    bool interactive = false;
    /// Heights of horizontal planes: {T} or {f1, f2}.
    std::vector<double> levels;
    std::optional<std::size_t> rule_index;
    std::optional<std::size_t> pair_index;

    friend bool operator==(const Overlay&, const Overlay&) = default;
};

struct CameraPreset {
    std::string name;
    Vec3 position;
    Vec3 look_at;
    Vec3 up;
    Projection projection = Projection::perspective;

    friend bool operator==(const CameraPreset&, const CameraPreset&) = default;
};

struct SceneGlyph {
    Glyph glyph;
    Visibility visibility = Visibility::normal;

    friend bool operator==(const SceneGlyph&, const SceneGlyph&) = default;
};

/// Renderer-agnostic snapshot. Grayed glyphs carry no strokes.
struct Scene {
    GlyphKind view = GlyphKind::spc2d;
    LayoutConfig layout;
    std::optional<LinearModel> model;
    std::vector<SceneGlyph> glyphs;
    std::vector<Overlay> overlays;
    std::map<std::string, CameraPreset> cameras;
    std::map<std::string, std::string> palette;
    std::map<std::string, bool> toggles;

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Names accepted by camera_preset(), in display order.
[[nodiscard]] const std::vector<std::string>& camera_preset_names();

/// Preset framing a row of `cubes` cubes. LookupError for unknown names.
[[nodiscard]] CameraPreset camera_preset(std::string_view name, const LayoutConfig& layout, std::size_t cubes);
[[nodiscard]] CameraPreset camera_preset(std::string_view name);

/// Deterministic class colors: Setosa/Versicolor/Virginica get red/green/blue,
/// other labels take the next unused entry of an 8-color cycle.
[[nodiscard]] std::map<std::string, std::string> default_palette(std::span<const std::string> class_labels);

struct SceneOptions {
    LayoutConfig layout;
    /// Also gray out cases with f(x) < T.
    bool select_by_model = false;
    /// Adds a regression plane per cube through this case (dataset index).
    std::optional<std::size_t> regression_reference;
    /// Overrides for the default toggles; "class:<label>" = false hides a class.
    std::map<std::string, bool> toggles;
};

/// One glyph per case. A glyph is normal iff every rule covers it (and,
/// with select_by_model, f(x) >= T); otherwise grayed, or hidden when its
/// class toggle is off.
[[nodiscard]] Scene build_scene(const Dataset& dataset, GlyphKind view, const LinearModel* model,
                                std::span<const Rule> rules, const SceneOptions& options = {});

/// Throws ValidationError if an invariant is broken.
void validate_scene(const Scene& scene);

[[nodiscard]] std::string serialize(const Scene& scene);
[[nodiscard]] Scene deserialize(std::string_view bytes);

}  // namespace glc3d
