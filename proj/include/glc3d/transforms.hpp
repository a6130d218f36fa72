#pragma once

#include "glc3d/dataset.hpp"
#include "glc3d/linear_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glc3d {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

enum class GlclPlacement { anchored_plane, free_3d };

[[nodiscard]] std::string_view to_string(GlclPlacement placement) noexcept;
[[nodiscard]] GlclPlacement parse_glcl_placement(std::string_view text);

/// Cube k occupies X in [k * (size + spacing), k * (size + spacing) + size],
/// Y in [0, size]; Z carries f(x) values and is never scaled.
struct LayoutConfig {
    double cube_size = 1.0;
    double cube_spacing = 0.25;
    GlclPlacement glcl_placement = GlclPlacement::anchored_plane;
    std::uint64_t random_seed = 0;

    [[nodiscard]] double cube_origin_x(std::size_t cube) const noexcept {
        return static_cast<double>(cube) * (cube_size + cube_spacing);
    }
    /// Throws ValidationError unless size and spacing are positive and finite.
    void validate() const;

    friend bool operator==(const LayoutConfig&, const LayoutConfig&) = default;
};

enum class GlyphKind { spc2d, spc3d, stc, glcl, glc3sl };

[[nodiscard]] std::string_view to_string(GlyphKind kind) noexcept;
/// Accepts the glyph names ("spc3d-figure") and the view names ("spc3d").
[[nodiscard]] GlyphKind parse_glyph_kind(std::string_view text);
[[nodiscard]] std::string_view view_name(GlyphKind kind) noexcept;
[[nodiscard]] bool needs_model(GlyphKind kind) noexcept;

enum class MarkerRole { contribution_dot, apex, origin };

[[nodiscard]] std::string_view to_string(MarkerRole role) noexcept;
[[nodiscard]] MarkerRole parse_marker_role(std::string_view text);

struct Marker {
    Vec3 position;
    MarkerRole role = MarkerRole::origin;
    /// SPC cube the marker belongs to (0 for single-anchor GLC-L).
    std::size_t cube = 0;

    friend bool operator==(const Marker&, const Marker&) = default;
};

/// 3D geometry of one case. Segments are drawn between consecutive node
/// indices inside each stroke; chain layouts have a single stroke.
struct Glyph {
    std::size_t case_id = 0;
    GlyphKind kind = GlyphKind::spc2d;
    std::vector<Vec3> nodes;
    std::vector<std::vector<std::uint32_t>> strokes;
    std::vector<Marker> markers;
    std::string class_label;
    /// Unpadded dimensionality of the source case, and how many padded
    /// copies the layout added.
    std::size_t dimension = 0;
    std::size_t padding = 0;

    friend bool operator==(const Glyph&, const Glyph&) = default;
};

[[nodiscard]] Glyph map_spc2d(const CaseRecord& x, const LayoutConfig& cfg);
[[nodiscard]] Glyph map_spc3d(const CaseRecord& x, const LinearModel& model, const LayoutConfig& cfg);
[[nodiscard]] Glyph map_stc(const CaseRecord& x, const LayoutConfig& cfg);
[[nodiscard]] Glyph map_glcl(const CaseRecord& x, const LinearModel& model, Vec3 anchor, const LayoutConfig& cfg);
[[nodiscard]] Glyph map_glc3sl(const CaseRecord& x, const LinearModel& model, const LayoutConfig& cfg);

/// Dispatches on kind; standalone GLC-L glyphs are anchored at cube 0's origin.
[[nodiscard]] Glyph map_case(GlyphKind kind, const CaseRecord& x, const LinearModel* model, const LayoutConfig& cfg);

/// Recovers the unpadded case values from a glyph produced with the same
/// layout (and model, for f-dependent kinds). ContractError when the glyph
/// is inconsistent with the layout or model.
[[nodiscard]] CaseRecord reconstruct(const Glyph& glyph, const LayoutConfig& cfg, const LinearModel* model = nullptr);

}  // namespace glc3d
