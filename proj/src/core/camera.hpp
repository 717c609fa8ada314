#pragma once

#include "core/geometry.hpp"

#include <array>
#include <optional>
#include <string>

namespace tilefield {

// Rational-polynomial camera. Image coordinates are ratios of cubic
// polynomials in normalized ground coordinates, RPC00B-style:
//
//   L = (east  - long_off)   / long_scale
//   P = (north - lat_off)    / lat_scale
//   H = (z     - height_off) / height_scale
//   row = line_off + line_scale * num_line(P,L,H) / den_line(P,L,H)
//   col = samp_off + samp_scale * num_samp(P,L,H) / den_samp(P,L,H)
//
// The 20-term basis follows the RPC00B coefficient order (see rpc_terms in
// camera.cpp); "LONG" maps to scene-local easting and "LAT" to northing.
struct RationalCamera {
    std::array<double, 20> line_num{}, line_den{}, samp_num{}, samp_den{};
    double line_off = 0, samp_off = 0, lat_off = 0, long_off = 0, height_off = 0;
    double line_scale = 1, samp_scale = 1, lat_scale = 1, long_scale = 1, height_scale = 1;
    int image_rows = 0, image_cols = 0;

    void validate() const;

    // Normalized ground coordinate magnitude beyond which projection is
    // treated as extrapolation and rejected.
    static constexpr double kValidityLimit = 1.5;
};

struct CropSpec {
    int image_id = -1;
    TileId tile_id;
    // Inclusive-exclusive pixel rectangle, clamped to image bounds.
    int row_min = 0, row_max = 0, col_min = 0, col_max = 0;

    int rows() const { return row_max - row_min; }
    int cols() const { return col_max - col_min; }
    bool contains(double row, double col) const {
        return row >= row_min && row < row_max && col >= col_min && col < col_max;
    }
};

// Ground point (east, north, z in meters) -> real-valued (row, col).
// Throws when any normalized coordinate exceeds the validity limit.
Vec2 project(const RationalCamera& cam, const Vec3& ground);

struct LocalizeResult {
    Vec2 ground_xy;
    double residual_px = 0;
    int iterations = 0;
};

// Inverse projection at fixed height by damped Newton iteration on a
// finite-difference 2x2 Jacobian. Throws on non-convergence (50 iterations,
// 1e-4 px tolerance), reporting the last residual.
LocalizeResult localize(const RationalCamera& cam, const Vec2& pixel_rc, double height);

// Ray through a pixel: origin at the z_max localization, direction toward the
// z_min localization. Throws if the baseline between the two localizations
// degenerates (z-independent projection).
Ray ray_from_pixel(const RationalCamera& cam, PixelRc pixel, double z_min, double z_max,
                   const Vec3f& target_color, int image_id);

// Pixel bounding rectangle of the 8 projected tile-box corners, dilated by
// margin_px and clamped to the image; empty when the clamped rect vanishes.
std::optional<CropSpec> crop_for_tile(const RationalCamera& cam, const Aabb3& tile_box,
                                      int margin_px, int image_id, TileId tile_id);

void save_rpc(const std::string& path, const RationalCamera& cam);
RationalCamera load_rpc(const std::string& path);

} // namespace tilefield
