#pragma once

#include "core/geometry.hpp"

#include <nlohmann/json_fwd.hpp>
#include <vector>

namespace tilefield {

struct Roi {
    double easting_min = 0, easting_max = 0;
    double northing_min = 0, northing_max = 0;
    double z_min = 0, z_max = 0;

    void validate() const;
    Aabb3 box() const {
        return {Vec3(easting_min, northing_min, z_min), Vec3(easting_max, northing_max, z_max)};
    }
};

// Affine scene-frame -> [0,1]^3 map of one tile. Directions scale per axis and
// renormalize; t_scale converts metric ray parameters to local-frame units so
// sample t values can stay in meters.
struct LocalFrame {
    Vec3 origin; // box.min_corner
    Vec3 inv_size;

    Vec3 to_local(const Vec3& p) const { return (p - origin).cwiseProduct(inv_size); }
    Vec3 from_local(const Vec3& q) const { return origin + q.cwiseQuotient(inv_size); }

    struct LocalRay {
        Vec3 origin;
        Vec3 direction; // unit in local frame
        double t_scale; // local length per meter along the world ray
    };
    LocalRay ray_to_local(const Vec3& o, const Vec3& d) const {
        Vec3 dl = d.cwiseProduct(inv_size);
        double n = dl.norm();
        return {to_local(o), dl / n, n};
    }
};

struct Tile {
    TileId id;
    Aabb3 box;
    LocalFrame local_frame;
};

class TileGrid {
public:
    // Regular H x W partition of the ROI footprint; cell (0,0) at the
    // south-west corner, rows increasing northward, cols eastward. Adjacent
    // tiles share bit-identical boundary coordinates.
    static TileGrid build(const Roi& roi, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Roi& roi() const { return roi_; }
    const Tile& tile(int r, int c) const { return tiles_[size_t(r) * cols_ + c]; }
    const Tile& tile(TileId id) const { return tile(id.row, id.col); }
    const std::vector<Tile>& tiles() const { return tiles_; }

    double boundary_easting(int k) const { return east_edges_[k]; }   // k in [0, cols]
    double boundary_northing(int k) const { return north_edges_[k]; } // k in [0, rows]

    std::vector<TileBox> tile_boxes() const;
    std::vector<TileBox> tile_boxes(std::span<const TileId> ids) const;

    // Tiles whose XY footprint the ray's XY shadow (between z_max and z_min)
    // can touch; superset of the tiles the ray intersects.
    std::vector<TileId> candidate_tiles(const Ray& ray) const;

    nlohmann::json to_json() const;
    static TileGrid from_json(const nlohmann::json& j);

private:
    Roi roi_;
    int rows_ = 0, cols_ = 0;
    std::vector<double> east_edges_;  // cols+1 shared boundary coordinates
    std::vector<double> north_edges_; // rows+1
    std::vector<Tile> tiles_;
};

} // namespace tilefield
