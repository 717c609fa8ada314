#include "core/tiler.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace tilefield {

void Roi::validate() const {
    require(easting_max > easting_min, "Roi: easting extent must be positive");
    require(northing_max > northing_min, "Roi: northing extent must be positive");
    require(z_max > z_min, "Roi: z_max must exceed z_min");
}

namespace {

std::vector<double> grid_edges(double lo, double hi, int n) {
    // Computed once per grid line so adjacent tiles reference bit-identical
    // boundary coordinates; the last edge is pinned to the ROI bound.
    std::vector<double> edges(n + 1);
    double step = (hi - lo) / n;
    for (int k = 0; k <= n; ++k) edges[k] = lo + k * step;
    edges[0] = lo;
    edges[n] = hi;
    return edges;
}

} // namespace

TileGrid TileGrid::build(const Roi& roi, int rows, int cols) {
    roi.validate();
    require(rows >= 1 && cols >= 1, "TileGrid: rows and cols must be >= 1");

    TileGrid g;
    g.roi_ = roi;
    g.rows_ = rows;
    g.cols_ = cols;
    g.east_edges_ = grid_edges(roi.easting_min, roi.easting_max, cols);
    g.north_edges_ = grid_edges(roi.northing_min, roi.northing_max, rows);
    g.tiles_.reserve(size_t(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Tile t;
            t.id = {r, c};
            t.box = {Vec3(g.east_edges_[c], g.north_edges_[r], roi.z_min),
                     Vec3(g.east_edges_[c + 1], g.north_edges_[r + 1], roi.z_max)};
            t.local_frame.origin = t.box.min_corner;
            t.local_frame.inv_size = t.box.size().cwiseInverse();
            g.tiles_.push_back(t);
        }
    }
    return g;
}

std::vector<TileBox> TileGrid::tile_boxes() const {
    std::vector<TileBox> out;
    out.reserve(tiles_.size());
    for (const Tile& t : tiles_) out.push_back({t.id, t.box});
    return out;
}

std::vector<TileBox> TileGrid::tile_boxes(std::span<const TileId> ids) const {
    std::vector<TileBox> out;
    out.reserve(ids.size());
    for (TileId id : ids) out.push_back({id, tile(id).box});
    return out;
}

std::vector<TileId> TileGrid::candidate_tiles(const Ray& ray) const {
    // XY extent swept by the ray between the grid's z bounds.
    double z0 = roi_.z_max, z1 = roi_.z_min;
    double dz = ray.direction.z();
    if (dz == 0.0) return {};
    double ta = (z0 - ray.origin.z()) / dz;
    double tb = (z1 - ray.origin.z()) / dz;
    if (ta > tb) std::swap(ta, tb);
    ta = std::max(ta, 0.0);
    if (tb < ta) return {};
    Vec3 a = ray.origin + ta * ray.direction;
    Vec3 b = ray.origin + tb * ray.direction;

    double ex_lo = std::min(a.x(), b.x()), ex_hi = std::max(a.x(), b.x());
    double ny_lo = std::min(a.y(), b.y()), ny_hi = std::max(a.y(), b.y());

    auto cell_of = [](const std::vector<double>& edges, double v, int n) {
        int k = int(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin()) - 1;
        return std::clamp(k, 0, n - 1);
    };
    auto range = [&](const std::vector<double>& edges, double lo, double hi, int n) {
        return std::pair<int, int>(cell_of(edges, lo, n), cell_of(edges, hi, n));
    };
    auto [c0, c1] = range(east_edges_, ex_lo, ex_hi, cols_);
    auto [r0, r1] = range(north_edges_, ny_lo, ny_hi, rows_);

    std::vector<TileId> out;
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) out.push_back({r, c});
    return out;
}

nlohmann::json TileGrid::to_json() const {
    return {
        {"roi",
         {{"easting_min", roi_.easting_min},
          {"easting_max", roi_.easting_max},
          {"northing_min", roi_.northing_min},
          {"northing_max", roi_.northing_max},
          {"z_min", roi_.z_min},
          {"z_max", roi_.z_max}}},
        {"rows", rows_},
        {"cols", cols_},
    };
}

TileGrid TileGrid::from_json(const nlohmann::json& j) {
    Roi roi;
    const auto& r = j.at("roi");
    roi.easting_min = r.at("easting_min");
    roi.easting_max = r.at("easting_max");
    roi.northing_min = r.at("northing_min");
    roi.northing_max = r.at("northing_max");
    roi.z_min = r.at("z_min");
    roi.z_max = r.at("z_max");
    return build(roi, j.at("rows"), j.at("cols"));
}

} // namespace tilefield
