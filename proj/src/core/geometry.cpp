#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tilefield {

std::optional<std::pair<double, double>> intersect_ray_aabb(const Ray& ray, const Aabb3& box) {
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        double o = ray.origin[k];
        double d = ray.direction[k];
        if (d == 0.0) {
            // Parallel to this slab: inside or miss.
            if (o < box.min_corner[k] || o > box.max_corner[k]) return std::nullopt;
            continue;
        }
        double inv = 1.0 / d;
        double ta = (box.min_corner[k] - o) * inv;
        double tb = (box.max_corner[k] - o) * inv;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return std::nullopt;
    }
    if (t1 - t0 < kGrazeEpsilon) return std::nullopt;
    return std::make_pair(t0, t1);
}

TileBoxSet::TileBoxSet(std::vector<TileBox> tiles) : tiles_(std::move(tiles)) {
    for (size_t i = 0; i < tiles_.size(); ++i)
        for (size_t j = i + 1; j < tiles_.size(); ++j)
            require(!tiles_[i].box.interiors_overlap(tiles_[j].box),
                    "TileBoxSet: overlapping tile boxes");
}

std::vector<RaySegment> TileBoxSet::segments(const Ray& ray) const {
    std::vector<RaySegment> out;
    for (const TileBox& t : tiles_) {
        if (auto hit = intersect_ray_aabb(ray, t.box))
            out.push_back({t.id, hit->first, hit->second});
    }
    std::sort(out.begin(), out.end(),
              [](const RaySegment& a, const RaySegment& b) { return a.t_near < b.t_near; });
    return out;
}

int TileBoxSet::count_hits(const Ray& ray) const {
    int n = 0;
    for (const TileBox& t : tiles_)
        if (intersect_ray_aabb(ray, t.box)) ++n;
    return n;
}

std::vector<RaySegment> segment_ray(const Ray& ray, std::span<const TileBox> tiles) {
    TileBoxSet set(std::vector<TileBox>(tiles.begin(), tiles.end()));
    return set.segments(ray);
}

int count_tile_hits(const Ray& ray, std::span<const TileBox> tiles) {
    int n = 0;
    for (const TileBox& t : tiles)
        if (intersect_ray_aabb(ray, t.box)) ++n;
    return n;
}

} // namespace tilefield
