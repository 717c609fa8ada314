#pragma once

#include "core/common.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tilefield {

// Axis-aligned box in the scene-local metric frame (UTM meters minus the
// dataset's origin offset).
struct Aabb3 {
    Vec3 min_corner;
    Vec3 max_corner;

    bool contains(const Vec3& p) const {
        return (p.array() >= min_corner.array()).all() && (p.array() <= max_corner.array()).all();
    }
    bool strictly_contains(const Vec3& p) const {
        return (p.array() > min_corner.array()).all() && (p.array() < max_corner.array()).all();
    }
    Vec3 size() const { return max_corner - min_corner; }
    Vec3 center() const { return 0.5 * (min_corner + max_corner); }
    Vec3 corner(int i) const {
        return Vec3(i & 1 ? max_corner.x() : min_corner.x(),
                    i & 2 ? max_corner.y() : min_corner.y(),
                    i & 4 ? max_corner.z() : min_corner.z());
    }
    // Open-interior overlap test.
    bool interiors_overlap(const Aabb3& o) const {
        return (min_corner.array() < o.max_corner.array()).all() &&
               (o.min_corner.array() < max_corner.array()).all();
    }
};

struct Ray {
    Vec3 origin;
    Vec3 direction; // unit norm, pointing downward (direction.z() < 0) for overhead views
    int image_id = -1;
    PixelRc pixel;
    Vec3f target_color = Vec3f::Zero();
};

struct RaySegment {
    TileId tile_id;
    double t_near = 0;
    double t_far = 0;
};

struct TileBox {
    TileId id;
    Aabb3 box;
};

// Intersections thinner than this along the ray (grazing hits) are dropped;
// they contribute no usable samples and destabilize the sample spacing.
inline constexpr double kGrazeEpsilon = 1e-6;

// Slab-method ray/box intersection clipped to t >= 0. Empty when the box is
// missed, fully behind the origin, or the hit is thinner than kGrazeEpsilon.
std::optional<std::pair<double, double>> intersect_ray_aabb(const Ray& ray, const Aabb3& box);

// Validated non-overlapping tile box collection; amortizes the pairwise
// disjointness check over many segment_ray calls.
class TileBoxSet {
public:
    explicit TileBoxSet(std::vector<TileBox> tiles);

    std::vector<RaySegment> segments(const Ray& ray) const;
    int count_hits(const Ray& ray) const;
    const std::vector<TileBox>& tiles() const { return tiles_; }

private:
    std::vector<TileBox> tiles_;
};

// Ordered per-tile segments of the ray. Throws on overlapping boxes.
std::vector<RaySegment> segment_ray(const Ray& ray, std::span<const TileBox> tiles);

// Number of tiles the ray intersects (diagnostic / test hook).
int count_tile_hits(const Ray& ray, std::span<const TileBox> tiles);

} // namespace tilefield
