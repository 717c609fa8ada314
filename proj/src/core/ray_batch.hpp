#pragma once

#include "core/geometry.hpp"

#include <cstdint>
#include <vector>

namespace tilefield {

// Rays decomposed into ordered per-tile samples: the unit of rendering and
// gradient flow. Sample arrays are concatenated in ray order; `offsets` has
// one entry per ray plus a terminator.
struct RaySegmentBatch {
    struct RayEntry {
        Vec3 origin;
        Vec3 direction;
        Vec3f target = Vec3f::Zero();
        int image_id = -1;
        PixelRc pixel;
    };

    std::vector<RayEntry> rays;
    std::vector<uint32_t> offsets; // rays.size()+1

    std::vector<float> t;          // meters along ray, ascending per ray
    std::vector<float> delta;      // spacing to the next sample (meters)
    std::vector<float> local;      // 3 per sample, owning tile's [0,1]^3 frame
    std::vector<uint8_t> slot;     // owning loaded-tile slot per sample
    std::vector<uint8_t> endpoint; // 1 when the sample is a segment endpoint

    size_t ray_count() const { return rays.size(); }
    size_t sample_count() const { return t.size(); }

    void clear() {
        rays.clear();
        offsets.assign(1, 0);
        t.clear();
        delta.clear();
        local.clear();
        slot.clear();
        endpoint.clear();
    }

    size_t bytes() const {
        return rays.capacity() * sizeof(RayEntry) + offsets.capacity() * 4 +
               (t.capacity() + delta.capacity() + local.capacity()) * 4 + slot.capacity() +
               endpoint.capacity();
    }
};

} // namespace tilefield
