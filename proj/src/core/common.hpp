#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tilefield {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Vec3f = Eigen::Vector3f;

// Grid cell / tile identifier. row increases northward, col eastward.
struct TileId {
    int row = 0;
    int col = 0;
    bool operator==(const TileId&) const = default;
};

struct PixelRc {
    int row = 0;
    int col = 0;
    bool operator==(const PixelRc&) const = default;
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

} // namespace tilefield
