#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tilefield {

// Interleaved 8-bit RGB raster, row-major from the top row.
struct ImageU8 {
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> data; // rows*cols*3

    static ImageU8 zeros(int rows, int cols);
    uint8_t* px(int r, int c) { return data.data() + 3 * (size_t(r) * cols + c); }
    const uint8_t* px(int r, int c) const { return data.data() + 3 * (size_t(r) * cols + c); }
};

// Single-channel float32 raster (depth maps and similar).
struct ImageF32 {
    int rows = 0;
    int cols = 0;
    std::vector<float> data; // rows*cols

    static ImageF32 zeros(int rows, int cols);
    float& at(int r, int c) { return data[size_t(r) * cols + c]; }
    float at(int r, int c) const { return data[size_t(r) * cols + c]; }
};

void write_png(const std::string& path, const ImageU8& img);
ImageU8 read_png(const std::string& path);

// Raw float raster: magic "TFRAS001", uint32 rows, uint32 cols, then
// rows*cols little-endian float32, row-major from the top row.
void write_raster(const std::string& path, const ImageF32& img);
ImageF32 read_raster(const std::string& path);

inline float u8_to_unit(uint8_t v) { return float(v) / 255.0f; }
inline uint8_t unit_to_u8(float v) {
    float c = v < 0.f ? 0.f : (v > 1.f ? 1.f : v);
    return uint8_t(c * 255.0f + 0.5f);
}

} // namespace tilefield
