#include "core/image.hpp"

#include "core/common.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>

namespace tilefield {

ImageU8 ImageU8::zeros(int rows, int cols) {
    ImageU8 img;
    img.rows = rows;
    img.cols = cols;
    img.data.assign(size_t(rows) * cols * 3, 0);
    return img;
}

ImageF32 ImageF32::zeros(int rows, int cols) {
    ImageF32 img;
    img.rows = rows;
    img.cols = cols;
    img.data.assign(size_t(rows) * cols, 0.f);
    return img;
}

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

} // namespace

void write_png(const std::string& path, const ImageU8& img) {
    require(img.rows > 0 && img.cols > 0, "write_png: empty image");
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    require(fp != nullptr, "write_png: cannot open " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    require(png != nullptr, "write_png: png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("write_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("write_png: libpng error writing " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.cols, img.rows, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(img.rows);
    for (int r = 0; r < img.rows; ++r)
        rows[r] = const_cast<png_bytep>(img.data.data() + size_t(r) * img.cols * 3);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

ImageU8 read_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    require(fp != nullptr, "read_png: cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    require(png != nullptr, "read_png: png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("read_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("read_png: libpng error reading " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    png_byte color = png_get_color_type(png, info);
    png_byte depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    ImageU8 img = ImageU8::zeros(int(h), int(w));
    std::vector<png_bytep> rows(h);
    for (png_uint_32 r = 0; r < h; ++r) rows[r] = img.data.data() + size_t(r) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

namespace {
constexpr char kRasterMagic[8] = {'T', 'F', 'R', 'A', 'S', '0', '0', '1'};
}

void write_raster(const std::string& path, const ImageF32& img) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    require(fp != nullptr, "write_raster: cannot open " + path);
    uint32_t rows = uint32_t(img.rows), cols = uint32_t(img.cols);
    bool ok = std::fwrite(kRasterMagic, 1, 8, fp.get()) == 8 &&
              std::fwrite(&rows, 4, 1, fp.get()) == 1 &&
              std::fwrite(&cols, 4, 1, fp.get()) == 1 &&
              std::fwrite(img.data.data(), 4, img.data.size(), fp.get()) == img.data.size();
    require(ok, "write_raster: short write to " + path);
}

ImageF32 read_raster(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    require(fp != nullptr, "read_raster: cannot open " + path);
    char magic[8];
    uint32_t rows = 0, cols = 0;
    require(std::fread(magic, 1, 8, fp.get()) == 8 && std::memcmp(magic, kRasterMagic, 8) == 0,
            "read_raster: bad magic in " + path);
    require(std::fread(&rows, 4, 1, fp.get()) == 1 && std::fread(&cols, 4, 1, fp.get()) == 1,
            "read_raster: truncated header in " + path);
    ImageF32 img = ImageF32::zeros(int(rows), int(cols));
    require(std::fread(img.data.data(), 4, img.data.size(), fp.get()) == img.data.size(),
            "read_raster: truncated data in " + path);
    return img;
}

} // namespace tilefield
