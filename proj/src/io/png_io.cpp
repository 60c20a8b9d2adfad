#include "relight/io/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>

#include "relight/core/errors.hpp"

namespace relight {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

}  // namespace

Frame read_png(const std::filesystem::path& path) {
    FilePtr file = open_file(path, "rb");
    png_byte signature[8] = {};
    if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
        throw IoError(path.string() + ": not a PNG file");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png_create_info_struct failed");
    }

    // Everything with a destructor lives above the setjmp.
    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path.string() + ": corrupt PNG data");
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_set_strip_alpha(png);  // tRNS-expanded alpha, if any
    if (png_get_bit_depth(png, info) == 16) png_set_swap(png);  // native little-endian u16
    png_read_update_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    bit_depth = png_get_bit_depth(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    pixels.resize(stride * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Frame frame(static_cast<int>(width), static_cast<int>(height));
    const std::size_t samples = frame.data.size();
    if (bit_depth == 16) {
        const auto* src = reinterpret_cast<const std::uint16_t*>(pixels.data());
        for (std::size_t i = 0; i < samples; ++i) frame.data[i] = static_cast<float>(src[i] / 65535.0);
    } else {
        for (std::size_t i = 0; i < samples; ++i) frame.data[i] = static_cast<float>(pixels[i]) / 255.0f;
    }
    return frame;
}

void write_png(const Frame& frame, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = frame.to_8bit();
    std::vector<png_bytep> rows(static_cast<std::size_t>(frame.height));
    for (int y = 0; y < frame.height; ++y) {
        rows[static_cast<std::size_t>(y)] =
            const_cast<png_bytep>(bytes.data() + static_cast<std::size_t>(y) * frame.width * Frame::kChannels);
    }

    FilePtr file = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed writing " + path.string());
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(frame.width), static_cast<png_uint_32>(frame.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(file.get()) != 0) throw IoError("failed writing " + path.string());
}

void write_pgm(const Plane& plane, const std::filesystem::path& path, float lo, float hi) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "P5\n" << plane.width << ' ' << plane.height << "\n255\n";
    const float span = hi > lo ? hi - lo : 1.0f;
    std::vector<char> bytes(plane.size());
    for (std::size_t i = 0; i < plane.size(); ++i) {
        const float t = std::clamp((plane.data[i] - lo) / span, 0.0f, 1.0f);
        bytes[i] = static_cast<char>(static_cast<unsigned char>(std::lround(t * 255.0f)));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace relight
