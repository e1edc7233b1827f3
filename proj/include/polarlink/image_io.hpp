#pragma once

#include <png.h>

#include <cstring>
#include <stdexcept>
#include <string>

#include "polarlink/image.hpp"

namespace polarlink {

// PNG input, 8-bit; anything with an alpha channel or palette is converted to
// gray or RGB by libpng.
inline Image load_png(const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;

    if (!png_image_begin_read_from_file(&png, path.c_str()))
        throw std::runtime_error("failed to read PNG '" + path + "': " + png.message);

    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    Image image;
    image.width = static_cast<int>(png.width);
    image.height = static_cast<int>(png.height);
    image.channels = color ? 3 : 1;
    image.pixels.resize(PNG_IMAGE_SIZE(png));

    if (!png_image_finish_read(&png, nullptr, image.pixels.data(), 0, nullptr)) {
        png_image_free(&png);
        throw std::runtime_error("failed to decode PNG '" + path + "': " + png.message);
    }
    return image;
}

inline void save_png(const Image& image, const std::string& path) {
    if (image.channels != 1 && image.channels != 3)
        throw std::invalid_argument("unsupported channel count " + std::to_string(image.channels));
    if (image.pixels.size() != image.byte_count())
        throw std::invalid_argument("pixel buffer size does not match image dimensions");

    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels.data(), 0, nullptr))
        throw std::runtime_error("failed to write PNG '" + path + "': " + png.message);
}

}  // namespace polarlink
