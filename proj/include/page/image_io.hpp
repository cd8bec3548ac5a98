#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "page/stretch.hpp"
#include "page/viz.hpp"

namespace page {

// Decoded raster, one plane per channel (1 gray or 3 RGB), values in [0, 1].
struct LoadedImage {
    std::vector<ImagePlane> channels;

    int height() const { return channels.empty() ? 0 : channels.front().rows(); }
    int width() const { return channels.empty() ? 0 : channels.front().cols(); }
};

// Decodes PNG, JPEG, or PGM (P2/P5), detected by magic bytes.
LoadedImage load_image(const std::string& path);

// Rec. 601 luma collapse (0.299, 0.587, 0.114); identity for single-channel input.
ImagePlane to_grayscale(const LoadedImage& img);

void save_png_gray(const std::string& path, const Array2D<std::uint8_t>& pixels);
void save_png_rgb(const std::string& path, const RgbImage& img);

}  // namespace page
