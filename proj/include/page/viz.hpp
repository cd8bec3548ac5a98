#pragma once

#include <cstdint>
#include <vector>

#include "page/pipeline.hpp"

namespace page {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major interleaved RGB

    RgbImage() = default;
    RgbImage(int h, int w)
        : width(w), height(h), pixels(static_cast<std::size_t>(h) * w * 3, 0) {}

    std::uint8_t* at(int r, int c) {
        return pixels.data() + 3 * (static_cast<std::size_t>(r) * width + c);
    }
    const std::uint8_t* at(int r, int c) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(r) * width + c);
    }
};

// Orientation-colored rendering: per pixel the winning bin is
// argmax_d |data(.,.,d)| (ties to the lowest index); hue maps the winning
// direction linearly from [0, pi) to [0, 360); brightness is the winning
// magnitude normalized by the image maximum (analog) or the bit (binary).
// Pixels with zero response are black.
RgbImage colorize_orientation(const FeatureTensor& tensor);

// Per-bin elementwise maximum across tensors of equal shape.
FeatureTensor merge_bins_max(const std::vector<FeatureTensor>& tensors);

// merge_bins_max followed by colorize_orientation.
RgbImage composite_channels(const std::vector<FeatureTensor>& tensors);

}  // namespace page
