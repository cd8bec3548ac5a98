#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "page/pipeline.hpp"

namespace page {

// features.tnsr layout: magic "PAGE", u16 version, u32 height/width/bins
// (little-endian), mode byte (0 analog, 1 binary), then bins*height*width
// little-endian f64 values, bin-major outermost then row-major.
inline constexpr std::uint16_t kTensorFormatVersion = 1;

void write_feature_tensor(const std::string& path, const FeatureTensor& tensor);

struct TensorFile {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t bins = 0;
    std::uint8_t mode = 0;
    std::vector<double> data;  // bin-major, then row-major

    double at(std::uint32_t bin, std::uint32_t r, std::uint32_t c) const {
        return data[(static_cast<std::size_t>(bin) * height + r) * width + c];
    }
};

TensorFile read_feature_tensor(const std::string& path);

}  // namespace page
