#include "page/viz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "page/errors.hpp"

namespace page {

namespace {

struct Rgb {
    std::uint8_t r, g, b;
};

// hue in degrees [0, 360), s = 1 fixed, v in [0, 1].
Rgb hsv_to_rgb(double hue, double v) {
    const double c = v;
    const double hp = hue / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(hp)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    auto byte = [](double t) {
        return static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    };
    return {byte(r), byte(g), byte(b)};
}

}  // namespace

RgbImage colorize_orientation(const FeatureTensor& tensor) {
    const int h = tensor.height();
    const int w = tensor.width();
    const int d = tensor.bins();
    RgbImage out(h, w);
    if (d == 0 || h == 0 || w == 0) {
        return out;
    }

    Array2D<int> winner(h, w, 0);
    Array2D<double> magnitude(h, w, 0.0);
    double peak = 0.0;
    for (int bin = 0; bin < d; ++bin) {
        const Array2D<double>& plane = tensor.channels[static_cast<std::size_t>(bin)];
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const double mag = std::abs(plane(r, c));
                if (mag > magnitude(r, c)) {  // ties keep the lowest bin
                    magnitude(r, c) = mag;
                    winner(r, c) = bin;
                }
                peak = std::max(peak, mag);
            }
        }
    }
    if (peak == 0.0) {
        return out;  // zero response everywhere stays black
    }

    const bool binary = tensor.params.morph_flag;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double mag = magnitude(r, c);
            if (mag == 0.0) {
                continue;
            }
            const double direction = tensor.directions[static_cast<std::size_t>(winner(r, c))];
            const double hue = direction / std::numbers::pi * 360.0;
            const double value = binary ? 1.0 : mag / peak;
            const Rgb rgb = hsv_to_rgb(hue, value);
            std::uint8_t* px = out.at(r, c);
            px[0] = rgb.r;
            px[1] = rgb.g;
            px[2] = rgb.b;
        }
    }
    return out;
}

FeatureTensor merge_bins_max(const std::vector<FeatureTensor>& tensors) {
    if (tensors.empty()) {
        throw invalid_parameter("tensors: at least one tensor is required");
    }
    const FeatureTensor& first = tensors.front();
    for (const FeatureTensor& t : tensors) {
        if (t.bins() != first.bins() || t.height() != first.height() ||
            t.width() != first.width()) {
            throw shape_error("tensors: shapes differ");
        }
    }

    FeatureTensor merged = first;
    for (std::size_t k = 1; k < tensors.size(); ++k) {
        for (int bin = 0; bin < merged.bins(); ++bin) {
            const auto idx = static_cast<std::size_t>(bin);
            const Array2D<double>& plane = tensors[k].channels[idx];
            Array2D<double>& acc = merged.channels[idx];
            for (int r = 0; r < acc.rows(); ++r) {
                for (int c = 0; c < acc.cols(); ++c) {
                    acc(r, c) = std::max(acc(r, c), plane(r, c));
                }
            }
        }
    }
    return merged;
}

RgbImage composite_channels(const std::vector<FeatureTensor>& tensors) {
    return colorize_orientation(merge_bins_max(tensors));
}

}  // namespace page
