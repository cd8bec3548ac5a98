#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "page/errors.hpp"
#include "page/pipeline.hpp"
#include "page/viz.hpp"
#include "test_support.hpp"

using page::colorize_orientation;
using page::composite_channels;
using page::FeatureTensor;
using page::KernelParams;
using page::merge_bins_max;
using page::RgbImage;

namespace {

constexpr double kPi = std::numbers::pi;

FeatureTensor make_tensor(int h, int w, int bins, bool binary) {
    FeatureTensor tensor;
    tensor.params.morph_flag = binary;
    tensor.params.direction_bins = bins;
    tensor.directions.resize(static_cast<std::size_t>(bins));
    for (int d = 0; d < bins; ++d) {
        tensor.directions[static_cast<std::size_t>(d)] = kPi / 180.0 + d * kPi / bins;
    }
    tensor.channels.assign(static_cast<std::size_t>(bins),
                           page::Array2D<double>(h, w, 0.0));
    return tensor;
}

bool all_black(const RgbImage& img) {
    for (const auto v : img.pixels) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

// Inverts the hue of a full-saturation RGB pixel, degrees in [0, 360).
double hue_of(const std::uint8_t* px) {
    const double r = px[0] / 255.0, g = px[1] / 255.0, b = px[2] / 255.0;
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double chroma = hi - lo;
    REQUIRE(chroma > 0.0);
    double h;
    if (hi == r) {
        h = std::fmod((g - b) / chroma + 6.0, 6.0);
    } else if (hi == g) {
        h = (b - r) / chroma + 2.0;
    } else {
        h = (r - g) / chroma + 4.0;
    }
    return h * 60.0;
}

}  // namespace

TEST_CASE("zero tensors render black") {
    CHECK(all_black(colorize_orientation(make_tensor(6, 7, 4, false))));
    CHECK(all_black(colorize_orientation(make_tensor(6, 7, 4, true))));
}

TEST_CASE("a single active binary bin renders at its direction hue") {
    FeatureTensor tensor = make_tensor(5, 5, 10, true);
    tensor.channels[0](2, 3) = 1.0;

    const RgbImage img = colorize_orientation(tensor);
    CHECK(img.height == 5);
    CHECK(img.width == 5);

    const std::uint8_t* px = img.at(2, 3);
    const double expected_hue = tensor.directions[0] / kPi * 360.0;  // 2 degrees
    CHECK(std::abs(hue_of(px) - expected_hue) <= 0.75);
    CHECK(std::max({px[0], px[1], px[2]}) == 255);  // full value for a set bit

    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) {
            if (r != 2 || c != 3) {
                CHECK(img.at(r, c)[0] == 0);
                CHECK(img.at(r, c)[1] == 0);
                CHECK(img.at(r, c)[2] == 0);
            }
        }
    }
}

TEST_CASE("hue tracks the winning bin across directions") {
    for (int winner = 0; winner < 6; ++winner) {
        FeatureTensor tensor = make_tensor(3, 3, 6, true);
        tensor.channels[static_cast<std::size_t>(winner)](1, 1) = 1.0;
        const RgbImage img = colorize_orientation(tensor);
        const double expected =
            tensor.directions[static_cast<std::size_t>(winner)] / kPi * 360.0;
        CHECK(std::abs(hue_of(img.at(1, 1)) - expected) <= 0.75);
    }
}

TEST_CASE("ties go to the lowest bin and magnitude uses absolute value") {
    FeatureTensor tensor = make_tensor(2, 2, 4, false);
    tensor.channels[1](0, 0) = -0.8;  // |.| beats bin 3's +0.5
    tensor.channels[3](0, 0) = 0.5;
    tensor.channels[1](1, 1) = 0.6;   // exact tie with bin 2
    tensor.channels[2](1, 1) = 0.6;

    const RgbImage img = colorize_orientation(tensor);
    const double hue_bin1 = tensor.directions[1] / kPi * 360.0;
    CHECK(std::abs(hue_of(img.at(0, 0)) - hue_bin1) <= 0.75);
    CHECK(std::abs(hue_of(img.at(1, 1)) - hue_bin1) <= 0.75);
}

TEST_CASE("scaling the tensor by a power of two leaves the rendering unchanged") {
    FeatureTensor tensor = make_tensor(8, 8, 5, false);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& plane : tensor.channels) {
        for (auto& v : plane) {
            v = dist(rng);
        }
    }
    FeatureTensor scaled = tensor;
    for (auto& plane : scaled.channels) {
        for (auto& v : plane) {
            v *= 4.0;
        }
    }
    const RgbImage a = colorize_orientation(tensor);
    const RgbImage b = colorize_orientation(scaled);
    CHECK(a.pixels == b.pixels);
}

TEST_CASE("a vertical step edge renders in the near-horizontal direction hue") {
    const int n = 48;
    page::ImagePlane step(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            step(r, c) = c < n / 2 ? 0.1 : 0.9;
        }
    }
    KernelParams params;
    params.direction_bins = 8;
    params.morph_flag = false;
    const RgbImage img = colorize_orientation(page::page_run(step, params));

    // Histogram the hues of strongly responding pixels into the 8 bin hues.
    std::vector<int> votes(8, 0);
    FeatureTensor probe = make_tensor(1, 1, 8, false);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const std::uint8_t* px = img.at(r, c);
            if (std::max({px[0], px[1], px[2]}) < 128) {
                continue;
            }
            const double hue = hue_of(px);
            int best = 0;
            double best_dist = 1e9;
            for (int d = 0; d < 8; ++d) {
                const double target = probe.directions[static_cast<std::size_t>(d)] / kPi * 360.0;
                const double dist = std::min(std::abs(hue - target),
                                             360.0 - std::abs(hue - target));
                if (dist < best_dist) {
                    best_dist = dist;
                    best = d;
                }
            }
            ++votes[static_cast<std::size_t>(best)];
        }
    }
    const int modal = static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                                       votes.begin());
    CHECK(modal == 0);  // bin 0 (1 degree) is nearest the edge normal
}

TEST_CASE("composite merges by per-bin maximum") {
    FeatureTensor a = make_tensor(4, 4, 3, true);
    FeatureTensor b = make_tensor(4, 4, 3, true);
    a.channels[0](1, 1) = 1.0;
    b.channels[2](2, 2) = 1.0;

    const RgbImage single = composite_channels({a});
    const RgbImage direct = colorize_orientation(a);
    CHECK(single.pixels == direct.pixels);

    const RgbImage same = composite_channels({a, a});
    CHECK(same.pixels == direct.pixels);

    const FeatureTensor zero = make_tensor(4, 4, 3, true);
    const RgbImage with_zero = composite_channels({zero, a});
    CHECK(with_zero.pixels == direct.pixels);

    const FeatureTensor merged = merge_bins_max({a, b});
    CHECK(merged.channels[0](1, 1) == 1.0);
    CHECK(merged.channels[2](2, 2) == 1.0);

    const FeatureTensor wrong = make_tensor(4, 5, 3, true);
    CHECK_THROWS_AS(composite_channels({a, wrong}), page::shape_error);
    CHECK_THROWS_AS(composite_channels({}), page::invalid_parameter);
}
