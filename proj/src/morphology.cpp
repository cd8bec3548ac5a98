#include "page/morphology.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "page/errors.hpp"

namespace page {

namespace {

// The 8 thinning structuring elements (Golay L alphabet), clockwise from
// north, alternating edge and corner patterns. 0 = background required,
// 1 = foreground required, 2 = don't care.
constexpr std::array<std::array<std::uint8_t, 9>, 8> kThinElements = {{
    {0, 0, 0, 2, 1, 2, 1, 1, 1},  // north edge
    {2, 0, 0, 1, 1, 0, 1, 1, 2},  // northeast corner
    {1, 2, 0, 1, 1, 0, 1, 2, 0},  // east edge
    {1, 1, 2, 1, 1, 0, 2, 0, 0},  // southeast corner
    {1, 1, 1, 2, 1, 2, 0, 0, 0},  // south edge
    {2, 1, 1, 0, 1, 1, 0, 0, 2},  // southwest corner
    {0, 2, 1, 0, 1, 1, 0, 2, 1},  // west edge
    {0, 0, 2, 0, 1, 1, 2, 1, 1},  // northwest corner
}};

std::uint8_t sample(const BinaryMap& map, int r, int c) {
    if (r < 0 || r >= map.rows() || c < 0 || c >= map.cols()) {
        return 0;  // out-of-bounds neighbors are background
    }
    return map(r, c);
}

bool hit_or_miss_at(const BinaryMap& map, int r, int c,
                    const std::array<std::uint8_t, 9>& elem) {
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            const std::uint8_t want = elem[static_cast<std::size_t>((dr + 1) * 3 + dc + 1)];
            if (want == 2) {
                continue;
            }
            if (sample(map, r + dr, c + dc) != want) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

BinaryMap bipolar_threshold(const Array2D<double>& phase, const ImagePlane& img,
                            double thresh_min, double thresh_max) {
    if (!(thresh_min < thresh_max)) {
        throw invalid_parameter("thresh_min: must be < thresh_max (" +
                                std::to_string(thresh_min) + " vs " +
                                std::to_string(thresh_max) + ")");
    }
    if (!phase.same_shape(img)) {
        throw shape_error("bipolar_threshold: phase and image dimensions differ");
    }

    const double peak = img.empty() ? 0.0 : *std::max_element(img.begin(), img.end());
    const double dark_cutoff = peak / 20.0;

    BinaryMap bits(phase.rows(), phase.cols(), 0);
    for (int r = 0; r < phase.rows(); ++r) {
        for (int c = 0; c < phase.cols(); ++c) {
            const double p = phase(r, c);
            if ((p > thresh_max || p < thresh_min) && img(r, c) >= dark_cutoff) {
                bits(r, c) = 1;
            }
        }
    }
    return bits;
}

BinaryMap thin(const BinaryMap& map, int iterations) {
    BinaryMap out = map;
    std::vector<std::pair<int, int>> matches;
    for (int it = 0; it < iterations; ++it) {
        for (const auto& elem : kThinElements) {
            matches.clear();
            for (int r = 0; r < out.rows(); ++r) {
                for (int c = 0; c < out.cols(); ++c) {
                    if (out(r, c) && hit_or_miss_at(out, r, c, elem)) {
                        matches.emplace_back(r, c);
                    }
                }
            }
            for (const auto& [r, c] : matches) {
                out(r, c) = 0;
            }
        }
    }
    return out;
}

BinaryMap perimeter(const BinaryMap& map, Connectivity connectivity) {
    static constexpr std::array<std::pair<int, int>, 8> kOffsets = {{
        {-1, 0}, {1, 0}, {0, -1}, {0, 1},      // 4-neighborhood
        {-1, -1}, {-1, 1}, {1, -1}, {1, 1},    // diagonal extension
    }};
    const std::size_t count = connectivity == Connectivity::four ? 4 : 8;

    BinaryMap out(map.rows(), map.cols(), 0);
    for (int r = 0; r < map.rows(); ++r) {
        for (int c = 0; c < map.cols(); ++c) {
            if (!map(r, c)) {
                continue;
            }
            for (std::size_t k = 0; k < count; ++k) {
                if (!sample(map, r + kOffsets[k].first, c + kOffsets[k].second)) {
                    out(r, c) = 1;
                    break;
                }
            }
        }
    }
    return out;
}

BinaryMap erode(const BinaryMap& map, const Array2D<std::uint8_t>& selem) {
    if (selem.empty() || std::none_of(selem.begin(), selem.end(),
                                      [](std::uint8_t v) { return v != 0; })) {
        throw invalid_parameter("selem: structuring element must have at least one active pixel");
    }
    const int anchor_r = selem.rows() / 2;
    const int anchor_c = selem.cols() / 2;

    BinaryMap out(map.rows(), map.cols(), 0);
    for (int r = 0; r < map.rows(); ++r) {
        for (int c = 0; c < map.cols(); ++c) {
            bool keep = true;
            for (int sr = 0; keep && sr < selem.rows(); ++sr) {
                for (int sc = 0; keep && sc < selem.cols(); ++sc) {
                    if (selem(sr, sc) && !sample(map, r + sr - anchor_r, c + sc - anchor_c)) {
                        keep = false;
                    }
                }
            }
            out(r, c) = keep ? 1 : 0;
        }
    }
    return out;
}

BinaryMap binarize_features(const Array2D<double>& phase, const ImagePlane& img,
                            const KernelParams& params) {
    BinaryMap bits = bipolar_threshold(phase, img, params.thresh_min, params.thresh_max);
    bits = thin(bits, 1);
    bits = perimeter(bits, Connectivity::four);
    bits = thin(bits, 1);
    return erode(bits, Array2D<std::uint8_t>(1, 1, 1));
}

}  // namespace page
