#pragma once

#include <cstdint>

#include "page/array2d.hpp"
#include "page/kernels.hpp"
#include "page/stretch.hpp"

namespace page {

using BinaryMap = Array2D<std::uint8_t>;  // values strictly in {0, 1}

enum class Connectivity { four = 4, eight = 8 };

// Marks samples whose phase exceeds thresh_max or falls below thresh_min,
// then clears marks where the image is darker than max(img)/20.
BinaryMap bipolar_threshold(const Array2D<double>& phase, const ImagePlane& img,
                            double thresh_min, double thresh_max);

// Hit-or-miss thinning: per iteration the 8 rotated L/T structuring-element
// pairs are applied in sequence, each removing its matches before the next
// is evaluated. Out-of-bounds neighbors count as background.
BinaryMap thin(const BinaryMap& map, int iterations);

// Foreground pixels with at least one background neighbor (4- or 8-adjacent);
// out-of-bounds neighbors count as background.
BinaryMap perimeter(const BinaryMap& map, Connectivity connectivity);

// Binary erosion with the element anchored at its center; the 1x1 all-ones
// element is the identity.
BinaryMap erode(const BinaryMap& map, const Array2D<std::uint8_t>& selem);

// The full post-processing chain:
// bipolar_threshold -> thin(1) -> perimeter(4) -> thin(1) -> erode(1x1 ones).
BinaryMap binarize_features(const Array2D<double>& phase, const ImagePlane& img,
                            const KernelParams& params);

}  // namespace page
