#pragma once

#include <vector>

#include "page/kernels.hpp"
#include "page/stretch.hpp"

namespace page {

// N×M×D stack of per-direction edge maps: radians in (-pi, pi] when analog,
// {0, 1} when binarized.
struct FeatureTensor {
    std::vector<Array2D<double>> channels;  // one plane per direction bin
    std::vector<double> directions;         // radians
    KernelParams params;

    int height() const { return channels.empty() ? 0 : channels.front().rows(); }
    int width() const { return channels.empty() ? 0 : channels.front().cols(); }
    int bins() const { return static_cast<int>(channels.size()); }
};

// End-to-end run for one band: grid and kernels built once, then per
// direction the stretch operator, phase extraction, and (when morph_flag)
// the morphological chain. Direction bins are processed in parallel.
FeatureTensor page_run(const ImagePlane& img, const KernelParams& params);

// Independent page_run per band, order preserved.
std::vector<FeatureTensor> page_run_multiband(const ImagePlane& img,
                                              const std::vector<KernelParams>& bands);

// Independent page_run per color channel (1-4 channels, equal dimensions).
// Combining channels into one view is the viz module's job.
std::vector<FeatureTensor> page_run_color(const std::vector<ImagePlane>& channels,
                                          const KernelParams& params);

}  // namespace page
