#include "page/pipeline.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "page/errors.hpp"
#include "page/grid.hpp"
#include "page/morphology.hpp"
#include "parallel.hpp"

namespace page {

namespace {

// Direction bins fan out over one worker per hardware thread unless
// PAGE_THREADS pins the count.
int configured_workers() {
    if (const char* env = std::getenv("PAGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return 0;
}

}  // namespace

FeatureTensor page_run(const ImagePlane& img, const KernelParams& params) {
    if (img.rows() < 2 || img.cols() < 2) {
        throw invalid_parameter("image: dimensions must be >= 2x2, got " +
                                std::to_string(img.rows()) + "x" +
                                std::to_string(img.cols()));
    }
    params.validate();

    const FrequencyGrid grid = build_frequency_grid(img.rows(), img.cols());
    const Array2D<double> lpf = build_lowpass(grid, params.sigma_lpf);
    const PhaseFilterBank bank = build_filter_bank(grid, params);

    // The smoothing stage and the forward transform of its output are
    // direction-independent; run both once.
    const ImagePlane smoothed = smooth_image(img, lpf);
    const ComplexField smoothed_spectrum = forward_transform(smoothed);

    FeatureTensor tensor;
    tensor.directions = bank.directions;
    tensor.params = params;
    tensor.channels.resize(bank.phases.size());

    auto run_bin = [&](int d) {
        const auto idx = static_cast<std::size_t>(d);
        const ComplexField field =
            apply_phase_to_spectrum(smoothed_spectrum, bank.phases[idx]);
        Array2D<double> phase = extract_phase(field);
        if (params.morph_flag) {
            const BinaryMap bits = binarize_features(phase, img, params);
            Array2D<double> channel(bits.rows(), bits.cols());
            for (int r = 0; r < bits.rows(); ++r) {
                for (int c = 0; c < bits.cols(); ++c) {
                    channel(r, c) = bits(r, c);
                }
            }
            tensor.channels[idx] = std::move(channel);
        } else {
            tensor.channels[idx] = std::move(phase);
        }
    };
    detail::parallel_for(static_cast<int>(bank.phases.size()), run_bin,
                         configured_workers());
    return tensor;
}

std::vector<FeatureTensor> page_run_multiband(const ImagePlane& img,
                                              const std::vector<KernelParams>& bands) {
    if (bands.empty()) {
        throw invalid_parameter("bands: at least one band is required");
    }
    std::vector<FeatureTensor> tensors;
    tensors.reserve(bands.size());
    for (const KernelParams& band : bands) {
        tensors.push_back(page_run(img, band));
    }
    return tensors;
}

std::vector<FeatureTensor> page_run_color(const std::vector<ImagePlane>& channels,
                                          const KernelParams& params) {
    if (channels.empty() || channels.size() > 4) {
        throw invalid_parameter("channels: expected 1-4 color channels, got " +
                                std::to_string(channels.size()));
    }
    for (const ImagePlane& plane : channels) {
        if (!plane.same_shape(channels.front())) {
            throw shape_error("channels: color channel dimensions differ");
        }
    }
    std::vector<FeatureTensor> tensors;
    tensors.reserve(channels.size());
    for (const ImagePlane& plane : channels) {
        tensors.push_back(page_run(plane, params));
    }
    return tensors;
}

}  // namespace page
