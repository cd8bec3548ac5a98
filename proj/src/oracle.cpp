#include "page/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "page/errors.hpp"
#include "page/grid.hpp"

namespace page::oracle {

namespace {

constexpr int kMaxOracleDim = 32;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_size(int h, int w) {
    if (h < 1 || w < 1 || h > kMaxOracleDim || w > kMaxOracleDim) {
        throw invalid_parameter("oracle input: dimensions must be within 1..32, got " +
                                std::to_string(h) + "x" + std::to_string(w));
    }
}

}  // namespace

ComplexField naive_dft2(const ComplexField& in) {
    const int h = in.rows();
    const int w = in.cols();
    check_size(h, w);

    ComplexField out(h, w);
    for (int p = 0; p < h; ++p) {
        for (int q = 0; q < w; ++q) {
            std::complex<double> sum(0.0, 0.0);
            for (int r = 0; r < h; ++r) {
                for (int c = 0; c < w; ++c) {
                    const double angle =
                        -kTwoPi * (static_cast<double>(p) * r / h +
                                   static_cast<double>(q) * c / w);
                    sum += in(r, c) * std::polar(1.0, angle);
                }
            }
            out(p, q) = sum;
        }
    }
    return out;
}

ComplexField naive_dft2(const ImagePlane& in) {
    ComplexField field(in.rows(), in.cols());
    for (int r = 0; r < in.rows(); ++r) {
        for (int c = 0; c < in.cols(); ++c) {
            field(r, c) = std::complex<double>(in(r, c), 0.0);
        }
    }
    return naive_dft2(field);
}

ComplexField naive_idft2(const ComplexField& in) {
    ComplexField conjugated(in.rows(), in.cols());
    for (int r = 0; r < in.rows(); ++r) {
        for (int c = 0; c < in.cols(); ++c) {
            conjugated(r, c) = std::conj(in(r, c));
        }
    }
    ComplexField out = naive_dft2(conjugated);
    const double scale = 1.0 / (static_cast<double>(in.rows()) * in.cols());
    for (int r = 0; r < out.rows(); ++r) {
        for (int c = 0; c < out.cols(); ++c) {
            out(r, c) = std::conj(out(r, c)) * scale;
        }
    }
    return out;
}

std::vector<Array2D<double>> naive_stretch(const ImagePlane& img,
                                           const KernelParams& params) {
    const int h = img.rows();
    const int w = img.cols();
    check_size(h, w);
    params.validate();

    const FrequencyGrid grid = build_frequency_grid(h, w);
    const Array2D<double> lpf = build_lowpass(grid, params.sigma_lpf);
    const PhaseFilterBank bank = build_filter_bank(grid, params);

    // Centered kernel sample feeding DFT bin (p, q).
    auto src_row = [h](int p) { return (p + h / 2) % h; };
    auto src_col = [w](int q) { return (q + w / 2) % w; };

    ComplexField spectrum = naive_dft2(img);
    for (int p = 0; p < h; ++p) {
        for (int q = 0; q < w; ++q) {
            spectrum(p, q) *= lpf(src_row(p), src_col(q));
        }
    }
    const ComplexField smoothed_field = naive_idft2(spectrum);
    ImagePlane smoothed(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            smoothed(r, c) = smoothed_field(r, c).real();
        }
    }

    constexpr double pi = std::numbers::pi;
    std::vector<Array2D<double>> phases;
    phases.reserve(bank.phases.size());
    for (const Array2D<double>& kernel_phase : bank.phases) {
        ComplexField stage = naive_dft2(smoothed);
        for (int p = 0; p < h; ++p) {
            for (int q = 0; q < w; ++q) {
                stage(p, q) *= std::polar(1.0, -kernel_phase(src_row(p), src_col(q)));
            }
        }
        const ComplexField out_field = naive_idft2(stage);
        Array2D<double> phase(h, w);
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                double p = std::atan2(out_field(r, c).imag(), out_field(r, c).real());
                if (p == -pi) {
                    p = pi;
                }
                phase(r, c) = p;
            }
        }
        phases.push_back(std::move(phase));
    }
    return phases;
}

}  // namespace page::oracle
