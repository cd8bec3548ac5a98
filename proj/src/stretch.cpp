#include "page/stretch.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "page/errors.hpp"

namespace page {

namespace {

// fftw_execute is thread-safe; the planner is not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : ptr(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* ptr;
};

ComplexField run_dft(const ComplexField& in, int sign) {
    const int h = in.rows();
    const int w = in.cols();
    if (h < 1 || w < 1) {
        throw invalid_parameter("transform input: dimensions must be >= 1");
    }
    const std::size_t n = in.size();
    FftwBuffer buf(n);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(h, w, buf.ptr, buf.ptr, sign, FFTW_ESTIMATE);
    }
    const std::complex<double>* src = in.data();
    for (std::size_t i = 0; i < n; ++i) {
        buf.ptr[i][0] = src[i].real();
        buf.ptr[i][1] = src[i].imag();
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    ComplexField out(h, w);
    std::complex<double>* dst = out.data();
    const double scale = sign == FFTW_BACKWARD ? 1.0 / static_cast<double>(n) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = std::complex<double>(buf.ptr[i][0] * scale, buf.ptr[i][1] * scale);
    }
    return out;
}

}  // namespace

ComplexField forward_transform(const ImagePlane& img) {
    ComplexField field(img.rows(), img.cols());
    std::complex<double>* dst = field.data();
    const double* src = img.data();
    for (std::size_t i = 0; i < img.size(); ++i) {
        dst[i] = std::complex<double>(src[i], 0.0);
    }
    return run_dft(field, FFTW_FORWARD);
}

ComplexField forward_transform(const ComplexField& field) {
    return run_dft(field, FFTW_FORWARD);
}

ComplexField inverse_transform(const ComplexField& field) {
    return run_dft(field, FFTW_BACKWARD);
}

ImagePlane smooth_image(const ImagePlane& img, const Array2D<double>& lpf_gain) {
    if (!img.same_shape(lpf_gain)) {
        throw shape_error("smooth_image: image and lpf_gain dimensions differ");
    }
    const Array2D<double> gain = shift_center_to_corner(lpf_gain);
    ComplexField spectrum = forward_transform(img);
    for (int r = 0; r < spectrum.rows(); ++r) {
        for (int c = 0; c < spectrum.cols(); ++c) {
            spectrum(r, c) *= gain(r, c);
        }
    }
    const ComplexField back = inverse_transform(spectrum);
    ImagePlane out(img.rows(), img.cols());
    for (int r = 0; r < out.rows(); ++r) {
        for (int c = 0; c < out.cols(); ++c) {
            out(r, c) = back(r, c).real();
        }
    }
    return out;
}

ComplexField apply_phase_kernel(const ImagePlane& img, const Array2D<double>& phase) {
    if (!img.same_shape(phase)) {
        throw shape_error("apply_phase_kernel: image and phase dimensions differ");
    }
    return apply_phase_to_spectrum(forward_transform(img), phase);
}

ComplexField apply_phase_to_spectrum(const ComplexField& spectrum,
                                     const Array2D<double>& phase) {
    if (spectrum.rows() != phase.rows() || spectrum.cols() != phase.cols()) {
        throw shape_error("apply_phase_to_spectrum: spectrum and phase dimensions differ");
    }
    const Array2D<double> corner_phase = shift_center_to_corner(phase);
    ComplexField rotated = spectrum;
    for (int r = 0; r < rotated.rows(); ++r) {
        for (int c = 0; c < rotated.cols(); ++c) {
            rotated(r, c) *= std::polar(1.0, -corner_phase(r, c));
        }
    }
    return inverse_transform(rotated);
}

ComplexField apply_stretch(const ImagePlane& img, const Array2D<double>& lpf_gain,
                           const Array2D<double>& phase) {
    if (!img.same_shape(lpf_gain) || !img.same_shape(phase)) {
        throw shape_error("apply_stretch: image, lpf_gain, and phase dimensions differ");
    }
    return apply_phase_kernel(smooth_image(img, lpf_gain), phase);
}

Array2D<double> extract_phase(const ComplexField& field) {
    constexpr double pi = std::numbers::pi;
    Array2D<double> out(field.rows(), field.cols());
    for (int r = 0; r < field.rows(); ++r) {
        for (int c = 0; c < field.cols(); ++c) {
            double p = std::arg(field(r, c));
            if (p == -pi) {
                p = pi;
            }
            out(r, c) = p;
        }
    }
    return out;
}

}  // namespace page
