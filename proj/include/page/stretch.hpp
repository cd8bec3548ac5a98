#pragma once

#include <complex>

#include "page/array2d.hpp"

namespace page {

using ImagePlane = Array2D<double>;
using ComplexField = Array2D<std::complex<double>>;

// Unscaled forward DFT in DC-at-corner layout.
ComplexField forward_transform(const ImagePlane& img);
ComplexField forward_transform(const ComplexField& field);

// Inverse DFT carrying the 1/(N*M) factor, so inverse(forward(x)) == x.
ComplexField inverse_transform(const ComplexField& field);

// Reindexes a centered-grid kernel (zero frequency at row h/2, col w/2) into
// the DC-at-corner layout the transforms use.
template <typename T>
Array2D<T> shift_center_to_corner(const Array2D<T>& centered) {
    const int h = centered.rows();
    const int w = centered.cols();
    Array2D<T> out(h, w);
    const int rs = h / 2;
    const int cs = w / 2;
    for (int r = 0; r < h; ++r) {
        const int sr = (r + rs) % h;
        for (int c = 0; c < w; ++c) {
            out(r, c) = centered(sr, (c + cs) % w);
        }
    }
    return out;
}

// Spectral smoothing stage: Re(IFFT(FFT(img) * shifted lpf_gain)).
ImagePlane smooth_image(const ImagePlane& img, const Array2D<double>& lpf_gain);

// Phase stage: IFFT(FFT(img) * shifted exp(-j * phase)).
ComplexField apply_phase_kernel(const ImagePlane& img, const Array2D<double>& phase);

// Phase stage on an already-transformed image (DC-at-corner spectrum); lets
// callers transform once and apply many direction kernels.
ComplexField apply_phase_to_spectrum(const ComplexField& spectrum,
                                     const Array2D<double>& phase);

// The full stretch operator: smoothing stage followed by the phase stage.
// All three arrays must share dimensions.
ComplexField apply_stretch(const ImagePlane& img, const Array2D<double>& lpf_gain,
                           const Array2D<double>& phase);

// Per-sample principal argument in (-pi, pi]; the argument of 0 is 0.
Array2D<double> extract_phase(const ComplexField& field);

}  // namespace page
