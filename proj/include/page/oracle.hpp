#pragma once

#include <vector>

#include "page/kernels.hpp"
#include "page/stretch.hpp"

namespace page::oracle {

// Brute-force references for validating the fast pipeline on small inputs.
// Every operation rejects inputs larger than 32x32.

// Direct O(N^2 M^2) evaluation of the 2D DFT definition sums.
ComplexField naive_dft2(const ComplexField& in);
ComplexField naive_dft2(const ImagePlane& in);

// Inverse via the conjugation identity on naive_dft2, scaled by 1/(N*M).
ComplexField naive_idft2(const ComplexField& in);

// Re-runs the full stretch chain (smoothing, phase kernel, phase extraction)
// per direction with naive transforms and explicit index arithmetic.
std::vector<Array2D<double>> naive_stretch(const ImagePlane& img,
                                           const KernelParams& params);

}  // namespace page::oracle
