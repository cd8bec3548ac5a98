#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include "page/array2d.hpp"
#include "page/grid.hpp"

namespace page {

// Full parameter set for one frequency band. Defaults are engineering
// choices that produce visible edges on natural images; every field is
// overridable from the CLI.
struct KernelParams {
    double mu_1 = 0.0;      // center frequency of the Gaussian passband
    double sigma_1 = 0.08;  // width of the Gaussian passband
    double mu_2 = 0.3;      // center of the log-normal passband (log-frequency units)
    double sigma_2 = 0.7;   // width of the log-normal passband
    double s_1 = 0.6;       // strength applied to the normalized Gaussian factor
    double s_2 = 0.8;       // strength applied to the normalized log-normal factor
    int direction_bins = 10;
    double sigma_lpf = 0.1;  // low-pass smoothing width, cycles/sample
    // Calibrated to the phase scale this kernel actually produces on [0, 1]
    // images; see the defaults table in the README.
    double thresh_min = -0.003;
    double thresh_max = 0.0015;
    bool morph_flag = true;  // false: analog phase output, true: binary edge maps

    // Throws invalid_parameter naming the offending field.
    void validate() const;
};

// D real phase surfaces (phi1 * phi2 per direction) on the centered grid.
struct PhaseFilterBank {
    std::vector<Array2D<double>> phases;  // one height×width surface per direction
    std::vector<double> directions;       // radians, ascending
};

// Gaussian denoising gain, centered layout: exp(-0.5 * rho^2 / (sigma^2 / ln 2)).
// Gain is 1 at rho = 0 and 2^(-1/2) at rho = sigma_lpf.
Array2D<double> build_lowpass(const FrequencyGrid& grid, double sigma_lpf);

// Orientation channels: pi/180 + k * pi/d for k = 0..d-1. Valid for
// 1 <= d <= 179; beyond that the sequence cannot hold d values below pi.
std::vector<double> direction_bins(int d);

// Proper rotation of the grid coordinates by theta:
// u' = u cos + v sin, v' = -u sin + v cos.
std::pair<Array2D<double>, Array2D<double>> rotate_coords(const FrequencyGrid& grid,
                                                          double theta);

// Gaussian-of-|u'| factor, normalized to max 1 over the grid then scaled by s_1.
Array2D<double> phi1(const Array2D<double>& u_prime, double mu_1, double sigma_1,
                     double s_1);

// Log-normal-of-|v'| factor, normalized then scaled by s_2. The v' = 0
// samples take the continuous limit value 0.
Array2D<double> phi2(const Array2D<double>& v_prime, double mu_2, double sigma_2,
                     double s_2);

PhaseFilterBank build_filter_bank(const FrequencyGrid& grid, const KernelParams& params);

}  // namespace page
