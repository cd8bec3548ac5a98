#include "page/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "page/errors.hpp"

namespace page {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinDirection = kPi / 180.0;
constexpr int kMaxDirectionBins = 179;

// Scale each sample by strength / max(raw). An all-underflowed surface stays
// zero rather than dividing 0/0.
void normalize_and_scale(Array2D<double>& raw, double strength) {
    const double peak = *std::max_element(raw.begin(), raw.end());
    if (peak <= 0.0) {
        return;
    }
    for (double& value : raw) {
        value = value / peak * strength;
    }
}

}  // namespace

void KernelParams::validate() const {
    if (!(sigma_1 > 0.0)) {
        throw invalid_parameter("sigma_1: must be > 0, got " + std::to_string(sigma_1));
    }
    if (!(sigma_2 > 0.0)) {
        throw invalid_parameter("sigma_2: must be > 0, got " + std::to_string(sigma_2));
    }
    if (!(sigma_lpf > 0.0)) {
        throw invalid_parameter("sigma_lpf: must be > 0, got " + std::to_string(sigma_lpf));
    }
    if (direction_bins < 1 || direction_bins > kMaxDirectionBins) {
        throw invalid_parameter("direction_bins: must be in [1, 179], got " +
                                std::to_string(direction_bins));
    }
    if (morph_flag && !(thresh_min < thresh_max)) {
        throw invalid_parameter("thresh_min: must be < thresh_max (" +
                                std::to_string(thresh_min) + " vs " +
                                std::to_string(thresh_max) + ")");
    }
}

Array2D<double> build_lowpass(const FrequencyGrid& grid, double sigma_lpf) {
    if (!(sigma_lpf > 0.0)) {
        throw invalid_parameter("sigma_lpf: must be > 0, got " + std::to_string(sigma_lpf));
    }
    const double denom = sigma_lpf * sigma_lpf / std::log(2.0);
    Array2D<double> gain(grid.height, grid.width);
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            const double rho = grid.rho(r, c);
            gain(r, c) = std::exp(-0.5 * rho * rho / denom);
        }
    }
    return gain;
}

std::vector<double> direction_bins(int d) {
    if (d < 1 || d > kMaxDirectionBins) {
        throw invalid_parameter("direction_bins: must be in [1, 179], got " +
                                std::to_string(d));
    }
    const double span = kPi / d;
    std::vector<double> directions(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        directions[static_cast<std::size_t>(k)] = kMinDirection + k * span;
    }
    return directions;
}

std::pair<Array2D<double>, Array2D<double>> rotate_coords(const FrequencyGrid& grid,
                                                          double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    Array2D<double> u_prime(grid.height, grid.width);
    Array2D<double> v_prime(grid.height, grid.width);
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            const double u = grid.u(r, c);
            const double v = grid.v(r, c);
            u_prime(r, c) = u * ct + v * st;
            v_prime(r, c) = -u * st + v * ct;
        }
    }
    return {std::move(u_prime), std::move(v_prime)};
}

Array2D<double> phi1(const Array2D<double>& u_prime, double mu_1, double sigma_1,
                     double s_1) {
    if (!(sigma_1 > 0.0)) {
        throw invalid_parameter("sigma_1: must be > 0, got " + std::to_string(sigma_1));
    }
    const double amplitude = 1.0 / (std::sqrt(2.0 * kPi) * sigma_1);
    Array2D<double> out(u_prime.rows(), u_prime.cols());
    for (int r = 0; r < u_prime.rows(); ++r) {
        for (int c = 0; c < u_prime.cols(); ++c) {
            const double t = (std::abs(u_prime(r, c)) - mu_1) / sigma_1;
            out(r, c) = amplitude * std::exp(-0.5 * t * t);
        }
    }
    normalize_and_scale(out, s_1);
    return out;
}

Array2D<double> phi2(const Array2D<double>& v_prime, double mu_2, double sigma_2,
                     double s_2) {
    if (!(sigma_2 > 0.0)) {
        throw invalid_parameter("sigma_2: must be > 0, got " + std::to_string(sigma_2));
    }
    const double amplitude = 1.0 / (std::sqrt(2.0 * kPi) * sigma_2);
    Array2D<double> out(v_prime.rows(), v_prime.cols());
    for (int r = 0; r < v_prime.rows(); ++r) {
        for (int c = 0; c < v_prime.cols(); ++c) {
            const double mag = std::abs(v_prime(r, c));
            if (mag == 0.0) {
                out(r, c) = 0.0;  // continuous limit of the log-normal density
                continue;
            }
            const double t = (std::log(mag) - mu_2) / sigma_2;
            out(r, c) = amplitude / mag * std::exp(-0.5 * t * t);
        }
    }
    normalize_and_scale(out, s_2);
    return out;
}

PhaseFilterBank build_filter_bank(const FrequencyGrid& grid, const KernelParams& params) {
    params.validate();

    PhaseFilterBank bank;
    bank.directions = direction_bins(params.direction_bins);
    bank.phases.reserve(bank.directions.size());
    for (const double theta : bank.directions) {
        auto [u_prime, v_prime] = rotate_coords(grid, theta);
        const Array2D<double> g1 = phi1(u_prime, params.mu_1, params.sigma_1, params.s_1);
        const Array2D<double> g2 = phi2(v_prime, params.mu_2, params.sigma_2, params.s_2);
        Array2D<double> phase(grid.height, grid.width);
        for (int r = 0; r < grid.height; ++r) {
            for (int c = 0; c < grid.width; ++c) {
                phase(r, c) = g1(r, c) * g2(r, c);
            }
        }
        bank.phases.push_back(std::move(phase));
    }
    return bank;
}

}  // namespace page
