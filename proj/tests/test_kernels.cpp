#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "page/errors.hpp"
#include "page/grid.hpp"
#include "page/kernels.hpp"

using page::Array2D;
using page::build_filter_bank;
using page::build_frequency_grid;
using page::build_lowpass;
using page::direction_bins;
using page::FrequencyGrid;
using page::KernelParams;
using page::phi1;
using page::phi2;
using page::PhaseFilterBank;
using page::rotate_coords;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("lowpass gain is 1 at DC and 2^-1/2 at rho = sigma") {
    // 9x9 centered grid: (u, v) = (0, 0.25) sits exactly at rho = 0.25.
    const FrequencyGrid grid = build_frequency_grid(9, 9);
    const Array2D<double> gain = build_lowpass(grid, 0.25);

    REQUIRE(grid.rho(4, 4) == 0.0);
    CHECK(gain(4, 4) == 1.0);

    REQUIRE(grid.rho(4, 6) == 0.25);
    CHECK(std::abs(gain(4, 6) - std::pow(2.0, -0.5)) <= 1e-12);

    for (const double g : gain) {
        CHECK(g > 0.0);
        CHECK(g <= 1.0);
    }
}

TEST_CASE("lowpass with a huge sigma is unity everywhere") {
    const FrequencyGrid grid = build_frequency_grid(16, 16);
    const Array2D<double> gain = build_lowpass(grid, 1e6);
    for (const double g : gain) {
        CHECK(std::abs(g - 1.0) <= 1e-6);
    }
}

TEST_CASE("lowpass rejects nonpositive sigma") {
    const FrequencyGrid grid = build_frequency_grid(4, 4);
    CHECK_THROWS_AS(build_lowpass(grid, 0.0), page::invalid_parameter);
    CHECK_THROWS_AS(build_lowpass(grid, -0.1), page::invalid_parameter);
}

TEST_CASE("direction bins start at pi/180 and step by pi/d") {
    const auto single = direction_bins(1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == kPi / 180.0);

    const auto four = direction_bins(4);
    REQUIRE(four.size() == 4);
    const double expected4[] = {0.017453, 0.802851, 1.588250, 2.373648};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(four[static_cast<std::size_t>(k)] - expected4[k]) <= 1e-6);
    }

    const auto eight = direction_bins(8);
    REQUIRE(eight.size() == 8);
    CHECK(eight[0] == kPi / 180.0);
    for (std::size_t k = 1; k < 8; ++k) {
        CHECK(std::abs(eight[k] - eight[k - 1] - kPi / 8.0) <= 1e-15);
    }

    for (const int d : {1, 2, 45, 179}) {
        const auto bins = direction_bins(d);
        CHECK(bins.size() == static_cast<std::size_t>(d));
        CHECK(bins.front() == kPi / 180.0);
        CHECK(bins.back() < kPi);
    }
}

TEST_CASE("direction bins reject counts outside [1, 179]") {
    CHECK_THROWS_AS(direction_bins(0), page::invalid_parameter);
    CHECK_THROWS_AS(direction_bins(-3), page::invalid_parameter);
    CHECK_THROWS_AS(direction_bins(180), page::invalid_parameter);
}

TEST_CASE("rotation is the identity at 0 and a proper rotation elsewhere") {
    const FrequencyGrid grid = build_frequency_grid(7, 11);

    auto [u0, v0] = rotate_coords(grid, 0.0);
    CHECK(u0 == grid.u);
    CHECK(v0 == grid.v);

    auto [u90, v90] = rotate_coords(grid, kPi / 2.0);
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            CHECK(std::abs(u90(r, c) - grid.v(r, c)) <= 1e-15);
            CHECK(std::abs(v90(r, c) + grid.u(r, c)) <= 1e-15);
        }
    }

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
    for (int trial = 0; trial < 20; ++trial) {
        auto [up, vp] = rotate_coords(grid, angle(rng));
        for (int r = 0; r < grid.height; ++r) {
            for (int c = 0; c < grid.width; ++c) {
                const double before = grid.u(r, c) * grid.u(r, c) + grid.v(r, c) * grid.v(r, c);
                const double after = up(r, c) * up(r, c) + vp(r, c) * vp(r, c);
                CHECK(std::abs(before - after) <= 1e-12);
            }
        }
    }
}

TEST_CASE("phi1 peaks at |u'| = mu_1 with value s_1 and is even") {
    // 5x5 grid at theta = 0 puts u' samples exactly on {-0.5, -0.25, 0, 0.25, 0.5}.
    const FrequencyGrid grid = build_frequency_grid(5, 5);
    const Array2D<double> surface = phi1(grid.u, 0.25, 0.1, 0.7);

    for (int c = 0; c < 5; ++c) {
        CHECK(surface(1, c) == 0.7);  // u' = -0.25
        CHECK(surface(3, c) == 0.7);  // u' = +0.25
    }
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) {
            CHECK(surface(r, c) >= 0.0);
            CHECK(surface(r, c) <= 0.7);
            CHECK(surface(r, c) == surface(4 - r, c));  // even in u'
        }
    }

    const Array2D<double> baseband = phi1(grid.u, 0.0, 0.08, 0.6);
    for (int c = 0; c < 5; ++c) {
        CHECK(baseband(2, c) == 0.6);  // mu_1 = 0: maximum on the u' = 0 locus
    }
}

TEST_CASE("phi2 vanishes at v' = 0 and peaks at the log-normal mode") {
    const FrequencyGrid grid = build_frequency_grid(9, 9);
    // mode of the density is exp(mu - sigma^2); pick it to land exactly on 0.25.
    const double sigma = 0.5;
    const double mu = std::log(0.25) + sigma * sigma;
    const Array2D<double> surface = phi2(grid.v, mu, sigma, 0.9);

    for (int r = 0; r < 9; ++r) {
        CHECK(surface(r, 4) == 0.0);   // v' = 0 column
        CHECK(surface(r, 2) == 0.9);   // v' = -0.25
        CHECK(surface(r, 6) == 0.9);   // v' = +0.25
        for (int c = 0; c < 9; ++c) {
            CHECK(surface(r, c) >= 0.0);
            CHECK(surface(r, c) <= 0.9);
            CHECK(surface(r, c) == surface(r, 8 - c));  // even in v'
            CHECK(std::isfinite(surface(r, c)));
        }
    }
}

TEST_CASE("filter bank shape, bounds, and symmetry") {
    const FrequencyGrid grid = build_frequency_grid(12, 10);
    KernelParams params;
    params.direction_bins = 1;
    const PhaseFilterBank single = build_filter_bank(grid, params);
    CHECK(single.phases.size() == 1);
    CHECK(single.directions.size() == 1);
    CHECK(single.phases[0].rows() == 12);
    CHECK(single.phases[0].cols() == 10);

    params.direction_bins = 6;
    const PhaseFilterBank bank = build_filter_bank(grid, params);
    const double bound = params.s_1 * params.s_2;
    for (const auto& plane : bank.phases) {
        for (int r = 0; r < plane.rows(); ++r) {
            for (int c = 0; c < plane.cols(); ++c) {
                CHECK(plane(r, c) >= 0.0);
                CHECK(plane(r, c) <= bound);
                // mirror symmetry through the grid center
                CHECK(std::abs(plane(r, c) - plane(11 - r, 9 - c)) <= 1e-15);
            }
        }
    }
}

TEST_CASE("phase surfaces for theta and theta + pi coincide") {
    const FrequencyGrid grid = build_frequency_grid(11, 13);
    KernelParams params;
    for (const double theta : {0.3, 1.1, 2.7}) {
        auto [ua, va] = rotate_coords(grid, theta);
        auto [ub, vb] = rotate_coords(grid, theta + kPi);
        const Array2D<double> pa1 = phi1(ua, params.mu_1, params.sigma_1, params.s_1);
        const Array2D<double> pb1 = phi1(ub, params.mu_1, params.sigma_1, params.s_1);
        const Array2D<double> pa2 = phi2(va, params.mu_2, params.sigma_2, params.s_2);
        const Array2D<double> pb2 = phi2(vb, params.mu_2, params.sigma_2, params.s_2);
        for (int r = 0; r < grid.height; ++r) {
            for (int c = 0; c < grid.width; ++c) {
                CHECK(std::abs(pa1(r, c) * pa2(r, c) - pb1(r, c) * pb2(r, c)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("random valid banks stay finite and in range") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::uniform_real_distribution<double> mu1(-0.5, 0.8);
    std::uniform_real_distribution<double> mu2(-40.0, 2.0);  // includes bands far off-grid
    std::uniform_int_distribution<int> bins(1, 12);
    std::uniform_int_distribution<int> dims(2, 14);

    for (int trial = 0; trial < 60; ++trial) {
        const FrequencyGrid grid = build_frequency_grid(dims(rng), dims(rng));
        KernelParams params;
        params.mu_1 = mu1(rng);
        params.sigma_1 = unit(rng);
        params.mu_2 = mu2(rng);
        params.sigma_2 = unit(rng);
        params.s_1 = unit(rng);
        params.s_2 = unit(rng);
        params.direction_bins = bins(rng);
        const PhaseFilterBank bank = build_filter_bank(grid, params);
        CHECK(bank.phases.size() == static_cast<std::size_t>(params.direction_bins));
        const double bound = params.s_1 * params.s_2;
        for (const auto& plane : bank.phases) {
            for (const double value : plane) {
                CHECK(std::isfinite(value));
                CHECK(value >= 0.0);
                CHECK(value <= bound);
            }
        }
    }
}

namespace {

std::string validation_message(const KernelParams& params) {
    try {
        params.validate();
    } catch (const page::invalid_parameter& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parameter validation names the offending field") {
    KernelParams params;

    params.sigma_1 = 0.0;
    CHECK(validation_message(params).find("sigma_1") != std::string::npos);
    params.sigma_1 = 0.08;

    params.sigma_2 = -1.0;
    CHECK(validation_message(params).find("sigma_2") != std::string::npos);
    params.sigma_2 = 0.7;

    params.sigma_lpf = 0.0;
    CHECK(validation_message(params).find("sigma_lpf") != std::string::npos);
    params.sigma_lpf = 0.1;

    params.direction_bins = 0;
    CHECK(validation_message(params).find("direction_bins") != std::string::npos);
    params.direction_bins = 180;
    CHECK_THROWS_AS(params.validate(), page::invalid_parameter);
    params.direction_bins = 10;

    params.thresh_min = 1.0;
    params.thresh_max = -1.0;
    params.morph_flag = true;
    CHECK(validation_message(params).find("thresh_min") != std::string::npos);
    params.morph_flag = false;  // thresholds unused in analog mode
    CHECK_NOTHROW(params.validate());
}
