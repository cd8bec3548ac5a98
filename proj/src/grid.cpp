#include "page/grid.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "page/errors.hpp"

namespace page {

PolarCoords cart2pol(double x, double y) {
    return {std::atan2(y, x), std::hypot(x, y)};
}

namespace {

// [-0.5, +0.5] with both endpoints included. The symmetric form keeps the
// endpoints exact, puts an exact 0 at the center sample of odd axes, and
// negates exactly under i -> n-1-i.
std::vector<double> centered_axis(int n) {
    std::vector<double> axis(static_cast<std::size_t>(n));
    const double denom = 2.0 * (n - 1);
    for (int i = 0; i < n; ++i) {
        axis[static_cast<std::size_t>(i)] = (2.0 * i - (n - 1)) / denom;
    }
    return axis;
}

}  // namespace

FrequencyGrid build_frequency_grid(int height, int width) {
    if (height < 2) {
        throw invalid_parameter("height: must be >= 2, got " + std::to_string(height));
    }
    if (width < 2) {
        throw invalid_parameter("width: must be >= 2, got " + std::to_string(width));
    }

    FrequencyGrid grid;
    grid.height = height;
    grid.width = width;
    grid.u = Array2D<double>(height, width);
    grid.v = Array2D<double>(height, width);
    grid.theta = Array2D<double>(height, width);
    grid.rho = Array2D<double>(height, width);

    const std::vector<double> u_axis = centered_axis(height);
    const std::vector<double> v_axis = centered_axis(width);

    for (int r = 0; r < height; ++r) {
        const double uv = u_axis[static_cast<std::size_t>(r)];
        for (int c = 0; c < width; ++c) {
            const double vv = v_axis[static_cast<std::size_t>(c)];
            grid.u(r, c) = uv;
            grid.v(r, c) = vv;
            const PolarCoords polar = cart2pol(uv, vv);
            grid.theta(r, c) = polar.theta;
            grid.rho(r, c) = polar.rho;
        }
    }
    return grid;
}

}  // namespace page
