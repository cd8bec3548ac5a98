#pragma once

#include "page/array2d.hpp"

namespace page {

struct PolarCoords {
    double theta;  // radians, atan2 convention
    double rho;    // nonnegative radius
};

PolarCoords cart2pol(double x, double y);

// Centered spatial-frequency coordinate system. u varies along rows (height
// axis), v along columns; both span [-0.5, +0.5] with endpoints included.
struct FrequencyGrid {
    int height = 0;
    int width = 0;
    Array2D<double> u;
    Array2D<double> v;
    Array2D<double> theta;  // atan2(v, u)
    Array2D<double> rho;    // hypot(u, v)
};

// Requires height >= 2 and width >= 2 (a two-endpoint axis needs two samples).
FrequencyGrid build_frequency_grid(int height, int width);

}  // namespace page
