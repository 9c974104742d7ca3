#pragma once

#include <cmath>
#include <vector>

#include "thinsem/numeric.hpp"

namespace thinsem {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;  // y_i - (slope*x_i + intercept)
};

// Ordinary least squares of y against x.
inline FitResult least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("least_squares: need >= 2 matching samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw ValidationError("least_squares: degenerate abscissae");
    FitResult f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    f.residuals.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) f.residuals[i] = y[i] - (f.slope * x[i] + f.intercept);
    return f;
}

// Fit y ~ C * x^slope by least squares in log-log coordinates.
inline FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) throw ValidationError("loglog_fit: nonpositive sample");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return least_squares(lx, ly);
}

}  // namespace thinsem
