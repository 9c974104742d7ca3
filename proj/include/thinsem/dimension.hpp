#pragma once

#include <vector>

#include "thinsem/alphabet.hpp"

namespace thinsem {

// Chebyshev collocation approximation of the weighted composition operator
//   (L_s f)(x) = sum_{a in A} (a + x)^(-2s) f(1/(a + x))        on [0, 1].
struct TransferOperatorApprox {
    Alphabet alphabet;
    int order = 0;
    double s = 0.0;
    std::vector<double> nodes;   // collocation nodes in (0, 1)
    std::vector<double> matrix;  // row-major order x order
};

TransferOperatorApprox build_transfer_operator(const Alphabet& A, double s, int order);

// Leading eigenvalue by power iteration to relative tolerance 1e-12.
double transfer_eigenvalue(const Alphabet& A, double s, int order);

struct DimensionResult {
    double delta = 0.0;
    int order = 0;
    double residual = 0.0;       // |lambda(delta) - 1|
    double deltaDoubledOrder = 0.0;  // estimate recomputed at twice the order
    bool floored = false;        // single-letter degenerate case
};

// Unique s with lambda(s) = 1, found by bisection on [0.01, 0.999].
DimensionResult estimate_dimension(const Alphabet& A, int order = 32, double tol = 1e-10);

}  // namespace thinsem
