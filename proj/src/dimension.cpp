#include "thinsem/dimension.hpp"

#include <cmath>
#include <numbers>

namespace thinsem {

namespace {

std::vector<double> chebyshev_nodes(int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = 0.5 * (1.0 + std::cos((2 * i + 1) * std::numbers::pi / (2 * n)));
    return x;
}

// Barycentric weights for Chebyshev points of the first kind; the common
// scale factor cancels in the cardinal-function ratio.
std::vector<double> barycentric_weights(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = (i % 2 == 0 ? 1.0 : -1.0) * std::sin((2 * i + 1) * std::numbers::pi / (2 * n));
    return w;
}

// Evaluate all cardinal polynomials at y via the barycentric formula.
void cardinal_row(const std::vector<double>& nodes, const std::vector<double>& w, double y,
                  std::vector<double>& out) {
    const int n = static_cast<int>(nodes.size());
    out.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (y == nodes[j]) {
            out[j] = 1.0;
            return;
        }
    }
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
        out[j] = w[j] / (y - nodes[j]);
        denom += out[j];
    }
    for (int j = 0; j < n; ++j) out[j] /= denom;
}

double power_iteration(const std::vector<double>& m, int n) {
    std::vector<double> v(n, 1.0), mv(n);
    double lambda = 0.0;
    int stable = 0;
    constexpr int kMaxIter = 100000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double dot_vv = 0.0, dot_vmv = 0.0, norm = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            const double* row = &m[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) s += row[j] * v[j];
            mv[i] = s;
        }
        for (int i = 0; i < n; ++i) {
            dot_vv += v[i] * v[i];
            dot_vmv += v[i] * mv[i];
            norm += mv[i] * mv[i];
        }
        double next = dot_vmv / dot_vv;  // Rayleigh quotient
        norm = std::sqrt(norm);
        if (norm == 0.0) throw ValidationError("power iteration collapsed to zero");
        for (int i = 0; i < n; ++i) v[i] = mv[i] / norm;
        if (iter > 0 && std::abs(next - lambda) <= 1e-12 * std::abs(next)) {
            if (++stable >= 3) return next;
        } else {
            stable = 0;
        }
        lambda = next;
    }
    throw ValidationError("power iteration did not converge within the iteration cap");
}

}  // namespace

TransferOperatorApprox build_transfer_operator(const Alphabet& A, double s, int order) {
    A.validate();
    if (!(s > 0.0 && s < 2.0)) throw ValidationError("transfer operator: s must lie in (0, 2)");
    if (order < 8) throw ValidationError("transfer operator: order must be >= 8");
    TransferOperatorApprox op;
    op.alphabet = A;
    op.order = order;
    op.s = s;
    op.nodes = chebyshev_nodes(order);
    op.matrix.assign(static_cast<size_t>(order) * order, 0.0);
    const auto w = barycentric_weights(order);
    std::vector<double> row(order);
    for (int i = 0; i < order; ++i) {
        const double x = op.nodes[i];
        for (std::int64_t a : A.letters) {
            const double weight = std::pow(a + x, -2.0 * s);
            cardinal_row(op.nodes, w, 1.0 / (a + x), row);
            for (int j = 0; j < order; ++j)
                op.matrix[static_cast<size_t>(i) * order + j] += weight * row[j];
        }
    }
    return op;
}

double transfer_eigenvalue(const Alphabet& A, double s, int order) {
    TransferOperatorApprox op = build_transfer_operator(A, s, order);
    return power_iteration(op.matrix, order);
}

namespace {

double bisect_dimension(const Alphabet& A, int order, double tol) {
    double lo = 0.01, hi = 0.999;
    double flo = transfer_eigenvalue(A, lo, order) - 1.0;
    if (flo < 0.0) throw ValidationError("estimate_dimension: no bracket, lambda(0.01) < 1");
    double fhi = transfer_eigenvalue(A, hi, order) - 1.0;
    if (fhi > 0.0) throw ValidationError("estimate_dimension: no bracket, lambda(0.999) > 1");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double f = transfer_eigenvalue(A, mid, order) - 1.0;
        if (f > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

DimensionResult estimate_dimension(const Alphabet& A, int order, double tol) {
    A.validate();
    if (tol < 1e-12) throw ValidationError("estimate_dimension: tolerance below 1e-12");
    DimensionResult res;
    res.order = order;
    if (A.size() == 1) {
        // One-letter alphabets give a single point; lambda(s) < 1 on the
        // whole bracket, so report dimension 0 with the floor flag.
        res.delta = 0.0;
        res.deltaDoubledOrder = 0.0;
        res.residual = std::abs(transfer_eigenvalue(A, 0.01, order) - 1.0);
        res.floored = true;
        return res;
    }
    res.delta = bisect_dimension(A, order, tol);
    res.deltaDoubledOrder = bisect_dimension(A, 2 * order, tol);
    res.residual = std::abs(transfer_eigenvalue(A, res.delta, order) - 1.0);
    return res;
}

}  // namespace thinsem
