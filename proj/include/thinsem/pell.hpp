#pragma once

#include "thinsem/numeric.hpp"

namespace thinsem {

// Solution of t^2 - delta*s^2 = 4 with t, s > 0.
struct PellSolution {
    Int t, s, delta;

    void verify() const {
        if (t * t - delta * s * s != 4) throw ValidationError("Pell solution does not verify");
    }
};

// Fundamental solution of x^2 - delta*y^2 = +-1 (x, y > 0) from the
// continued fraction of sqrt(delta); .second is the norm, +1 or -1.
std::pair<std::pair<Int, Int>, int> pell_pm1_fundamental(const Int& delta);

// Minimal t > 2 with t^2 - delta*s^2 = 4 solvable, s >= 1.
PellSolution pell_fundamental(const Int& delta);

// Does t belong to the trace set of the Pell equation for delta,
// i.e. is (t^2 - 4)/delta a perfect square?  Returns s >= 0 on success.
bool pell_trace_test(const Int& t, const Int& delta, Int* s_out = nullptr);

}  // namespace thinsem
