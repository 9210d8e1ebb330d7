#include "perfusion/time_grid.hpp"

#include <cmath>
#include <string>

namespace perfusion {

TimeGrid build_time_grid(double final_time, double dtau, double dt_obs, int n_obs) {
    if (!(final_time > 0.0)) {
        throw NonpositiveParameter("final_time must be positive, got " + std::to_string(final_time));
    }
    if (!(dtau > 0.0)) {
        throw NonpositiveParameter("dtau must be positive, got " + std::to_string(dtau));
    }
    if (!(dt_obs > 0.0)) {
        throw NonpositiveParameter("dt_obs must be positive, got " + std::to_string(dt_obs));
    }
    if (n_obs < 0) {
        throw InvalidParams("n_obs must be nonnegative, got " + std::to_string(n_obs));
    }

    const double s_real = dt_obs / dtau;
    const double s_rounded = std::round(s_real);
    if (s_rounded < 1.0 || std::abs(s_real - s_rounded) > 1e-9 * s_real) {
        throw NonIntegerSubstep("dt_obs/dtau = " + std::to_string(s_real) +
                                " is not a positive integer");
    }

    const double nq_real = final_time / dtau;
    const double nq_rounded = std::round(nq_real);
    if (nq_rounded < 1.0 || std::abs(nq_rounded * dtau - final_time) > 1e-9 * final_time) {
        throw NonIntegerSubstep("final_time/dtau = " + std::to_string(nq_real) +
                                " is not a positive integer");
    }

    TimeGrid g;
    g.final_time = final_time;
    g.dtau = dtau;
    g.dt_obs = dt_obs;
    g.s = static_cast<int>(s_rounded);
    g.n_q = static_cast<int>(nq_rounded);
    g.n_obs = n_obs;

    // Every observation index i*s must address a quadrature node strictly
    // inside the kernel support, i.e. i*s <= n_q.
    if (static_cast<long long>(n_obs) * g.s > g.n_q) {
        throw GridOverrun("n_obs*s = " + std::to_string(static_cast<long long>(n_obs) * g.s) +
                          " exceeds n_q = " + std::to_string(g.n_q));
    }
    return g;
}

} // namespace perfusion
