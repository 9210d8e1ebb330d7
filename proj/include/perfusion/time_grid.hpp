#pragma once

#include "perfusion/errors.hpp"

namespace perfusion {

// Shared time discretization: quadrature abscissas tau_q = q*dtau for
// q = 0..n_q-1 and observation times t_i = i*dt_obs for i = 1..n_obs,
// with dt_obs = s*dtau.
struct TimeGrid {
    double final_time = 0.0;
    double dtau = 0.0;
    double dt_obs = 0.0;
    int s = 0;
    int n_q = 0;
    int n_obs = 0;

    double abscissa(int q) const { return q * dtau; }
    double obs_time(int i) const { return i * dt_obs; }
};

TimeGrid build_time_grid(double final_time, double dtau, double dt_obs, int n_obs);

} // namespace perfusion
