#pragma once

#include "perfusion/aif.hpp"
#include "perfusion/time_grid.hpp"
#include "perfusion/types.hpp"

namespace perfusion {

// Discrete response function on the quadrature grid, one voxel.
struct KernelState {
    Vector values;
};

// One row of the discretized convolution operator: the concentration at
// observation i is dot(weights, kernel). weights[m] = dtau * aif[i*s - m]
// inside the causal band and zero elsewhere; [lo, hi] is the nonzero span
// (empty iff lo > hi, which cannot happen for valid i).
struct ForwardRow {
    Vector weights;
    int obs_index = 0;
    int lo = 0;
    int hi = -1;
};

struct PerfusionValue {
    double p_point = 0.0;
    double p_max = 0.0;
    double rho = 1.0;
};

ForwardRow build_forward_row(const AifVector& aif, const TimeGrid& grid, int i);

double apply_forward(const ForwardRow& row, const KernelState& k);

// Concentrations at all observation times for one kernel.
Vector convolve_to_observation_space(const AifVector& aif, const KernelState& k,
                                     const TimeGrid& grid);

PerfusionValue perfusion_from_kernel(const KernelState& k, double rho);

} // namespace perfusion
