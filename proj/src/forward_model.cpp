#include "perfusion/forward_model.hpp"

#include <algorithm>
#include <string>

namespace perfusion {

ForwardRow build_forward_row(const AifVector& aif, const TimeGrid& grid, int i) {
    if (aif.values.size() != grid.n_q) {
        throw DimensionMismatch("aif has " + std::to_string(aif.values.size()) +
                                " entries, grid expects " + std::to_string(grid.n_q));
    }
    if (i < 1 || i > grid.n_obs) {
        throw IndexError("observation index " + std::to_string(i) + " outside 1.." +
                         std::to_string(grid.n_obs));
    }

    ForwardRow row;
    row.obs_index = i;
    row.weights = Vector::Zero(grid.n_q);
    const int target = i * grid.s;
    row.lo = std::max(0, target - (grid.n_q - 1));
    row.hi = std::min(target, grid.n_q - 1);
    for (int m = row.lo; m <= row.hi; ++m) {
        row.weights[m] = grid.dtau * aif.values[target - m];
    }
    return row;
}

double apply_forward(const ForwardRow& row, const KernelState& k) {
    if (k.values.size() != row.weights.size()) {
        throw DimensionMismatch("kernel has " + std::to_string(k.values.size()) +
                                " entries, row expects " + std::to_string(row.weights.size()));
    }
    const int len = row.hi - row.lo + 1;
    if (len <= 0) {
        return 0.0;
    }
    return row.weights.segment(row.lo, len).dot(k.values.segment(row.lo, len));
}

Vector convolve_to_observation_space(const AifVector& aif, const KernelState& k,
                                     const TimeGrid& grid) {
    if (k.values.size() != grid.n_q) {
        throw DimensionMismatch("kernel has " + std::to_string(k.values.size()) +
                                " entries, grid expects " + std::to_string(grid.n_q));
    }
    Vector c(grid.n_obs);
    for (int i = 1; i <= grid.n_obs; ++i) {
        c[i - 1] = apply_forward(build_forward_row(aif, grid, i), k);
    }
    return c;
}

PerfusionValue perfusion_from_kernel(const KernelState& k, double rho) {
    if (!(rho > 0.0)) {
        throw NonpositiveDensity("rho must be positive, got " + std::to_string(rho));
    }
    if (k.values.size() == 0) {
        throw DimensionMismatch("kernel is empty");
    }
    PerfusionValue p;
    p.rho = rho;
    p.p_point = k.values[0] / rho;
    p.p_max = k.values.maxCoeff() / rho;
    return p;
}

} // namespace perfusion
