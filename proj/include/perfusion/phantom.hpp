#pragma once

#include "perfusion/aif.hpp"
#include "perfusion/forward_model.hpp"
#include "perfusion/time_grid.hpp"
#include "perfusion/types.hpp"

#include <cstdint>
#include <vector>

namespace perfusion {

// Gamma-variate arterial input, peak-normalized: the maximum value is
// `amplitude`, attained at t = t0 + a*b. The default amplitude puts the
// clean concentration peak of a perfusion-60 voxel near 10.
struct AifParams {
    double amplitude = 1540.0;
    double t0 = 1.0;
    double a = 1.0;
    double b = 0.5;
};

struct Region {
    enum class Shape { Disc, Rect };
    Shape shape = Shape::Disc;
    // Disc: center (cx, cy), radius. Rect: corners [x0, x1] x [y0, y1].
    double cx = 0.0, cy = 0.0, radius = 0.0;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double perfusion = 0.0;
};

struct PhantomSpec {
    int nx = 1;
    int ny = 1;
    double background_perfusion = 60.0;
    std::vector<Region> regions;   // later regions override earlier ones
    double mtt = 8.0;
    AifParams aif;
    double T = 49.0;
    double dt_obs = 1.0;
    double dtau = 0.0625;
    double noise_variance = 1.5625;
    double baseline = 0.0;
    // Display perfusion in [0, 70] maps to kernel amplitude k(0) via
    // k(0) = perfusion * kernel_scale * rho, keeping kernels near 1e-3.
    double kernel_scale = 1e-4;
    double rho = 1.0;
    std::uint64_t seed = 42;
};

struct PhantomDataset {
    Vector truth_map;    // nx*ny display-perfusion values, row-major
    AifVector aif;
    Matrix clean;        // n_voxel x n_obs
    Matrix noisy;
    double baseline = 0.0;
    TimeGrid grid;
};

double gamma_variate_aif(const AifParams& params, double t);

// One-compartment exponential residue, k(0) = p * rho.
double truth_kernel(double p, double mtt, double rho, double t);

// Kernel trajectory for one voxel, p in kernel units.
KernelState truth_kernel_state(double p, double mtt, double rho, const TimeGrid& grid);

void validate(const PhantomSpec& spec);

// Display perfusion of voxel (x, y) under the spec's region stack.
double perfusion_at(const PhantomSpec& spec, int x, int y);

PhantomDataset generate(const PhantomSpec& spec);

} // namespace perfusion
