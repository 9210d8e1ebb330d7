#include "perfusion/phantom.hpp"

#include "perfusion/rng.hpp"

#include <cmath>
#include <string>

namespace perfusion {

double gamma_variate_aif(const AifParams& params, double t) {
    if (!(params.amplitude > 0.0) || !(params.a > 0.0) || !(params.b > 0.0)) {
        throw InvalidParams("gamma-variate needs positive amplitude, a, b");
    }
    const double dt = t - params.t0;
    if (dt <= 0.0) {
        return 0.0;
    }
    const double x = dt / (params.a * params.b);
    return params.amplitude * std::pow(x, params.a) * std::exp(params.a - dt / params.b);
}

double truth_kernel(double p, double mtt, double rho, double t) {
    if (p < 0.0) {
        throw InvalidParams("perfusion must be nonnegative, got " + std::to_string(p));
    }
    if (!(mtt > 0.0)) {
        throw InvalidParams("mtt must be positive, got " + std::to_string(mtt));
    }
    if (!(rho > 0.0)) {
        throw NonpositiveDensity("rho must be positive, got " + std::to_string(rho));
    }
    if (t < 0.0) {
        return 0.0;
    }
    return p * rho * std::exp(-t / mtt);
}

KernelState truth_kernel_state(double p, double mtt, double rho, const TimeGrid& grid) {
    KernelState k;
    k.values.resize(grid.n_q);
    for (int q = 0; q < grid.n_q; ++q) {
        k.values[q] = truth_kernel(p, mtt, rho, grid.abscissa(q));
    }
    return k;
}

void validate(const PhantomSpec& spec) {
    if (spec.nx < 1 || spec.ny < 1) {
        throw InvalidParams("slice dimensions must be at least 1x1");
    }
    auto check_perfusion = [](double p) {
        if (!(p >= 0.0 && p <= 70.0)) {
            throw InvalidParams("perfusion levels must lie in [0, 70], got " +
                                std::to_string(p));
        }
    };
    check_perfusion(spec.background_perfusion);
    for (const Region& r : spec.regions) {
        check_perfusion(r.perfusion);
        if (r.shape == Region::Shape::Disc && !(r.radius > 0.0)) {
            throw InvalidParams("disc region needs a positive radius");
        }
        if (r.shape == Region::Shape::Rect && (r.x1 < r.x0 || r.y1 < r.y0)) {
            throw InvalidParams("rect region needs x0 <= x1 and y0 <= y1");
        }
    }
    if (!(spec.mtt > 0.0)) {
        throw InvalidParams("mtt must be positive, got " + std::to_string(spec.mtt));
    }
    if (!(spec.aif.amplitude > 0.0) || !(spec.aif.a > 0.0) || !(spec.aif.b > 0.0)) {
        throw InvalidParams("gamma-variate needs positive amplitude, a, b");
    }
    if (spec.noise_variance < 0.0) {
        throw NonpositiveVariance("noise_variance must be nonnegative, got " +
                                  std::to_string(spec.noise_variance));
    }
    if (!(spec.kernel_scale > 0.0)) {
        throw InvalidParams("kernel_scale must be positive, got " +
                            std::to_string(spec.kernel_scale));
    }
    if (!(spec.rho > 0.0)) {
        throw NonpositiveDensity("rho must be positive, got " + std::to_string(spec.rho));
    }
}

double perfusion_at(const PhantomSpec& spec, int x, int y) {
    double p = spec.background_perfusion;
    for (const Region& r : spec.regions) {
        bool inside = false;
        if (r.shape == Region::Shape::Disc) {
            const double dx = x - r.cx;
            const double dy = y - r.cy;
            inside = dx * dx + dy * dy <= r.radius * r.radius;
        } else {
            inside = x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
        }
        if (inside) {
            p = r.perfusion;
        }
    }
    return p;
}

PhantomDataset generate(const PhantomSpec& spec) {
    validate(spec);

    const int n_obs = static_cast<int>(std::floor(spec.T / spec.dt_obs + 1e-9));
    PhantomDataset ds;
    ds.grid = build_time_grid(spec.T, spec.dtau, spec.dt_obs, n_obs);
    ds.baseline = spec.baseline;
    ds.aif = discretize_aif([&](double t) { return gamma_variate_aif(spec.aif, t); }, ds.grid);

    const int n_voxel = spec.nx * spec.ny;
    ds.truth_map.resize(n_voxel);
    ds.clean.resize(n_voxel, ds.grid.n_obs);
    ds.noisy.resize(n_voxel, ds.grid.n_obs);

    const double noise_std = std::sqrt(spec.noise_variance);
    const RngStream noise_root(spec.seed, kPhantomNoiseDomain);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_voxel; ++j) {
        const int x = j % spec.nx;
        const int y = j / spec.nx;
        const double p_display = perfusion_at(spec, x, y);
        ds.truth_map[j] = p_display;

        const KernelState k =
            truth_kernel_state(p_display * spec.kernel_scale, spec.mtt, spec.rho, ds.grid);
        ds.clean.row(j) = convolve_to_observation_space(ds.aif, k, ds.grid).transpose();

        RngStream rng = noise_root.substream(static_cast<std::uint64_t>(j));
        for (int i = 0; i < ds.grid.n_obs; ++i) {
            ds.noisy(j, i) = ds.clean(j, i) + noise_std * rng.normal();
        }
    }
    return ds;
}

} // namespace perfusion
