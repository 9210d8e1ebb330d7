#include "perfusion/covariance.hpp"
#include "perfusion/forward_model.hpp"
#include "perfusion/kernels.hpp"
#include "perfusion/rng.hpp"
#include "perfusion/time_grid.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <vector>

namespace {

using namespace perfusion;
using namespace perfusion::kernels;
using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
    fn();
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
        fn();
    }
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

std::vector<RngStream> make_streams(std::uint64_t seed, int n_e) {
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(n_e));
    const RngStream root(seed, kAssimilationDomain);
    for (int m = 0; m < n_e; ++m) {
        streams.push_back(root.substream(static_cast<std::uint64_t>(m)));
    }
    return streams;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_dev) {
    std::printf("%-18s %10.3f %10.3f %8.2fx %12.3e\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, max_dev);
}

} // namespace

int main() {
    const TimeGrid grid = build_time_grid(49.0, 0.0625, 0.25, 196);
    const int n_q = grid.n_q;
    const int n_e = 2000;
    const int reps = 5;

    const CovarianceMatrix cov = gaussian_covariance(grid, 1e-9, 2.0);
    const NoiseFactor chol = factorize(cov);
    const SpectralFactor spec = spectral_factorize(cov);

    RngStream fill_rng(7, kAssimilationDomain);
    Matrix K(n_q, n_e);
    for (int m = 0; m < n_e; ++m) {
        for (int q = 0; q < n_q; ++q) {
            K(q, m) = fill_rng.normal();
        }
    }

    Vector aif(n_q);
    for (int q = 0; q < n_q; ++q) {
        aif[q] = std::exp(-0.05 * static_cast<double>(q));
    }
    const AifVector aif_vec{aif};
    const ForwardRow row = build_forward_row(aif_vec, grid, grid.n_obs / 2);

    Workspace ws;

    std::printf("n_q=%d  n_e=%d  spectral rank=%d  reps=%d\n", n_q, n_e,
                static_cast<int>(spec.basis.cols()), reps);
    std::printf("%-18s %10s %10s %9s %12s\n", "kernel", "serial ms", "parallel", "speedup",
                "max |diff|");

    {
        Vector y_s(n_e), y_p(n_e);
        const double ts = time_ms([&] { project_serial(K, row.weights, row.lo, row.hi, y_s); }, reps);
        const double tp = time_ms([&] { project_parallel(K, row.weights, row.lo, row.hi, y_p); }, reps);
        report("project", ts, tp, (y_s - y_p).cwiseAbs().maxCoeff());
    }
    {
        Vector y(n_e);
        project_serial(K, row.weights, row.lo, row.hi, y);
        double m_s = 0.0, m_p = 0.0;
        const double ts = time_ms([&] { m_s = mean_serial(y); }, reps);
        const double tp = time_ms([&] { m_p = mean_parallel(y, ws.block_scalar); }, reps);
        report("mean", ts, tp, std::abs(m_s - m_p));
    }
    {
        Vector w(n_e);
        for (int m = 0; m < n_e; ++m) {
            w[m] = std::sin(0.01 * static_cast<double>(m));
        }
        Vector skw_s(n_q), skw_p(n_q);
        double sww_s = 0.0, sww_p = 0.0;
        const double ts = time_ms([&] { weighted_sums_serial(K, w, skw_s, sww_s); }, reps);
        const double tp = time_ms(
            [&] { weighted_sums_parallel(K, w, ws.block_vec, ws.block_scalar, skw_p, sww_p); },
            reps);
        double dev = (skw_s - skw_p).cwiseAbs().maxCoeff();
        dev = std::max(dev, std::abs(sww_s - sww_p));
        report("weighted_sums", ts, tp, dev);
    }
    {
        Vector u(n_q), coef(n_e);
        for (int q = 0; q < n_q; ++q) {
            u[q] = std::cos(0.02 * static_cast<double>(q));
        }
        for (int m = 0; m < n_e; ++m) {
            coef[m] = 1e-3 * std::sin(0.03 * static_cast<double>(m));
        }
        Matrix K_s = K, K_p = K;
        const double ts = time_ms([&] { rank1_update_serial(K_s, u, coef); }, reps);
        const double tp = time_ms([&] { rank1_update_parallel(K_p, u, coef); }, reps);
        report("rank1_update", ts, tp, (K_s - K_p).cwiseAbs().maxCoeff());
    }
    {
        Matrix K_s = K, K_p = K;
        auto st_s = make_streams(11, n_e);
        auto st_p = make_streams(11, n_e);
        const double ts = time_ms([&] { add_noise_serial(K_s, chol.lower, 0.25, st_s); }, reps);
        const double tp = time_ms([&] { add_noise_parallel(K_p, chol.lower, 0.25, st_p, ws.z); }, reps);
        report("add_noise chol", ts, tp, (K_s - K_p).cwiseAbs().maxCoeff());
    }
    {
        Matrix K_s = K, K_p = K;
        auto st_s = make_streams(13, n_e);
        auto st_p = make_streams(13, n_e);
        const double ts = time_ms([&] { add_noise_serial(K_s, spec.basis, 0.25, st_s); }, reps);
        const double tp = time_ms([&] { add_noise_parallel(K_p, spec.basis, 0.25, st_p, ws.z); }, reps);
        report("add_noise lowrank", ts, tp, (K_s - K_p).cwiseAbs().maxCoeff());
    }
    {
        Vector mu_s(n_q), mu_p(n_q);
        const double ts = time_ms([&] { col_mean_serial(K, mu_s); }, reps);
        const double tp = time_ms([&] { col_mean_parallel(K, ws.block_vec, mu_p); }, reps);
        report("col_mean", ts, tp, (mu_s - mu_p).cwiseAbs().maxCoeff());
    }
    return 0;
}
