#include "doctest.h"

#include "perfusion/enkf.hpp"
#include "perfusion/phantom.hpp"
#include "perfusion/posterior.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace perfusion;

TEST_CASE("gamma-variate input is zero before onset and peaks at the nominal point") {
    AifParams p;
    p.amplitude = 1540.0;
    p.t0 = 1.0;
    p.a = 1.0;
    p.b = 0.5;
    CHECK(gamma_variate_aif(p, 0.0) == 0.0);
    CHECK(gamma_variate_aif(p, 1.0) == 0.0);
    CHECK(gamma_variate_aif(p, -3.0) == 0.0);

    const double peak_t = p.t0 + p.a * p.b;
    CHECK(gamma_variate_aif(p, peak_t) == doctest::Approx(p.amplitude).epsilon(1e-12));

    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double t = p.t0 + (peak_t - p.t0) * i / 50.0;
        const double v = gamma_variate_aif(p, t);
        CHECK(v >= prev);
        prev = v;
    }
    for (int i = 1; i <= 50; ++i) {
        const double t = peak_t + 0.2 * i;
        const double v = gamma_variate_aif(p, t);
        CHECK(v <= prev);
        CHECK(v >= 0.0);
        prev = v;
    }

    AifParams bad = p;
    bad.amplitude = 0.0;
    CHECK_THROWS_AS(gamma_variate_aif(bad, 1.0), InvalidParams);
    bad = p;
    bad.b = -0.5;
    CHECK_THROWS_AS(gamma_variate_aif(bad, 1.0), InvalidParams);
}

TEST_CASE("response kernel starts at the scaled perfusion and holds its mass") {
    const double p = 60.0 * 1e-4;
    const double mtt = 8.0;
    const double rho = 1.0;
    CHECK(truth_kernel(p, mtt, rho, 0.0) == doctest::Approx(p * rho).epsilon(1e-14));

    const double integral = oracles::simpson(
        [&](double t) { return truth_kernel(p, mtt, rho, t); }, 0.0, 400.0, 20000);
    CHECK(integral == doctest::Approx(p * rho * mtt).epsilon(1e-6));

    const TimeGrid grid = build_time_grid(4.0, 0.5, 1.0, 4);
    const KernelState k = truth_kernel_state(60.0, mtt, 1e-4, grid);
    REQUIRE(k.values.size() == grid.n_q);
    for (int q = 0; q < grid.n_q; ++q) {
        CHECK(k.values[q] ==
              doctest::Approx(6e-3 * std::exp(-grid.abscissa(q) / mtt)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(truth_kernel(-1.0, mtt, rho, 0.0), InvalidParams);
    CHECK_THROWS_AS(truth_kernel(p, 0.0, rho, 0.0), InvalidParams);
    CHECK_THROWS_AS(truth_kernel(p, mtt, 0.0, 0.0), NonpositiveDensity);
}

TEST_CASE("later regions override earlier ones and the background") {
    PhantomSpec spec;
    spec.nx = 8;
    spec.ny = 8;
    spec.background_perfusion = 60.0;
    Region disc;
    disc.shape = Region::Shape::Disc;
    disc.cx = 3.0;
    disc.cy = 3.0;
    disc.radius = 2.5;
    disc.perfusion = 20.0;
    Region rect;
    rect.shape = Region::Shape::Rect;
    rect.x0 = 3.0;
    rect.y0 = 3.0;
    rect.x1 = 5.0;
    rect.y1 = 5.0;
    rect.perfusion = 40.0;
    spec.regions = {disc, rect};

    CHECK(perfusion_at(spec, 0, 0) == doctest::Approx(60.0));
    CHECK(perfusion_at(spec, 2, 3) == doctest::Approx(20.0));
    CHECK(perfusion_at(spec, 3, 3) == doctest::Approx(40.0));
    CHECK(perfusion_at(spec, 5, 5) == doctest::Approx(40.0));
    CHECK(perfusion_at(spec, 7, 7) == doctest::Approx(60.0));
}

TEST_CASE("phantom validation rejects malformed specifications") {
    PhantomSpec spec;
    CHECK_NOTHROW(validate(spec));

    PhantomSpec bad = spec;
    bad.nx = 0;
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    bad.background_perfusion = 71.0;
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    bad.background_perfusion = -1.0;
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    Region r;
    r.shape = Region::Shape::Disc;
    r.radius = 0.0;
    r.perfusion = 30.0;
    bad.regions = {r};
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    r.shape = Region::Shape::Rect;
    r.x0 = 2.0;
    r.x1 = 1.0;
    r.y0 = 0.0;
    r.y1 = 1.0;
    bad.regions = {r};
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    bad.mtt = 0.0;
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    bad.noise_variance = -0.5;
    CHECK_THROWS_AS(validate(bad), NonpositiveVariance);
    bad = spec;
    bad.kernel_scale = 0.0;
    CHECK_THROWS_AS(validate(bad), InvalidParams);
    bad = spec;
    bad.rho = 0.0;
    CHECK_THROWS_AS(validate(bad), NonpositiveDensity);
    bad = spec;
    bad.dtau = 0.03;
    CHECK_THROWS_AS(generate(bad), NonIntegerSubstep);
}

TEST_CASE("clean concentrations are the discrete convolution of kernel and input") {
    PhantomSpec spec;
    spec.nx = 2;
    spec.ny = 1;
    spec.T = 8.0;
    spec.dt_obs = 0.5;
    spec.dtau = 0.125;
    spec.noise_variance = 0.0;
    Region r;
    r.shape = Region::Shape::Rect;
    r.x0 = 1.0;
    r.x1 = 1.0;
    r.y0 = 0.0;
    r.y1 = 0.0;
    r.perfusion = 25.0;
    spec.regions = {r};

    const PhantomDataset data = generate(spec);
    REQUIRE(data.clean.rows() == 2);
    REQUIRE(data.clean.cols() == data.grid.n_obs);
    CHECK(data.truth_map[0] == doctest::Approx(60.0));
    CHECK(data.truth_map[1] == doctest::Approx(25.0));
    CHECK((data.noisy - data.clean).norm() == doctest::Approx(0.0));

    for (int j = 0; j < 2; ++j) {
        const KernelState k = truth_kernel_state(
            data.truth_map[j] * spec.kernel_scale, spec.mtt, spec.rho, data.grid);
        const Vector expected = convolve_to_observation_space(data.aif, k, data.grid);
        CHECK((data.clean.row(j).transpose() - expected).norm() <= 1e-12 * expected.norm());
    }
}

TEST_CASE("a zero-perfusion voxel produces zero concentration") {
    PhantomSpec spec;
    spec.nx = 1;
    spec.ny = 1;
    spec.background_perfusion = 0.0;
    spec.T = 8.0;
    spec.dt_obs = 1.0;
    spec.dtau = 0.25;
    spec.noise_variance = 0.0;
    const PhantomDataset data = generate(spec);
    CHECK(data.clean.norm() == doctest::Approx(0.0));
}

TEST_CASE("clean concentrations approach the continuous convolution as dtau shrinks") {
    PhantomSpec spec;
    spec.nx = 1;
    spec.ny = 1;
    spec.background_perfusion = 60.0;
    spec.T = 49.0;
    spec.dt_obs = 7.0;
    spec.dtau = 0.0625;
    spec.mtt = 4.0;
    spec.noise_variance = 0.0;

    const PhantomDataset data = generate(spec);
    const double scale = spec.kernel_scale * spec.rho;
    const auto aif_fn = [&](double t) { return gamma_variate_aif(spec.aif, t); };
    const auto kernel_fn = [&](double t) {
        return truth_kernel(60.0 * scale, spec.mtt, 1.0, t);
    };
    for (int i = 1; i <= data.grid.n_obs; ++i) {
        const double exact =
            oracles::convolution_reference(aif_fn, kernel_fn, data.grid.obs_time(i), 8000);
        CHECK(data.clean(0, i - 1) == doctest::Approx(exact).epsilon(0.02));
    }
}

TEST_CASE("measurement noise has the requested variance and zero mean") {
    PhantomSpec spec;
    spec.nx = 8;
    spec.ny = 8;
    spec.T = 49.0;
    spec.dt_obs = 0.25;
    spec.dtau = 0.25;
    spec.noise_variance = 6.25;
    const PhantomDataset data = generate(spec);

    const Matrix noise = data.noisy - data.clean;
    const Eigen::Index n = noise.size();
    const double mean = noise.sum() / static_cast<double>(n);
    const double var =
        (noise.array() - mean).square().sum() / static_cast<double>(n - 1);
    CHECK(var == doctest::Approx(6.25).epsilon(0.05));
    CHECK(std::abs(mean) < 3.0 * std::sqrt(6.25 / static_cast<double>(n)));
}

TEST_CASE("generation is deterministic in the seed and shifts with the baseline") {
    PhantomSpec spec;
    spec.nx = 3;
    spec.ny = 2;
    spec.T = 8.0;
    spec.dt_obs = 1.0;
    spec.dtau = 0.25;
    spec.noise_variance = 1.5625;
    spec.seed = 1234;

    const PhantomDataset a = generate(spec);
    const PhantomDataset b = generate(spec);
    CHECK((a.noisy - b.noisy).norm() == doctest::Approx(0.0));

    spec.seed = 1235;
    const PhantomDataset c = generate(spec);
    CHECK((a.noisy - c.noisy).norm() > 0.0);

    spec.seed = 1234;
    spec.baseline = 100.0;
    const PhantomDataset d = generate(spec);
    CHECK(d.baseline == doctest::Approx(100.0));
    CHECK((d.clean - a.clean).norm() == doctest::Approx(0.0));
}

TEST_CASE("a clean single-voxel dataset is recovered by the assimilation") {
    PhantomSpec spec;
    spec.nx = 1;
    spec.ny = 1;
    spec.background_perfusion = 60.0;
    spec.dt_obs = 0.25;
    spec.noise_variance = 0.0;

    const PhantomDataset data = generate(spec);
    AssimilationConfig cfg;
    cfg.n_e = 2000;
    const VoxelPosterior post =
        assimilate_voxel(cfg, data.grid, data.aif, data.clean.row(0).transpose(),
                         RngStream(7, kAssimilationDomain));
    const double p_hat =
        post.stats.mean[0] / (spec.kernel_scale * spec.rho);
    CHECK(p_hat == doctest::Approx(60.0).epsilon(0.1));
}
