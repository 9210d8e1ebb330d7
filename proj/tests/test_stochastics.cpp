#include "doctest.h"

#include "perfusion/covariance.hpp"
#include "perfusion/rng.hpp"
#include "perfusion/time_grid.hpp"

#include "oracles.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using namespace perfusion;

TEST_CASE("streams are reproducible and substreams are deterministic") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 64; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }

    RngStream c(42, 8);
    RngStream d(42, 7);
    int diff = 0;
    for (int i = 0; i < 64; ++i) {
        if (c.next_u64() != d.next_u64()) {
            ++diff;
        }
    }
    CHECK(diff > 60);

    RngStream root(1234, 5);
    RngStream s1 = root.substream(11);
    RngStream s2 = root.substream(11);
    for (int i = 0; i < 16; ++i) {
        CHECK(s1.next_u64() == s2.next_u64());
    }
    CHECK(root.substream(1).next_u64() != root.substream(2).next_u64());
}

TEST_CASE("substreams with different keys are statistically independent") {
    const int n = 100000;
    RngStream root(99, 3);
    RngStream a = root.substream(1);
    RngStream b = root.substream(2);
    double sxy = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a.normal();
        const double y = b.normal();
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    const double mx = sx / n;
    const double my = sy / n;
    const double cov = sxy / n - mx * my;
    const double corr = cov / std::sqrt((sxx / n - mx * mx) * (syy / n - my * my));
    CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("uniform draws live in the half-open unit interval with the right moments") {
    const int n = 200000;
    RngStream rng(7, 1);
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 0.005);
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("normal draws match standard moments and tail fractions") {
    const int n = 200000;
    RngStream rng(11, 2);
    std::vector<double> xs(n);
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
    int below0 = 0;
    int below1 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        xs[static_cast<std::size_t>(i)] = x;
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
        below0 += x < 0.0;
        below1 += x < 1.0;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    const double skew = (s3 / n - 3.0 * mean * var - mean * mean * mean) / std::pow(var, 1.5);
    const double kurt = s4 / n / (var * var) - 3.0;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
    CHECK(std::abs(skew) < 0.05);
    CHECK(std::abs(kurt) < 0.1);
    CHECK(std::abs(static_cast<double>(below0) / n - 0.5) < 0.005);
    CHECK(std::abs(static_cast<double>(below1) / n - oracles::normal_cdf(1.0)) < 0.005);
}

namespace {

Matrix empirical_covariance(const std::vector<Vector>& draws) {
    const auto n = static_cast<Eigen::Index>(draws.size());
    const Eigen::Index d = draws.front().size();
    Vector mean = Vector::Zero(d);
    for (const Vector& x : draws) {
        mean += x;
    }
    mean /= static_cast<double>(n);
    Matrix cov = Matrix::Zero(d, d);
    for (const Vector& x : draws) {
        const Vector c = x - mean;
        cov += c * c.transpose();
    }
    return cov / static_cast<double>(n - 1);
}

} // namespace

TEST_CASE("factor draws reproduce the shifted covariance, both factorizations") {
    const TimeGrid g = build_time_grid(4.0, 0.25, 0.25, 16);
    const CovarianceMatrix cov = gaussian_covariance(g, 2.0, 0.5);
    const NoiseFactor chol = factorize(cov);
    const SpectralFactor spec = spectral_factorize(cov);

    const int n = 20000;
    const double scale = 3.0;

    RngStream rng_a(5, 1);
    std::vector<Vector> draws_a;
    draws_a.reserve(n);
    for (int i = 0; i < n; ++i) {
        draws_a.push_back(sample(chol, scale, rng_a));
    }
    const Matrix target_a =
        scale * scale * (cov.entries + chol.jitter * Matrix::Identity(g.n_q, g.n_q));
    CHECK((empirical_covariance(draws_a) - target_a).norm() < 0.05 * target_a.norm());

    RngStream rng_b(5, 2);
    std::vector<Vector> draws_b;
    draws_b.reserve(n);
    for (int i = 0; i < n; ++i) {
        draws_b.push_back(sample(spec, scale, rng_b));
    }
    const Matrix target_b =
        scale * scale * (cov.entries + spec.jitter * Matrix::Identity(g.n_q, g.n_q));
    CHECK((empirical_covariance(draws_b) - target_b).norm() < 0.05 * target_b.norm());
}

TEST_CASE("draw variance scales with the square of the requested scale") {
    const TimeGrid g = build_time_grid(2.0, 0.25, 0.25, 8);
    const CovarianceMatrix cov = gaussian_covariance(g, 1e-9, 2.0);
    const NoiseFactor chol = factorize(cov);

    const int n = 100000;
    RngStream root(2024, 9);
    RngStream rng_unit = root.substream(1);
    RngStream rng_scaled = root.substream(2);
    double var_unit = 0.0;
    double var_scaled = 0.0;
    for (int i = 0; i < n; ++i) {
        var_unit += sample(chol, 1.0, rng_unit).squaredNorm();
        var_scaled += sample(chol, 100.0, rng_scaled).squaredNorm();
    }
    const double ratio = var_scaled / var_unit;
    CHECK(ratio == doctest::Approx(10000.0).epsilon(0.02));
}

TEST_CASE("identical streams give identical factor draws") {
    const TimeGrid g = build_time_grid(2.0, 0.25, 0.25, 8);
    const CovarianceMatrix cov = gaussian_covariance(g, 1e-9, 2.0);
    const NoiseFactor chol = factorize(cov);
    RngStream a(77, 4);
    RngStream b(77, 4);
    for (int i = 0; i < 10; ++i) {
        const Vector va = sample(chol, 100.0, a);
        const Vector vb = sample(chol, 100.0, b);
        CHECK((va - vb).norm() == doctest::Approx(0.0));
    }
}
