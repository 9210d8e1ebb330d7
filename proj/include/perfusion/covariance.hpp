#pragma once

#include "perfusion/rng.hpp"
#include "perfusion/time_grid.hpp"
#include "perfusion/types.hpp"

namespace perfusion {

// Squared-exponential covariance over the quadrature abscissas:
// entries(l, l') = alpha * exp(-(tau_l - tau_l')^2 / (2 ell^2)).
struct CovarianceMatrix {
    Matrix entries;
    double alpha = 0.0;
    double ell = 0.0;
};

// Cholesky factor of entries + jitter*I.
struct NoiseFactor {
    Matrix lower;
    double jitter = 0.0;
};

// Rank-r spectral square root: basis * basis^T approximates entries + jitter*I
// with Frobenius residual `residual` (absolute). Sampling basis * z with r
// i.i.d. normals is distributionally equivalent to the full factor up to that
// residual, at O(n_q * r) per draw instead of O(n_q^2).
struct SpectralFactor {
    Matrix basis;
    double jitter = 0.0;
    double residual = 0.0;
};

inline constexpr double kDefaultJitterRel = 1e-12;
inline constexpr double kSpectralResidualRel = 1e-10;

CovarianceMatrix gaussian_covariance(const TimeGrid& grid, double alpha, double ell);

// Smallest jitter from jitter_start * {1, 10, ..., 1e6} whose shifted matrix
// admits a Cholesky factorization. Zero jitter_start selects the default
// relative ladder start kDefaultJitterRel * alpha; likewise below.
NoiseFactor factorize(const CovarianceMatrix& cov, double jitter_start = 0.0);

// Eigendecomposition-based factor of entries + jitter*I, truncated to the
// smallest rank with residual <= kSpectralResidualRel * ||entries||_F.
SpectralFactor spectral_factorize(const CovarianceMatrix& cov, double jitter = 0.0);

// scale * L * z with z i.i.d. standard normal.
Vector sample(const NoiseFactor& factor, double scale, RngStream& rng);
Vector sample(const SpectralFactor& factor, double scale, RngStream& rng);

} // namespace perfusion
