#include "perfusion/covariance.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace perfusion {

CovarianceMatrix gaussian_covariance(const TimeGrid& grid, double alpha, double ell) {
    if (!(alpha > 0.0)) {
        throw NonpositiveParameter("alpha must be positive, got " + std::to_string(alpha));
    }
    if (!(ell > 0.0)) {
        throw NonpositiveParameter("ell must be positive, got " + std::to_string(ell));
    }
    CovarianceMatrix cov;
    cov.alpha = alpha;
    cov.ell = ell;
    cov.entries.resize(grid.n_q, grid.n_q);
    const double inv_two_ell2 = 1.0 / (2.0 * ell * ell);
    for (int l = 0; l < grid.n_q; ++l) {
        cov.entries(l, l) = alpha;
        for (int m = l + 1; m < grid.n_q; ++m) {
            const double d = grid.abscissa(l) - grid.abscissa(m);
            const double v = alpha * std::exp(-d * d * inv_two_ell2);
            cov.entries(l, m) = v;
            cov.entries(m, l) = v;
        }
    }
    return cov;
}

namespace {

double default_jitter(const CovarianceMatrix& cov) {
    const double scale =
        cov.alpha > 0.0 ? cov.alpha : cov.entries.diagonal().maxCoeff();
    return kDefaultJitterRel * scale;
}

} // namespace

NoiseFactor factorize(const CovarianceMatrix& cov, double jitter_start) {
    if (cov.entries.rows() != cov.entries.cols() || cov.entries.rows() == 0) {
        throw DimensionMismatch("covariance must be square and nonempty");
    }
    if (jitter_start == 0.0) {
        jitter_start = default_jitter(cov);
    }
    if (!(jitter_start > 0.0)) {
        throw NonpositiveParameter("jitter_start must be positive, got " +
                                   std::to_string(jitter_start));
    }

    double jitter = jitter_start;
    for (int attempt = 0; attempt <= 6; ++attempt, jitter *= 10.0) {
        Matrix shifted = cov.entries;
        shifted.diagonal().array() += jitter;
        Eigen::LLT<Matrix> llt(shifted);
        if (llt.info() != Eigen::Success) {
            continue;
        }
        NoiseFactor factor;
        factor.lower = llt.matrixL();
        factor.jitter = jitter;

        const double residual =
            (factor.lower * factor.lower.transpose() - shifted).norm();
        if (residual > 1e-8 * cov.entries.norm()) {
            continue;
        }
        return factor;
    }
    throw NotFactorizable("covariance not factorizable within the jitter ladder starting at " +
                          std::to_string(jitter_start));
}

SpectralFactor spectral_factorize(const CovarianceMatrix& cov, double jitter) {
    if (cov.entries.rows() != cov.entries.cols() || cov.entries.rows() == 0) {
        throw DimensionMismatch("covariance must be square and nonempty");
    }
    if (jitter == 0.0) {
        jitter = default_jitter(cov);
    }
    if (jitter < 0.0) {
        throw NonpositiveParameter("jitter must be nonnegative, got " + std::to_string(jitter));
    }

    Matrix shifted = cov.entries;
    shifted.diagonal().array() += jitter;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(shifted);
    if (eig.info() != Eigen::Success) {
        throw NotFactorizable("eigendecomposition of the shifted covariance failed");
    }

    const Vector& lambda = eig.eigenvalues();   // ascending
    const int n = static_cast<int>(lambda.size());
    const double budget = kSpectralResidualRel * cov.entries.norm();
    const double budget2 = budget * budget;

    // Drop the longest ascending prefix whose squared eigenvalues fit in the
    // residual budget; negative eigenvalues (roundoff) are always dropped.
    double acc = 0.0;
    int drop = 0;
    while (drop < n - 1) {
        const double lam = lambda[drop];
        const double next = acc + lam * lam;
        if (lam > 0.0 && next > budget2) {
            break;
        }
        acc = next;
        ++drop;
    }

    const int r = n - drop;
    SpectralFactor sf;
    sf.jitter = jitter;
    sf.residual = std::sqrt(acc);
    sf.basis.resize(n, r);
    for (int j = 0; j < r; ++j) {
        const int idx = n - 1 - j;   // descending order in the basis
        const double lam = std::max(lambda[idx], 0.0);
        sf.basis.col(j) = eig.eigenvectors().col(idx) * std::sqrt(lam);
    }
    return sf;
}

namespace {

Vector draw_standard(Eigen::Index n, RngStream& rng) {
    Vector z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        z[i] = rng.normal();
    }
    return z;
}

} // namespace

Vector sample(const NoiseFactor& factor, double scale, RngStream& rng) {
    const Vector z = draw_standard(factor.lower.rows(), rng);
    Vector out = factor.lower.triangularView<Eigen::Lower>() * z;
    out *= scale;
    return out;
}

Vector sample(const SpectralFactor& factor, double scale, RngStream& rng) {
    const Vector z = draw_standard(factor.basis.cols(), rng);
    return scale * (factor.basis * z);
}

} // namespace perfusion
