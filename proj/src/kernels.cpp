#include "perfusion/kernels.hpp"

#include <algorithm>

namespace perfusion::kernels {

namespace {

struct Block {
    Eigen::Index start;
    Eigen::Index len;
};

inline Block block_at(Eigen::Index n_e, int b) {
    const Eigen::Index start = static_cast<Eigen::Index>(b) * kMemberBlock;
    return {start, std::min<Eigen::Index>(kMemberBlock, n_e - start)};
}

} // namespace

int num_blocks(Eigen::Index n_e) {
    return static_cast<int>((n_e + kMemberBlock - 1) / kMemberBlock);
}

void project_serial(const Matrix& K, const Vector& w, int lo, int hi, Vector& y) {
    const Eigen::Index n_e = K.cols();
    y.resize(n_e);
    const int len = hi - lo + 1;
    for (Eigen::Index m = 0; m < n_e; ++m) {
        double acc = 0.0;
        const double* col = K.col(m).data();
        for (int q = 0; q < len; ++q) {
            acc += w[lo + q] * col[lo + q];
        }
        y[m] = acc;
    }
}

void project_parallel(const Matrix& K, const Vector& w, int lo, int hi, Vector& y) {
    const Eigen::Index n_e = K.cols();
    y.resize(n_e);
    const int len = hi - lo + 1;
    if (len <= 0) {
        y.setZero();
        return;
    }
    const int nb = num_blocks(n_e);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        for (Eigen::Index m = blk.start; m < blk.start + blk.len; ++m) {
            y[m] = w.segment(lo, len).dot(K.col(m).segment(lo, len));
        }
    }
}

double mean_serial(const Vector& y) {
    double acc = 0.0;
    for (Eigen::Index m = 0; m < y.size(); ++m) {
        acc += y[m];
    }
    return acc / static_cast<double>(y.size());
}

double mean_parallel(const Vector& y, Vector& block_buf) {
    const int nb = num_blocks(y.size());
    block_buf.resize(nb);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(y.size(), b);
        block_buf[b] = y.segment(blk.start, blk.len).sum();
    }
    double acc = 0.0;
    for (int b = 0; b < nb; ++b) {
        acc += block_buf[b];
    }
    return acc / static_cast<double>(y.size());
}

void weighted_sums_serial(const Matrix& K, const Vector& w, Vector& s_kw, double& s_ww) {
    const Eigen::Index n_q = K.rows();
    const Eigen::Index n_e = K.cols();
    s_kw = Vector::Zero(n_q);
    s_ww = 0.0;
    for (Eigen::Index m = 0; m < n_e; ++m) {
        const double wm = w[m];
        const double* col = K.col(m).data();
        for (Eigen::Index q = 0; q < n_q; ++q) {
            s_kw[q] += col[q] * wm;
        }
        s_ww += wm * wm;
    }
}

void weighted_sums_parallel(const Matrix& K, const Vector& w, Matrix& block_vec,
                            Vector& block_scalar, Vector& s_kw, double& s_ww) {
    const Eigen::Index n_q = K.rows();
    const Eigen::Index n_e = K.cols();
    const int nb = num_blocks(n_e);
    block_vec.resize(n_q, nb);
    block_scalar.resize(nb);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        block_vec.col(b).noalias() = K.middleCols(blk.start, blk.len) * w.segment(blk.start, blk.len);
        block_scalar[b] = w.segment(blk.start, blk.len).squaredNorm();
    }
    s_kw = Vector::Zero(n_q);
    s_ww = 0.0;
    for (int b = 0; b < nb; ++b) {
        s_kw += block_vec.col(b);
        s_ww += block_scalar[b];
    }
}

void rank1_update_serial(Matrix& K, const Vector& u, const Vector& coef) {
    const Eigen::Index n_q = K.rows();
    const Eigen::Index n_e = K.cols();
    for (Eigen::Index m = 0; m < n_e; ++m) {
        const double c = coef[m];
        double* col = K.col(m).data();
        for (Eigen::Index q = 0; q < n_q; ++q) {
            col[q] += c * u[q];
        }
    }
}

void rank1_update_parallel(Matrix& K, const Vector& u, const Vector& coef) {
    const Eigen::Index n_e = K.cols();
    const int nb = num_blocks(n_e);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        K.middleCols(blk.start, blk.len).noalias() +=
            u * coef.segment(blk.start, blk.len).transpose();
    }
}

void add_noise_serial(Matrix& K, const Matrix& F, double scale,
                      std::vector<RngStream>& streams) {
    const Eigen::Index r = F.cols();
    const Eigen::Index n_e = K.cols();
    Vector z(r);
    for (Eigen::Index m = 0; m < n_e; ++m) {
        for (Eigen::Index i = 0; i < r; ++i) {
            z[i] = streams[static_cast<std::size_t>(m)].normal();
        }
        K.col(m).noalias() += scale * (F * z);
    }
}

void add_noise_parallel(Matrix& K, const Matrix& F, double scale,
                        std::vector<RngStream>& streams, Matrix& z_buf) {
    const Eigen::Index r = F.cols();
    const Eigen::Index n_e = K.cols();
    z_buf.resize(r, n_e);
    const int nb = num_blocks(n_e);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        for (Eigen::Index m = blk.start; m < blk.start + blk.len; ++m) {
            double* col = z_buf.col(m).data();
            RngStream& rng = streams[static_cast<std::size_t>(m)];
            for (Eigen::Index i = 0; i < r; ++i) {
                col[i] = rng.normal();
            }
        }
        K.middleCols(blk.start, blk.len).noalias() +=
            scale * (F * z_buf.middleCols(blk.start, blk.len));
    }
}

void col_mean_serial(const Matrix& K, Vector& mu) {
    const Eigen::Index n_q = K.rows();
    const Eigen::Index n_e = K.cols();
    mu = Vector::Zero(n_q);
    for (Eigen::Index m = 0; m < n_e; ++m) {
        const double* col = K.col(m).data();
        for (Eigen::Index q = 0; q < n_q; ++q) {
            mu[q] += col[q];
        }
    }
    mu /= static_cast<double>(n_e);
}

void col_mean_parallel(const Matrix& K, Matrix& block_vec, Vector& mu) {
    const Eigen::Index n_q = K.rows();
    const Eigen::Index n_e = K.cols();
    const int nb = num_blocks(n_e);
    block_vec.resize(n_q, nb);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        block_vec.col(b).noalias() = K.middleCols(blk.start, blk.len).rowwise().sum();
    }
    mu = Vector::Zero(n_q);
    for (int b = 0; b < nb; ++b) {
        mu += block_vec.col(b);
    }
    mu /= static_cast<double>(n_e);
}

void covariance_blocked(const Matrix& K, const Vector& mu, Matrix& C) {
    const Eigen::Index n_q = K.rows();
    const Eigen::Index n_e = K.cols();
    C = Matrix::Zero(n_q, n_q);
    const int nb = num_blocks(n_e);
    Matrix anomalies;
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        anomalies = K.middleCols(blk.start, blk.len).colwise() - mu;
        C.selfadjointView<Eigen::Lower>().rankUpdate(anomalies, 1.0);
    }
    C /= static_cast<double>(n_e - 1);
    C.triangularView<Eigen::StrictlyUpper>() = C.transpose();
}

void draw_scalars_serial(std::vector<RngStream>& streams, double scale, Vector& out) {
    const Eigen::Index n_e = static_cast<Eigen::Index>(streams.size());
    out.resize(n_e);
    for (Eigen::Index m = 0; m < n_e; ++m) {
        out[m] = scale * streams[static_cast<std::size_t>(m)].normal();
    }
}

void draw_scalars_parallel(std::vector<RngStream>& streams, double scale, Vector& out) {
    const Eigen::Index n_e = static_cast<Eigen::Index>(streams.size());
    out.resize(n_e);
    const int nb = num_blocks(n_e);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const Block blk = block_at(n_e, b);
        for (Eigen::Index m = blk.start; m < blk.start + blk.len; ++m) {
            out[m] = scale * streams[static_cast<std::size_t>(m)].normal();
        }
    }
}

} // namespace perfusion::kernels
