#pragma once

#include "perfusion/rng.hpp"
#include "perfusion/types.hpp"

#include <vector>

namespace perfusion::kernels {

// Members are processed in fixed blocks of this many columns. Parallel
// variants assign whole blocks to threads and combine block partials in
// block order, so results are bitwise identical for any thread count.
inline constexpr int kMemberBlock = 256;

int num_blocks(Eigen::Index n_e);

// Scratch buffers sized on demand; reuse across calls to avoid churn.
struct Workspace {
    Matrix z;            // draw buffer, rank x n_e
    Matrix block_vec;    // n_q x num_blocks partials
    Vector block_scalar; // num_blocks partials
    Vector block_aux;    // num_blocks partials
    Vector y;            // per-member projections
    Vector innov;        // per-member innovations
    Vector pert;         // per-member observation perturbations
};

// y[m] = sum_{q in [lo, hi]} w[q] * K(q, m)
void project_serial(const Matrix& K, const Vector& w, int lo, int hi, Vector& y);
void project_parallel(const Matrix& K, const Vector& w, int lo, int hi, Vector& y);

// Mean of y over members, blocked deterministic reduction.
double mean_serial(const Vector& y);
double mean_parallel(const Vector& y, Vector& block_buf);

// s_kw[q] = sum_m K(q, m) * w[m];  s_ww = sum_m w[m]^2.
void weighted_sums_serial(const Matrix& K, const Vector& w, Vector& s_kw, double& s_ww);
void weighted_sums_parallel(const Matrix& K, const Vector& w, Matrix& block_vec,
                            Vector& block_scalar, Vector& s_kw, double& s_ww);

// K.col(m) += coef[m] * u for every member.
void rank1_update_serial(Matrix& K, const Vector& u, const Vector& coef);
void rank1_update_parallel(Matrix& K, const Vector& u, const Vector& coef);

// K.col(m) += scale * F * z_m with z_m i.i.d. standard normal from streams[m].
// F is n_q x r; each member consumes exactly r draws from its own stream.
void add_noise_serial(Matrix& K, const Matrix& F, double scale,
                      std::vector<RngStream>& streams);
void add_noise_parallel(Matrix& K, const Matrix& F, double scale,
                        std::vector<RngStream>& streams, Matrix& z_buf);

// mu[q] = (1/n_e) sum_m K(q, m), blocked deterministic reduction.
void col_mean_serial(const Matrix& K, Vector& mu);
void col_mean_parallel(const Matrix& K, Matrix& block_vec, Vector& mu);

// C = (1/(n_e - 1)) * (K - mu)(K - mu)^T, accumulated block by block in order.
void covariance_blocked(const Matrix& K, const Vector& mu, Matrix& C);

// out[m] = scale * normal() from streams[m], one draw per member.
void draw_scalars_serial(std::vector<RngStream>& streams, double scale, Vector& out);
void draw_scalars_parallel(std::vector<RngStream>& streams, double scale, Vector& out);

} // namespace perfusion::kernels
