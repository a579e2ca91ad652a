#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "varcap/chebyshev.hpp"

namespace varcap {

// log |det A| with per-row prescaling; -inf for a singular matrix. The phase
// is discarded, so row permutations do not change the result.
inline double logabs_det(Eigen::MatrixXcd A) {
    const Eigen::Index n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("logabs_det: matrix not square");
    double shift = 0;
    for (Eigen::Index r = 0; r < n; ++r) {
        double mx = A.row(r).cwiseAbs().maxCoeff();
        if (mx <= 0) return -std::numeric_limits<double>::infinity();
        A.row(r) /= mx;
        shift += std::log(mx);
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    double total = shift;
    for (Eigen::Index r = 0; r < n; ++r) {
        double d = std::abs(lu.matrixLU()(r, r));
        if (d <= 0 || !std::isfinite(d)) return -std::numeric_limits<double>::infinity();
        total += std::log(d);
    }
    return total;
}

// Evaluation matrix: one row per basis element, one column per cloud point,
// entries w^k e_j(zeta).
inline Eigen::MatrixXcd basis_matrix(const VarietyPointCloud& cloud,
                                     const std::vector<Polynomial>& basis, int k) {
    cloud.check();
    Eigen::MatrixXcd E(basis.size(), cloud.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        auto col = detail::eval_column(basis[r], cloud, k);
        for (std::size_t c = 0; c < cloud.size(); ++c) E(r, c) = col[c];
    }
    return E;
}

inline std::vector<Polynomial> basis_polynomials(const NuSet& level) {
    std::vector<Polynomial> out;
    out.reserve(level.size());
    for (const auto& [nu, rep] : level.representatives) out.push_back(rep);
    return out;
}

inline double vdm_logabs(const VarietyPointCloud& cloud, const std::vector<Polynomial>& basis,
                         int k, const std::vector<std::size_t>& indices) {
    if (indices.size() != basis.size())
        throw std::invalid_argument("vdm_logabs: point count must equal basis size");
    VarietyPointCloud sub;
    sub.residual_tol = cloud.residual_tol;
    for (std::size_t i : indices) {
        if (i >= cloud.size()) throw std::invalid_argument("vdm_logabs: index out of range");
        sub.points.push_back(cloud.points[i]);
        sub.weights.push_back(cloud.weights[i]);
    }
    return logabs_det(basis_matrix(sub, basis, k));
}

struct FeketeConfig {
    enum class Strategy { Greedy, Exchange, Exhaustive } strategy = Strategy::Greedy;
    int max_sweeps = 5;
    std::size_t exhaustive_cap = 200000;
    double swap_tol = 1e-12;
};

struct FeketeResult {
    std::vector<std::size_t> indices;  // sorted ascending
    double log_vdm = 0;
    bool exhaustive = false;
    int sweeps_used = 0;
};

namespace detail {

// Column-pivoted QR: the pivot order picks greedily volume-maximizing columns
// (points).
inline std::vector<std::size_t> greedy_columns(const Eigen::MatrixXcd& E) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(E);
    std::vector<std::size_t> out;
    auto perm = qr.colsPermutation().indices();
    for (Eigen::Index i = 0; i < E.rows() && i < perm.size(); ++i)
        out.push_back(static_cast<std::size_t>(perm(i)));
    return out;
}

}  // namespace detail

inline FeketeResult fekete_search(const VarietyPointCloud& cloud,
                                  const std::vector<Polynomial>& basis, int k,
                                  const FeketeConfig& config = {}) {
    cloud.check();
    const std::size_t M = basis.size();
    const std::size_t N = cloud.size();
    if (M == 0 || M > N) throw std::invalid_argument("fekete_search: need M <= N points");
    Eigen::MatrixXcd E = basis_matrix(cloud, basis, k);
    // Row scaling multiplies every subset determinant by the same factor, so
    // selection is unaffected; the final value is recomputed unscaled.
    Eigen::MatrixXcd Es = E;
    for (std::size_t r = 0; r < M; ++r) {
        double mx = Es.row(r).cwiseAbs().maxCoeff();
        if (mx > 0) Es.row(r) /= mx;
    }

    FeketeResult res;
    if (config.strategy == FeketeConfig::Strategy::Exhaustive) {
        double count = 1;
        for (std::size_t i = 0; i < M; ++i) count *= static_cast<double>(N - i) / (i + 1);
        if (count > static_cast<double>(config.exhaustive_cap))
            throw std::runtime_error("exhaustive search infeasible");
        std::vector<std::size_t> idx(M);
        for (std::size_t i = 0; i < M; ++i) idx[i] = i;
        double best = -std::numeric_limits<double>::infinity();
        std::vector<std::size_t> best_idx = idx;
        for (;;) {
            Eigen::MatrixXcd A(M, M);
            for (std::size_t c = 0; c < M; ++c) A.col(c) = Es.col(idx[c]);
            double v = logabs_det(A);
            if (v > best) {
                best = v;
                best_idx = idx;
            }
            // next combination in lexicographic order
            std::size_t i = M;
            while (i > 0 && idx[i - 1] == N - M + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < M; ++j) idx[j] = idx[j - 1] + 1;
        }
        res.indices = best_idx;
        res.exhaustive = true;
    } else {
        std::vector<std::size_t> sel = detail::greedy_columns(Es);
        if (sel.size() != M) throw std::runtime_error("greedy selection degenerate");
        if (config.strategy == FeketeConfig::Strategy::Exchange) {
            std::vector<char> in_set(N, 0);
            for (std::size_t s : sel) in_set[s] = 1;
            for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
                bool swapped = false;
                for (std::size_t j = 0; j < M; ++j) {
                    Eigen::MatrixXcd A(M, M);
                    for (std::size_t c = 0; c < M; ++c) A.col(c) = Es.col(sel[c]);
                    Eigen::MatrixXcd X = A.partialPivLu().solve(Es);
                    double best_ratio = 1 + config.swap_tol;
                    std::size_t best_c = N;
                    for (std::size_t c = 0; c < N; ++c) {
                        if (in_set[c]) continue;
                        double ratio = std::abs(X(j, c));
                        if (ratio > best_ratio) {
                            best_ratio = ratio;
                            best_c = c;
                        }
                    }
                    if (best_c < N) {
                        in_set[sel[j]] = 0;
                        in_set[best_c] = 1;
                        sel[j] = best_c;
                        swapped = true;
                    }
                }
                res.sweeps_used = sweep + 1;
                if (!swapped) break;
            }
        }
        res.indices = sel;
    }
    std::sort(res.indices.begin(), res.indices.end());
    res.log_vdm = vdm_logabs(cloud, basis, k, res.indices);
    return res;
}

}  // namespace varcap
