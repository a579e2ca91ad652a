#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace varcap {

// Discrete linear minimax: minimize max_j |f_j + (F c)_j| over complex c.
// `value` is the best achieved maximum, `lower_bound` a certificate: for any
// probability weights the weighted L2 minimum bounds the optimum from below.
struct MinimaxSolution {
    std::vector<std::complex<double>> coefficients;
    double value = 0;
    double lower_bound = 0;
    int iterations = 0;
    bool certified = false;
    bool degenerate = false;
    std::string note;

    double gap() const {
        if (value <= 0) return 0;
        return (value - lower_bound) / value;
    }
};

inline constexpr double kMinimaxGapTol = 1e-8;
inline constexpr int kMinimaxMaxIter = 5000;
inline constexpr double kDegenerateFloor = 1e-300;

namespace detail {

struct MinimaxWork {
    Eigen::VectorXcd f;
    Eigen::MatrixXcd F;
    std::size_t N = 0, P = 0;

    // Certificate: for fixed weights, min_c of the weighted L2 mean of the
    // residuals is a lower bound for the minimax optimum.
    double certified_lower(Eigen::VectorXd lam) const {
        lam = lam.cwiseMax(0.0);
        double total = lam.sum();
        if (total <= 0) return 0;
        lam /= total;
        Eigen::VectorXcd r = residual_at(ls_solve(lam));
        double mean = 0;
        for (std::size_t j = 0; j < N; ++j) mean += lam(j) * std::norm(r(j));
        return std::sqrt(std::max(mean, 0.0));
    }

    Eigen::VectorXcd ls_solve(const Eigen::VectorXd& lam) const {
        Eigen::VectorXd sq = lam.cwiseSqrt();
        Eigen::MatrixXcd A = sq.asDiagonal() * F;
        Eigen::VectorXcd b = -(sq.asDiagonal() * f);
        return A.colPivHouseholderQr().solve(b);
    }

    Eigen::VectorXcd residual_at(const Eigen::VectorXcd& c) const { return f + F * c; }
};

// Newton refinement of the equalization conditions on a small active set:
// |r_a|^2 = t on the set, stationarity of the weighted square sum, weights
// summing to one. Returns false when the iteration fails to make sense.
inline bool kkt_newton(const MinimaxWork& w, const std::vector<std::size_t>& act,
                       Eigen::VectorXcd& c, Eigen::VectorXd& lam_act, double& t) {
    const std::size_t m = act.size();
    const std::size_t P = w.P;
    const std::size_t n = 2 * P + m + 1;
    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < P; ++i) {
        v(2 * i) = c(i).real();
        v(2 * i + 1) = c(i).imag();
    }
    for (std::size_t a = 0; a < m; ++a) v(2 * P + a) = lam_act(a);
    v(2 * P + m) = t;

    for (int it = 0; it < 60; ++it) {
        Eigen::VectorXcd cc(P);
        for (std::size_t i = 0; i < P; ++i) cc(i) = {v(2 * i), v(2 * i + 1)};
        Eigen::VectorXcd r = w.residual_at(cc);
        Eigen::VectorXd G = Eigen::VectorXd::Zero(n);
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t a = 0; a < m; ++a) {
            std::size_t ja = act[a];
            G(a) = std::norm(r(ja)) - v(2 * P + m);
            for (std::size_t i = 0; i < P; ++i) {
                std::complex<double> g = std::conj(r(ja)) * w.F(ja, i);
                J(a, 2 * i) = 2 * g.real();
                J(a, 2 * i + 1) = -2 * g.imag();
            }
            J(a, 2 * P + m) = -1;
        }
        for (std::size_t i = 0; i < P; ++i) {
            std::complex<double> S{0, 0};
            for (std::size_t a = 0; a < m; ++a)
                S += v(2 * P + a) * std::conj(r(act[a])) * w.F(act[a], i);
            G(m + 2 * i) = S.real();
            G(m + 2 * i + 1) = S.imag();
            for (std::size_t a = 0; a < m; ++a) {
                std::complex<double> g = std::conj(r(act[a])) * w.F(act[a], i);
                J(m + 2 * i, 2 * P + a) = g.real();
                J(m + 2 * i + 1, 2 * P + a) = g.imag();
            }
            for (std::size_t kk = 0; kk < P; ++kk) {
                std::complex<double> H{0, 0};
                for (std::size_t a = 0; a < m; ++a)
                    H += v(2 * P + a) * std::conj(w.F(act[a], kk)) * w.F(act[a], i);
                J(m + 2 * i, 2 * kk) = H.real();
                J(m + 2 * i + 1, 2 * kk) = H.imag();
                std::complex<double> Hy = std::complex<double>{0, -1} * H;
                J(m + 2 * i, 2 * kk + 1) = Hy.real();
                J(m + 2 * i + 1, 2 * kk + 1) = Hy.imag();
            }
        }
        for (std::size_t a = 0; a < m; ++a) J(m + 2 * P, 2 * P + a) = 1;
        double sum = 0;
        for (std::size_t a = 0; a < m; ++a) sum += v(2 * P + a);
        G(m + 2 * P) = sum - 1;

        Eigen::VectorXd dv = J.colPivHouseholderQr().solve(-G);
        if (!dv.allFinite()) return false;
        v += dv;
        if (dv.norm() <= 1e-15 * (1 + v.norm())) break;
    }
    for (std::size_t i = 0; i < P; ++i) c(i) = {v(2 * i), v(2 * i + 1)};
    for (std::size_t a = 0; a < m; ++a) lam_act(a) = v(2 * P + a);
    t = v(2 * P + m);
    return std::isfinite(t);
}

}  // namespace detail

// Lawson iteration (multiplicatively reweighted least squares) with a KKT
// Newton polish on the active set when the certificate gap stalls.
inline MinimaxSolution solve_discrete_minimax(
    const std::vector<std::complex<double>>& fixed,
    const std::vector<std::vector<std::complex<double>>>& free_columns,
    double gap_tol = kMinimaxGapTol, int max_iter = kMinimaxMaxIter) {
    const std::size_t N = fixed.size();
    if (N == 0) throw std::invalid_argument("minimax: empty point set");
    for (const auto& col : free_columns)
        if (col.size() != N) throw std::invalid_argument("minimax: column length mismatch");
    const std::size_t P = free_columns.size();

    MinimaxSolution out;
    out.coefficients.assign(P, {0, 0});

    double scale = 0;
    for (const auto& v : fixed) scale = std::max(scale, std::abs(v));
    if (scale < kDegenerateFloor) {
        out.value = scale;
        out.lower_bound = scale;
        out.degenerate = true;
        out.certified = true;
        return out;
    }

    detail::MinimaxWork w;
    w.N = N;
    w.P = P;
    w.f.resize(N);
    for (std::size_t j = 0; j < N; ++j) w.f(j) = fixed[j] / scale;
    w.F.resize(N, P);
    std::vector<double> col_scale(P, 1.0);
    for (std::size_t i = 0; i < P; ++i) {
        double cs = 0;
        for (const auto& v : free_columns[i]) cs = std::max(cs, std::abs(v));
        if (cs < kDegenerateFloor) cs = 1.0;
        col_scale[i] = cs;
        for (std::size_t j = 0; j < N; ++j) w.F(j, i) = free_columns[i][j] / cs;
    }

    if (P == 0) {
        double mx = 0;
        for (std::size_t j = 0; j < N; ++j) mx = std::max(mx, std::abs(w.f(j)));
        out.value = mx * scale;
        out.lower_bound = out.value;
        out.certified = true;
        return out;
    }

    Eigen::VectorXd lambda = Eigen::VectorXd::Constant(N, 1.0 / N);
    double best_upper = std::numeric_limits<double>::infinity();
    double best_lower = 0;
    Eigen::VectorXcd best_c = Eigen::VectorXcd::Zero(P);
    Eigen::VectorXd best_lambda = lambda;

    auto is_certified = [&] {
        return best_upper - best_lower <= gap_tol * std::max(best_upper, kDegenerateFloor);
    };

    int last_improve = 0;
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        Eigen::VectorXcd c = w.ls_solve(lambda);
        Eigen::VectorXcd r = w.residual_at(c);

        double upper = 0, mean = 0;
        for (std::size_t j = 0; j < N; ++j) {
            double a = std::abs(r(j));
            upper = std::max(upper, a);
            mean += lambda(j) * a * a;
        }
        if (upper < best_upper * (1 - 1e-12)) last_improve = it;
        if (upper < best_upper) {
            best_upper = upper;
            best_c = c;
            best_lambda = lambda;
        }
        double lower = std::sqrt(std::max(mean, 0.0));
        if (lower > best_lower * (1 + 1e-12)) last_improve = it;
        best_lower = std::max(best_lower, lower);
        if (is_certified()) break;
        // Hand a stalled iteration to the active-set polish.
        if (it - last_improve > 200) break;

        double total = 0;
        for (std::size_t j = 0; j < N; ++j) {
            lambda(j) *= std::max(std::abs(r(j)), 1e-280);
            total += lambda(j);
        }
        lambda /= total;
    }

    if (!is_certified() && best_upper > kDegenerateFloor) {
        // Active-set polish. The dual optimum is supported on at most 2P + 1
        // points; Newton equalization on that support yields both a sharper
        // primal iterate and near-optimal weights for the L2 certificate.
        Eigen::VectorXcd r = w.residual_at(best_c);
        std::vector<std::size_t> order(N);
        for (std::size_t j = 0; j < N; ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return std::abs(r(a)) > std::abs(r(b)); });
        const std::size_t cap = std::min(N, 2 * P + 1);
        std::vector<std::size_t> act(order.begin(), order.begin() + cap);
        std::size_t next_fresh = cap;

        for (int attempt = 0; attempt < 8 && !is_certified(); ++attempt) {
            Eigen::VectorXcd c = best_c;
            Eigen::VectorXd lam_act(act.size());
            double s = 0;
            for (std::size_t a = 0; a < act.size(); ++a) s += best_lambda(act[a]);
            for (std::size_t a = 0; a < act.size(); ++a)
                lam_act(a) = s > 0 ? best_lambda(act[a]) / s : 1.0 / act.size();
            double t = best_upper * best_upper;
            if (!detail::kkt_newton(w, act, c, lam_act, t)) break;

            Eigen::VectorXcd rr = w.residual_at(c);
            double upper = 0;
            for (std::size_t j = 0; j < N; ++j) upper = std::max(upper, std::abs(rr(j)));
            if (upper < best_upper) {
                best_upper = upper;
                best_c = c;
            }
            Eigen::VectorXd lam_full = Eigen::VectorXd::Zero(N);
            double most_negative = 0;
            std::size_t worst = act.size();
            for (std::size_t a = 0; a < act.size(); ++a) {
                if (lam_act(a) > 0) lam_full(act[a]) = lam_act(a);
                if (lam_act(a) < most_negative) {
                    most_negative = lam_act(a);
                    worst = a;
                }
            }
            best_lower = std::max(best_lower, w.certified_lower(lam_full));
            if (is_certified()) break;
            if (worst < act.size() && next_fresh < N) {
                act[worst] = order[next_fresh++];
            } else {
                break;
            }
        }
    }

    for (std::size_t i = 0; i < P; ++i)
        out.coefficients[i] = scale * best_c(i) / col_scale[i];
    out.value = best_upper * scale;
    out.lower_bound = std::min(best_lower, best_upper) * scale;
    out.degenerate = out.value < kDegenerateFloor;
    out.certified = is_certified();
    if (!out.certified) out.note = "gap not certified within iteration budget";
    return out;
}

}  // namespace varcap
