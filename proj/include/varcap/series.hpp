#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcap/groebner.hpp"
#include "varcap/polynomial.hpp"

namespace varcap {

// Truncated power series in the m local (x) variables, complete through total
// degree D. Only nonzero coefficients are stored; map order is the lex order
// used for trailing terms, so begin() is the lex-least nonzero term.
struct TruncatedSeries {
    std::size_t m = 0;
    int D = 0;
    std::map<ExponentVector, GaussianRational, LexLess> coeffs;

    TruncatedSeries() = default;
    TruncatedSeries(std::size_t m_, int D_) : m(m_), D(D_) {}

    static TruncatedSeries constant(std::size_t m, int D, GaussianRational c) {
        TruncatedSeries s(m, D);
        s.add(ExponentVector(m), std::move(c));
        return s;
    }

    static TruncatedSeries monomial(std::size_t m, int D, const ExponentVector& a,
                                    GaussianRational c = GaussianRational(1)) {
        TruncatedSeries s(m, D);
        s.add(a, std::move(c));
        return s;
    }

    bool is_zero() const { return coeffs.empty(); }

    GaussianRational coefficient(const ExponentVector& a) const {
        auto it = coeffs.find(a);
        return it == coeffs.end() ? GaussianRational(0) : it->second;
    }

    void add(const ExponentVector& a, const GaussianRational& c) {
        if (c.is_zero() || a.total_degree() > D) return;
        auto [it, inserted] = coeffs.emplace(a, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(a.m, std::min(a.D, b.D));
        for (const auto& [e, c] : a.coeffs) r.add(e, c);
        for (const auto& [e, c] : b.coeffs) r.add(e, c);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(a.m, std::min(a.D, b.D));
        for (const auto& [e, c] : a.coeffs) r.add(e, c);
        for (const auto& [e, c] : b.coeffs) r.add(e, -c);
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(a.m, std::min(a.D, b.D));
        for (const auto& [ea, ca] : a.coeffs) {
            int da = ea.total_degree();
            for (const auto& [eb, cb] : b.coeffs) {
                if (da + eb.total_degree() > r.D) continue;
                r.add(ea + eb, ca * cb);
            }
        }
        return r;
    }

    TruncatedSeries scaled(const GaussianRational& c) const {
        TruncatedSeries r(m, D);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : coeffs) r.coeffs.emplace(e, k * c);
        return r;
    }

    // Drop terms above a lower degree bound (used while building degree by degree).
    TruncatedSeries truncated(int newD) const {
        TruncatedSeries r(m, newD);
        for (const auto& [e, c] : coeffs)
            if (e.total_degree() <= newD) r.coeffs.emplace(e, c);
        return r;
    }
};

// Lex-lowest nonzero term of a local expansion. If certified, every exponent
// lex-below nu provably has a zero coefficient (not just through the chart
// precision).
struct TrailingData {
    ExponentVector nu;
    GaussianRational tc;
    bool certified = false;
};

namespace detail {

// Exact solve of a square system over the Gaussian rationals by elimination
// with partial (first-nonzero) pivoting. Throws on a singular matrix.
inline std::vector<GaussianRational> solve_linear(
    std::vector<std::vector<GaussianRational>> A, std::vector<GaussianRational> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular linear system");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col].is_zero()) continue;
            GaussianRational f = A[row][col] / A[col][col];
            for (std::size_t j = col; j < n; ++j) A[row][j] -= f * A[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<GaussianRational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

}  // namespace detail

inline constexpr int kDefaultMaxPrecision = 64;

// Precision serving degree-k work: nu values live in k times the body, and the
// first coordinate can reach 2k already on the sphere.
inline int default_precision(int k) { return 2 * k + 4; }

// Local power-series model y = Y(x) of the variety at a base point, produced by
// the undetermined-coefficients recursion of the implicit function theorem.
class ImplicitChart {
  public:
    ImplicitChart(NormalFormAlgebra alg, std::vector<GaussianRational> base_point, int D)
        : alg_(std::move(alg)), base_(std::move(base_point)), D_(D) {
        validate();
        build();
    }

    const NormalFormAlgebra& algebra() const { return alg_; }
    const std::vector<GaussianRational>& base_point() const { return base_; }
    int precision() const { return D_; }
    std::size_t x_count() const { return alg_.x_count(); }

    // Series of the j-th y-variable (order of alg.split().y_indices), constant
    // term included.
    const TruncatedSeries& y_series(std::size_t j) const { return y_[j]; }

    // Exact truncated expansion of p(x, Y(x)) at chart precision.
    TruncatedSeries expand(const Polynomial& p) const {
        const std::size_t m = x_count();
        const auto& xs = alg_.split().x_indices;
        const auto& ys = alg_.split().y_indices;
        std::map<ExponentVector, TruncatedSeries, LexLess> power_memo;
        TruncatedSeries out(m, D_);
        for (const auto& [e, c] : p.terms()) {
            ExponentVector xa(m);
            for (std::size_t i = 0; i < m; ++i) xa[i] = e[xs[i]];
            ExponentVector yb(ys.size());
            for (std::size_t j = 0; j < ys.size(); ++j) yb[j] = e[ys[j]];
            TruncatedSeries t = TruncatedSeries::monomial(m, D_, xa, c);
            if (yb.total_degree() > 0) t = t * y_power(yb, power_memo);
            out = out + t;
        }
        return out;
    }

  private:
    void validate() const {
        const auto& vars = alg_.variables();
        if (base_.size() != vars.size())
            throw std::invalid_argument("base point dimension mismatch");
        for (std::size_t xi : alg_.split().x_indices)
            if (!base_[xi].is_zero())
                throw std::invalid_argument(
                    "base point has nonzero local coordinates; translate first");
        for (const auto& g : alg_.basis().elements())
            if (!g.eval_exact(base_).is_zero())
                throw std::invalid_argument("point not on variety");
        if (D_ < 1) throw std::invalid_argument("chart precision must be >= 1");
    }

    // The square Jacobian dg_i/dy_j at the base point, choosing the
    // lexicographically first invertible generator subset when there are more
    // basis elements than y-variables.
    void build() {
        const auto& gens = alg_.basis().elements();
        const auto& ys = alg_.split().y_indices;
        const std::size_t r = ys.size();
        const std::size_t m = x_count();

        y_.clear();
        for (std::size_t j = 0; j < r; ++j)
            y_.push_back(TruncatedSeries::constant(m, D_, base_[ys[j]]));
        if (r == 0) return;
        if (gens.size() < r)
            throw std::invalid_argument("fewer generators than y-variables");

        std::vector<std::size_t> chosen;
        std::vector<std::vector<GaussianRational>> jac;
        std::vector<std::size_t> idx(r);
        std::function<bool(std::size_t, std::size_t)> pick = [&](std::size_t pos,
                                                                 std::size_t start) {
            if (pos == r) {
                std::vector<std::vector<GaussianRational>> J(r,
                                                             std::vector<GaussianRational>(r));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j)
                        J[i][j] = gens[idx[i]].derivative(ys[j]).eval_exact(base_);
                try {
                    detail::solve_linear(J, std::vector<GaussianRational>(r));
                } catch (const std::domain_error&) {
                    return false;
                }
                chosen.assign(idx.begin(), idx.end());
                jac = std::move(J);
                return true;
            }
            for (std::size_t g = start; g + (r - pos - 1) < gens.size(); ++g) {
                idx[pos] = g;
                if (pick(pos + 1, g + 1)) return true;
            }
            return false;
        };
        if (!pick(0, 0)) throw std::domain_error("Jacobian singular at base point");

        // Order-by-order: the degree-d correction of Y enters each chosen
        // generator linearly through the base-point Jacobian; everything else
        // it touches has degree > d.
        for (int d = 1; d <= D_; ++d) {
            std::vector<TruncatedSeries> residual;
            residual.reserve(r);
            for (std::size_t i = 0; i < r; ++i)
                residual.push_back(expand(gens[chosen[i]]).truncated(d));
            std::map<ExponentVector, std::vector<GaussianRational>, LexLess> rows;
            for (std::size_t i = 0; i < r; ++i)
                for (const auto& [e, c] : residual[i].coeffs) {
                    if (e.total_degree() != d) continue;
                    auto [it, ins] = rows.emplace(e, std::vector<GaussianRational>(r));
                    it->second[i] = c;
                }
            for (const auto& [e, rhs] : rows) {
                std::vector<GaussianRational> neg(r);
                for (std::size_t i = 0; i < r; ++i) neg[i] = -rhs[i];
                std::vector<GaussianRational> c = detail::solve_linear(jac, neg);
                for (std::size_t j = 0; j < r; ++j) y_[j].add(e, c[j]);
            }
        }

        // All basis elements, chosen or not, must vanish along the graph.
        for (const auto& g : gens)
            if (!expand(g).is_zero())
                throw std::domain_error("implicit series fails to annihilate a generator");
    }

    TruncatedSeries y_power(
        const ExponentVector& beta,
        std::map<ExponentVector, TruncatedSeries, LexLess>& memo) const {
        auto it = memo.find(beta);
        if (it != memo.end()) return it->second;
        TruncatedSeries s = TruncatedSeries::constant(x_count(), D_, GaussianRational(1));
        for (std::size_t j = 0; j < beta.size(); ++j)
            for (int t = 0; t < beta[j]; ++t) s = s * y_[j];
        memo.emplace(beta, s);
        return s;
    }

    NormalFormAlgebra alg_;
    std::vector<GaussianRational> base_;
    int D_;
    std::vector<TruncatedSeries> y_;
};

inline ImplicitChart implicit_series(const NormalFormAlgebra& alg,
                                     const std::vector<GaussianRational>& point, int D) {
    return ImplicitChart(alg, point, D);
}

inline TruncatedSeries expand_on_chart(const Polynomial& p, const ImplicitChart& chart) {
    return chart.expand(p);
}

// Trailing data of p on the chart. x-polynomials expand to themselves, so
// their trailing term is exact; otherwise a found term is certified only when
// every lex-smaller exponent lives below the inspected precision, which for
// the last-index-dominant order means nu is supported on the first coordinate
// alone. Vanishing through D triggers re-derivation at doubled precision.
inline TrailingData trailing(const Polynomial& p, const ImplicitChart& chart,
                             int max_precision = kDefaultMaxPrecision) {
    if (p.is_zero()) throw std::invalid_argument("trailing term of zero polynomial");
    const auto& xs = chart.algebra().split().x_indices;

    if (chart.algebra().is_x_polynomial(p)) {
        TrailingData td;
        td.certified = true;
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            ExponentVector a(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) a[i] = e[xs[i]];
            if (first || lex_last_dominant(a, td.nu) == Ordering::Less) {
                td.nu = a;
                td.tc = c;
                first = false;
            }
        }
        return td;
    }

    const ImplicitChart* use = &chart;
    std::vector<ImplicitChart> regrown;
    for (;;) {
        TruncatedSeries s = use->expand(p);
        if (!s.is_zero()) {
            TrailingData td;
            td.nu = s.coeffs.begin()->first;
            td.tc = s.coeffs.begin()->second;
            bool tail_only_first = true;
            for (std::size_t i = 1; i < td.nu.size(); ++i)
                if (td.nu[i] != 0) tail_only_first = false;
            td.certified = tail_only_first;
            return td;
        }
        int next = use->precision() * 2;
        if (next > max_precision)
            throw std::domain_error("precision exhausted at D_max");
        regrown.emplace_back(chart.algebra(), chart.base_point(), next);
        use = &regrown.back();
    }
}

// S(p, q) := tc(q) p - tc(p) q, reduced to normal form. Defined only when the
// trailing exponents agree; the result is zero or trails strictly lex-later.
inline Polynomial s_polynomial(const Polynomial& p, const Polynomial& q,
                               const ImplicitChart& chart) {
    TrailingData tp = trailing(p, chart);
    TrailingData tq = trailing(q, chart);
    if (tp.nu != tq.nu) throw std::invalid_argument("trailing exponents differ");
    return chart.algebra().normal_form(p.scaled(tq.tc) - q.scaled(tp.tc));
}

}  // namespace varcap
