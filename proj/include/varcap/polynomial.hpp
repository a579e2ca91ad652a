#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "varcap/exponent.hpp"
#include "varcap/rational.hpp"

namespace varcap {

// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
// Zero coefficients are never stored; the zero polynomial has an empty term map.
class Polynomial {
  public:
    using TermMap = std::map<ExponentVector, GaussianRational, GrevlexLess>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial constant(std::vector<std::string> vars, GaussianRational c) {
        Polynomial p(std::move(vars));
        p.add_term(ExponentVector(p.vars_.size()), std::move(c));
        return p;
    }

    static Polynomial monomial(std::vector<std::string> vars, ExponentVector a,
                               GaussianRational c = GaussianRational(1)) {
        Polynomial p(std::move(vars));
        if (a.size() != p.vars_.size())
            throw std::invalid_argument("monomial exponent length mismatch");
        p.add_term(std::move(a), std::move(c));
        return p;
    }

    static Polynomial variable(std::vector<std::string> vars, std::size_t idx) {
        ExponentVector a(vars.size());
        a[idx] = 1;
        return monomial(std::move(vars), a);
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Degree of the zero polynomial is reported as nullopt.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& [a, c] : terms_) d = std::max(d, a.total_degree());
        return d;
    }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
    }

    GaussianRational coefficient(const ExponentVector& a) const {
        auto it = terms_.find(a);
        return it == terms_.end() ? GaussianRational(0) : it->second;
    }

    void add_term(ExponentVector a, GaussianRational c) { accumulate(a, c); }

    std::pair<ExponentVector, GaussianRational> leading_term(const MonomialOrder& order) const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
            if (order.less(best->first, it->first)) best = it;
        }
        return {best->first, best->second};
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_vars(a, b);
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.accumulate(e, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_vars(a, b);
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.accumulate(e, -c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.vars_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_vars(a, b);
        Polynomial r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.accumulate(ea + eb, ca * cb);
        return r;
    }

    Polynomial scaled(const GaussianRational& c) const {
        Polynomial r(vars_);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    // p * c*x^a, the workhorse of the division algorithm.
    Polynomial times_term(const ExponentVector& a, const GaussianRational& c) const {
        Polynomial r(vars_);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e + a, k * c);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const {
        if (point.size() != vars_.size())
            throw std::invalid_argument("evaluation point dimension mismatch");
        std::complex<double> acc = 0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int j = 0; j < e[i]; ++j) t *= point[i];
            acc += t;
        }
        return acc;
    }

    GaussianRational eval_exact(const std::vector<GaussianRational>& point) const {
        if (point.size() != vars_.size())
            throw std::invalid_argument("evaluation point dimension mismatch");
        GaussianRational acc(0);
        for (const auto& [e, c] : terms_) {
            GaussianRational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int j = 0; j < e[i]; ++j) t = t * point[i];
            acc += t;
        }
        return acc;
    }

    // Partial derivative with respect to variable idx.
    Polynomial derivative(std::size_t idx) const {
        Polynomial r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            ExponentVector d = e;
            d[idx] -= 1;
            r.terms_.emplace(std::move(d), c * GaussianRational(Rational(e[idx])));
        }
        return r;
    }

    static void check_vars(const Polynomial& a, const Polynomial& b) {
        if (a.vars_ != b.vars_)
            throw std::invalid_argument("polynomial variable-list mismatch");
    }

  private:
    void accumulate(const ExponentVector& e, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

namespace detail {

inline std::string monomial_string(const std::vector<std::string>& vars,
                                   const ExponentVector& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

// Coefficient rendered so that `coeff '*' monomial` re-parses under the grammar.
inline std::string coefficient_string(const GaussianRational& c) {
    if (c.im == 0) {
        if (c.re.get_den() == 1) return c.re.get_str();
        return "(" + c.re.get_str() + ")";
    }
    if (c.re == 0) {
        if (c.im == 1) return "i";
        if (c.im == -1) return "(0-i)";
        return "(" + c.im.get_str() + ")*i";
    }
    std::string s = "(" + c.re.get_str();
    if (c.im > 0) s += "+";
    if (c.im == 1)
        s += "i";
    else if (c.im == -1)
        s += "-i";
    else if (c.im > 0)
        s += c.im.get_str() + "*i";
    else
        s += "-" + Rational(-c.im).get_str() + "*i";
    return s + ")";
}

}  // namespace detail

// Canonical rendering: graded, first-index-dominant descending, so the sphere
// prints as "z1^2 + z2^2 + z3^2 - 1". Output re-parses to the same term map.
inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<ExponentVector, GaussianRational>> ts(p.terms().begin(),
                                                               p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        int da = a.first.total_degree(), db = b.first.total_degree();
        if (da != db) return da > db;
        return lex_first_dominant(a.first, b.first) == Ordering::Greater;
    });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        GaussianRational coeff = c;
        // Pull a sign out front when the coefficient is purely real or purely
        // imaginary; mixed complex coefficients keep their parenthesized form.
        bool negate = (coeff.im == 0 && coeff.re < 0) || (coeff.re == 0 && coeff.im < 0);
        if (negate) coeff = -coeff;
        std::string sep = first ? (negate ? "-" : "") : (negate ? " - " : " + ");
        std::string mono = detail::monomial_string(p.variables(), e);
        std::string piece;
        if (mono.empty()) {
            piece = detail::coefficient_string(coeff);
        } else if (coeff == GaussianRational(1)) {
            piece = mono;
        } else {
            piece = detail::coefficient_string(coeff) + "*" + mono;
        }
        out += sep + piece;
        first = false;
    }
    return out;
}

}  // namespace varcap
