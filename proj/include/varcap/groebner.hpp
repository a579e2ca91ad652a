#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcap/polynomial.hpp"

namespace varcap {

struct Ideal {
    std::vector<Polynomial> generators;  // may be empty (the zero ideal)

    explicit Ideal(std::vector<Polynomial> gens) : generators(std::move(gens)) {
        for (const auto& g : generators)
            if (g.is_zero()) throw std::invalid_argument("zero generator in ideal");
        for (std::size_t i = 1; i < generators.size(); ++i)
            Polynomial::check_vars(generators[0], generators[i]);
    }
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Remainder of multivariate division of p by the (ordered) divisor list.
// The remainder contains no monomial divisible by any divisor's leading monomial.
inline Polynomial division_remainder(const Polynomial& p,
                                     const std::vector<Polynomial>& divisors,
                                     const MonomialOrder& order) {
    struct Lead {
        ExponentVector mono;
        GaussianRational coeff;
    };
    std::vector<Lead> leads;
    leads.reserve(divisors.size());
    for (const auto& d : divisors) {
        auto [m, c] = d.leading_term(order);
        leads.push_back({m, c});
    }

    Polynomial work = p;
    Polynomial remainder(p.variables());
    while (!work.is_zero()) {
        auto [mono, coeff] = work.leading_term(order);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (leads[i].mono.divides(mono)) {
                GaussianRational factor = coeff / leads[i].coeff;
                work = work - divisors[i].times_term(mono - leads[i].mono, factor);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            remainder.add_term(mono, coeff);
            work = work - Polynomial::monomial(work.variables(), mono, coeff);
        }
    }
    return remainder;
}

// Buchberger S-polynomial: cancels the leading terms of f and g.
inline Polynomial buchberger_s_pair(const Polynomial& f, const Polynomial& g,
                                    const MonomialOrder& order) {
    auto [mf, cf] = f.leading_term(order);
    auto [mg, cg] = g.leading_term(order);
    ExponentVector l = lcm(mf, mg);
    return f.times_term(l - mf, GaussianRational(1) / cf) -
           g.times_term(l - mg, GaussianRational(1) / cg);
}

class GroebnerBasis {
  public:
    GroebnerBasis(std::vector<Polynomial> elements, MonomialOrder order)
        : elements_(std::move(elements)), order_(order) {}

    const std::vector<Polynomial>& elements() const { return elements_; }
    const MonomialOrder& order() const { return order_; }

    std::vector<ExponentVector> leading_monomials() const {
        std::vector<ExponentVector> out;
        out.reserve(elements_.size());
        for (const auto& g : elements_) out.push_back(g.leading_term(order_).first);
        return out;
    }

  private:
    std::vector<Polynomial> elements_;
    MonomialOrder order_;
};

// Buchberger's algorithm under grevlex with the normal pair-selection strategy
// (lowest lcm total degree, ties broken by lex of the lcm), followed by
// interreduction to the unique reduced monic basis. Deterministic throughout.
inline GroebnerBasis buchberger(const Ideal& ideal,
                                std::size_t reduction_budget = 200000) {
    const MonomialOrder order = MonomialOrder::grevlex();
    std::vector<Polynomial> basis;
    for (const auto& g : ideal.generators)
        if (!g.is_zero()) basis.push_back(g);

    struct Pair {
        std::size_t i, j;
        ExponentVector l;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
        int da = a.l.total_degree(), db = b.l.total_degree();
        if (da != db) return da < db;
        Ordering o = lex_last_dominant(a.l, b.l);
        if (o != Ordering::Equal) return o == Ordering::Less;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<Pair> pending;
    auto queue_pairs_for = [&](std::size_t j) {
        auto lj = basis[j].leading_term(order).first;
        for (std::size_t i = 0; i < j; ++i)
            pending.push_back({i, j, lcm(basis[i].leading_term(order).first, lj)});
    };
    for (std::size_t j = 0; j < basis.size(); ++j) queue_pairs_for(j);

    std::size_t reductions = 0;
    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair p = *it;
        pending.erase(it);
        if (++reductions > reduction_budget)
            throw BudgetExceeded("buchberger: reduction budget exceeded");

        // Buchberger's first criterion: coprime leading monomials reduce to zero.
        ExponentVector li = basis[p.i].leading_term(order).first;
        ExponentVector lj = basis[p.j].leading_term(order).first;
        if (p.l == li + lj) continue;

        Polynomial s = buchberger_s_pair(basis[p.i], basis[p.j], order);
        Polynomial r = division_remainder(s, basis, order);
        if (!r.is_zero()) {
            basis.push_back(r);
            queue_pairs_for(basis.size() - 1);
        }
    }

    // Interreduce: drop elements whose lead divides another's, then fully reduce
    // each element against the rest and normalize to monic.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ExponentVector li = basis[i].leading_term(order).first;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            ExponentVector ljm = basis[j].leading_term(order).first;
            if (ljm.divides(li) && !(li.divides(ljm) && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = others.empty() ? minimal[i]
                                      : division_remainder(minimal[i], others, order);
        auto [m, c] = r.leading_term(order);
        reduced.push_back(r.scaled(GaussianRational(1) / c));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.less(a.leading_term(order).first, b.leading_term(order).first);
    });
    return GroebnerBasis(std::move(reduced), order);
}

struct NoetherSplit {
    std::vector<std::size_t> x_indices;  // local coordinates (dimension m)
    std::vector<std::size_t> y_indices;  // module-finite directions
};

struct NoetherDiagnostic {
    bool verified = true;
    // For each y-variable, the pure-power leading monomial that witnesses
    // module-finiteness, if one exists in the basis.
    std::vector<std::optional<ExponentVector>> witnesses;
    std::vector<std::size_t> offending;  // y-indices with no witness
};

// Groebner basis plus the declared x/y split: the working model of C[V].
class NormalFormAlgebra {
  public:
    NormalFormAlgebra(std::vector<std::string> vars, GroebnerBasis basis, NoetherSplit split)
        : vars_(std::move(vars)), basis_(std::move(basis)), split_(std::move(split)) {}

    static NormalFormAlgebra from_ideal(std::vector<std::string> vars, const Ideal& ideal,
                                        NoetherSplit split) {
        return NormalFormAlgebra(std::move(vars), buchberger(ideal), std::move(split));
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const GroebnerBasis& basis() const { return basis_; }
    const NoetherSplit& split() const { return split_; }
    std::size_t x_count() const { return split_.x_indices.size(); }
    std::size_t y_count() const { return split_.y_indices.size(); }

    Polynomial normal_form(const Polynomial& p) const {
        if (basis_.elements().empty()) return p;
        return division_remainder(p, basis_.elements(), basis_.order());
    }

    // Multiplication in C[V]: the normal form of the product of normal forms.
    Polynomial nf_multiply(const Polynomial& p, const Polynomial& q) const {
        return normal_form(p * q);
    }

    bool is_standard_monomial(const ExponentVector& a) const {
        for (const auto& m : basis_.leading_monomials())
            if (m.divides(a)) return false;
        return true;
    }

    // True when p involves only x-variables.
    bool is_x_polynomial(const Polynomial& p) const {
        for (const auto& [e, c] : p.terms())
            for (std::size_t yi : split_.y_indices)
                if (e[yi] != 0) return false;
        return true;
    }

    NoetherDiagnostic check_noether_split() const {
        NoetherDiagnostic diag;
        auto leads = basis_.leading_monomials();
        for (std::size_t yi : split_.y_indices) {
            std::optional<ExponentVector> witness;
            for (const auto& m : leads) {
                bool pure = m[yi] > 0;
                for (std::size_t t = 0; t < m.size() && pure; ++t)
                    if (t != yi && m[t] != 0) pure = false;
                if (pure) {
                    witness = m;
                    break;
                }
            }
            diag.witnesses.push_back(witness);
            if (!witness) {
                diag.verified = false;
                diag.offending.push_back(yi);
            }
        }
        return diag;
    }

  private:
    std::vector<std::string> vars_;
    GroebnerBasis basis_;
    NoetherSplit split_;
};

struct StandardMonomialSet {
    int k = 0;
    std::vector<ExponentVector> monomials;
    std::size_t count() const { return monomials.size(); }
};

namespace detail {
inline void enumerate_monomials(std::size_t nvars, int max_deg,
                                const std::function<void(const ExponentVector&)>& emit) {
    ExponentVector cur(nvars);
    // Depth-first over exponents, degree-bounded.
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
        if (idx == nvars) {
            emit(cur);
            return;
        }
        for (int d = 0; d <= remaining; ++d) {
            cur[idx] = d;
            rec(idx + 1, remaining - d);
        }
        cur[idx] = 0;
    };
    rec(0, max_deg);
}
}  // namespace detail

// All standard monomials of total degree <= k, i.e. monomials outside <lt(I)>.
// Their count is M_k = dim C[V]_{<=k}.
inline StandardMonomialSet standard_monomials(const NormalFormAlgebra& alg, int k) {
    if (k < 0) throw std::invalid_argument("standard_monomials: k must be >= 0");
    StandardMonomialSet out;
    out.k = k;
    detail::enumerate_monomials(alg.variables().size(), k, [&](const ExponentVector& a) {
        if (alg.is_standard_monomial(a)) out.monomials.push_back(a);
    });
    std::sort(out.monomials.begin(), out.monomials.end(), GrevlexLess{});
    return out;
}

}  // namespace varcap
