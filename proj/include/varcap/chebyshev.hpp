#pragma once

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "varcap/cloud.hpp"
#include "varcap/minimax.hpp"
#include "varcap/okounkov.hpp"

namespace varcap {

// Monic class M(k, alpha): the representative with trailing exponent alpha is
// fixed, every representative with strictly lex-greater trailing exponent is a
// free direction. Degrees are bounded by k through the basis itself.
struct MonicClass {
    Polynomial fixed;
    std::vector<Polynomial> free;
};

inline MonicClass monic_class(const NuSet& basis, const ExponentVector& alpha) {
    auto it = basis.representatives.find(alpha);
    if (it == basis.representatives.end())
        throw std::invalid_argument("monic_class: alpha not in N_k");
    MonicClass out;
    out.fixed = it->second;
    LexLess less;
    for (const auto& [nu, rep] : basis.representatives)
        if (less(alpha, nu)) out.free.push_back(rep);
    return out;
}

struct ChebyshevValue {
    double log_T = 0;       // log T_k = (log of the minimax value) / k
    double value = 0;       // the minimax value itself, inf ||w^k p||
    double lower_bound = 0;
    int iterations = 0;
    bool certified = false;
    bool degenerate = false;

    // Relative certificate gap, usable as convexity slack in log space.
    double gap() const {
        if (value <= 0 || lower_bound <= 0) return 0;
        return std::log(value) - std::log(lower_bound);
    }
};

namespace detail {

inline std::vector<std::complex<double>> eval_column(const Polynomial& p,
                                                     const VarietyPointCloud& cloud, int k) {
    std::vector<std::complex<double>> col;
    col.reserve(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        WeightedValue wv = weighted_eval(p, cloud.points[i], cloud.weights[i], k);
        if (wv.overflow) throw std::runtime_error("weighted evaluation overflow");
        col.push_back(wv.value);
    }
    return col;
}

inline ChebyshevValue solve_class(const std::vector<std::complex<double>>& fixed,
                                  const std::vector<std::vector<std::complex<double>>>& free,
                                  int k, double gap_tol) {
    MinimaxSolution sol = solve_discrete_minimax(fixed, free, gap_tol);
    ChebyshevValue out;
    out.value = sol.value;
    out.lower_bound = sol.lower_bound;
    out.iterations = sol.iterations;
    out.certified = sol.certified;
    out.degenerate = sol.degenerate;
    out.log_T = sol.degenerate ? -std::numeric_limits<double>::infinity()
                               : std::log(sol.value) / k;
    return out;
}

}  // namespace detail

inline ChebyshevValue chebyshev_constant(const VarietyPointCloud& cloud, int k,
                                         const ExponentVector& alpha, const NuSet& basis,
                                         double gap_tol = kMinimaxGapTol) {
    if (k < 1) throw std::invalid_argument("chebyshev_constant: k must be >= 1");
    MonicClass cls = monic_class(basis, alpha);
    std::vector<std::vector<std::complex<double>>> free;
    for (const auto& p : cls.free) free.push_back(detail::eval_column(p, cloud, k));
    return detail::solve_class(detail::eval_column(cls.fixed, cloud, k), free, k, gap_tol);
}

// Subfamily of the representative basis: an explicit list of (nu, polynomial)
// pairs. The restricted class fixes the member at alpha and frees members with
// strictly lex-greater nu, mirroring the full class inside the subfamily.
struct Subfamily {
    std::vector<std::pair<ExponentVector, Polynomial>> members;
};

inline Subfamily x_monomial_family(const std::vector<std::string>& vars,
                                   const std::vector<std::size_t>& x_indices, int k) {
    Subfamily fam;
    detail::enumerate_monomials(x_indices.size(), k, [&](const ExponentVector& e) {
        ExponentVector full(vars.size());
        for (std::size_t i = 0; i < x_indices.size(); ++i) full[x_indices[i]] = e[i];
        Polynomial term(vars);
        term.add_term(full, GaussianRational(1));
        fam.members.emplace_back(e, term);
    });
    return fam;
}

inline ChebyshevValue restricted_constant(const VarietyPointCloud& cloud, int k,
                                          const ExponentVector& alpha, const Subfamily& family,
                                          double gap_tol = kMinimaxGapTol) {
    if (k < 1) throw std::invalid_argument("restricted_constant: k must be >= 1");
    const Polynomial* fixed = nullptr;
    std::vector<const Polynomial*> free;
    LexLess less;
    for (const auto& [nu, p] : family.members) {
        if (p.degree().value_or(0) > k) continue;
        if (nu == alpha)
            fixed = &p;
        else if (less(alpha, nu))
            free.push_back(&p);
    }
    if (!fixed) throw std::invalid_argument("restricted_constant: alpha not in subfamily");
    std::vector<std::vector<std::complex<double>>> cols;
    for (const auto* p : free) cols.push_back(detail::eval_column(*p, cloud, k));
    return detail::solve_class(detail::eval_column(*fixed, cloud, k), cols, k, gap_tol);
}

struct TransformEntry {
    ExponentVector alpha;
    std::vector<Rational> theta;  // alpha / k
    double log_T = 0;
    bool certified = false;
};

struct ChebyshevTransformGrid {
    int k = 0;
    double margin = 0;
    std::vector<TransformEntry> entries;  // interior grid, margin away from the boundary
    double full_average = 0;              // mean of log T over all of N_k
    std::size_t total = 0;
    std::size_t certified_count = 0;
};

namespace detail {

// Euclidean distance from an interior point to the polytope boundary: the
// minimum facet slack scaled by the facet normal length.
inline double boundary_distance(const Polytope& body, const std::vector<double>& theta) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : body.facets) {
        double dot = 0, norm2 = 0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            double ni = f.normal[i].get_d();
            dot += ni * theta[i];
            norm2 += ni * ni;
        }
        if (norm2 <= 0) continue;
        best = std::min(best, (f.offset.get_d() - dot) / std::sqrt(norm2));
    }
    return best;
}

inline double body_diameter(const Polytope& body) {
    double best = 0;
    for (std::size_t a = 0; a < body.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < body.vertices.size(); ++b) {
            double s = 0;
            for (std::size_t i = 0; i < body.vertices[a].size(); ++i) {
                double d = body.vertices[a][i].get_d() - body.vertices[b][i].get_d();
                s += d * d;
            }
            best = std::max(best, std::sqrt(s));
        }
    return best;
}

}  // namespace detail

// Sampled Chebyshev transform on the level-k grid N_k / k. Entries within
// `margin` of the body boundary are dropped; non-certified solves are flagged
// and excluded from the average. Solves are independent, so they parallelize;
// assembly stays in grid order and the result is thread-count independent.
inline ChebyshevTransformGrid chebyshev_transform(const VarietyPointCloud& cloud,
                                                  const NuSet& basis, const Polytope& body,
                                                  std::optional<double> margin = std::nullopt,
                                                  double gap_tol = kMinimaxGapTol,
                                                  int threads = 1) {
    ChebyshevTransformGrid grid;
    grid.k = basis.k;
    grid.margin = margin.value_or(0.05 * detail::body_diameter(body));

    std::vector<ExponentVector> alphas;
    for (const auto& [alpha, rep] : basis.representatives) alphas.push_back(alpha);
    std::vector<ChebyshevValue> values(alphas.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr err = nullptr;
    std::mutex err_mx;
    auto solve_range = [&] {
        try {
            for (std::size_t i = next.fetch_add(1); i < alphas.size();
                 i = next.fetch_add(1))
                values[i] = chebyshev_constant(cloud, basis.k, alphas[i], basis, gap_tol);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mx);
            if (!err) err = std::current_exception();
        }
    };
    if (threads <= 1 || alphas.size() <= 1) {
        solve_range();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(solve_range);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);

    double sum = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const ExponentVector& alpha = alphas[i];
        const ChebyshevValue& val = values[i];
        ++grid.total;
        if (val.certified && !val.degenerate) {
            ++grid.certified_count;
            sum += val.log_T;
        }
        std::vector<double> theta(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i)
            theta[i] = static_cast<double>(alpha[i]) / basis.k;
        if (detail::boundary_distance(body, theta) < grid.margin) continue;
        TransformEntry entry;
        entry.alpha = alpha;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            Rational t(alpha[i], basis.k);
            t.canonicalize();
            entry.theta.push_back(t);
        }
        entry.log_T = val.log_T;
        entry.certified = val.certified && !val.degenerate;
        grid.entries.push_back(std::move(entry));
    }
    grid.full_average = grid.certified_count ? sum / grid.certified_count : 0;
    return grid;
}

}  // namespace varcap
