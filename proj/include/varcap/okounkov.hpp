#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcap/hull.hpp"
#include "varcap/series.hpp"

namespace varcap {

// N_k with one monic representative per nu value. Representatives have tc = 1,
// degree <= k, and pairwise distinct nu; |points| = M_k on successful
// completion.
struct NuSet {
    int k = 0;
    std::map<ExponentVector, Polynomial, LexLess> representatives;

    std::vector<ExponentVector> points() const {
        std::vector<ExponentVector> out;
        out.reserve(representatives.size());
        for (const auto& [nu, rep] : representatives) out.push_back(nu);
        return out;
    }
    std::size_t size() const { return representatives.size(); }
};

struct OkounkovResult {
    std::vector<NuSet> levels;          // N_1 .. N_kmax
    std::vector<Polytope> deltas;       // hull of (1/k) N_k
    std::vector<std::size_t> dims;      // M_k per level
    Polytope body;                      // cumulative hull
    bool stabilized = false;
    Rational volume{0};
};

namespace detail {

struct Candidate {
    Polynomial poly;  // monic: tc = 1
    bool certified;
};

// Candidate pool entry before monic normalization.
struct PoolEntry {
    Polynomial poly;
    TrailingData td;
};

}  // namespace detail

// One round of the product-and-cancel sweep: products of previous
// representatives with the coordinate functions feed a candidate pool; the
// pool is swept in lex order of contested nu values, replacing ties by
// S-polynomials until every nu is unique. The standard-monomial dimension M_k
// is both the early-exit test and the completion gate.
inline NuSet compute_Nk(const NormalFormAlgebra& alg, const ImplicitChart& chart, int k,
                        const NuSet& prev) {
    if (k < 1) throw std::invalid_argument("compute_Nk: k must be >= 1");
    if (k > 1 && prev.size() == 0)
        throw std::invalid_argument("compute_Nk: previous level is empty");

    const std::size_t Mk = standard_monomials(alg, k).count();
    const auto& vars = alg.variables();

    // Seed polynomials: 1 and the coordinate functions, as normal forms.
    std::vector<Polynomial> seeds;
    seeds.push_back(Polynomial::constant(vars, GaussianRational(1)));
    for (std::size_t i = 0; i < vars.size(); ++i) {
        Polynomial nf = alg.normal_form(Polynomial::variable(vars, i));
        if (!nf.is_zero()) seeds.push_back(nf);
    }

    std::vector<detail::PoolEntry> pool;
    if (k == 1) {
        for (const auto& s : seeds) pool.push_back({s, trailing(s, chart)});
    } else {
        std::vector<TrailingData> seed_td;
        for (const auto& s : seeds) seed_td.push_back(trailing(s, chart));
        for (const auto& [nu, rep] : prev.representatives) {
            TrailingData td{nu, GaussianRational(1), true};
            pool.push_back({rep, td});
            for (std::size_t i = 1; i < seeds.size(); ++i) {
                if (rep.degree().value_or(0) + seeds[i].degree().value_or(0) > k) continue;
                Polynomial prod = alg.nf_multiply(rep, seeds[i]);
                if (prod.is_zero()) continue;
                // Product rule for trailing data; certified only when both
                // factors are.
                TrailingData ptd;
                ptd.nu = nu + seed_td[i].nu;
                ptd.tc = seed_td[i].tc;
                ptd.certified = seed_td[i].certified;
                pool.push_back({std::move(prod), std::move(ptd)});
            }
        }
    }

    std::map<ExponentVector, std::vector<Polynomial>, LexLess> buckets;
    auto insert = [&](Polynomial p, const TrailingData& td) {
        Polynomial monic = p.scaled(GaussianRational(1) / td.tc);
        auto& bucket = buckets[td.nu];
        for (const auto& q : bucket)
            if (q == monic) return;
        bucket.push_back(std::move(monic));
    };
    for (auto& e : pool) insert(std::move(e.poly), e.td);

    const std::size_t budget = 4 * Mk;  // per contested nu value
    while (buckets.size() < Mk) {
        auto contested = buckets.end();
        for (auto it = buckets.begin(); it != buckets.end(); ++it)
            if (it->second.size() > 1) {
                contested = it;
                break;
            }
        if (contested == buckets.end())
            throw std::runtime_error("N_k incomplete: found " +
                                     std::to_string(buckets.size()) + " of " +
                                     std::to_string(Mk));
        std::vector<Polynomial> bucket = contested->second;
        contested->second.resize(1);  // earliest-computed representative stays
        std::size_t reductions = 0;
        for (std::size_t j = 1; j < bucket.size(); ++j) {
            if (++reductions > budget)
                throw std::runtime_error("S-polynomial chain budget exhausted at " +
                                         to_string(contested->first));
            // Both candidates are monic, so the S-polynomial against the kept
            // representative is the plain difference.
            Polynomial s = alg.normal_form(bucket[0] - bucket[j]);
            if (s.is_zero()) continue;
            TrailingData td = trailing(s, chart);
            if (!LexLess{}(contested->first, td.nu))
                throw std::runtime_error("S-polynomial failed to cancel at " +
                                         to_string(contested->first));
            insert(std::move(s), td);
            if (buckets.size() == Mk) break;
        }
    }

    if (buckets.size() > Mk)
        throw std::runtime_error("N_k overflow: " + std::to_string(buckets.size()) +
                                 " distinct nu values exceed M_k = " + std::to_string(Mk));

    // Residual contested buckets (possible after early exit) keep their
    // earliest candidate.
    NuSet out;
    out.k = k;
    for (auto& [nu, bucket] : buckets) out.representatives.emplace(nu, bucket.front());
    return out;
}

inline NuSet compute_Nk(const NormalFormAlgebra& alg, const ImplicitChart& chart, int k) {
    NuSet prev;
    for (int j = 1; j <= k; ++j) prev = compute_Nk(alg, chart, j, prev);
    return prev;
}

inline Polytope delta_hull(const NuSet& nk, std::size_t m) {
    std::vector<QVec> pts;
    for (const auto& [nu, rep] : nk.representatives) {
        QVec p(m);
        for (std::size_t i = 0; i < m; ++i) {
            p[i] = Rational(nu[i], nk.k);
            p[i].canonicalize();
        }
        pts.push_back(std::move(p));
    }
    return convex_hull(std::move(pts), m);
}

inline OkounkovResult okounkov_body(const NormalFormAlgebra& alg, const ImplicitChart& chart,
                                    int k_max) {
    if (k_max < 2) throw std::invalid_argument("okounkov_body: k_max must be >= 2");
    const std::size_t m = alg.x_count();
    OkounkovResult res;
    bool all_complete = true;
    NuSet prev;
    std::vector<QVec> cloud;
    for (int k = 1; k <= k_max; ++k) {
        prev = compute_Nk(alg, chart, k, prev);
        std::size_t Mk = standard_monomials(alg, k).count();
        if (prev.size() != Mk) all_complete = false;
        res.levels.push_back(prev);
        res.dims.push_back(Mk);
        res.deltas.push_back(delta_hull(prev, m));
        for (const auto& v : res.deltas.back().vertices) cloud.push_back(v);
    }
    res.body = convex_hull(cloud, m);
    res.volume = res.body.volume_;
    const auto& last = res.deltas[k_max - 1].vertices;
    const auto& before = res.deltas[k_max - 2].vertices;
    res.stabilized = all_complete && last == before;
    return res;
}

struct LatticeReport {
    bool equality = false;           // N_k == (k * body) cap Z^m
    std::size_t nk_count = 0;
    std::size_t lattice_count = 0;
    // Scaled box statistics, present when a box was supplied.
    std::optional<Rational> box_volume;
    std::size_t box_count = 0;
    double box_ratio = 0.0;  // |N_k cap kQ| / k^m
};

// Axis-aligned rational box, used as the window Q of the density check.
struct RationalBox {
    QVec lo, hi;
    Rational volume() const {
        Rational v(1);
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }
};

inline LatticeReport lattice_check(const OkounkovResult& result, int k,
                                   const std::optional<RationalBox>& box = std::nullopt) {
    if (k < 1 || k > static_cast<int>(result.levels.size()))
        throw std::invalid_argument("lattice_check: level not computed");
    const NuSet& nk = result.levels[k - 1];
    const Polytope& body = result.body;
    const std::size_t m = body.dim;

    LatticeReport rep;
    rep.nk_count = nk.size();

    // Integer bounding box of k * body.
    std::vector<long> lo(m), hi(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational l = body.vertices[0][i], h = l;
        for (const auto& v : body.vertices) {
            l = std::min(l, v[i]);
            h = std::max(h, v[i]);
        }
        mpz_class lz, hz;
        mpz_fdiv_q(lz.get_mpz_t(), Rational(l * k).get_num_mpz_t(),
                   Rational(l * k).get_den_mpz_t());
        mpz_cdiv_q(hz.get_mpz_t(), Rational(h * k).get_num_mpz_t(),
                   Rational(h * k).get_den_mpz_t());
        lo[i] = lz.get_si();
        hi[i] = hz.get_si();
    }

    bool equal = true;
    std::vector<long> cur(lo);
    for (;;) {
        QVec scaled(m);
        ExponentVector e(m);
        bool nonneg = true;
        for (std::size_t i = 0; i < m; ++i) {
            scaled[i] = Rational(cur[i], k);
            scaled[i].canonicalize();
            e[i] = static_cast<int>(cur[i]);
            if (cur[i] < 0) nonneg = false;
        }
        if (body.contains(scaled)) {
            ++rep.lattice_count;
            if (!nonneg || !nk.representatives.count(e)) equal = false;
        }
        std::size_t d = 0;
        while (d < m && ++cur[d] > hi[d]) cur[d++] = lo[d];
        if (d == m) break;
    }
    if (rep.lattice_count != rep.nk_count) equal = false;
    // The reverse inclusion: every nu of N_k lies in k * body.
    for (const auto& [nu, unused_rep] : nk.representatives) {
        QVec scaled(m);
        for (std::size_t i = 0; i < m; ++i) {
            scaled[i] = Rational(nu[i], k);
            scaled[i].canonicalize();
        }
        if (!body.contains(scaled)) equal = false;
    }
    rep.equality = equal;

    if (box) {
        rep.box_volume = box->volume();
        for (const auto& [nu, unused] : nk.representatives) {
            bool inside = true;
            for (std::size_t i = 0; i < m && inside; ++i) {
                Rational c(nu[i], k);
                c.canonicalize();
                if (c < box->lo[i] || c > box->hi[i]) inside = false;
            }
            if (inside) ++rep.box_count;
        }
        double km = 1.0;
        for (std::size_t i = 0; i < m; ++i) km *= k;
        rep.box_ratio = static_cast<double>(rep.box_count) / km;
    }
    return rep;
}

}  // namespace varcap
