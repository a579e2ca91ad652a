#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcap/parser.hpp"
#include "varcap/vandermonde.hpp"

namespace varcap {

// M_1 .. M_k for the algebra.
inline std::vector<std::size_t> level_dims(const NormalFormAlgebra& alg, int k) {
    std::vector<std::size_t> out;
    for (int s = 1; s <= k; ++s) out.push_back(standard_monomials(alg, s).count());
    return out;
}

// L_k = sum_{s<=k} s * h_s with h_s = M_s - M_{s-1}.
inline long long lk_sum(const std::vector<std::size_t>& dims, int k) {
    long long L = 0;
    std::size_t prev = 1;  // M_0 = 1 (the constants)
    for (int s = 1; s <= k; ++s) {
        L += static_cast<long long>(s) * (dims[s - 1] - prev);
        prev = dims[s - 1];
    }
    return L;
}

// Exact normalization ratio L_k / (k M_k).
inline Rational normalization_ratio(const NormalFormAlgebra& alg, int k) {
    auto dims = level_dims(alg, k);
    Rational r(static_cast<long>(lk_sum(dims, k)),
               static_cast<long>(k) * static_cast<long>(dims[k - 1]));
    r.canonicalize();
    return r;
}

struct DiameterRow {
    int k = 0;
    std::size_t Mk = 0;
    std::size_t hk = 0;  // M_k - M_{k-1}
    long long Lk = 0;
    double log_V = 0;
    double d_k = 0;          // V^(1/(k M_k))
    double d_classical = 0;  // V^(1/L_k)
    double ratio = 0;        // L_k / (k M_k)
    bool exhaustive = false;
    std::vector<std::size_t> indices;
};

inline std::vector<DiameterRow> diameters(const VarietyPointCloud& cloud,
                                          const NormalFormAlgebra& alg,
                                          const ImplicitChart& chart, int k_max,
                                          const FeketeConfig& config = {}) {
    if (k_max < 1) throw std::invalid_argument("diameters: k_max must be >= 1");
    std::vector<DiameterRow> rows;
    auto dims = level_dims(alg, k_max);
    NuSet level;
    std::size_t prev_dim = 1;
    for (int k = 1; k <= k_max; ++k) {
        level = compute_Nk(alg, chart, k, level);
        FeketeResult fek = fekete_search(cloud, basis_polynomials(level), k, config);
        DiameterRow row;
        row.k = k;
        row.Mk = dims[k - 1];
        row.hk = dims[k - 1] - prev_dim;
        prev_dim = dims[k - 1];
        row.Lk = lk_sum(dims, k);
        row.log_V = fek.log_vdm;
        row.d_k = std::exp(fek.log_vdm / (static_cast<double>(k) * row.Mk));
        row.d_classical = std::exp(fek.log_vdm / row.Lk);
        row.ratio = static_cast<double>(row.Lk) / (static_cast<double>(k) * row.Mk);
        row.exhaustive = fek.exhaustive;
        row.indices = fek.indices;
        rows.push_back(std::move(row));
    }
    return rows;
}

struct SandwichReport {
    int k = 0;
    double lower_lhs = 0;   // sum of certified log lower bounds
    double log_V = 0;       // exhaustive Fekete value
    double upper_rhs = 0;   // log M_k! + sum of achieved log values
    double slack = 0;       // total certificate width, sum of log(value/lower)
    bool holds = true;
};

// prod_a T_k(a)^k <= V_k <= M_k! prod_a T_k(a)^k, checked in logs with the
// certified bounds on each factor. Requires an exhaustive Fekete value and
// certified minimax solves.
inline SandwichReport sandwich_check(const VarietyPointCloud& cloud, const NuSet& basis,
                                     const FeketeResult& fekete, double tol = 1e-9,
                                     double gap_tol = kMinimaxGapTol) {
    if (!fekete.exhaustive)
        throw std::runtime_error("not verifiable: non-certified inputs");
    SandwichReport rep;
    rep.k = basis.k;
    rep.log_V = fekete.log_vdm;
    double sum_lower = 0, sum_value = 0;
    for (const auto& [alpha, unused] : basis.representatives) {
        ChebyshevValue val = chebyshev_constant(cloud, basis.k, alpha, basis, gap_tol);
        if (!val.certified || val.degenerate || val.lower_bound <= 0)
            throw std::runtime_error("not verifiable: non-certified inputs");
        sum_lower += std::log(val.lower_bound);
        sum_value += std::log(val.value);
    }
    rep.lower_lhs = sum_lower;
    rep.upper_rhs = std::lgamma(static_cast<double>(basis.size()) + 1) + sum_value;
    rep.slack = sum_value - sum_lower;
    rep.holds = rep.lower_lhs <= rep.log_V + tol && rep.log_V <= rep.upper_rhs + tol;
    return rep;
}

struct IntegralCompareRow {
    int k = 0;
    double log_dk = 0;
    double mean_log_T = 0;
    double diff = 0;
    double bound = 0;  // log(M_k!) / (k M_k)
    bool within = false;
};

// |log d_k - (1/M_k) sum_a log T_k(a)| <= log(M_k!)/(k M_k): the finite-k
// form of the integral formula, a direct consequence of the sandwich.
inline IntegralCompareRow integral_formula_compare(const VarietyPointCloud& cloud,
                                                   const NuSet& basis,
                                                   const FeketeResult& fekete,
                                                   double slack_tol = 1e-6) {
    IntegralCompareRow row;
    row.k = basis.k;
    const double kM = static_cast<double>(basis.k) * basis.size();
    row.log_dk = fekete.log_vdm / kM;
    double sum = 0;
    for (const auto& [alpha, unused] : basis.representatives) {
        ChebyshevValue val = chebyshev_constant(cloud, basis.k, alpha, basis);
        if (!val.certified || val.degenerate)
            throw std::runtime_error("not verifiable: non-certified inputs");
        sum += val.log_T;
    }
    row.mean_log_T = sum / basis.size();
    row.diff = std::abs(row.log_dk - row.mean_log_T);
    row.bound = std::lgamma(static_cast<double>(basis.size()) + 1) / kM;
    row.within = row.diff <= row.bound + slack_tol;
    return row;
}

namespace detail {

// Monomials of degree <= k in m variables, sorted grevlex ascending.
inline std::vector<ExponentVector> grevlex_monomials(std::size_t m, int k) {
    std::vector<ExponentVector> out;
    enumerate_monomials(m, k, [&](const ExponentVector& e) { out.push_back(e); });
    std::sort(out.begin(), out.end(), GrevlexLess{});
    return out;
}

}  // namespace detail

struct HomogeneousReport {
    double log_vdmh = 0;      // affine monomial determinant in z-coordinates
    double log_weighted = 0;  // weighted determinant in projective chart coordinates
    double rel_diff = 0;
};

// The degree-k homogeneous Vandermonde on {1} x K equals the weighted
// Vandermonde in the chart v = (1/z_m, z_1/z_m, ..., z_{m-1}/z_m) with weight
// z_m: entrywise, z^a = (z_m)^k v0^(k-|a|) v1^a1 ... v_{m-1}^a_{m-1}.
inline HomogeneousReport homogeneous_identity(const std::vector<CPoint>& points, int k) {
    if (points.empty()) throw std::invalid_argument("homogeneous_identity: no points");
    const std::size_t m = points[0].size();
    auto monos = detail::grevlex_monomials(m, k);
    if (points.size() != monos.size())
        throw std::invalid_argument("homogeneous_identity: need M_k points");

    Eigen::MatrixXcd A(monos.size(), monos.size()), B(monos.size(), monos.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CPoint& z = points[i];
        std::complex<double> zm = z[m - 1];
        if (std::abs(zm) < 1e-12)
            throw std::invalid_argument("point on the z_m = 0 hyperplane");
        std::complex<double> v0 = 1.0 / zm;
        std::complex<double> wk = std::pow(zm, k);
        for (std::size_t j = 0; j < monos.size(); ++j) {
            const ExponentVector& a = monos[j];
            std::complex<double> lhs{1, 0}, rhs = wk * std::pow(v0, k - a.total_degree());
            for (std::size_t c = 0; c < m; ++c) lhs *= std::pow(z[c], a[c]);
            for (std::size_t c = 0; c + 1 < m; ++c) rhs *= std::pow(z[c] / zm, a[c]);
            A(i, j) = lhs;
            B(i, j) = rhs;
        }
    }
    HomogeneousReport rep;
    rep.log_vdmh = logabs_det(A);
    rep.log_weighted = logabs_det(B);
    rep.rel_diff = std::abs(rep.log_vdmh - rep.log_weighted) /
                   std::max(1.0, std::abs(rep.log_vdmh));
    return rep;
}

struct TauValue {
    double value = 0;  // inf of the sup norm over the monic class, i.e. tau^s
    double tau = 0;
    double lower_bound = 0;
    bool certified = false;
    int s = 0;
};

// Directional Chebyshev constant on C^m: the grevlex-leading monic class
// z^alpha + span{ z^beta : beta strictly grevlex-below alpha }, unweighted.
inline TauValue zaharjuta_tau(const std::vector<CPoint>& points, const ExponentVector& alpha,
                              double gap_tol = kMinimaxGapTol) {
    if (points.empty()) throw std::invalid_argument("zaharjuta_tau: no points");
    const std::size_t m = points[0].size();
    const int s = alpha.total_degree();
    if (s < 1) throw std::invalid_argument("zaharjuta_tau: |alpha| must be >= 1");

    auto mono_col = [&](const ExponentVector& e) {
        std::vector<std::complex<double>> col;
        for (const auto& z : points) {
            std::complex<double> v{1, 0};
            for (std::size_t c = 0; c < m; ++c) v *= std::pow(z[c], e[c]);
            col.push_back(v);
        }
        return col;
    };
    GrevlexLess less;
    std::vector<std::vector<std::complex<double>>> cols;
    for (const auto& e : detail::grevlex_monomials(m, s))
        if (less(e, alpha)) cols.push_back(mono_col(e));
    MinimaxSolution sol = solve_discrete_minimax(mono_col(alpha), cols, gap_tol);
    TauValue out;
    out.value = sol.value;
    out.lower_bound = sol.lower_bound;
    out.certified = sol.certified;
    out.s = s;
    out.tau = sol.degenerate ? 0 : std::exp(std::log(sol.value) / s);
    return out;
}

struct TauTReport {
    double tau_pow_s = 0;  // z-coordinate optimum
    double T_pow_k = 0;    // v-coordinate weighted optimum
    double rel_diff = 0;
    bool certified = false;
};

// tau_j(K)^s = T_k(K, alpha)^k: the grevlex-lower free set in z-coordinates
// corresponds, monomial by monomial, to the lex-greater free set in chart
// coordinates (v0 most significant), and the weighted evaluations agree
// entrywise. The two convex problems are therefore identical.
inline TauTReport tau_T_identity(const std::vector<CPoint>& points,
                                 const ExponentVector& alpha, int k,
                                 double gap_tol = kMinimaxGapTol) {
    if (points.empty()) throw std::invalid_argument("tau_T_identity: no points");
    const std::size_t m = points[0].size();
    if (alpha.total_degree() > k)
        throw std::invalid_argument("tau_T_identity: |alpha| must be <= k");
    TauValue tau = zaharjuta_tau(points, alpha, gap_tol);

    // v-side: beta(a) = (k - |a|, a_1, ..., a_{m-1}); free set by textbook lex
    // with v0 dominant.
    auto beta_of = [&](const ExponentVector& a) {
        ExponentVector b(m);
        b[0] = k - a.total_degree();
        for (std::size_t c = 0; c + 1 < m; ++c) b[c + 1] = a[c];
        return b;
    };
    auto v_col = [&](const ExponentVector& b) {
        std::vector<std::complex<double>> col;
        for (const auto& z : points) {
            std::complex<double> zm = z[m - 1];
            std::complex<double> v{std::pow(zm, k)};
            v *= std::pow(1.0 / zm, b[0]);
            for (std::size_t c = 0; c + 1 < m; ++c) v *= std::pow(z[c] / zm, b[c + 1]);
            col.push_back(v);
        }
        return col;
    };
    ExponentVector beta = beta_of(alpha);
    std::vector<std::vector<std::complex<double>>> cols;
    for (const auto& a : detail::grevlex_monomials(m, k)) {
        ExponentVector b = beta_of(a);
        if (lex_first_dominant(b, beta) == Ordering::Greater) cols.push_back(v_col(b));
    }
    MinimaxSolution T = solve_discrete_minimax(v_col(beta), cols, gap_tol);

    TauTReport rep;
    rep.tau_pow_s = tau.value;
    rep.T_pow_k = T.value;
    rep.rel_diff = std::abs(rep.tau_pow_s - rep.T_pow_k) / std::max(rep.tau_pow_s, 1e-300);
    rep.certified = tau.certified && T.certified;
    return rep;
}

struct ProjectionReport {
    double fiber_swap_max_diff = 0;   // |log det| change under z3 -> -z3
    double projection_diff = 0;       // |log det| change passing to the projection
    std::size_t subfamily_size = 0;
    Rational exponent_ratio{0};       // L_k / (k M_k) of the projected picture
};

// The subfamily of monomials in z1, z2 cannot see the z3 fiber: swapping a
// point for its opposite-fiber partner, or projecting to C^2, leaves the
// Vandermonde determinant unchanged.
inline ProjectionReport projection_invariance(const VarietyPointCloud& cloud, int k) {
    cloud.check();
    if (cloud.ambient_dim() != 3)
        throw std::invalid_argument("projection_invariance: ambient dimension must be 3");
    const std::vector<std::string> vars = {"z1", "z2", "z3"};
    Subfamily fam = x_monomial_family(vars, {0, 1}, k);
    std::vector<Polynomial> basis;
    for (auto& [nu, p] : fam.members) basis.push_back(p);
    const std::size_t P = basis.size();
    if (cloud.size() < P)
        throw std::invalid_argument("projection_invariance: not enough points");

    FeketeResult sel = fekete_search(cloud, basis, k, {});
    double base = vdm_logabs(cloud, basis, k, sel.indices);

    ProjectionReport rep;
    rep.subfamily_size = P;
    for (std::size_t i : sel.indices) {
        VarietyPointCloud swapped = cloud;
        swapped.points[i][2] = -swapped.points[i][2];
        double v = vdm_logabs(swapped, basis, k, sel.indices);
        rep.fiber_swap_max_diff = std::max(rep.fiber_swap_max_diff, std::abs(v - base));
    }

    const std::vector<std::string> vars2 = {"z1", "z2"};
    Subfamily fam2 = x_monomial_family(vars2, {0, 1}, k);
    std::vector<Polynomial> basis2;
    for (auto& [nu, p] : fam2.members) basis2.push_back(p);
    VarietyPointCloud proj;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        proj.points.push_back({cloud.points[i][0], cloud.points[i][1]});
        proj.weights.push_back(cloud.weights[i]);
    }
    double v2 = vdm_logabs(proj, basis2, k, sel.indices);
    rep.projection_diff = std::abs(v2 - base);

    NormalFormAlgebra plane =
        NormalFormAlgebra::from_ideal(vars2, Ideal({}), NoetherSplit{{0, 1}, {}});
    rep.exponent_ratio = normalization_ratio(plane, k);
    return rep;
}

struct CircledEntry {
    ExponentVector alpha;
    double log_full = 0;
    double log_restricted = 0;
    double diff = 0;
    bool certified = false;
};

struct CircledReport {
    int k = 0;
    std::vector<CircledEntry> entries;
    double max_diff = 0;
    bool hypothesis_ok = false;
    std::string note;
};

// Restricted-versus-full Chebyshev constants on orbit unions of the chart
// sphere. For full orbits the two agree on interior grid directions; a
// truncated (half-orbit) cloud is the negative control.
inline CircledReport circled_equality(int N_angles, int k, bool half_orbit = false,
                                      double threshold = 5e-3, double margin = 0.0,
                                      double gap_tol = kMinimaxGapTol) {
    if (k < 1 || k > 3) throw std::invalid_argument("circled_equality: k must be in 1..3");
    const std::vector<std::string> vars = {"v0", "v1", "v3"};
    Ideal ideal({parse_polynomial("v1^2 + 1 + v3^2 - v0^2", vars)});
    NormalFormAlgebra alg = NormalFormAlgebra::from_ideal(vars, ideal, NoetherSplit{{0, 1}, {2}});
    ImplicitChart chart(alg, {GaussianRational(0), GaussianRational(0), GaussianRational::i()},
                        default_precision(4));
    OkounkovResult ok = okounkov_body(alg, chart, 4);
    const NuSet& basis = ok.levels[k - 1];
    // Grid directions are compared inside the subfamily's own body, the
    // standard simplex: x-monomials of degree <= k only reach |alpha| <= k.
    Polytope simplex = convex_hull(
        {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
        2);
    if (margin <= 0) margin = 0.05 * detail::body_diameter(simplex);

    std::vector<CircleSeed> seeds = {{{0.30, 0.10}, 0.25},
                                     {{-0.20, 0.35}, 0.45},
                                     {{0.15, -0.40}, 0.60}};
    VarietyPointCloud cloud = circled_sample(seeds, N_angles);
    if (half_orbit) {
        VarietyPointCloud half;
        for (std::size_t s = 0; s < seeds.size(); ++s)
            for (int t = 0; t < N_angles / 2; ++t) {
                std::size_t i = s * N_angles + t;
                half.points.push_back(cloud.points[i]);
                half.weights.push_back(cloud.weights[i]);
            }
        cloud = half;
    }

    Subfamily fam = x_monomial_family(vars, {0, 1}, k);
    CircledReport rep;
    rep.k = k;
    for (const auto& [alpha, unused] : basis.representatives) {
        std::vector<double> theta(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i)
            theta[i] = static_cast<double>(alpha[i]) / k;
        if (detail::boundary_distance(simplex, theta) < margin) continue;
        ChebyshevValue full = chebyshev_constant(cloud, k, alpha, basis, gap_tol);
        ChebyshevValue restr = restricted_constant(cloud, k, alpha, fam, gap_tol);
        CircledEntry e;
        e.alpha = alpha;
        e.log_full = full.log_T;
        e.log_restricted = restr.log_T;
        e.diff = std::abs(restr.log_T - full.log_T);
        e.certified = full.certified && restr.certified;
        rep.max_diff = std::max(rep.max_diff, e.diff);
        rep.entries.push_back(std::move(e));
    }
    rep.hypothesis_ok = rep.max_diff <= threshold;
    if (!rep.hypothesis_ok) rep.note = "hypothesis violated";
    return rep;
}

}  // namespace varcap
