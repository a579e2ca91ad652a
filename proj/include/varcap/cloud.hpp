#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcap/polynomial.hpp"

namespace varcap {

using CPoint = std::vector<std::complex<double>>;

// Finite weighted subset of a variety. Weights are kept complex so that chart
// transport is a pure multiplication; every norm discards the phase anyway.
struct VarietyPointCloud {
    std::vector<CPoint> points;
    std::vector<std::complex<double>> weights;
    double residual_tol = 1e-9;

    std::size_t size() const { return points.size(); }
    std::size_t ambient_dim() const { return points.empty() ? 0 : points[0].size(); }

    void check() const {
        if (points.empty()) throw std::invalid_argument("cloud must contain a point");
        if (weights.size() != points.size())
            throw std::invalid_argument("cloud weight count mismatch");
        for (const auto& p : points)
            if (p.size() != points[0].size())
                throw std::invalid_argument("cloud point dimension mismatch");
    }
};

// Relative on-variety residual gate: max_g |g(p)| <= tol * (1 + |p|^deg g).
inline void validate_on_variety(const VarietyPointCloud& cloud,
                                const std::vector<Polynomial>& generators) {
    cloud.check();
    for (const auto& p : cloud.points) {
        double norm = 0;
        for (const auto& z : p) norm = std::max(norm, std::abs(z));
        for (const auto& g : generators) {
            double scale = 1 + std::pow(std::max(norm, 1.0), g.degree().value_or(0));
            if (std::abs(g.eval(p)) > cloud.residual_tol * scale)
                throw std::invalid_argument("cloud point violates variety residual");
        }
    }
}

struct WeightedValue {
    std::complex<double> value{0, 0};
    bool overflow = false;
};

// p(z)_{w,k} = w(z)^k p(z).
inline WeightedValue weighted_eval(const Polynomial& p, const CPoint& zeta,
                                   std::complex<double> w, int k) {
    if (p.degree().value_or(0) > k)
        throw std::invalid_argument("weighted_eval: k below polynomial degree");
    std::complex<double> wk = std::pow(w, k);
    WeightedValue out;
    out.value = wk * p.eval(zeta);
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
        out.overflow = true;
    }
    return out;
}

inline double sup_norm(const Polynomial& p, const VarietyPointCloud& cloud, int k) {
    cloud.check();
    double best = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        best = std::max(best,
                        std::abs(weighted_eval(p, cloud.points[i], cloud.weights[i], k).value));
    return best;
}

struct ChartMap {
    std::size_t pivot = 0;
    enum class Direction { AffineToChart, ChartToAffine } direction =
        Direction::AffineToChart;
    double pivot_tol = 1e-9;
};

// Projective chart with pivot coordinate j: v = (1/z_j, z_i/z_j for i != j).
// A degree-k polynomial transports as p~(v) = v0^k p(z(v)), so preserving
// w(z)^k p(z) = w^(v)^k p~(v) forces the weight transport w^ = w / v0, i.e.
// multiplication by the pivot coordinate. (The reverse direction divides.)
inline VarietyPointCloud change_chart(const VarietyPointCloud& cloud, const ChartMap& map) {
    cloud.check();
    const std::size_t n = cloud.ambient_dim();
    if (map.direction == ChartMap::Direction::AffineToChart && map.pivot >= n)
        throw std::invalid_argument("chart pivot out of range");
    VarietyPointCloud out;
    out.residual_tol = cloud.residual_tol;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const CPoint& z = cloud.points[i];
        CPoint v(n);
        if (map.direction == ChartMap::Direction::AffineToChart) {
            std::complex<double> piv = z[map.pivot];
            if (std::abs(piv) <= map.pivot_tol)
                throw std::invalid_argument("point on pivot hyperplane");
            v[0] = 1.0 / piv;
            std::size_t idx = 1;
            for (std::size_t c = 0; c < n; ++c)
                if (c != map.pivot) v[idx++] = z[c] / piv;
            out.weights.push_back(cloud.weights[i] * piv);
        } else {
            std::complex<double> v0 = z[0];
            if (std::abs(v0) <= map.pivot_tol)
                throw std::invalid_argument("point on pivot hyperplane");
            std::complex<double> piv = 1.0 / v0;
            std::size_t idx = 1;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == map.pivot)
                    v[c] = piv;
                else
                    v[c] = z[idx++] / v0;
            }
            out.weights.push_back(cloud.weights[i] / piv);
        }
        out.points.push_back(std::move(v));
    }
    return out;
}

// Quasi-uniform sample of the real unit sphere in R^3, unit weight. Seed 0 is
// the axis configuration when N = 6; otherwise a seeded Fibonacci lattice.
inline VarietyPointCloud sample_real_sphere(int N, unsigned seed) {
    if (N < 4) throw std::invalid_argument("sample_real_sphere: N must be >= 4");
    VarietyPointCloud cloud;
    cloud.residual_tol = 1e-12;
    if (seed == 0 && N == 6) {
        for (std::size_t c = 0; c < 3; ++c)
            for (double s : {1.0, -1.0}) {
                CPoint p(3, {0, 0});
                p[c] = {s, 0};
                cloud.points.push_back(p);
                cloud.weights.push_back({1, 0});
            }
        return cloud;
    }
    const double golden = std::numbers::phi;
    const double offset = 2 * std::numbers::pi * (seed % 1024) / 1024.0;
    for (int i = 0; i < N; ++i) {
        double zc = 1.0 - 2.0 * (i + 0.5) / N;
        double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        double phi = 2 * std::numbers::pi * i / golden + offset;
        cloud.points.push_back({{r * std::cos(phi), 0}, {r * std::sin(phi), 0}, {zc, 0}});
        cloud.weights.push_back({1, 0});
    }
    return cloud;
}

// Lift of the chart sphere v1^2 + 1 + v3^2 = v0^2: the square-root branch with
// value i at the origin of the window.
inline std::complex<double> upsilon3(std::complex<double> v0, std::complex<double> v1) {
    return std::complex<double>(0, 1) * std::sqrt(1.0 + v1 * v1 - v0 * v0);
}

struct CircleSeed {
    std::complex<double> w;  // becomes v0
    double r = 0;            // becomes v1
};

// Union of N_angles-point orbits of the lifted circle action
// zeta * (v0, v1) = (zeta v0, zeta v1, upsilon3(zeta v0, zeta v1)),
// with the branch tracked continuously along each orbit from the seed's lift.
// Points carry the chart weight w(v) = v0.
inline VarietyPointCloud circled_sample(const std::vector<CircleSeed>& seeds, int N_angles,
                                        double window_r = 0.995) {
    if (N_angles < 1) throw std::invalid_argument("circled_sample: N_angles must be >= 1");
    VarietyPointCloud cloud;
    cloud.residual_tol = 1e-9;
    for (const auto& seed : seeds) {
        if (std::max(std::abs(seed.w), std::abs(seed.r)) >= window_r)
            throw std::invalid_argument("seed outside action window");
        std::complex<double> prev = upsilon3(seed.w, seed.r);
        for (int t = 0; t < N_angles; ++t) {
            double th = 2 * std::numbers::pi * t / N_angles;
            std::complex<double> zeta(std::cos(th), std::sin(th));
            std::complex<double> v0 = zeta * seed.w;
            std::complex<double> v1 = zeta * std::complex<double>(seed.r, 0);
            std::complex<double> lift = upsilon3(v0, v1);
            if (std::abs(lift - prev) > std::abs(-lift - prev)) lift = -lift;
            prev = lift;
            cloud.points.push_back({v0, v1, lift});
            cloud.weights.push_back(v0);
        }
    }
    return cloud;
}

}  // namespace varcap
