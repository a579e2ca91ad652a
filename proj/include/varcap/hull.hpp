#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "varcap/rational.hpp"

namespace varcap {

using QVec = std::vector<Rational>;

namespace detail {

inline Rational dot(const QVec& a, const QVec& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Exact determinant by fraction-free-ish elimination on a copy.
inline Rational det(std::vector<QVec> M) {
    const std::size_t n = M.size();
    Rational d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && M[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(M[piv], M[c]);
            d = -d;
        }
        d *= M[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (M[r][c] == 0) continue;
            Rational f = M[r][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j) M[r][j] -= f * M[c][j];
        }
    }
    return d;
}

// Feasibility of { lambda >= 0 : sum lambda_i p_i = x, sum lambda_i = 1 } by an
// exact phase-1 simplex with Bland's rule.
inline bool in_convex_hull(const QVec& x, const std::vector<QVec>& pts) {
    if (pts.empty()) return false;
    const std::size_t d = x.size();
    const std::size_t rows = d + 1;
    const std::size_t n = pts.size();
    // Tableau columns: lambda_0..lambda_{n-1}, artificials, rhs.
    std::vector<QVec> T(rows, QVec(n + rows + 1, Rational(0)));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < n; ++j) T[r][j] = r < d ? pts[j][r] : Rational(1);
        T[r][n + rows] = r < d ? x[r] : Rational(1);
        if (T[r][n + rows] < 0)
            for (auto& v : T[r]) v = -v;
        T[r][n + r] = 1;
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;
    // Objective: minimize the artificial sum; reduced costs for basic
    // artificials folded in.
    QVec obj(n + rows + 1, Rational(0));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j <= n + rows; ++j) obj[j] -= T[r][j];
    for (std::size_t r = 0; r < rows; ++r) obj[n + r] += 1;  // unit cost of artificials
    for (;;) {
        std::size_t enter = n + rows;
        for (std::size_t j = 0; j < n + rows; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter == n + rows) break;
        std::size_t leave = rows;
        for (std::size_t r = 0; r < rows; ++r) {
            if (T[r][enter] <= 0) continue;
            if (leave == rows ||
                T[r][n + rows] * T[leave][enter] < T[leave][n + rows] * T[r][enter] ||
                (T[r][n + rows] * T[leave][enter] == T[leave][n + rows] * T[r][enter] &&
                 basis[r] < basis[leave]))
                leave = r;
        }
        if (leave == rows) return false;  // unbounded cannot happen; defensive
        Rational piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rational f = T[r][enter];
            for (std::size_t j = 0; j <= n + rows; ++j) T[r][j] -= f * T[leave][j];
        }
        Rational f = obj[enter];
        for (std::size_t j = 0; j <= n + rows; ++j) obj[j] -= f * T[leave][j];
        basis[leave] = enter;
    }
    return -obj[n + rows] == 0;
}

// Normal of the hyperplane through d points in dimension d, via cofactors of
// the (d-1) x d matrix of spanning vectors. Zero vector iff degenerate.
inline QVec hyperplane_normal(const std::vector<QVec>& q) {
    const std::size_t d = q[0].size();
    std::vector<QVec> M;
    for (std::size_t i = 1; i < q.size(); ++i) M.push_back(sub(q[i], q[0]));
    QVec n(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<QVec> minor;
        for (const auto& row : M) {
            QVec r;
            for (std::size_t c = 0; c < d; ++c)
                if (c != j) r.push_back(row[c]);
            minor.push_back(r);
        }
        n[j] = (j % 2 ? Rational(-1) : Rational(1)) * det(minor);
    }
    return n;
}

}  // namespace detail

// Supporting halfspace: normal . x <= offset holds on the polytope.
struct Facet {
    QVec normal;
    Rational offset;
};

// Exact convex polytope in dimension m <= 4. Vertices are the minimal
// generating set; for m = 2 they are in counterclockwise order, otherwise
// sorted lexicographically. Facets are present only when the polytope is
// full-dimensional; volume is 0 otherwise.
class Polytope {
  public:
    std::size_t dim = 0;
    std::vector<QVec> vertices;
    std::vector<Facet> facets;
    bool full_dimensional = false;

    const Rational& volume() const { return volume_; }

    bool contains(const QVec& x) const {
        if (x.size() != dim) throw std::invalid_argument("point dimension mismatch");
        if (vertices.empty()) return false;
        if (vertices.size() == 1) return x == vertices[0];
        if (vertices.size() == 2) return on_segment(x, vertices[0], vertices[1]);
        if (full_dimensional) {
            for (const auto& f : facets)
                if (detail::dot(f.normal, x) > f.offset) return false;
            return true;
        }
        return detail::in_convex_hull(x, vertices);
    }

    Rational volume_{0};

  private:
    static bool on_segment(const QVec& x, const QVec& a, const QVec& b) {
        // x = a + t (b - a) with t in [0, 1], checked exactly.
        QVec ab = detail::sub(b, a), ax = detail::sub(x, a);
        Rational t;
        bool have_t = false;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            if (ab[i] == 0) {
                if (ax[i] != 0) return false;
                continue;
            }
            Rational ti = ax[i] / ab[i];
            if (have_t && ti != t) return false;
            t = ti;
            have_t = true;
        }
        return have_t && t >= 0 && t <= 1;
    }
};

namespace detail {

inline Polytope hull_1d(std::vector<QVec> pts) {
    Polytope P;
    P.dim = 1;
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    if (*lo == *hi) {
        P.vertices = {*lo};
        return P;
    }
    P.vertices = {*lo, *hi};
    P.full_dimensional = true;
    P.facets = {{{Rational(-1)}, -(*lo)[0]}, {{Rational(1)}, (*hi)[0]}};
    P.volume_ = (*hi)[0] - (*lo)[0];
    return P;
}

inline Rational cross2(const QVec& o, const QVec& a, const QVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain; strict turns only, so collinear interior points are dropped.
inline Polytope hull_2d(std::vector<QVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polytope P;
    P.dim = 2;
    if (pts.size() == 1) {
        P.vertices = pts;
        return P;
    }
    std::vector<QVec> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    P.vertices = h;  // counterclockwise
    if (h.size() <= 2) return P;
    P.full_dimensional = true;
    Rational area2(0);
    for (std::size_t i = 0; i < h.size(); ++i) {
        const QVec& a = h[i];
        const QVec& b = h[(i + 1) % h.size()];
        area2 += a[0] * b[1] - b[0] * a[1];
        // Outward normal of edge a -> b for a counterclockwise polygon.
        QVec n = {b[1] - a[1], a[0] - b[0]};
        P.facets.push_back({n, dot(n, a)});
    }
    P.volume_ = area2 / 2;
    return P;
}

// Beneath-beyond incremental hull with simplicial facets, exact throughout.
inline Polytope hull_nd(std::vector<QVec> pts, std::size_t d) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polytope P;
    P.dim = d;

    // Greedy affinely independent seed set.
    std::vector<std::size_t> seed = {0};
    for (std::size_t i = 1; i < pts.size() && seed.size() <= d; ++i) {
        std::vector<QVec> M;
        for (std::size_t j = 1; j < seed.size(); ++j) M.push_back(sub(pts[seed[j]], pts[seed[0]]));
        M.push_back(sub(pts[i], pts[seed[0]]));
        // Rank check via elimination.
        std::size_t rank = 0;
        std::vector<QVec> W = M;
        for (std::size_t c = 0; c < d && rank < W.size(); ++c) {
            std::size_t piv = rank;
            while (piv < W.size() && W[piv][c] == 0) ++piv;
            if (piv == W.size()) continue;
            std::swap(W[piv], W[rank]);
            for (std::size_t r2 = rank + 1; r2 < W.size(); ++r2) {
                if (W[r2][c] == 0) continue;
                Rational f = W[r2][c] / W[rank][c];
                for (std::size_t cc = c; cc < d; ++cc) W[r2][cc] -= f * W[rank][cc];
            }
            ++rank;
        }
        if (rank == M.size()) seed.push_back(i);
    }

    if (seed.size() < d + 1) {
        // Degenerate: lower-dimensional hull, extreme points by exact LP.
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::vector<QVec> others;
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (j != i) others.push_back(pts[j]);
            if (!in_convex_hull(pts[i], others)) P.vertices.push_back(pts[i]);
        }
        std::sort(P.vertices.begin(), P.vertices.end());
        return P;
    }

    struct SFacet {
        std::vector<std::size_t> vs;  // d vertex indices, sorted
        QVec normal;
        Rational offset;
    };
    QVec interior(d, Rational(0));
    for (std::size_t s : seed)
        for (std::size_t c = 0; c < d; ++c) interior[c] += pts[s][c] / Rational(d + 1);

    auto make_facet = [&](std::vector<std::size_t> vs) {
        std::sort(vs.begin(), vs.end());
        std::vector<QVec> q;
        for (std::size_t v : vs) q.push_back(pts[v]);
        QVec n = hyperplane_normal(q);
        Rational off = dot(n, q[0]);
        if (dot(n, interior) > off) {
            for (auto& v : n) v = -v;
            off = -off;
        }
        return SFacet{std::move(vs), std::move(n), std::move(off)};
    };

    std::vector<SFacet> facets;
    for (std::size_t skip = 0; skip <= d; ++skip) {
        std::vector<std::size_t> vs;
        for (std::size_t j = 0; j <= d; ++j)
            if (j != skip) vs.push_back(seed[j]);
        facets.push_back(make_facet(std::move(vs)));
    }
    {
        std::vector<QVec> M;
        for (std::size_t j = 1; j <= d; ++j) M.push_back(sub(pts[seed[j]], pts[seed[0]]));
        Rational v = det(M);
        P.volume_ = (v < 0 ? -v : v);
        for (std::size_t f = 2; f <= d; ++f) P.volume_ /= Rational(f);
    }

    std::set<std::size_t> used(seed.begin(), seed.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used.count(i)) continue;
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (dot(facets[f].normal, pts[i]) > facets[f].offset) visible.push_back(f);
        if (visible.empty()) continue;

        for (std::size_t f : visible) {
            std::vector<QVec> M;
            for (std::size_t v : facets[f].vs) M.push_back(sub(pts[v], pts[i]));
            Rational v = det(M);
            if (v < 0) v = -v;
            for (std::size_t fac = 2; fac <= d; ++fac) v /= Rational(fac);
            P.volume_ += v;
        }

        // Horizon ridges appear in exactly one visible facet.
        std::map<std::vector<std::size_t>, int> ridge_count;
        for (std::size_t f : visible)
            for (std::size_t skip = 0; skip < d; ++skip) {
                std::vector<std::size_t> r;
                for (std::size_t j = 0; j < d; ++j)
                    if (j != skip) r.push_back(facets[f].vs[j]);
                ++ridge_count[r];
            }
        std::set<std::size_t> vis_set(visible.begin(), visible.end());
        std::vector<SFacet> next;
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (!vis_set.count(f)) next.push_back(std::move(facets[f]));
        for (const auto& [ridge, cnt] : ridge_count) {
            if (cnt != 1) continue;
            std::vector<std::size_t> vs = ridge;
            vs.push_back(i);
            next.push_back(make_facet(std::move(vs)));
        }
        facets = std::move(next);
    }

    // Minimal vertex set: a facet-incident point kept only if it is not in the
    // hull of the remaining candidates.
    std::set<std::size_t> cand;
    for (const auto& f : facets) cand.insert(f.vs.begin(), f.vs.end());
    std::vector<std::size_t> cl(cand.begin(), cand.end());
    for (std::size_t i : cl) {
        std::vector<QVec> others;
        for (std::size_t j : cl)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others)) P.vertices.push_back(pts[i]);
    }
    std::sort(P.vertices.begin(), P.vertices.end());

    // Merge coplanar simplicial facets into one canonical halfspace each.
    std::set<std::pair<QVec, Rational>> seen;
    for (const auto& f : facets) {
        QVec n = f.normal;
        Rational off = f.offset;
        Rational scale(0);
        for (const auto& v : n)
            if (v != 0) {
                scale = v < 0 ? -v : v;
                break;
            }
        for (auto& v : n) v /= scale;
        off /= scale;
        if (seen.emplace(n, off).second) P.facets.push_back({std::move(n), std::move(off)});
    }
    P.full_dimensional = true;
    return P;
}

}  // namespace detail

inline Polytope convex_hull(std::vector<QVec> pts, std::size_t dim) {
    if (dim < 1 || dim > 4)
        throw std::invalid_argument("hull dimension out of supported range 1..4");
    if (pts.empty()) throw std::invalid_argument("hull of empty point set");
    for (const auto& p : pts)
        if (p.size() != dim) throw std::invalid_argument("hull point dimension mismatch");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (dim == 1) return detail::hull_1d(std::move(pts));
    if (dim == 2) return detail::hull_2d(std::move(pts));
    return detail::hull_nd(std::move(pts), dim);
}

}  // namespace varcap
