#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace varcap {

// Multi-index of monomial exponents; length equals the variable count.
struct ExponentVector {
    std::vector<int> e;

    ExponentVector() = default;
    explicit ExponentVector(std::size_t n) : e(n, 0) {}
    ExponentVector(std::initializer_list<int> init) : e(init) {}

    std::size_t size() const { return e.size(); }
    int operator[](std::size_t i) const { return e[i]; }
    int& operator[](std::size_t i) { return e[i]; }

    int total_degree() const { return std::accumulate(e.begin(), e.end(), 0); }

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return a.e == b.e;
    }
    friend bool operator!=(const ExponentVector& a, const ExponentVector& b) {
        return !(a == b);
    }

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
        check_len(a, b);
        ExponentVector r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }

    // Componentwise subtraction; caller must ensure divisibility when that matters.
    friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
        check_len(a, b);
        ExponentVector r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] - b.e[i];
        return r;
    }

    bool divides(const ExponentVector& o) const {
        check_len(*this, o);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    static void check_len(const ExponentVector& a, const ExponentVector& b) {
        if (a.size() != b.size())
            throw std::invalid_argument("exponent vector length mismatch");
    }
};

inline ExponentVector lcm(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector::check_len(a, b);
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

enum class Ordering { Less, Equal, Greater };

// Last-index-dominant lexicographic comparison: the largest index at which the
// vectors differ decides. This is the lex order with z1 < z2 < ... < zn.
inline Ordering lex_last_dominant(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector::check_len(a, b);
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

// First-index-dominant lexicographic comparison (the textbook lex order).
inline Ordering lex_first_dominant(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector::check_len(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

struct MonomialOrder {
    enum class Kind { LexLastDominant, LexFirstDominant, Grevlex } kind;

    Ordering compare(const ExponentVector& a, const ExponentVector& b) const {
        switch (kind) {
            case Kind::LexLastDominant:
                return lex_last_dominant(a, b);
            case Kind::LexFirstDominant:
                return lex_first_dominant(a, b);
            case Kind::Grevlex: {
                int da = a.total_degree(), db = b.total_degree();
                if (da != db) return da < db ? Ordering::Less : Ordering::Greater;
                return lex_last_dominant(a, b);
            }
        }
        return Ordering::Equal;
    }

    bool less(const ExponentVector& a, const ExponentVector& b) const {
        return compare(a, b) == Ordering::Less;
    }

    static MonomialOrder lex() { return {Kind::LexLastDominant}; }
    static MonomialOrder grevlex() { return {Kind::Grevlex}; }
};

// Strict-weak-order adapters for containers.
struct LexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        return lex_last_dominant(a, b) == Ordering::Less;
    }
};

struct GrevlexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        return MonomialOrder::grevlex().less(a, b);
    }
};

inline std::string to_string(const ExponentVector& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

}  // namespace varcap
