#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jtwist/rational.hpp"

namespace jtwist {

// Truncated formal power series in the deformation parameter xi with exact
// rational coefficients, computed modulo xi^{order+1}. Every scalar in the
// system is one of these. Mixed-order arithmetic is refused.
class XiSeries {
public:
    explicit XiSeries(int order) : order_(check_order(order)), c_(order + 1) {}

    static XiSeries scalar(int order, const Rational& c0) {
        XiSeries s(order);
        s.c_[0] = c0;
        return s;
    }
    static XiSeries one(int order) { return scalar(order, 1); }
    // c * xi^k (zero if k exceeds the truncation order).
    static XiSeries monomial(int order, int k, const Rational& c) {
        XiSeries s(order);
        if (k >= 0 && k <= order) s.c_[k] = c;
        return s;
    }
    static XiSeries xi(int order) { return monomial(order, 1, 1); }

    int order() const { return order_; }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational& at(int k) { return c_[k]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
    }
    // Least k with nonzero coefficient; order+1 for the zero series.
    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (c_[k] != 0) return k;
        return order_ + 1;
    }

    XiSeries& operator+=(const XiSeries& o) {
        check_same(o);
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    XiSeries& operator-=(const XiSeries& o) {
        check_same(o);
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    XiSeries& operator*=(const Rational& r) {
        for (auto& c : c_) c *= r;
        return *this;
    }
    friend XiSeries operator+(XiSeries a, const XiSeries& b) { return a += b; }
    friend XiSeries operator-(XiSeries a, const XiSeries& b) { return a -= b; }
    friend XiSeries operator*(XiSeries a, const Rational& r) { return a *= r; }
    friend XiSeries operator*(const Rational& r, XiSeries a) { return a *= r; }
    XiSeries operator-() const {
        XiSeries s(*this);
        for (auto& c : s.c_) c = -c;
        return s;
    }

    friend XiSeries operator*(const XiSeries& a, const XiSeries& b) {
        a.check_same(b);
        XiSeries s(a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= a.order_; ++j) {
                if (b.c_[j] == 0) continue;
                s.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return s;
    }

    bool operator==(const XiSeries& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const XiSeries& o) const { return !(*this == o); }

    // Re-truncate to a lower order.
    XiSeries truncated(int new_order) const {
        if (new_order < 0 || new_order > order_)
            throw OrderMismatch("truncated(): new order must be in [0, order]");
        XiSeries s(new_order);
        for (int k = 0; k <= new_order; ++k) s.c_[k] = c_[k];
        return s;
    }
    // Pad with zero coefficients up to a higher order.
    XiSeries extended(int new_order) const {
        if (new_order < order_)
            throw OrderMismatch("extended(): new order must be >= order");
        XiSeries s(new_order);
        for (int k = 0; k <= order_; ++k) s.c_[k] = c_[k];
        return s;
    }

    std::string str() const {
        std::string out;
        for (int k = 0; k <= order_; ++k) {
            if (c_[k] == 0) continue;
            const bool neg = c_[k] < 0;
            const Rational a = neg ? Rational(-c_[k]) : c_[k];
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            const bool unit_coeff = (a == 1) && k > 0;
            if (!unit_coeff) out += rational_str(a);
            if (k > 0) {
                if (!unit_coeff) out += "*";
                out += "xi";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(rational_str(c));
        return v;
    }
    static XiSeries from_strings(const std::vector<std::string>& v) {
        if (v.empty()) throw ParseError("series needs at least the constant coefficient");
        XiSeries s(static_cast<int>(v.size()) - 1);
        for (std::size_t k = 0; k < v.size(); ++k) s.c_[k] = parse_rational(v[k]);
        return s;
    }

private:
    static int check_order(int order) {
        if (order < 0) throw OrderMismatch("truncation order must be non-negative");
        return order;
    }
    void check_same(const XiSeries& o) const {
        if (order_ != o.order_)
            throw OrderMismatch("mixed truncation orders: " + std::to_string(order_) +
                                " vs " + std::to_string(o.order_));
    }

    int order_;
    std::vector<Rational> c_;
};

inline XiSeries series_mul(const XiSeries& a, const XiSeries& b) { return a * b; }

// Multiplicative inverse; requires a nonzero constant term.
inline XiSeries series_invert(const XiSeries& a) {
    if (a[0] == 0) throw NotInvertible("series with zero constant term has no inverse");
    const int K = a.order();
    XiSeries b(K);
    b.at(0) = 1 / a[0];
    for (int k = 1; k <= K; ++k) {
        Rational acc = 0;
        for (int j = 0; j < k; ++j) acc += b[j] * a[k - j];
        b.at(k) = -acc / a[0];
    }
    return b;
}

// (1/2) ln(1 + c*xi) = sum_{k>=1} (-1)^{k+1} c^k xi^k / (2k).
inline XiSeries series_compose_log1p(int order, const Rational& c) {
    XiSeries s(order);
    Rational ck = 1;
    for (int k = 1; k <= order; ++k) {
        ck *= c;
        s.at(k) = ((k % 2 == 1) ? ck : Rational(-ck)) / Rational(2 * k);
    }
    return s;
}

// (1 + c*xi)^r for rational exponent r, via the generalized binomial series.
inline XiSeries series_binom_pow(int order, const Rational& c, const Rational& r) {
    XiSeries s(order);
    Rational ck = 1;
    for (int k = 0; k <= order; ++k) {
        s.at(k) = binomial(r, k) * ck;
        ck *= c;
    }
    return s;
}

// f(g) for a scalar series g with valuation >= 1 (so the composition
// truncates); f is read as a polynomial in its own variable.
inline XiSeries series_compose(const XiSeries& f, const XiSeries& g) {
    if (f.order() != g.order())
        throw OrderMismatch("series_compose: mixed truncation orders");
    if (g[0] != 0)
        throw ConstraintViolation("series_compose: inner series must have zero constant term");
    XiSeries acc = XiSeries::scalar(f.order(), f[0]);
    XiSeries gk = XiSeries::one(f.order());
    for (int k = 1; k <= f.order(); ++k) {
        gk = gk * g;
        if (gk.is_zero()) break;
        acc += gk * f[k];
    }
    return acc;
}

} // namespace jtwist
