#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jtwist/lie_algebra.hpp"
#include "jtwist/series.hpp"

namespace jtwist {

inline Monomial unit_monomial(int dim) { return Monomial(static_cast<std::size_t>(dim), '\0'); }

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (const char c : m) d += static_cast<unsigned char>(c);
    return d;
}

inline std::string monomial_str(const LieAlgebra& g, const Monomial& m) {
    std::string out;
    for (int i = 0; i < g.dim(); ++i) {
        const int n = static_cast<unsigned char>(m[i]);
        if (n == 0) continue;
        if (!out.empty()) out += " ";
        out += g.name(i);
        if (n > 1) out += "^" + std::to_string(n);
    }
    return out.empty() ? "1" : out;
}

namespace detail {

// ----- PBW normal-ordering kernel --------------------------------------------
// Monomials are exponent vectors in the algebra's basis order; the product is
// rewritten into normal form via e_g e_i = e_i e_g + [e_g, e_i]. Each helper
// is memoized on the algebra object (string keys; node-stable maps).

// Left-multiplication of an ordered monomial by one generator: e_g * m.
inline const MonomialMap& pbw_mul_gen(const LieAlgebra& g, int gen, const Monomial& m) {
    auto& cache = g.cache();
    std::string key = m;
    key.push_back(static_cast<char>(gen));
    {
        std::scoped_lock lk(cache.mu);
        const auto it = cache.gen_past.find(key);
        if (it != cache.gen_past.end()) return it->second;
    }
    MonomialMap r;
    int i = -1;
    for (int t = 0; t < gen; ++t)
        if (m[t] != '\0') {
            i = t;
            break;
        }
    if (i < 0) {
        // gen is already <= every generator present: direct insertion
        Monomial m2 = m;
        ++m2[gen];
        r.emplace(std::move(m2), Rational(1));
    } else {
        // m = e_i * m1; e_g e_i m1 = e_i (e_g m1) + [e_g, e_i] m1
        Monomial m1 = m;
        --m1[i];
        const MonomialMap t1 = pbw_mul_gen(g, gen, m1);
        for (const auto& [mm, c] : t1)
            for (const auto& [mm2, c2] : pbw_mul_gen(g, i, mm)) {
                auto& cur = r[mm2];
                cur += c * c2;
                if (cur == 0) r.erase(mm2);
            }
        for (const auto& [k, ck] : g.bracket(gen, i))
            for (const auto& [mm2, c2] : pbw_mul_gen(g, k, m1)) {
                auto& cur = r[mm2];
                cur += ck * c2;
                if (cur == 0) r.erase(mm2);
            }
    }
    std::scoped_lock lk(cache.mu);
    return cache.gen_past.emplace(std::move(key), std::move(r)).first->second;
}

// Normal-ordered product of two ordered monomials.
inline const MonomialMap& pbw_mul(const LieAlgebra& g, const Monomial& m1, const Monomial& m2) {
    auto& cache = g.cache();
    const std::string key = m1 + m2;
    {
        std::scoped_lock lk(cache.mu);
        const auto it = cache.mono_mul.find(key);
        if (it != cache.mono_mul.end()) return it->second;
    }
    MonomialMap cur;
    cur.emplace(m2, Rational(1));
    for (int idx = g.dim() - 1; idx >= 0; --idx)
        for (int rep = static_cast<unsigned char>(m1[idx]); rep > 0; --rep) {
            MonomialMap next;
            for (const auto& [m, c] : cur)
                for (const auto& [mm, c2] : pbw_mul_gen(g, idx, m)) {
                    auto& acc = next[mm];
                    acc += c * c2;
                    if (acc == 0) next.erase(mm);
                }
            cur = std::move(next);
        }
    std::scoped_lock lk(cache.mu);
    return cache.mono_mul.emplace(key, std::move(cur)).first->second;
}

// Product of the generators of m in reversed order, normal-ordered.
inline const MonomialMap& pbw_reversed(const LieAlgebra& g, const Monomial& m) {
    auto& cache = g.cache();
    {
        std::scoped_lock lk(cache.mu);
        const auto it = cache.antipode.find(m);
        if (it != cache.antipode.end()) return it->second;
    }
    MonomialMap cur;
    cur.emplace(unit_monomial(g.dim()), Rational(1));
    // building e_{g_L} ... e_{g_1} by successive left-multiplication
    for (int idx = 0; idx < g.dim(); ++idx)
        for (int rep = static_cast<unsigned char>(m[idx]); rep > 0; --rep) {
            MonomialMap next;
            for (const auto& [mm, c] : cur)
                for (const auto& [mm2, c2] : pbw_mul_gen(g, idx, mm)) {
                    auto& acc = next[mm2];
                    acc += c * c2;
                    if (acc == 0) next.erase(mm2);
                }
            cur = std::move(next);
        }
    std::scoped_lock lk(cache.mu);
    return cache.antipode.emplace(m, std::move(cur)).first->second;
}

} // namespace detail

// Element of U(g)[[xi]] / xi^{K+1} in PBW normal form.
class UEAElement {
public:
    UEAElement(AlgebraPtr alg, int order) : alg_(std::move(alg)), order_(order) {
        if (!alg_) throw ConstraintViolation("element needs an algebra");
        if (order_ < 0) throw OrderMismatch("truncation order must be non-negative");
    }
    static UEAElement unit(AlgebraPtr alg, int order) {
        UEAElement e(std::move(alg), order);
        e.add_term(unit_monomial(e.alg_->dim()), XiSeries::one(order));
        return e;
    }
    static UEAElement generator(AlgebraPtr alg, int order, int g) {
        UEAElement e(std::move(alg), order);
        Monomial m = unit_monomial(e.alg_->dim());
        ++m[g];
        e.add_term(std::move(m), XiSeries::one(order));
        return e;
    }
    static UEAElement generator(AlgebraPtr alg, int order, const std::string& name) {
        const int g = alg->index_of(name);
        return generator(std::move(alg), order, g);
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int order() const { return order_; }
    const std::map<Monomial, XiSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Minimal xi-valuation over all stored coefficient series.
    int xi_valuation() const {
        int v = order_ + 1;
        for (const auto& [m, s] : terms_) v = std::min(v, s.valuation());
        return v;
    }

    void add_term(Monomial m, const XiSeries& s) {
        if (s.order() != order_) throw OrderMismatch("term series order mismatch");
        if (s.is_zero()) return;
        const auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), s);
        } else {
            it->second += s;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    UEAElement& operator+=(const UEAElement& o) {
        check_compatible(o);
        for (const auto& [m, s] : o.terms_) add_term(m, s);
        return *this;
    }
    UEAElement& operator-=(const UEAElement& o) {
        check_compatible(o);
        for (const auto& [m, s] : o.terms_) add_term(m, -s);
        return *this;
    }
    UEAElement& operator*=(const XiSeries& s) {
        std::map<Monomial, XiSeries> out;
        for (const auto& [m, t] : terms_) {
            XiSeries p = t * s;
            if (!p.is_zero()) out.emplace(m, std::move(p));
        }
        terms_ = std::move(out);
        return *this;
    }
    UEAElement& operator*=(const Rational& r) {
        if (r == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, t] : terms_) t *= r;
        return *this;
    }
    friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
    friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
    friend UEAElement operator*(UEAElement a, const XiSeries& s) { return a *= s; }
    friend UEAElement operator*(UEAElement a, const Rational& r) { return a *= r; }
    friend UEAElement operator*(const Rational& r, UEAElement a) { return a *= r; }
    UEAElement operator-() const {
        UEAElement r(*this);
        r *= Rational(-1);
        return r;
    }

    friend UEAElement operator*(const UEAElement& a, const UEAElement& b) {
        a.check_compatible(b);
        const int K = a.order_;
        UEAElement r(a.alg_, K);
        for (const auto& [m1, s1] : a.terms_) {
            const int v1 = s1.valuation();
            if (v1 > K) continue;
            for (const auto& [m2, s2] : b.terms_) {
                if (v1 + s2.valuation() > K) continue;
                const XiSeries s = s1 * s2;
                for (const auto& [m, c] : detail::pbw_mul(*a.alg_, m1, m2))
                    r.add_term(m, s * c);
            }
        }
        return r;
    }

    bool operator==(const UEAElement& o) const {
        return alg_ == o.alg_ && order_ == o.order_ && terms_ == o.terms_;
    }
    bool operator!=(const UEAElement& o) const { return !(*this == o); }

    UEAElement truncated(int new_order) const {
        UEAElement r(alg_, new_order);
        for (const auto& [m, s] : terms_) r.add_term(m, s.truncated(new_order));
        return r;
    }

    std::string str() const {
        std::string out;
        for (const auto& [m, s] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + s.str() + ")*" + monomial_str(*alg_, m);
        }
        return out.empty() ? "0" : out;
    }

    void check_compatible(const UEAElement& o) const {
        if (alg_ != o.alg_) throw AlgebraMismatch("elements over different algebras");
        if (order_ != o.order_) throw OrderMismatch("elements with different truncation orders");
    }

private:
    AlgebraPtr alg_;
    int order_;
    std::map<Monomial, XiSeries> terms_;
};

inline UEAElement commutator(const UEAElement& a, const UEAElement& b) { return a * b - b * a; }

// Coefficient series of the empty monomial (the counit).
inline XiSeries counit(const UEAElement& a) {
    const auto it = a.terms().find(unit_monomial(a.algebra()->dim()));
    return it == a.terms().end() ? XiSeries(a.order()) : it->second;
}

// Anti-automorphism with S(e_i) = -e_i.
inline UEAElement antipode(const UEAElement& a) {
    UEAElement r(a.algebra(), a.order());
    for (const auto& [m, s] : a.terms()) {
        const Rational sign = (monomial_degree(m) % 2 == 0) ? 1 : -1;
        for (const auto& [mm, c] : detail::pbw_reversed(*a.algebra(), m))
            r.add_term(mm, s * (sign * c));
    }
    return r;
}

// Anti-automorphism acting on generators by e_i -> signs[i] e_i and
// reversing products; coefficients are left untouched.
inline UEAElement apply_antimorphism(const UEAElement& a, const std::vector<Rational>& signs) {
    if (static_cast<int>(signs.size()) != a.algebra()->dim())
        throw ConstraintViolation("sign vector length mismatch");
    UEAElement r(a.algebra(), a.order());
    for (const auto& [m, s] : a.terms()) {
        Rational factor = 1;
        for (int i = 0; i < a.algebra()->dim(); ++i)
            for (int rep = static_cast<unsigned char>(m[i]); rep > 0; --rep) factor *= signs[i];
        for (const auto& [mm, c] : detail::pbw_reversed(*a.algebra(), m))
            r.add_term(mm, s * (factor * c));
    }
    return r;
}

// exp(a) for a with xi-valuation >= 1, so the series terminates mod xi^{K+1}.
inline UEAElement exp_positive(const UEAElement& a) {
    if (a.xi_valuation() < 1)
        throw ConstraintViolation("exp needs an argument with zero classical part");
    UEAElement result = UEAElement::unit(a.algebra(), a.order());
    UEAElement term = result;
    for (int k = 1; k <= a.order(); ++k) {
        term = term * a;
        term *= Rational(Integer(1), Integer(k));
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

// Multiplicative inverse: unit-monomial coefficient must have an invertible
// constant term and every other monomial must be of xi-valuation >= 1.
inline UEAElement invert(const UEAElement& a) {
    const Monomial um = unit_monomial(a.algebra()->dim());
    const auto it = a.terms().find(um);
    if (it == a.terms().end() || it->second[0] == 0)
        throw NotInvertible("element has no invertible constant part");
    for (const auto& [m, s] : a.terms())
        if (m != um && s.valuation() < 1)
            throw NotInvertible("classical part is not a scalar multiple of the unit");
    const XiSeries s0inv = series_invert(it->second);
    UEAElement n = a * s0inv;
    n -= UEAElement::unit(a.algebra(), a.order());
    UEAElement geom = UEAElement::unit(a.algebra(), a.order());
    UEAElement pow = geom;
    for (int k = 1; k <= a.order(); ++k) {
        pow = pow * n;
        pow *= Rational(-1);
        if (pow.is_zero()) break;
        geom += pow;
    }
    return geom * s0inv;
}

// f(s) = sum_k f_k s^k for a scalar polynomial f and xi-positive s.
inline UEAElement apply_series_in(const XiSeries& f, const UEAElement& s) {
    if (f.order() != s.order()) throw OrderMismatch("series/element order mismatch");
    if (s.xi_valuation() < 1)
        throw ConstraintViolation("series substitution needs a xi-positive element");
    UEAElement acc = UEAElement::unit(s.algebra(), s.order());
    acc *= f[0];
    UEAElement pow = UEAElement::unit(s.algebra(), s.order());
    for (int k = 1; k <= f.order(); ++k) {
        pow = pow * s;
        if (pow.is_zero()) break;
        acc += pow * f[k];
    }
    return acc;
}

// sigma = (1/2) ln(1 + 2 xi E) as a polynomial in the generator at index e.
inline UEAElement sigma_element(const AlgebraPtr& alg, int order, int e) {
    if (e < 0 || e >= alg->dim())
        throw ConstraintViolation("sigma needs a valid E generator index");
    const XiSeries l = series_compose_log1p(order, 2);
    UEAElement r(alg, order);
    Monomial m = unit_monomial(alg->dim());
    for (int k = 1; k <= order; ++k) {
        ++m[e];
        r.add_term(m, XiSeries::monomial(order, k, l[k]));
    }
    return r;
}

inline UEAElement sigma_element(const AlgebraPtr& alg, int order) {
    const int e = alg->meta().e_index;
    if (e < 0) throw ConstraintViolation("algebra has no distinguished E generator");
    return sigma_element(alg, order, e);
}

// e^{r sigma} = (1 + 2 xi E)^{r/2} via the generalized binomial series.
inline UEAElement exp_sigma(const AlgebraPtr& alg, int order, const Rational& r, int e) {
    if (e < 0 || e >= alg->dim())
        throw ConstraintViolation("exp_sigma needs a valid E generator index");
    const XiSeries p = series_binom_pow(order, 2, r / 2);
    UEAElement out(alg, order);
    Monomial m = unit_monomial(alg->dim());
    for (int k = 0; k <= order; ++k) {
        out.add_term(m, XiSeries::monomial(order, k, p[k]));
        ++m[e];
    }
    return out;
}

inline UEAElement exp_sigma(const AlgebraPtr& alg, int order, const Rational& r) {
    const int e = alg->meta().e_index;
    if (e < 0) throw ConstraintViolation("algebra has no distinguished E generator");
    return exp_sigma(alg, order, r, e);
}

// Algebra-map application: replace generator i by images[i] (images must
// satisfy the source algebra's relations for this to be a morphism).
inline UEAElement apply_generator_images(const UEAElement& a,
                                         const std::vector<UEAElement>& images) {
    if (images.empty()) throw ConstraintViolation("no generator images");
    if (static_cast<int>(images.size()) != a.algebra()->dim())
        throw ConstraintViolation("one image per source generator required");
    const auto& target = images[0].algebra();
    const int K = images[0].order();
    UEAElement r(target, K);
    for (const auto& [m, s] : a.terms()) {
        UEAElement prod = UEAElement::unit(target, K);
        for (int i = 0; i < a.algebra()->dim(); ++i)
            for (int rep = static_cast<unsigned char>(m[i]); rep > 0; --rep)
                prod = prod * images[i];
        r += prod * (K >= s.order() ? s.extended(K) : s.truncated(K));
    }
    return r;
}

} // namespace jtwist
