#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jtwist/uea.hpp"

namespace jtwist {

// Key of one tensor term: monomials per leg, unused slots hold the unit.
using TensorKey = std::array<Monomial, 3>;

// Element of U(g)^{tensor rank}[[xi]] / xi^{K+1}, rank 1..3.
class TensorElement {
public:
    TensorElement(AlgebraPtr alg, int order, int rank)
        : alg_(std::move(alg)), order_(order), rank_(rank) {
        if (!alg_) throw ConstraintViolation("tensor needs an algebra");
        if (rank_ < 1 || rank_ > 3) throw ConstraintViolation("tensor rank must be 1, 2 or 3");
        if (order_ < 0) throw OrderMismatch("truncation order must be non-negative");
    }
    static TensorElement unit(AlgebraPtr alg, int order, int rank) {
        TensorElement t(std::move(alg), order, rank);
        t.add_term(t.unit_key(), XiSeries::one(order));
        return t;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int order() const { return order_; }
    int rank() const { return rank_; }
    const std::map<TensorKey, XiSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TensorKey unit_key() const {
        const Monomial u = unit_monomial(alg_->dim());
        return {u, u, u};
    }

    int xi_valuation() const {
        int v = order_ + 1;
        for (const auto& [k, s] : terms_) v = std::min(v, s.valuation());
        return v;
    }

    void add_term(TensorKey k, const XiSeries& s) {
        if (s.order() != order_) throw OrderMismatch("term series order mismatch");
        if (s.is_zero()) return;
        const auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), s);
        } else {
            it->second += s;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TensorElement& operator+=(const TensorElement& o) {
        check_compatible(o);
        for (const auto& [k, s] : o.terms_) add_term(k, s);
        return *this;
    }
    TensorElement& operator-=(const TensorElement& o) {
        check_compatible(o);
        for (const auto& [k, s] : o.terms_) add_term(k, -s);
        return *this;
    }
    TensorElement& operator*=(const XiSeries& s) {
        std::map<TensorKey, XiSeries> out;
        for (const auto& [k, t] : terms_) {
            XiSeries p = t * s;
            if (!p.is_zero()) out.emplace(k, std::move(p));
        }
        terms_ = std::move(out);
        return *this;
    }
    TensorElement& operator*=(const Rational& r) {
        if (r == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, t] : terms_) t *= r;
        return *this;
    }
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(TensorElement a, const XiSeries& s) { return a *= s; }
    friend TensorElement operator*(TensorElement a, const Rational& r) { return a *= r; }
    friend TensorElement operator*(const Rational& r, TensorElement a) { return a *= r; }
    TensorElement operator-() const {
        TensorElement r(*this);
        r *= Rational(-1);
        return r;
    }

    // Legwise product: (a1 x a2 x a3)(b1 x b2 x b3) = a1 b1 x a2 b2 x a3 b3.
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b) {
        a.check_compatible(b);
        if (a.rank_ != b.rank_) throw AlgebraMismatch("tensor ranks differ");
        const int K = a.order_;
        const LieAlgebra& g = *a.alg_;
        TensorElement r(a.alg_, K, a.rank_);
        for (const auto& [k1, s1] : a.terms_) {
            const int v1 = s1.valuation();
            if (v1 > K) continue;
            for (const auto& [k2, s2] : b.terms_) {
                if (v1 + s2.valuation() > K) continue;
                const XiSeries s = s1 * s2;
                const MonomialMap& p1 = detail::pbw_mul(g, k1[0], k2[0]);
                const MonomialMap& p2 = detail::pbw_mul(g, k1[1], k2[1]);
                const MonomialMap& p3 = detail::pbw_mul(g, k1[2], k2[2]);
                for (const auto& [m1, c1] : p1)
                    for (const auto& [m2, c2] : p2) {
                        const Rational c12 = c1 * c2;
                        for (const auto& [m3, c3] : p3)
                            r.add_term({m1, m2, m3}, s * (c12 * c3));
                    }
            }
        }
        return r;
    }

    bool operator==(const TensorElement& o) const {
        return alg_ == o.alg_ && order_ == o.order_ && rank_ == o.rank_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

    TensorElement truncated(int new_order) const {
        TensorElement r(alg_, new_order, rank_);
        for (const auto& [k, s] : terms_) r.add_term(k, s.truncated(new_order));
        return r;
    }

    std::string str() const {
        std::string out;
        for (const auto& [k, s] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + s.str() + ")*[" + monomial_str(*alg_, k[0]);
            for (int l = 1; l < rank_; ++l) out += " (x) " + monomial_str(*alg_, k[l]);
            out += "]";
        }
        return out.empty() ? "0" : out;
    }

    void check_compatible(const TensorElement& o) const {
        if (alg_ != o.alg_) throw AlgebraMismatch("tensors over different algebras");
        if (order_ != o.order_) throw OrderMismatch("tensors with different truncation orders");
    }

private:
    AlgebraPtr alg_;
    int order_;
    int rank_;
    std::map<TensorKey, XiSeries> terms_;
};

// a (x) b as a rank-2 tensor.
inline TensorElement tensor_of(const UEAElement& a, const UEAElement& b) {
    a.check_compatible(b);
    const int K = a.order();
    TensorElement r(a.algebra(), K, 2);
    const Monomial u = unit_monomial(a.algebra()->dim());
    for (const auto& [m1, s1] : a.terms()) {
        const int v1 = s1.valuation();
        if (v1 > K) continue;
        for (const auto& [m2, s2] : b.terms()) {
            if (v1 + s2.valuation() > K) continue;
            r.add_term({m1, m2, u}, s1 * s2);
        }
    }
    return r;
}

// a (x) b (x) c as a rank-3 tensor.
inline TensorElement tensor_of(const UEAElement& a, const UEAElement& b, const UEAElement& c) {
    a.check_compatible(b);
    a.check_compatible(c);
    const int K = a.order();
    TensorElement r(a.algebra(), K, 3);
    for (const auto& [m1, s1] : a.terms())
        for (const auto& [m2, s2] : b.terms()) {
            const XiSeries s12 = s1 * s2;
            if (s12.is_zero()) continue;
            const int v12 = s12.valuation();
            for (const auto& [m3, s3] : c.terms()) {
                if (v12 + s3.valuation() > K) continue;
                r.add_term({m1, m2, m3}, s12 * s3);
            }
        }
    return r;
}

inline UEAElement as_uea(const TensorElement& t) {
    if (t.rank() != 1) throw AlgebraMismatch("rank-1 tensor expected");
    UEAElement r(t.algebra(), t.order());
    for (const auto& [k, s] : t.terms()) r.add_term(k[0], s);
    return r;
}

inline TensorElement as_tensor(const UEAElement& a) {
    TensorElement r(a.algebra(), a.order(), 1);
    const Monomial u = unit_monomial(a.algebra()->dim());
    for (const auto& [m, s] : a.terms()) r.add_term({m, u, u}, s);
    return r;
}

// Embed a rank-2 tensor into rank 3 on the given pair of legs (12, 13 or 23).
inline TensorElement embed_pair(const TensorElement& t, int legs) {
    if (t.rank() != 2) throw AlgebraMismatch("rank-2 tensor expected");
    TensorElement r(t.algebra(), t.order(), 3);
    const Monomial u = unit_monomial(t.algebra()->dim());
    for (const auto& [k, s] : t.terms()) {
        switch (legs) {
            case 12: r.add_term({k[0], k[1], u}, s); break;
            case 13: r.add_term({k[0], u, k[1]}, s); break;
            case 23: r.add_term({u, k[0], k[1]}, s); break;
            default: throw ConstraintViolation("legs must be 12, 13 or 23");
        }
    }
    return r;
}

// Swap the two legs of a rank-2 tensor.
inline TensorElement swap_legs(const TensorElement& t) {
    if (t.rank() != 2) throw AlgebraMismatch("rank-2 tensor expected");
    TensorElement r(t.algebra(), t.order(), 2);
    for (const auto& [k, s] : t.terms()) r.add_term({k[1], k[0], k[2]}, s);
    return r;
}

// Apply a linear map to one leg (1-based). fn receives a single-monomial
// element with unit coefficient and returns its image.
inline TensorElement transform_leg(const TensorElement& t, int leg,
                                   const std::function<UEAElement(const UEAElement&)>& fn) {
    if (leg < 1 || leg > t.rank()) throw ConstraintViolation("leg out of range");
    const int K = t.order();
    TensorElement r(t.algebra(), K, t.rank());
    std::map<Monomial, UEAElement> images;
    for (const auto& [k, s] : t.terms()) {
        auto it = images.find(k[leg - 1]);
        if (it == images.end()) {
            UEAElement basis(t.algebra(), K);
            basis.add_term(k[leg - 1], XiSeries::one(K));
            it = images.emplace(k[leg - 1], fn(basis)).first;
        }
        const int v = s.valuation();
        for (const auto& [mm, c] : it->second.terms()) {
            if (v + c.valuation() > K) continue;
            TensorKey nk = k;
            nk[leg - 1] = mm;
            r.add_term(std::move(nk), s * c);
        }
    }
    return r;
}

inline TensorElement antipode_leg(const TensorElement& t, int leg) {
    return transform_leg(t, leg, [](const UEAElement& a) { return antipode(a); });
}

// Apply the counit to one leg, dropping it (rank decreases by one).
inline TensorElement counit_leg(const TensorElement& t, int leg) {
    if (t.rank() < 2) throw AlgebraMismatch("rank >= 2 tensor expected");
    if (leg < 1 || leg > t.rank()) throw ConstraintViolation("leg out of range");
    const Monomial u = unit_monomial(t.algebra()->dim());
    TensorElement r(t.algebra(), t.order(), t.rank() - 1);
    for (const auto& [k, s] : t.terms()) {
        if (k[leg - 1] != u) continue;
        TensorKey nk{u, u, u};
        int pos = 0;
        for (int l = 0; l < t.rank(); ++l)
            if (l != leg - 1) nk[pos++] = k[l];
        r.add_term(std::move(nk), s);
    }
    return r;
}

// Multiply all legs together, left to right.
inline UEAElement multiply_all_legs(const TensorElement& t) {
    const int K = t.order();
    const LieAlgebra& g = *t.algebra();
    UEAElement r(t.algebra(), K);
    for (const auto& [k, s] : t.terms()) {
        if (s.valuation() > K) continue;
        if (t.rank() == 1) {
            r.add_term(k[0], s);
            continue;
        }
        const MonomialMap& p12 = detail::pbw_mul(g, k[0], k[1]);
        if (t.rank() == 2) {
            for (const auto& [m, c] : p12) r.add_term(m, s * c);
        } else {
            for (const auto& [m, c] : p12)
                for (const auto& [mm, c2] : detail::pbw_mul(g, m, k[2]))
                    r.add_term(mm, s * (c * c2));
        }
    }
    return r;
}

// Multiplicative inverse via the geometric series; the classical part must be
// an invertible scalar multiple of the unit tensor.
inline TensorElement invert(const TensorElement& a) {
    const TensorKey uk = TensorElement::unit(a.algebra(), a.order(), a.rank()).unit_key();
    const auto it = a.terms().find(uk);
    if (it == a.terms().end() || it->second[0] == 0)
        throw NotInvertible("tensor has no invertible constant part");
    for (const auto& [k, s] : a.terms())
        if (k != uk && s.valuation() < 1)
            throw NotInvertible("classical part is not a scalar multiple of the unit");
    const XiSeries s0inv = series_invert(it->second);
    TensorElement n = a * s0inv;
    n -= TensorElement::unit(a.algebra(), a.order(), a.rank());
    TensorElement geom = TensorElement::unit(a.algebra(), a.order(), a.rank());
    TensorElement pow = geom;
    for (int k = 1; k <= a.order(); ++k) {
        pow = pow * n;
        pow *= Rational(-1);
        if (pow.is_zero()) break;
        geom += pow;
    }
    return geom * s0inv;
}

// exp(t) for a tensor of xi-valuation >= 1.
inline TensorElement exp_positive(const TensorElement& a) {
    if (a.xi_valuation() < 1)
        throw ConstraintViolation("exp needs an argument with zero classical part");
    TensorElement result = TensorElement::unit(a.algebra(), a.order(), a.rank());
    TensorElement term = result;
    for (int k = 1; k <= a.order(); ++k) {
        term = term * a;
        term *= Rational(Integer(1), Integer(k));
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

// Coefficient of xi^k as a map keyed by tensor monomials.
inline std::map<TensorKey, Rational> xi_coefficient_terms(const TensorElement& t, int k) {
    std::map<TensorKey, Rational> out;
    for (const auto& [key, s] : t.terms())
        if (s[k] != 0) out.emplace(key, s[k]);
    return out;
}

// Coproduct U(g) -> U(g) (x) U(g): either the classical one (generators are
// primitive) or conjugation of the classical one by an invertible F.
class CoproductMap {
public:
    static CoproductMap classical(AlgebraPtr alg, int order) {
        CoproductMap d(std::move(alg), order);
        return d;
    }
    static CoproductMap conjugated_by(const TensorElement& F) {
        if (F.rank() != 2) throw AlgebraMismatch("conjugating tensor must have rank 2");
        CoproductMap d(F.algebra(), F.order());
        d.classical_ = false;
        const TensorElement Finv = invert(F);
        for (int i = 0; i < d.alg_->dim(); ++i) {
            const UEAElement e = UEAElement::generator(d.alg_, d.order_, i);
            const TensorElement prim =
                tensor_of(e, UEAElement::unit(d.alg_, d.order_)) +
                tensor_of(UEAElement::unit(d.alg_, d.order_), e);
            d.gen_images_.push_back(F * prim * Finv);
        }
        return d;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int order() const { return order_; }
    bool is_classical() const { return classical_; }

    TensorElement of_generator(int i) const {
        if (classical_) {
            const UEAElement e = UEAElement::generator(alg_, order_, i);
            return tensor_of(e, UEAElement::unit(alg_, order_)) +
                   tensor_of(UEAElement::unit(alg_, order_), e);
        }
        return gen_images_[i];
    }

    TensorElement apply(const UEAElement& a) const {
        if (a.algebra() != alg_) throw AlgebraMismatch("element over a different algebra");
        if (a.order() != order_) throw OrderMismatch("element order mismatch");
        TensorElement r(alg_, order_, 2);
        for (const auto& [m, s] : a.terms()) {
            const TensorElement& d = of_monomial(m);
            for (const auto& [k, c] : d.terms()) {
                if (s.valuation() + c.valuation() > order_) continue;
                r.add_term(k, s * c);
            }
        }
        return r;
    }

    // (Delta (x) id) for leg 1, (id (x) Delta) for leg 2, on rank-2 tensors.
    TensorElement apply_leg(const TensorElement& t, int leg) const {
        if (t.rank() != 2) throw AlgebraMismatch("rank-2 tensor expected");
        if (t.algebra() != alg_ || t.order() != order_)
            throw AlgebraMismatch("tensor incompatible with coproduct");
        if (leg < 1 || leg > 2) throw ConstraintViolation("leg must be 1 or 2");
        TensorElement r(alg_, order_, 3);
        for (const auto& [k, s] : t.terms()) {
            const int v = s.valuation();
            const TensorElement& d = of_monomial(k[leg - 1]);
            for (const auto& [dk, c] : d.terms()) {
                if (v + c.valuation() > order_) continue;
                if (leg == 1)
                    r.add_term({dk[0], dk[1], k[1]}, s * c);
                else
                    r.add_term({k[0], dk[0], dk[1]}, s * c);
            }
        }
        return r;
    }

private:
    CoproductMap(AlgebraPtr alg, int order) : alg_(std::move(alg)), order_(order) {
        if (!alg_) throw ConstraintViolation("coproduct needs an algebra");
    }

    const TensorElement& of_monomial(const Monomial& m) const {
        const auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        TensorElement d = classical_ ? classical_of_monomial(m) : conjugated_of_monomial(m);
        return memo_.emplace(m, std::move(d)).first->second;
    }

    // Multi-binomial splitting: every factor is primitive and the resulting
    // leg words stay normal-ordered, so no rewriting is needed.
    TensorElement classical_of_monomial(const Monomial& m) const {
        const int dim = alg_->dim();
        const Monomial u = unit_monomial(dim);
        std::map<std::pair<Monomial, Monomial>, Rational> cur;
        cur.emplace(std::make_pair(u, u), Rational(1));
        for (int i = 0; i < dim; ++i) {
            const int n = static_cast<unsigned char>(m[i]);
            if (n == 0) continue;
            std::map<std::pair<Monomial, Monomial>, Rational> next;
            for (const auto& [lr, c] : cur)
                for (int k = 0; k <= n; ++k) {
                    auto key = lr;
                    key.first[i] = static_cast<char>(k);
                    key.second[i] = static_cast<char>(n - k);
                    next[std::move(key)] += c * Rational(binomial(Rational(n), k));
                }
            cur = std::move(next);
        }
        TensorElement r(alg_, order_, 2);
        for (const auto& [lr, c] : cur)
            r.add_term({lr.first, lr.second, u}, XiSeries::scalar(order_, c));
        return r;
    }

    TensorElement conjugated_of_monomial(const Monomial& m) const {
        int i = -1;
        for (int t = 0; t < alg_->dim(); ++t)
            if (m[t] != '\0') {
                i = t;
                break;
            }
        if (i < 0) return TensorElement::unit(alg_, order_, 2);
        Monomial rest = m;
        --rest[i];
        return gen_images_[i] * of_monomial(rest);
    }

    AlgebraPtr alg_;
    int order_;
    bool classical_ = true;
    std::vector<TensorElement> gen_images_;
    mutable std::map<Monomial, TensorElement> memo_;
};

} // namespace jtwist
