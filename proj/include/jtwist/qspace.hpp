#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jtwist/twist.hpp"

namespace jtwist {

// Monomial of the coordinate-derivative algebra over N coordinates: bytes
// 0..N-1 hold x-exponents, bytes N..2N-1 hold derivative exponents.
using WeylMonomial = std::string;

// Element of the polynomial coordinate-derivative algebra. Two products are
// supported, selected per element: the fully commutative one (coordinates and
// momentum symbols), and the Weyl one where moving a derivative past its own
// coordinate produces the inhomogeneous term.
class WeylElement {
public:
    WeylElement(int N, int order, bool heisenberg)
        : N_(N), order_(order), heisenberg_(heisenberg) {}

    static WeylElement unit(int N, int order, bool heisenberg) {
        WeylElement e(N, order, heisenberg);
        e.terms_.emplace(WeylMonomial(2 * static_cast<std::size_t>(N), '\0'),
                         XiSeries::one(order));
        return e;
    }
    // 1-based coordinate x^mu
    static WeylElement coordinate(int N, int order, bool heisenberg, int mu) {
        WeylElement e(N, order, heisenberg);
        WeylMonomial m(2 * static_cast<std::size_t>(N), '\0');
        ++m[mu - 1];
        e.terms_.emplace(std::move(m), XiSeries::one(order));
        return e;
    }
    // 1-based derivative/momentum symbol with lower index mu
    static WeylElement derivative(int N, int order, bool heisenberg, int mu) {
        WeylElement e(N, order, heisenberg);
        WeylMonomial m(2 * static_cast<std::size_t>(N), '\0');
        ++m[N + mu - 1];
        e.terms_.emplace(std::move(m), XiSeries::one(order));
        return e;
    }

    int coords() const { return N_; }
    int order() const { return order_; }
    bool heisenberg() const { return heisenberg_; }
    const std::map<WeylMonomial, XiSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const WeylMonomial& m, const XiSeries& s) {
        if (s.order() != order_) throw OrderMismatch("weyl term order mismatch");
        if (m.size() != 2 * static_cast<std::size_t>(N_))
            throw Error("weyl monomial length mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!s.is_zero()) terms_.emplace(m, s);
            return;
        }
        it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }

    WeylElement& operator+=(const WeylElement& o) {
        check_compatible(o);
        for (const auto& [m, s] : o.terms_) add_term(m, s);
        return *this;
    }
    WeylElement& operator-=(const WeylElement& o) {
        check_compatible(o);
        for (const auto& [m, s] : o.terms_) add_term(m, -s);
        return *this;
    }
    WeylElement& operator*=(const XiSeries& s) {
        std::map<WeylMonomial, XiSeries> out;
        for (auto& [m, c] : terms_) {
            XiSeries sc = c * s;
            if (!sc.is_zero()) out.emplace(m, std::move(sc));
        }
        terms_ = std::move(out);
        return *this;
    }
    WeylElement& operator*=(const Rational& r) { return *this *= XiSeries::scalar(order_, r); }
    WeylElement operator-() const {
        WeylElement out(N_, order_, heisenberg_);
        for (const auto& [m, s] : terms_) out.terms_.emplace(m, -s);
        return out;
    }
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(WeylElement a, const XiSeries& s) { return a *= s; }
    friend WeylElement operator*(WeylElement a, const Rational& r) { return a *= r; }

    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
        a.check_compatible(b);
        WeylElement out(a.N_, a.order_, a.heisenberg_);
        for (const auto& [m1, s1] : a.terms_)
            for (const auto& [m2, s2] : b.terms_) {
                const XiSeries s = s1 * s2;
                if (s.is_zero()) continue;
                for (const auto& [m, c] : mono_mul(a.N_, a.heisenberg_, m1, m2))
                    out.add_term(m, s * c);
            }
        return out;
    }

    bool operator==(const WeylElement& o) const {
        return N_ == o.N_ && order_ == o.order_ && heisenberg_ == o.heisenberg_ &&
               terms_ == o.terms_;
    }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, s] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + s.str() + ")";
            for (int i = 0; i < 2 * N_; ++i)
                for (int rep = 0; rep < static_cast<int>(m[i]); ++rep)
                    out += (i < N_ ? "*x" + std::to_string(i + 1)
                                   : "*d" + std::to_string(i - N_ + 1));
            if (m == WeylMonomial(2 * static_cast<std::size_t>(N_), '\0')) out += "*1";
        }
        return out;
    }

private:
    void check_compatible(const WeylElement& o) const {
        if (N_ != o.N_) throw Error("weyl elements over different coordinate counts");
        if (order_ != o.order_) throw OrderMismatch("weyl elements of different orders");
        if (heisenberg_ != o.heisenberg_)
            throw Error("mixing commutative and Weyl products");
    }

    // x^a d^b * x^c d^e, normal ordering the middle block when heisenberg:
    // per coordinate, d^p x^q = sum_t C(p,t) C(q,t) t! x^(q-t) d^(p-t).
    static std::map<WeylMonomial, Rational> mono_mul(int N, bool heisenberg,
                                                     const WeylMonomial& m1,
                                                     const WeylMonomial& m2) {
        std::map<WeylMonomial, Rational> out;
        if (!heisenberg) {
            WeylMonomial m(2 * static_cast<std::size_t>(N), '\0');
            for (int i = 0; i < 2 * N; ++i) m[i] = static_cast<char>(m1[i] + m2[i]);
            out.emplace(std::move(m), Rational(1));
            return out;
        }
        std::vector<std::pair<WeylMonomial, Rational>> acc;
        {
            WeylMonomial base(2 * static_cast<std::size_t>(N), '\0');
            for (int i = 0; i < N; ++i) base[i] = m1[i];                    // left x block
            for (int i = 0; i < N; ++i) base[N + i] = m2[N + i];            // right d block
            acc.emplace_back(std::move(base), Rational(1));
        }
        for (int i = 0; i < N; ++i) {
            const int p = m1[N + i], q = m2[i];
            std::vector<std::pair<WeylMonomial, Rational>> nxt;
            for (int t = 0; t <= std::min(p, q); ++t) {
                // C(p,t) C(q,t) t!
                Rational w = 1;
                for (int u = 0; u < t; ++u)
                    w *= Rational((p - u) * (q - u), u + 1) * Rational(u + 1);
                for (const auto& [m, c] : acc) {
                    WeylMonomial nm = m;
                    nm[i] = static_cast<char>(nm[i] + q - t);
                    nm[N + i] = static_cast<char>(nm[N + i] + p - t);
                    nxt.emplace_back(std::move(nm), c * w);
                }
            }
            acc = std::move(nxt);
        }
        for (auto& [m, c] : acc) {
            auto& cur = out[m];
            cur += c;
            if (cur == 0) out.erase(m);
        }
        return out;
    }

    int N_;
    int order_;
    bool heisenberg_;
    std::map<WeylMonomial, XiSeries> terms_;
};

namespace detail {
// Derivation action of the matrix unit E_ij (0-based i,j) on one term:
// E_ij . x^k = delta_j^k x^i and E_ij . d_k = -delta_ik d_j, by Leibniz.
inline void weyl_unit_action(int N, int i, int j, const WeylMonomial& m, const Rational& c,
                             WeylElement& out, int order) {
    if (m[j] > 0) {
        WeylMonomial nm = m;
        --nm[j];
        ++nm[i];
        out.add_term(nm, XiSeries::scalar(order, c * Rational(static_cast<int>(m[j]))));
    }
    if (m[N + i] > 0) {
        WeylMonomial nm = m;
        --nm[N + i];
        ++nm[N + j];
        out.add_term(nm, XiSeries::scalar(order, -c * Rational(static_cast<int>(m[N + i]))));
    }
}

// Action of one algebra basis generator through its matrix realization.
// flip_ends routes the action through the automorphism exchanging the first
// and last matrix index (used by the star-product legs).
inline WeylElement weyl_action_basis(const LieAlgebra& g, int idx, const WeylElement& f,
                                     bool flip_ends) {
    const int N = g.meta().N;
    if (N != f.coords()) throw Error("action dimension mismatch");
    const auto& embed = g.meta().gl_embedding;
    if (embed.empty()) throw ConstraintViolation("algebra carries no matrix realization");
    WeylElement out(N, f.order(), f.heisenberg());
    const auto w = [&](int a) { return a == 0 ? N - 1 : (a == N - 1 ? 0 : a); };
    for (const auto& [p, c] : embed.at(idx)) {
        int i = p / N, j = p % N;
        if (flip_ends) {
            i = w(i);
            j = w(j);
        }
        for (const auto& [m, s] : f.terms()) {
            WeylElement piece(N, f.order(), f.heisenberg());
            weyl_unit_action(N, i, j, m, c, piece, f.order());
            piece *= s;
            out += piece;
        }
    }
    return out;
}

// Action of one PBW word: factors act in word order, rightmost first.
inline WeylElement weyl_word_action(const LieAlgebra& g, const Monomial& m, const WeylElement& f,
                                    bool flip_ends) {
    WeylElement cur = f;
    for (int idx = static_cast<int>(m.size()) - 1; idx >= 0; --idx)
        for (int rep = 0; rep < static_cast<int>(m[idx]); ++rep)
            cur = weyl_action_basis(g, idx, cur, flip_ends);
    return cur;
}
} // namespace detail

// Literal derivation action of a UEA element on a coordinate-derivative
// element: E_ij . x^j = x^i, E_ij . d_i = -d_j, words composing right-to-left.
inline WeylElement weyl_action(const UEAElement& u, const WeylElement& f) {
    WeylElement out(f.coords(), f.order(), f.heisenberg());
    for (const auto& [m, s] : u.terms()) {
        auto piece = detail::weyl_word_action(*u.algebra(), m, f, false);
        piece *= s;
        out += piece;
    }
    return out;
}

// The coordinate-derivative algebra with the product deformed by the chain
// twist in its vector-field realization. The twist legs act through the
// end-index flip; with that convention the deformed commutation relations
// come out exactly in their quoted normal form.
class StarAlgebra {
public:
    StarAlgebra(int N, int K) : N_(N), K_(K) {
        TwistSpec s;
        s.variant = TwistVariant::extended_multi;
        s.N = N;
        s.order = K;
        g_ = s.algebra();
        const auto F = build_extended_twist(s, false);
        finv_ = invert(F);
        dF_ = CoproductMap::conjugated_by(F);
    }

    int coords() const { return N_; }
    int order() const { return K_; }
    const AlgebraPtr& algebra() const { return g_; }

    WeylElement unit(bool heisenberg) const { return WeylElement::unit(N_, K_, heisenberg); }
    WeylElement x(int mu, bool heisenberg = true) const {
        return WeylElement::coordinate(N_, K_, heisenberg, mu);
    }
    WeylElement d(int mu) const { return WeylElement::derivative(N_, K_, true, mu); }
    WeylElement p(int mu) const { return WeylElement::derivative(N_, K_, false, mu); }

    // f*g: act with the inverse twist legwise, then multiply classically.
    WeylElement star(const WeylElement& f, const WeylElement& g) const {
        WeylElement out(N_, K_, f.heisenberg());
        for (const auto& [key, s] : finv_->terms()) {
            const auto lf = detail::weyl_word_action(*g_, key[0], f, true);
            if (lf.is_zero()) continue;
            const auto lg = detail::weyl_word_action(*g_, key[1], g, true);
            if (lg.is_zero()) continue;
            out += (lf * lg) * s;
        }
        return out;
    }

    WeylElement star_commutator(const WeylElement& f, const WeylElement& g) const {
        return star(f, g) - star(g, f);
    }

    // symmetry action on the module, matching the star-product legs
    WeylElement act(const UEAElement& u, const WeylElement& f) const {
        WeylElement out(f.coords(), f.order(), f.heisenberg());
        for (const auto& [m, s] : u.terms()) {
            auto piece = detail::weyl_word_action(*u.algebra(), m, f, true);
            piece *= s;
            out += piece;
        }
        return out;
    }

    // h(f*g) - (h_(1) f)*(h_(2) g) with deformed-coproduct coefficients
    WeylElement module_property_residual(const UEAElement& h, const WeylElement& f,
                                         const WeylElement& g) const {
        WeylElement rhs(N_, K_, f.heisenberg());
        const auto dh = dF_->apply(h);
        for (const auto& [key, s] : dh.terms()) {
            auto uf = detail::weyl_word_action(*g_, key[0], f, true);
            if (uf.is_zero()) continue;
            auto ug = detail::weyl_word_action(*g_, key[1], g, true);
            if (ug.is_zero()) continue;
            rhs += star(uf, ug) * s;
        }
        return act(h, star(f, g)) - rhs;
    }

private:
    int N_;
    int K_;
    AlgebraPtr g_;
    std::optional<TensorElement> finv_;
    std::optional<CoproductMap> dF_;
};

// ----- the full deformed-relation table ---------------------------------------

struct QspaceReport {
    struct Item {
        std::string name;
        bool ok = false;
        std::string residual;  // empty when ok
    };
    std::vector<Item> items;
    bool ok() const {
        return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.ok; });
    }
};

// Verifies every deformed commutation relation of the coordinate, momentum,
// and derivative sectors, plus the invariant canonical element, exactly
// modulo xi^(K+1).
inline QspaceReport check_qspace_relations(int N, int K) {
    if (N < 3) throw ConstraintViolation("relation table needs N >= 3");
    StarAlgebra A(N, K);
    QspaceReport rep;
    const auto add = [&](const std::string& name, const WeylElement& residual) {
        rep.items.push_back({name, residual.is_zero(),
                             residual.is_zero() ? std::string() : residual.str()});
    };
    const auto xi = XiSeries::xi(K);
    const auto xi2 = XiSeries::monomial(K, 2, 1);
    const auto two_xi = XiSeries::monomial(K, 1, 2);

    // coordinates (commutative symbols; the Weyl flag is irrelevant here but
    // kept on so coordinate relations live in the same algebra as derivatives)
    const auto X = [&](int mu) { return A.x(mu); };
    add("[x1,xN] = xi xN*xN",
        A.star_commutator(X(1), X(N)) - A.star(X(N), X(N)) * xi);
    for (int k = 2; k <= N - 1; ++k) {
        add("[x1,x" + std::to_string(k) + "] = 2 xi x" + std::to_string(k) + "*xN",
            A.star_commutator(X(1), X(k)) - A.star(X(k), X(N)) * two_xi);
        add("[x" + std::to_string(k) + ",xN] = 0", A.star_commutator(X(k), X(N)));
        for (int i = 2; i <= N - 1; ++i)
            if (i != k)
                add("[x" + std::to_string(i) + ",x" + std::to_string(k) + "] = 0",
                    A.star_commutator(X(i), X(k)));
    }

    // momentum symbols (fully commutative sector)
    const auto P = [&](int mu) { return A.p(mu); };
    const auto XP = [&](int mu) { return A.x(mu, false); };
    add("[p1,pN] = xi p1*p1", A.star_commutator(P(1), P(N)) - A.star(P(1), P(1)) * xi);
    for (int k = 2; k <= N - 1; ++k) {
        add("[p" + std::to_string(k) + ",pN] = 2 xi p1*p" + std::to_string(k),
            A.star_commutator(P(k), P(N)) - A.star(P(1), P(k)) * two_xi);
        add("[p1,p" + std::to_string(k) + "] = 0", A.star_commutator(P(1), P(k)));
        for (int i = 2; i <= N - 1; ++i)
            if (i != k)
                add("[p" + std::to_string(i) + ",p" + std::to_string(k) + "] = 0",
                    A.star_commutator(P(i), P(k)));
    }

    // momentum-coordinate cross relations
    {
        auto rhs = A.star(P(N), XP(N)) + A.star(P(1), XP(1));
        for (int k = 2; k <= N - 1; ++k) rhs += A.star(P(k), XP(k)) * Rational(2);
        rhs *= xi;
        rhs += A.star(P(1), XP(N)) * xi2;
        add("[pN,x1] = xi (pN*xN + 2 sum pk*xk + p1*x1 + xi p1*xN)",
            A.star_commutator(P(N), XP(1)) - rhs);
    }
    add("[p1,x1] = -xi p1*xN", A.star_commutator(P(1), XP(1)) + A.star(P(1), XP(N)) * xi);
    for (int k = 2; k <= N - 1; ++k)
        add("[p" + std::to_string(k) + ",x" + std::to_string(k) + "] = -2 xi p1*xN",
            A.star_commutator(P(k), XP(k)) + A.star(P(1), XP(N)) * two_xi);
    add("[pN,xN] = -xi p1*xN", A.star_commutator(P(N), XP(N)) + A.star(P(1), XP(N)) * xi);

    // the invariant canonical element: the classical contraction rewritten
    // through the deformed product picks up a single correction term
    {
        WeylElement classical(N, K, false), starred(N, K, false);
        for (int mu = 1; mu <= N; ++mu) {
            classical += XP(mu) * P(mu);
            starred += A.star(P(mu), XP(mu));
        }
        add("x.p contraction = sum p_mu * x^mu + xi p1*xN",
            classical - starred - A.star(P(1), XP(N)) * xi);
    }

    // derivatives: same pairwise table as the momenta
    const auto D = [&](int mu) { return A.d(mu); };
    add("[d1,dN] = xi d1*d1", A.star_commutator(D(1), D(N)) - A.star(D(1), D(1)) * xi);
    for (int k = 2; k <= N - 1; ++k) {
        add("[d" + std::to_string(k) + ",dN] = 2 xi d1*d" + std::to_string(k),
            A.star_commutator(D(k), D(N)) - A.star(D(1), D(k)) * two_xi);
        add("[d1,d" + std::to_string(k) + "] = 0", A.star_commutator(D(1), D(k)));
        for (int i = 2; i <= N - 1; ++i)
            if (i != k)
                add("[d" + std::to_string(i) + ",d" + std::to_string(k) + "] = 0",
                    A.star_commutator(D(i), D(k)));
    }

    // derivative-coordinate cross relations: same shape as the momentum ones,
    // with the inhomogeneous Weyl terms contributing a single constant
    {
        auto rhs = A.star(D(N), X(N)) + A.star(D(1), X(1));
        for (int k = 2; k <= N - 1; ++k) rhs += A.star(D(k), X(k)) * Rational(2);
        rhs -= A.unit(true);
        rhs *= xi;
        rhs += A.star(D(1), X(N)) * xi2;
        add("[dN,x1] = xi (dN*xN + 2 sum dk*xk + d1*x1 - 1 + xi d1*xN)",
            A.star_commutator(D(N), X(1)) - rhs);
    }
    add("[d1,x1] = 1 - xi xN*d1",
        A.star_commutator(D(1), X(1)) - A.unit(true) + A.star(X(N), D(1)) * xi);
    for (int k = 2; k <= N - 1; ++k)
        add("[d" + std::to_string(k) + ",x" + std::to_string(k) + "] = 1 - 2 xi xN*d1",
            A.star_commutator(D(k), X(k)) - A.unit(true) + A.star(X(N), D(1)) * two_xi);
    add("[dN,xN] = 1 - xi xN*d1",
        A.star_commutator(D(N), X(N)) - A.unit(true) + A.star(X(N), D(1)) * xi);

    return rep;
}

} // namespace jtwist
