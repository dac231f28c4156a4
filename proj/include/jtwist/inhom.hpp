#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jtwist/twist.hpp"

namespace jtwist {

// Structure constants of a bilinear operation H_mu |> H_nu = L^sigma_{mu nu} H_sigma
// on a d-dimensional space, stored as L[mu][nu][sigma].  When the operation is
// quasi-associative, the antisymmetrized constants close a Lie algebra that
// acts on an abelian copy of itself, and the associated exponential element
// solves the twist equation.
struct ActionConstants {
    int d = 0;
    std::vector<std::vector<std::vector<Rational>>> L;  // L[mu][nu][sigma], 0-based
    // Optional explicit bracket table for the acting half, C[mu][nu][sigma].
    // When empty, the bracket is the antisymmetrization of L; supplying it
    // separately is what allows the compatibility between bracket and action
    // to be perturbed and caught.
    std::vector<std::vector<std::vector<Rational>>> C;

    static ActionConstants zero(int d) {
        ActionConstants a;
        a.d = d;
        a.L.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));
        return a;
    }
    const Rational& at(int mu, int nu, int sigma) const { return L.at(mu).at(nu).at(sigma); }
    Rational& at(int mu, int nu, int sigma) { return L.at(mu).at(nu).at(sigma); }
    bool has_explicit_bracket() const { return !C.empty(); }
    // induced constants C^sigma_{mu nu} = L^sigma_{mu nu} - L^sigma_{nu mu}
    Rational induced_c(int mu, int nu, int sigma) const {
        return at(mu, nu, sigma) - at(nu, mu, sigma);
    }
    // effective bracket constants: explicit table when given, induced otherwise
    Rational c(int mu, int nu, int sigma) const {
        return has_explicit_bracket() ? C.at(mu).at(nu).at(sigma) : induced_c(mu, nu, sigma);
    }
    // a copy whose bracket table is materialized and shifted by delta on
    // C^sigma_{mu nu} (and by -delta on C^sigma_{nu mu}, keeping antisymmetry)
    ActionConstants with_bracket_perturbation(int mu, int nu, int sigma,
                                              const Rational& delta) const {
        ActionConstants a = *this;
        if (!a.has_explicit_bracket()) {
            a.C.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));
            for (int m = 0; m < d; ++m)
                for (int n = 0; n < d; ++n)
                    for (int s = 0; s < d; ++s) a.C[m][n][s] = induced_c(m, n, s);
        }
        a.C.at(mu).at(nu).at(sigma) += delta;
        a.C.at(nu).at(mu).at(sigma) -= delta;
        return a;
    }

    nlohmann::json to_json() const {
        const auto table = [&](const std::vector<std::vector<std::vector<Rational>>>& t) {
            nlohmann::json out = nlohmann::json::array();
            for (int mu = 0; mu < d; ++mu) {
                nlohmann::json row = nlohmann::json::array();
                for (int nu = 0; nu < d; ++nu) {
                    nlohmann::json col = nlohmann::json::array();
                    for (int s = 0; s < d; ++s) col.push_back(rational_str(t[mu][nu][s]));
                    row.push_back(col);
                }
                out.push_back(row);
            }
            return out;
        };
        nlohmann::json j = {{"dim", d}, {"L", table(L)}};
        if (has_explicit_bracket()) j["C"] = table(C);
        return j;
    }
    static ActionConstants from_json(const nlohmann::json& j) {
        if (!j.contains("dim") || !j.contains("L")) throw ParseError("action constants need dim and L");
        auto a = zero(j.at("dim").get<int>());
        if (a.d <= 0) throw ParseError("action dimension must be positive");
        const auto table = [&](const nlohmann::json& l,
                               std::vector<std::vector<std::vector<Rational>>>& t) {
            if (static_cast<int>(l.size()) != a.d) throw ParseError("table has wrong outer dimension");
            for (int mu = 0; mu < a.d; ++mu) {
                if (static_cast<int>(l.at(mu).size()) != a.d)
                    throw ParseError("table has wrong row dimension");
                for (int nu = 0; nu < a.d; ++nu) {
                    if (static_cast<int>(l.at(mu).at(nu).size()) != a.d)
                        throw ParseError("table has wrong column dimension");
                    for (int s = 0; s < a.d; ++s) {
                        const auto& e = l.at(mu).at(nu).at(s);
                        t[mu][nu][s] = e.is_string() ? parse_rational(e.get<std::string>())
                                                     : Rational(e.get<long long>());
                    }
                }
            }
        };
        table(j.at("L"), a.L);
        if (j.contains("C")) {
            a.C.assign(a.d, std::vector<std::vector<Rational>>(
                                a.d, std::vector<Rational>(a.d, Rational(0))));
            table(j.at("C"), a.C);
        }
        return a;
    }

    std::string key() const {
        std::string k = "semidirect:" + std::to_string(d);
        for (const auto& m : L)
            for (const auto& n : m)
                for (const auto& r : n) k += ":" + rational_str(r);
        if (has_explicit_bracket()) {
            k += ":C";
            for (const auto& m : C)
                for (const auto& n : m)
                    for (const auto& r : n) k += ":" + rational_str(r);
        }
        return k;
    }
};

// ----- validation ------------------------------------------------------------------

struct ActionReport {
    struct Violation {
        std::string check;  // "bracket-antisymmetry" | "compatibility" | "quasi-associativity"
                            // | "jacobi" | "module"
        std::array<int, 3> where;  // offending index triple (0-based)
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks that an explicit bracket table (when given) is antisymmetric and is
// the antisymmetrization of L, that |> is quasi-associative, that the bracket
// satisfies the Jacobi identity, and that the action matrices represent the
// bracket on the abelian copy.
inline ActionReport validate_action(const ActionConstants& a) {
    ActionReport rep;
    const int d = a.d;
    if (a.has_explicit_bracket())
        for (int mu = 0; mu < d; ++mu)
            for (int nu = mu; nu < d; ++nu)
                for (int s = 0; s < d; ++s) {
                    if (a.c(mu, nu, s) != -a.c(nu, mu, s))
                        rep.violations.push_back({"bracket-antisymmetry", {mu, nu, s}});
                    if (a.c(mu, nu, s) != a.induced_c(mu, nu, s))
                        rep.violations.push_back({"compatibility", {mu, nu, s}});
                }
    // (u |> v) |> w - (v |> u) |> w = u |> (v |> w) - v |> (u |> w)
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu)
            for (int w = 0; w < d; ++w) {
                bool bad = false;
                for (int t = 0; t < d && !bad; ++t) {
                    Rational lhs = 0, rhs = 0;
                    for (int s = 0; s < d; ++s) {
                        lhs += a.induced_c(mu, nu, s) * a.at(s, w, t);
                        rhs += a.at(nu, w, s) * a.at(mu, s, t) - a.at(mu, w, s) * a.at(nu, s, t);
                    }
                    bad = lhs != rhs;
                }
                if (bad) rep.violations.push_back({"quasi-associativity", {mu, nu, w}});
            }
    // Jacobi identity for the bracket constants
    for (int mu = 0; mu < d; ++mu)
        for (int nu = mu; nu < d; ++nu)
            for (int w = nu; w < d; ++w) {
                bool bad = false;
                for (int t = 0; t < d && !bad; ++t) {
                    Rational sum = 0;
                    for (int s = 0; s < d; ++s)
                        sum += a.c(mu, nu, s) * a.c(s, w, t) + a.c(nu, w, s) * a.c(s, mu, t) +
                               a.c(w, mu, s) * a.c(s, nu, t);
                    bad = sum != 0;
                }
                if (bad) rep.violations.push_back({"jacobi", {mu, nu, w}});
            }
    // the matrices (M_mu)^p_q = -L^q_{mu p} (coefficient of X^p in [H_mu, X^q])
    // must satisfy [M_mu, M_nu] = C^s_{mu nu} M_s
    for (int mu = 0; mu < d; ++mu)
        for (int nu = mu + 1; nu < d; ++nu) {
            bool bad = false;
            for (int p = 0; p < d && !bad; ++p)
                for (int q = 0; q < d && !bad; ++q) {
                    Rational comm = 0, target = 0;
                    for (int s = 0; s < d; ++s) {
                        comm += a.at(mu, p, s) * a.at(nu, s, q) - a.at(nu, p, s) * a.at(mu, s, q);
                        target -= a.c(mu, nu, s) * a.at(s, p, q);
                    }
                    bad = comm != target;
                }
            if (bad) rep.violations.push_back({"module", {mu, nu, 0}});
        }
    return rep;
}

// ----- the semidirect-product carrier ----------------------------------------------

namespace detail {
inline AlgebraPtr make_semidirect_fresh(const ActionConstants& a) {
    const int d = a.d, dim = 2 * d;
    std::vector<std::string> names;
    for (int i = 0; i < d; ++i) names.push_back("H" + std::to_string(i + 1));
    for (int i = 0; i < d; ++i) names.push_back("X" + std::to_string(i + 1));
    std::vector<Rational> c(static_cast<std::size_t>(dim) * dim * dim, Rational(0));
    const auto set = [&](int i, int j, int k, const Rational& v) {
        c[(static_cast<std::size_t>(i) * dim + j) * dim + k] = v;
    };
    // [H_mu, H_nu] = C^sigma_{mu nu} H_sigma
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu)
            for (int s = 0; s < d; ++s) {
                const Rational cs = a.c(mu, nu, s);
                if (cs != 0) set(mu, nu, s, cs);
            }
    // [H_mu, X^nu] = - L^nu_{mu sigma} X^sigma; the X-sector is abelian
    for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu)
            for (int s = 0; s < d; ++s) {
                const Rational v = -a.at(mu, s, nu);
                if (v != 0) {
                    set(mu, d + nu, d + s, v);
                    set(d + nu, mu, d + s, -v);
                }
            }
    AlgebraMeta meta;
    meta.kind = "semidirect";
    meta.d = d;
    return std::make_shared<LieAlgebra>(std::move(meta), std::move(names), std::move(c));
}
} // namespace detail

// Basis H_1..H_d, X^1..X^d.  With validate=false the bracket table is built
// from the constants as given, whether or not they define a Lie algebra; this
// is what lets the classical Yang-Baxter residual witness a bad action.
inline AlgebraPtr build_semidirect(const ActionConstants& a, bool validate = true) {
    if (a.d <= 0) throw ConstraintViolation("action needs positive dimension");
    if (validate && !validate_action(a).ok())
        throw ConstraintViolation("action constants fail validation");
    return detail::interned_algebra(a.key(), [&] { return detail::make_semidirect_fresh(a); });
}

// r = sum_nu X^nu (x) H_nu - H_nu (x) X^nu
inline TwoTensor classical_r_inhom(const ActionConstants& a) {
    auto g = build_semidirect(a, false);
    TwoTensor r(g);
    for (int nu = 0; nu < a.d; ++nu) {
        r.add(a.d + nu, nu, Rational(1));
        r.add(nu, a.d + nu, Rational(-1));
    }
    return r;
}

// Classical Yang-Baxter residual of a Lie-level two-tensor recomputed inside
// U(g)^(x)3, as an independent cross-check of the structure-constant route.
inline TensorElement uea_cybe_residual(const TwoTensor& r, int order) {
    const auto& g = r.algebra();
    auto out = TensorElement::unit(g, order, 3) * Rational(0);
    const auto u = UEAElement::unit(g, order);
    const auto place = [&](int leg_a, int leg_b, int i, int j) {
        std::array<UEAElement, 3> legs = {u, u, u};
        legs[leg_a] = UEAElement::generator(g, order, i);
        legs[leg_b] = UEAElement::generator(g, order, j);
        return tensor_of(legs[0], legs[1], legs[2]);
    };
    for (const auto& [ij, cij] : r.terms())
        for (const auto& [kl, ckl] : r.terms()) {
            const auto comm = [&](int la, int lb, int lc, int ld) {
                const auto x = place(la, lb, ij.first, ij.second);
                const auto y = place(lc, ld, kl.first, kl.second);
                return (x * y - y * x) * (cij * ckl);
            };
            out += comm(0, 1, 0, 2);  // [r_12, r_13]
            out += comm(0, 1, 1, 2);  // [r_12, r_23]
            out += comm(0, 2, 1, 2);  // [r_13, r_23]
        }
    return out;
}

// ----- cocycle series ----------------------------------------------------------------

namespace detail {
// polynomial in d commuting coordinates: exponent string (d bytes) -> coefficient
using CoordPoly = std::map<std::string, Rational>;

inline int poly_deg(const std::string& m) {
    int s = 0;
    for (const char c : m) s += static_cast<unsigned char>(c);
    return s;
}
inline void poly_add(CoordPoly& p, const std::string& m, const Rational& c) {
    if (c == 0) return;
    auto& cur = p[m];
    cur += c;
    if (cur == 0) p.erase(m);
}
inline CoordPoly poly_mul(const CoordPoly& a, const CoordPoly& b, int maxdeg) {
    CoordPoly out;
    for (const auto& [m1, c1] : a)
        for (const auto& [m2, c2] : b) {
            if (poly_deg(m1) + poly_deg(m2) > maxdeg) continue;
            std::string m = m1;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<char>(m[i] + m2[i]);
            poly_add(out, m, c1 * c2);
        }
    return out;
}
} // namespace detail

// A d-tuple of polynomials in d commuting coordinates without constant terms,
// truncated at a total degree: a formal coordinate change fixing the origin.
struct CocycleSeries {
    int d = 0;
    int degree = 0;
    std::vector<detail::CoordPoly> comp;

    static CocycleSeries identity(int d, int degree) {
        CocycleSeries s;
        s.d = d;
        s.degree = degree;
        s.comp.resize(d);
        for (int i = 0; i < d; ++i) {
            std::string m(d, '\0');
            ++m[i];
            s.comp[i].emplace(std::move(m), Rational(1));
        }
        return s;
    }

    bool operator==(const CocycleSeries& o) const {
        return d == o.d && degree == o.degree && comp == o.comp;
    }
    bool is_identity() const { return *this == identity(d, degree); }

    // (this o other)(u) = this(other(u)), truncated at the common degree
    CocycleSeries compose(const CocycleSeries& o) const {
        if (d != o.d || degree != o.degree) throw Error("composing incompatible series");
        CocycleSeries out;
        out.d = d;
        out.degree = degree;
        out.comp.resize(d);
        for (int mu = 0; mu < d; ++mu)
            for (const auto& [m, c] : comp[mu]) {
                detail::CoordPoly term{{std::string(d, '\0'), c}};
                for (int i = 0; i < d && !term.empty(); ++i)
                    for (int rep = 0; rep < static_cast<int>(m[i]); ++rep)
                        term = detail::poly_mul(term, o.comp[i], degree);
                for (const auto& [tm, tc] : term) detail::poly_add(out.comp[mu], tm, tc);
            }
        return out;
    }

    // Evaluate each component on commuting algebra elements, one per
    // coordinate; Elem must support +=, Elem*Elem and Elem*Rational.
    template <typename Elem>
    std::vector<Elem> evaluate(const std::vector<Elem>& args, const Elem& unit_elem) const {
        if (static_cast<int>(args.size()) != d) throw Error("evaluating with wrong arity");
        std::vector<Elem> out;
        for (int mu = 0; mu < d; ++mu) {
            Elem acc = unit_elem * Rational(0);
            for (const auto& [m, c] : comp[mu]) {
                Elem term = unit_elem * c;
                for (int i = 0; i < d; ++i)
                    for (int rep = 0; rep < static_cast<int>(m[i]); ++rep) term = term * args[i];
                acc += term;
            }
            out.push_back(std::move(acc));
        }
        return out;
    }
};

// The group cocycle in exponential coordinates,
// phi^mu(u) = sum_{k>=0} ((-L(u))^k u)^mu / (k+1)!, truncated at total degree K.
inline CocycleSeries phi_series(const ActionConstants& a, int K) {
    const int d = a.d;
    if (K < 1) throw OrderMismatch("cocycle series needs degree >= 1");
    CocycleSeries phi;
    phi.d = d;
    phi.degree = K;
    phi.comp.resize(d);
    // v_0 = u, v_{k+1}^sigma = - sum_{mu,nu} L^sigma_{mu nu} u^mu v_k^nu
    std::vector<detail::CoordPoly> v(d);
    for (int i = 0; i < d; ++i) {
        std::string m(d, '\0');
        ++m[i];
        v[i].emplace(std::move(m), Rational(1));
    }
    Rational fact = 1;  // (k+1)!
    for (int k = 0; k + 1 <= K; ++k) {
        fact *= Rational(k + 1);
        for (int mu = 0; mu < d; ++mu)
            for (const auto& [m, c] : v[mu]) detail::poly_add(phi.comp[mu], m, c / fact);
        std::vector<detail::CoordPoly> nv(d);
        for (int s = 0; s < d; ++s)
            for (int mu = 0; mu < d; ++mu)
                for (int nu = 0; nu < d; ++nu) {
                    const Rational& l = a.at(mu, nu, s);
                    if (l == 0) continue;
                    std::string um(d, '\0');
                    ++um[mu];
                    const detail::CoordPoly factor{{std::move(um), -l}};
                    for (const auto& [m, c] : detail::poly_mul(factor, v[nu], K))
                        detail::poly_add(nv[s], m, c);
                }
        v = std::move(nv);
    }
    return phi;
}

// The same cocycle written as a coboundary, phi^mu(u) = ((1 - e^{-L(u)}) u_e)^mu,
// for a right unity with coordinates u_e; exposed for cross-checking.
inline CocycleSeries phi_coboundary(const ActionConstants& a, const std::vector<Rational>& u_e,
                                    int K) {
    const int d = a.d;
    if (static_cast<int>(u_e.size()) != d) throw Error("right-unity coordinates have wrong arity");
    CocycleSeries phi;
    phi.d = d;
    phi.degree = K;
    phi.comp.resize(d);
    // w_1 = L(u) u_e, w_{k+1} = L(u) w_k; 1 - e^{-M} = sum_{k>=1} (-1)^{k+1} M^k / k!
    std::vector<detail::CoordPoly> w(d);
    for (int s = 0; s < d; ++s)
        for (int mu = 0; mu < d; ++mu)
            for (int nu = 0; nu < d; ++nu) {
                const Rational cc = a.at(mu, nu, s) * u_e[nu];
                if (cc == 0) continue;
                std::string um(d, '\0');
                ++um[mu];
                detail::poly_add(w[s], um, cc);
            }
    Rational fact = 1;
    Rational sign = 1;
    for (int k = 1; k <= K; ++k) {
        fact *= Rational(k);
        for (int mu = 0; mu < d; ++mu)
            for (const auto& [m, c] : w[mu]) detail::poly_add(phi.comp[mu], m, sign * c / fact);
        std::vector<detail::CoordPoly> nw(d);
        for (int s = 0; s < d; ++s)
            for (int mu = 0; mu < d; ++mu)
                for (int nu = 0; nu < d; ++nu) {
                    const Rational& l = a.at(mu, nu, s);
                    if (l == 0) continue;
                    std::string um(d, '\0');
                    ++um[mu];
                    const detail::CoordPoly factor{{std::move(um), l}};
                    for (const auto& [m, c] : detail::poly_mul(factor, w[nu], K))
                        detail::poly_add(nw[s], m, c);
                }
        w = std::move(nw);
        sign = -sign;
    }
    return phi;
}

// Compositional inverse of a series whose linear part is the identity.
// A series with any other linear part is degenerate for this construction
// and is rejected rather than inverted.
inline CocycleSeries invert_series(const CocycleSeries& phi) {
    const auto id = CocycleSeries::identity(phi.d, phi.degree);
    for (int mu = 0; mu < phi.d; ++mu) {
        std::string e(phi.d, '\0');
        ++e[mu];
        const auto it = phi.comp[mu].find(e);
        if (it == phi.comp[mu].end() || it->second != 1)
            throw ConstraintViolation("cocycle series has degenerate linear part");
        for (const auto& [m, c] : phi.comp[mu])
            if (detail::poly_deg(m) <= 1 && m != e)
                throw ConstraintViolation("cocycle series has degenerate linear part");
    }
    // psi <- psi + id - phi o psi gains one exact degree per pass
    auto psi = id;
    for (int it = 0; it < phi.degree; ++it) {
        const auto err = phi.compose(psi);
        CocycleSeries next = psi;
        for (int mu = 0; mu < phi.d; ++mu) {
            for (const auto& [m, c] : id.comp[mu]) detail::poly_add(next.comp[mu], m, c);
            for (const auto& [m, c] : err.comp[mu]) detail::poly_add(next.comp[mu], m, -c);
        }
        psi = std::move(next);
    }
    return psi;
}

// phi and its compositional inverse psi, both truncated at total degree K.
inline std::pair<CocycleSeries, CocycleSeries> phi_psi(const ActionConstants& a, int K) {
    auto phi = phi_series(a, K);
    auto psi = invert_series(phi);
    if (!phi.compose(psi).is_identity() || !psi.compose(phi).is_identity())
        throw Error("cocycle series inversion failed");
    return {std::move(phi), std::move(psi)};
}

// ----- the cocycle twist --------------------------------------------------------------

namespace detail {
// X-sector generators with their deformation grading: each carries one xi,
// which is what makes every series in the construction finite at order K.
inline std::vector<UEAElement> graded_x(const AlgebraPtr& g, int d, int K) {
    std::vector<UEAElement> xs;
    for (int nu = 0; nu < d; ++nu)
        xs.push_back(UEAElement::generator(g, K, d + nu) * XiSeries::xi(K));
    return xs;
}
// deformed coordinates tilde X^mu = psi^mu(xi X)
inline std::vector<UEAElement> tilde_x(const AlgebraPtr& g, int d, int K,
                                       const CocycleSeries& psi) {
    return psi.evaluate(graded_x(g, d, K), UEAElement::unit(g, K));
}
// exp(sign * L(args)) as a d x d matrix over the enveloping (or tensor)
// algebra; args must have positive xi-valuation so the series terminates.
template <typename Elem>
std::vector<std::vector<Elem>> action_matrix_exp(const ActionConstants& a,
                                                 const std::vector<Elem>& args,
                                                 const Elem& unit_elem, int sign, int K) {
    const int d = a.d;
    const Elem zero = unit_elem * Rational(0);
    std::vector<std::vector<Elem>> m(d, std::vector<Elem>(d, zero));
    for (int s = 0; s < d; ++s)
        for (int nu = 0; nu < d; ++nu)
            for (int mu = 0; mu < d; ++mu) {
                const Rational c = a.at(mu, nu, s) * Rational(sign);
                if (c != 0) m[s][nu] += args[mu] * c;
            }
    std::vector<std::vector<Elem>> out(d, std::vector<Elem>(d, zero));
    std::vector<std::vector<Elem>> pw(d, std::vector<Elem>(d, zero));
    for (int i = 0; i < d; ++i) {
        out[i][i] = unit_elem;
        pw[i][i] = unit_elem;
    }
    Rational fact = 1;
    for (int k = 1; k <= K; ++k) {
        fact *= Rational(k);
        std::vector<std::vector<Elem>> np(d, std::vector<Elem>(d, zero));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l) np[i][j] += pw[i][l] * m[l][j];
        pw = std::move(np);
        const Rational inv = Rational(1) / fact;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[i][j] += pw[i][j] * inv;
    }
    return out;
}
} // namespace detail

// F = exp(sum_nu H_nu (x) psi^nu(xi X))
inline TensorElement build_cocycle_twist(const ActionConstants& a, int K) {
    const auto g = build_semidirect(a);
    const auto psi = phi_psi(a, K).second;
    const auto xt = detail::tilde_x(g, a.d, K, psi);
    auto arg = TensorElement::unit(g, K, 2) * Rational(0);
    for (int nu = 0; nu < a.d; ++nu)
        arg += tensor_of(UEAElement::generator(g, K, nu), xt[nu]);
    return exp_positive(arg);
}

// ----- identity suite -----------------------------------------------------------------

struct CocycleReport {
    struct Item {
        std::string name;
        bool ok = false;
        std::string residual;  // printable witness when not ok
    };
    std::vector<Item> items;
    bool ok() const {
        return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.ok; });
    }
};

// Verifies the twist equation for the exponential cocycle element, together
// with the closed-form coproducts, the group-cocycle identity, and the
// antipodes of the twisted structure it generates.
inline CocycleReport check_cocycle_identities(const ActionConstants& a, int K) {
    CocycleReport rep;
    const auto add = [&](const std::string& name, const TensorElement& res) {
        rep.items.push_back({name, res.is_zero(), res.is_zero() ? std::string() : res.str()});
    };
    const auto add_u = [&](const std::string& name, const UEAElement& res) {
        rep.items.push_back({name, res.is_zero(), res.is_zero() ? std::string() : res.str()});
    };
    const int d = a.d;
    const auto g = build_semidirect(a);
    const auto [phi, psi] = phi_psi(a, K);
    rep.items.push_back({"cocycle series invertibility",
                         phi.compose(psi).is_identity() && psi.compose(phi).is_identity(), ""});

    const auto F = build_cocycle_twist(a, K);
    add("twist equation", twist_equation_residual(F, CoproductMap::classical(g, K)));

    const TwistedStructure ts(F);
    const auto xg = detail::graded_x(g, d, K);
    const auto xt = detail::tilde_x(g, d, K, psi);
    const auto uu = UEAElement::unit(g, K);
    const auto eLm = detail::action_matrix_exp(a, xt, uu, -1, K);
    const auto eLp = detail::action_matrix_exp(a, xt, uu, +1, K);

    // Delta_F(X^mu) = X^nu (x) (e^{-L(tilde X)})^mu_nu + 1 (x) X^mu
    for (int mu = 0; mu < d; ++mu) {
        auto rhs = tensor_of(uu, xg[mu]);
        for (int nu = 0; nu < d; ++nu) rhs += tensor_of(xg[nu], eLm[mu][nu]);
        add("coproduct of X" + std::to_string(mu + 1), ts.coproduct(xg[mu]) - rhs);
    }

    // group cocycle identity for the deformed coordinates:
    // phi(Delta_F(tilde X)) = e^{-L(1 (x) tilde X)} phi(tilde X (x) 1) + phi(1 (x) tilde X),
    // where phi(tilde X (x) 1) = xi X (x) 1 and phi(1 (x) tilde X) = 1 (x) xi X
    // because phi o psi is the identity.
    {
        const auto ut = TensorElement::unit(g, K, 2);
        std::vector<TensorElement> dxt, right;
        for (int mu = 0; mu < d; ++mu) {
            dxt.push_back(ts.coproduct(xt[mu]));
            right.push_back(tensor_of(uu, xt[mu]));
        }
        const auto lhs = phi.evaluate(dxt, ut);
        const auto eLb = detail::action_matrix_exp(a, right, ut, -1, K);
        for (int mu = 0; mu < d; ++mu) {
            auto rhs = tensor_of(uu, xg[mu]);
            for (int nu = 0; nu < d; ++nu) rhs += eLb[mu][nu] * tensor_of(xg[nu], uu);
            add("group cocycle identity, component " + std::to_string(mu + 1), lhs[mu] - rhs);
        }
    }

    // Delta_F(H_mu) = H_nu (x) (e^{+L(tilde X)})^nu_mu + 1 (x) H_mu
    for (int mu = 0; mu < d; ++mu) {
        const auto h = UEAElement::generator(g, K, mu);
        auto rhs = tensor_of(uu, h);
        for (int nu = 0; nu < d; ++nu)
            rhs += tensor_of(UEAElement::generator(g, K, nu), eLp[nu][mu]);
        add("coproduct of H" + std::to_string(mu + 1), ts.coproduct(h) - rhs);
    }

    // S_F(tilde X^mu) = -tilde X^mu and S_F(H_mu) = -H_nu (e^{-L(tilde X)})^nu_mu
    for (int mu = 0; mu < d; ++mu)
        add_u("antipode of deformed X" + std::to_string(mu + 1), ts.antipode(xt[mu]) + xt[mu]);
    for (int mu = 0; mu < d; ++mu) {
        auto rhs = uu * Rational(0);
        for (int nu = 0; nu < d; ++nu)
            rhs -= UEAElement::generator(g, K, nu) * eLm[nu][mu];
        add_u("antipode of H" + std::to_string(mu + 1),
              ts.antipode(UEAElement::generator(g, K, mu)) - rhs);
    }
    return rep;
}

// ----- canned instances ---------------------------------------------------------------

// one-dimensional seed: H |> H = 2H
inline ActionConstants action_seed_1d() {
    auto a = ActionConstants::zero(1);
    a.at(0, 0, 0) = Rational(2);
    return a;
}

// The four-generator carrier split {H, A} acting on {E, B}: from [H,E] = 2E,
// [H,B] = (2-alpha)B and [A,B] = gamma E one reads L^1_11 = -2,
// L^2_12 = alpha-2, L^2_21 = -gamma.  Quasi-associative iff gamma is 2 or 0.
inline ActionConstants action_abstract_split(const Rational& alpha, const Rational& gamma) {
    auto a = ActionConstants::zero(2);
    a.at(0, 0, 0) = Rational(-2);
    a.at(0, 1, 1) = alpha - Rational(2);
    a.at(1, 0, 1) = -gamma;
    return a;
}

// The restricted-borel split: H-part {H_1N, 2 E_1j}, abelian part {E_1N, E_jN}.
inline ActionConstants action_borel_split(int N) {
    if (N < 3) throw ConstraintViolation("borel split needs N >= 3");
    const int d = N - 1;
    auto a = ActionConstants::zero(d);
    a.at(0, 0, 0) = Rational(-2);      // L^1_11:  [H_1, X^1] = 2 X^1
    for (int j = 1; j < d; ++j) {
        a.at(0, j, j) = Rational(-1);  // L^j_1j:  [H_1, X^j] = X^j
        a.at(j, 0, j) = Rational(-2);  // L^j_j1:  [H_j, X^j] = 2 X^1
    }
    return a;
}

// Embedding of the borel-split semidirect basis into the restricted borel
// algebra: H_1 -> H_1N, H_j -> 2 E_1j, X^1 -> E_1N, X^j -> E_jN.
inline UEAElement borel_split_image_of_generator(const AlgebraPtr& borel, int order, int N,
                                                 int index) {
    const int d = N - 1;
    const std::string sN = std::to_string(N);
    const auto gen = [&](const std::string& n) { return UEAElement::generator(borel, order, n); };
    if (index == 0) return gen("H1" + sN);
    if (index < d) return gen("E1" + std::to_string(index + 1)) * Rational(2);
    if (index == d) return gen("E1" + sN);
    return gen("E" + std::to_string(index - d + 1) + sN);
}

// Push a rank-2 element over the borel-split semidirect algebra through that
// embedding, monomial by monomial.
inline TensorElement map_split_to_borel(const TensorElement& t, const AlgebraPtr& borel, int N) {
    const int order = t.order();
    std::vector<UEAElement> img;
    for (int i = 0; i < t.algebra()->dim(); ++i)
        img.push_back(borel_split_image_of_generator(borel, order, N, i));
    const auto map_word = [&](const Monomial& m) {
        auto out = UEAElement::unit(borel, order);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int rep = 0; rep < static_cast<int>(static_cast<unsigned char>(m[i])); ++rep)
                out = out * img[i];
        return out;
    };
    auto out = TensorElement::unit(borel, order, 2) * Rational(0);
    for (const auto& [key, s] : t.terms())
        out += tensor_of(map_word(key[0]), map_word(key[1])) * s;
    return out;
}

} // namespace jtwist
