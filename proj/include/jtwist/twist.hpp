#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "jtwist/tensor.hpp"

namespace jtwist {

// ----- twist descriptions -----------------------------------------------------

enum class TwistVariant { jordanian_only, extended_single, extended_multi, abstract_L };

inline std::string to_string(TwistVariant v) {
    switch (v) {
        case TwistVariant::jordanian_only: return "jordanian_only";
        case TwistVariant::extended_single: return "extended_single";
        case TwistVariant::extended_multi: return "extended_multi";
        case TwistVariant::abstract_L: return "abstract_L";
    }
    throw Error("unreachable twist variant");
}

inline TwistVariant twist_variant_from_string(const std::string& s) {
    if (s == "jordanian_only") return TwistVariant::jordanian_only;
    if (s == "extended_single") return TwistVariant::extended_single;
    if (s == "extended_multi") return TwistVariant::extended_multi;
    if (s == "abstract_L") return TwistVariant::abstract_L;
    throw ParseError("unknown twist variant: " + s);
}

// Coefficients of one extension factor: A = sum_k (a1k[k] E_{1k} + akN[k] E_{kN})
// and likewise B, with k running over the intermediate indices 2..N-1.
struct ExtensionFactor {
    std::vector<Rational> a1k, akN, b1k, bkN;

    static ExtensionFactor zero(int nroots) {
        ExtensionFactor f;
        f.a1k.assign(nroots, 0);
        f.akN.assign(nroots, 0);
        f.b1k.assign(nroots, 0);
        f.bkN.assign(nroots, 0);
        return f;
    }
};

struct ExtensionCoefficients {
    // true: the A-side combination is taken times 2 xi (pair correlation sums
    // to one); false: it is taken times xi (pair correlation sums to two)
    bool xi_normalized = true;
    std::vector<ExtensionFactor> factors;

    bool empty() const { return factors.empty(); }

    // One factor per intermediate root j, with A_j ~ E_{1j} and B_j = E_{jN}.
    static ExtensionCoefficients canonical_multi(int N) {
        ExtensionCoefficients c;
        const int nroots = N - 2;
        for (int f = 0; f < nroots; ++f) {
            ExtensionFactor fac = ExtensionFactor::zero(nroots);
            fac.a1k[f] = 1;
            fac.bkN[f] = 1;
            c.factors.push_back(std::move(fac));
        }
        return c;
    }
    // A single factor supported on the first intermediate root.
    static ExtensionCoefficients canonical_single(int N) {
        ExtensionCoefficients c;
        const int nroots = N - 2;
        if (nroots < 1)
            throw ConstraintViolation(
                "single-extension variant needs at least one intermediate root (N >= 3)");
        ExtensionFactor fac = ExtensionFactor::zero(nroots);
        fac.a1k[0] = 1;
        fac.bkN[0] = 1;
        c.factors.push_back(std::move(fac));
        return c;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["xi_normalized"] = xi_normalized;
        auto& fs = j["factors"] = nlohmann::json::array();
        const auto strs = [](const std::vector<Rational>& v) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& r : v) a.push_back(rational_str(r));
            return a;
        };
        for (const auto& f : factors) {
            nlohmann::json jf;
            jf["a1k"] = strs(f.a1k);
            jf["akN"] = strs(f.akN);
            jf["b1k"] = strs(f.b1k);
            jf["bkN"] = strs(f.bkN);
            fs.push_back(std::move(jf));
        }
        return j;
    }
    static ExtensionCoefficients from_json(const nlohmann::json& j) {
        ExtensionCoefficients c;
        c.xi_normalized = j.value("xi_normalized", true);
        const auto rats = [](const nlohmann::json& a) {
            std::vector<Rational> v;
            for (const auto& s : a) v.push_back(parse_rational(s.get<std::string>()));
            return v;
        };
        if (j.contains("factors"))
            for (const auto& jf : j["factors"]) {
                ExtensionFactor f;
                f.a1k = rats(jf.at("a1k"));
                f.akN = rats(jf.at("akN"));
                f.b1k = rats(jf.at("b1k"));
                f.bkN = rats(jf.at("bkN"));
                if (f.a1k.size() != f.akN.size() || f.a1k.size() != f.b1k.size() ||
                    f.a1k.size() != f.bkN.size())
                    throw ParseError("extension factor coefficient lists differ in length");
                c.factors.push_back(std::move(f));
            }
        return c;
    }
};

struct TwistSpec {
    TwistVariant variant = TwistVariant::extended_multi;
    int N = 3;
    int order = 4;
    // abstract carrier constants: [H,A] = alpha A, [H,B] = (2-alpha) B, [A,B] = gamma E
    Rational alpha = 1;
    Rational gamma = 2;
    ExtensionCoefficients coefficients;  // empty -> canonical for the variant

    AlgebraPtr algebra() const {
        if (variant == TwistVariant::abstract_L) return make_L_abstract(alpha, gamma);
        return make_borel_restricted(N);
    }
    Rational beta() const {
        return variant == TwistVariant::abstract_L ? Rational(2 - alpha) : Rational(1);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["variant"] = to_string(variant);
        j["N"] = N;
        j["order"] = order;
        if (variant == TwistVariant::abstract_L) {
            j["alpha"] = rational_str(alpha);
            j["gamma"] = rational_str(gamma);
        }
        if (!coefficients.empty()) j["coefficients"] = coefficients.to_json();
        return j;
    }
    static TwistSpec from_json(const nlohmann::json& j) {
        TwistSpec s;
        if (j.contains("variant")) s.variant = twist_variant_from_string(j["variant"]);
        s.N = j.value("N", 3);
        s.order = j.value("order", 4);
        if (j.contains("alpha")) s.alpha = parse_rational(j["alpha"].get<std::string>());
        if (j.contains("gamma")) s.gamma = parse_rational(j["gamma"].get<std::string>());
        if (j.contains("coefficients"))
            s.coefficients = ExtensionCoefficients::from_json(j["coefficients"]);
        return s;
    }
};

// ----- extension pairs and their constraints ----------------------------------

// The effective extension pairs (A_j, B_j), with the deformation parameter
// already folded into the A side so that [A_j, B_j] = e^{2 sigma} - 1.
inline std::vector<std::pair<UEAElement, UEAElement>> extension_pairs(const TwistSpec& spec,
                                                                      const AlgebraPtr& g) {
    const int K = spec.order;
    std::vector<std::pair<UEAElement, UEAElement>> pairs;
    if (spec.variant == TwistVariant::jordanian_only) return pairs;

    if (spec.variant == TwistVariant::abstract_L) {
        if (spec.gamma == 0)
            throw ConstraintViolation(
                "extension pair correlation [A,B] = e^{2 sigma} - 1 cannot be met: "
                "A and B commute (gamma = 0)");
        UEAElement A = UEAElement::generator(g, K, "A");
        A *= XiSeries::monomial(K, 1, 2 / spec.gamma);  // (2 xi / gamma) A
        pairs.emplace_back(std::move(A), UEAElement::generator(g, K, "B"));
        return pairs;
    }

    ExtensionCoefficients coeffs = spec.coefficients;
    if (coeffs.empty())
        coeffs = spec.variant == TwistVariant::extended_single
                     ? ExtensionCoefficients::canonical_single(spec.N)
                     : ExtensionCoefficients::canonical_multi(spec.N);
    if (spec.variant == TwistVariant::extended_single && coeffs.factors.size() != 1)
        throw ConstraintViolation("single-extension variant takes exactly one factor");

    const int nroots = spec.N - 2;
    const XiSeries ascale = XiSeries::monomial(K, 1, coeffs.xi_normalized ? 2 : 1);
    for (const auto& f : coeffs.factors) {
        if (static_cast<int>(f.a1k.size()) != nroots)
            throw ConstraintViolation("extension factor must list one coefficient per "
                                      "intermediate root");
        UEAElement A(g, K), B(g, K);
        for (int k = 2; k <= spec.N - 1; ++k) {
            const int e1k = g->index_of("E1" + std::to_string(k));
            const int ekN = g->index_of("E" + std::to_string(k) + std::to_string(spec.N));
            const auto add = [&](UEAElement& dst, int idx, const Rational& c) {
                if (c == 0) return;
                Monomial m = unit_monomial(g->dim());
                ++m[idx];
                dst.add_term(std::move(m), XiSeries::scalar(K, c));
            };
            add(A, e1k, f.a1k[k - 2]);
            add(A, ekN, f.akN[k - 2]);
            add(B, e1k, f.b1k[k - 2]);
            add(B, ekN, f.bkN[k - 2]);
        }
        pairs.emplace_back(A * ascale, std::move(B));
    }
    return pairs;
}

// Verify the constraints that make the product of exponentials a twist; throws
// with the violated condition named.
inline void validate_extension_pairs(const TwistSpec& spec, const AlgebraPtr& g,
                                     const std::vector<std::pair<UEAElement, UEAElement>>& pairs) {
    const int K = spec.order;
    const UEAElement H = UEAElement::generator(g, K, g->meta().h_index);
    const UEAElement E = UEAElement::generator(g, K, g->meta().e_index);
    const UEAElement corr = exp_sigma(g, K, 2) - UEAElement::unit(g, K);
    const Rational alpha = spec.variant == TwistVariant::abstract_L ? spec.alpha : 1;
    const Rational beta = spec.beta();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const auto& [A, B] = pairs[j];
        if (commutator(H, A) != A * alpha)
            throw ConstraintViolation("extension factor " + std::to_string(j) +
                                      ": A must have weight alpha under H");
        if (commutator(H, B) != B * beta)
            throw ConstraintViolation("extension factor " + std::to_string(j) +
                                      ": B must have weight beta under H");
        if (!commutator(E, A).is_zero() || !commutator(E, B).is_zero())
            throw ConstraintViolation("extension factor " + std::to_string(j) +
                                      ": A and B must commute with E");
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const UEAElement c = commutator(A, pairs[k].second);
            if (j == k) {
                if (c != corr)
                    throw ConstraintViolation(
                        "extension pair correlation violated at factor " + std::to_string(j) +
                        ": [A_j, B_j] must equal e^{2 sigma} - 1");
            } else if (!c.is_zero()) {
                throw ConstraintViolation("cross-factor correlation violated: [A_" +
                                          std::to_string(j) + ", B_" + std::to_string(k) +
                                          "] must vanish");
            }
            if (k > j) {
                if (!commutator(A, pairs[k].first).is_zero())
                    throw ConstraintViolation("extension A-sides must commute pairwise");
                if (!commutator(B, pairs[k].second).is_zero())
                    throw ConstraintViolation("extension B-sides must commute pairwise");
            }
        }
    }
}

// ----- twist builders ----------------------------------------------------------

inline TensorElement build_phi(const TwistSpec& spec) {
    const AlgebraPtr g = spec.algebra();
    const int K = spec.order;
    const UEAElement H = UEAElement::generator(g, K, g->meta().h_index);
    return exp_positive(tensor_of(H, sigma_element(g, K)));
}

inline TensorElement build_reversed_twist(const TwistSpec& spec) {
    const AlgebraPtr g = spec.algebra();
    const int K = spec.order;
    const auto pairs = extension_pairs(spec, g);
    validate_extension_pairs(spec, g, pairs);
    const UEAElement damp = exp_sigma(g, K, -spec.beta());
    TensorElement F = TensorElement::unit(g, K, 2);
    for (const auto& [A, B] : pairs) F = F * exp_positive(tensor_of(A, B * damp));
    return F * build_phi(spec);
}

inline TensorElement build_extended_twist(const TwistSpec& spec, bool verify_reversed = true) {
    const AlgebraPtr g = spec.algebra();
    const int K = spec.order;
    const auto pairs = extension_pairs(spec, g);
    validate_extension_pairs(spec, g, pairs);
    const UEAElement damp = exp_sigma(g, K, -2);
    TensorElement F = build_phi(spec);
    for (const auto& [A, B] : pairs) F = F * exp_positive(tensor_of(A, B * damp));
    if (verify_reversed && F != build_reversed_twist(spec))
        throw ConstraintViolation("forward and reversed twist renderings disagree");
    return F;
}

// The reversed extension block alone: prod_j exp(A_j (x) B_j e^{-beta sigma}).
inline TensorElement build_reversed_extension(const TwistSpec& spec) {
    const AlgebraPtr g = spec.algebra();
    const int K = spec.order;
    const auto pairs = extension_pairs(spec, g);
    validate_extension_pairs(spec, g, pairs);
    const UEAElement damp = exp_sigma(g, K, -spec.beta());
    TensorElement F = TensorElement::unit(g, K, 2);
    for (const auto& [A, B] : pairs) F = F * exp_positive(tensor_of(A, B * damp));
    return F;
}

// The canonical chain twist realized inside the full matrix algebra, where the
// Cartan element is a two-term combination; needed to conjugate coproducts of
// elements outside the restricted carrier.
inline TensorElement build_gl_twist(int N, int K) {
    const AlgebraPtr g = make_gl(N);
    const int e1N = g->index_of("E1" + std::to_string(N));
    UEAElement H(g, K);
    {
        Monomial m = unit_monomial(g->dim());
        ++m[g->index_of("E11")];
        H.add_term(m, XiSeries::one(K));
        Monomial m2 = unit_monomial(g->dim());
        ++m2[g->index_of("E" + std::to_string(N) + std::to_string(N))];
        H.add_term(m2, -XiSeries::one(K));
    }
    TensorElement F = exp_positive(tensor_of(H, sigma_element(g, K, e1N)));
    const UEAElement damp = exp_sigma(g, K, -2, e1N);
    for (int j = 2; j <= N - 1; ++j) {
        UEAElement A = UEAElement::generator(g, K, "E1" + std::to_string(j));
        A *= XiSeries::monomial(K, 1, 2);
        const UEAElement B =
            UEAElement::generator(g, K, "E" + std::to_string(j) + std::to_string(N));
        F = F * exp_positive(tensor_of(A, B * damp));
    }
    return F;
}

// ----- identity checks ----------------------------------------------------------

// F_12 (Delta (x) id)(F) - F_23 (id (x) Delta)(F); zero iff F is a twist for Delta.
inline TensorElement twist_equation_residual(const TensorElement& F, const CoproductMap& delta) {
    return embed_pair(F, 12) * delta.apply_leg(F, 1) -
           embed_pair(F, 23) * delta.apply_leg(F, 2);
}

struct FactorizableResiduals {
    TensorElement first;   // (Delta (x) id)(F) - F_13 F_23
    TensorElement second;  // (id (x) Delta_t)(F) - F_12 F_13
    bool ok() const { return first.is_zero() && second.is_zero(); }
};

inline FactorizableResiduals factorizable_residuals(const TensorElement& F,
                                                    const CoproductMap& delta,
                                                    const CoproductMap& delta_t) {
    return {delta.apply_leg(F, 1) - embed_pair(F, 13) * embed_pair(F, 23),
            delta_t.apply_leg(F, 2) - embed_pair(F, 12) * embed_pair(F, 13)};
}

// v = m (id (x) S)(F), the element conjugating the antipode.
inline UEAElement twist_v(const TensorElement& F) {
    return multiply_all_legs(antipode_leg(F, 2));
}

// Twisted Hopf structure carried by an invertible twist F.
class TwistedStructure {
public:
    explicit TwistedStructure(TensorElement F)
        : F_(std::move(F)),
          delta_F_(CoproductMap::conjugated_by(F_)),
          v_(twist_v(F_)),
          v_inv_(invert(v_)) {}

    const TensorElement& twist() const { return F_; }
    const CoproductMap& coproduct_map() const { return delta_F_; }
    const UEAElement& v() const { return v_; }

    TensorElement coproduct(const UEAElement& a) const { return delta_F_.apply(a); }
    UEAElement antipode(const UEAElement& a) const { return v_ * jtwist::antipode(a) * v_inv_; }

private:
    TensorElement F_;
    CoproductMap delta_F_;
    UEAElement v_;
    UEAElement v_inv_;
};

inline TensorElement universal_r(const TensorElement& F) { return swap_legs(F) * invert(F); }

// R_21 R - 1 (x) 1.
inline TensorElement triangularity_residual(const TensorElement& R) {
    return swap_legs(R) * R - TensorElement::unit(R.algebra(), R.order(), 2);
}

// R_12 R_13 R_23 - R_23 R_13 R_12.
inline TensorElement qybe_residual(const TensorElement& R) {
    return embed_pair(R, 12) * embed_pair(R, 13) * embed_pair(R, 23) -
           embed_pair(R, 23) * embed_pair(R, 13) * embed_pair(R, 12);
}

// R Delta_F(a) - Delta_F^{op}(a) R.
inline TensorElement intertwining_residual(const TensorElement& R, const CoproductMap& delta_f,
                                           const UEAElement& a) {
    const TensorElement d = delta_f.apply(a);
    return R * d - swap_legs(d) * R;
}

// ----- classical limit -----------------------------------------------------------

struct ClassicalRExtraction {
    TwoTensor r;
    bool unit_at_order_zero = false;
    std::vector<std::string> stray;  // xi^1 terms outside g (x) g
    bool ok() const { return unit_at_order_zero && stray.empty(); }
};

// Reads off r from R = 1 (x) 1 + xi r + O(xi^2).
inline ClassicalRExtraction extract_classical_r(const TensorElement& R) {
    ClassicalRExtraction out{TwoTensor(R.algebra()), false, {}};
    const auto c0 = xi_coefficient_terms(R, 0);
    const Monomial u = unit_monomial(R.algebra()->dim());
    out.unit_at_order_zero =
        c0.size() == 1 && c0.begin()->first == TensorKey{u, u, u} && c0.begin()->second == 1;
    for (const auto& [key, c] : xi_coefficient_terms(R, 1)) {
        int idx[2] = {-1, -1};
        bool pure = true;
        for (int leg = 0; leg < 2 && pure; ++leg) {
            if (monomial_degree(key[leg]) != 1) {
                pure = false;
                break;
            }
            for (int i = 0; i < R.algebra()->dim(); ++i)
                if (key[leg][i] != '\0') idx[leg] = i;
        }
        if (pure)
            out.r.add(idx[0], idx[1], c);
        else
            out.stray.push_back("(" + rational_str(c) + ")*[" +
                                monomial_str(*R.algebra(), key[0]) + " (x) " +
                                monomial_str(*R.algebra(), key[1]) + "]");
    }
    return out;
}

// ----- explicit R-matrix decompositions ------------------------------------------

namespace detail {

inline void compositions_up_to(int len, int maxsum, std::vector<int>& cur,
                               std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (const int v : cur) used += v;
    for (int v = 0; v + used <= maxsum; ++v) {
        cur.push_back(v);
        compositions_up_to(len, maxsum, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

// The double-sum decomposition of R over the monomial basis in
// x_1 = H, x_i = 2 E_{1i}, pi_1 = sigma/xi, pi_i = E_{iN} e^{-2 sigma},
// with the first tensor leg glued by the opposite multiplication.
inline TensorElement r_basis_expansion(int N, int K) {
    const AlgebraPtr g = make_borel_restricted(N);
    const int n1 = N - 1;

    // generator powers up to K
    const UEAElement one = UEAElement::unit(g, K);
    const UEAElement sig = sigma_element(g, K);
    const UEAElement H = UEAElement::generator(g, K, g->meta().h_index);
    const UEAElement damp2 = exp_sigma(g, K, -2);
    std::vector<std::vector<UEAElement>> xpow(n1 + 1), pipow(n1 + 1);
    std::vector<UEAElement> sigpow{one}, nsigpow{one}, hpow{one};
    for (int k = 1; k <= K; ++k) {
        sigpow.push_back(sigpow.back() * sig);
        nsigpow.push_back(nsigpow.back() * -sig);
        hpow.push_back(hpow.back() * H);
    }
    for (int i = 2; i <= n1; ++i) {
        const UEAElement x = UEAElement::generator(g, K, "E1" + std::to_string(i)) * Rational(2);
        const UEAElement pi =
            UEAElement::generator(g, K, "E" + std::to_string(i) + std::to_string(N)) * damp2;
        xpow[i] = {one};
        pipow[i] = {one};
        for (int k = 1; k <= K; ++k) {
            xpow[i].push_back(xpow[i].back() * x);
            pipow[i].push_back(pipow[i].back() * pi);
        }
    }

    std::vector<std::vector<int>> vecs;
    std::vector<int> cur;
    detail::compositions_up_to(n1, K, cur, vecs);

    TensorElement R(g, K, 2);
    for (const auto& m : vecs) {
        int msum = 0;
        for (const int v : m) msum += v;
        for (const auto& n : vecs) {
            int nsum = 0;
            for (const int v : n) nsum += v;
            if (msum + nsum > K) continue;

            // leg 1: opposite gluing of x^n pi^m reads, in normal order,
            // pi_{N-1}^{m_..} ... pi_2^{m_2} sigma^{m_1} x_{N-1}^{n_..} ... x_2^{n_2} H^{n_1}
            UEAElement leg1 = one;
            for (int i = n1; i >= 2; --i) leg1 = leg1 * pipow[i][m[i - 1]];
            leg1 = leg1 * sigpow[m[0]];
            for (int i = n1; i >= 2; --i) leg1 = leg1 * xpow[i][n[i - 1]];
            leg1 = leg1 * hpow[n[0]];

            // leg 2: H^{m_1} x_2^{m_2} ... (-sigma)^{n_1} pi_2^{n_2} ...
            UEAElement leg2 = hpow[m[0]];
            for (int i = 2; i <= n1; ++i) leg2 = leg2 * xpow[i][m[i - 1]];
            leg2 = leg2 * nsigpow[n[0]];
            for (int i = 2; i <= n1; ++i) leg2 = leg2 * pipow[i][n[i - 1]];

            // scalar: xi carried by every x_i / pi_i with i >= 2, sign from the
            // (-xi)^{|n|} block, factorials from m! n!
            int xi_pow = 0, minus = 0;
            Integer fact = 1;
            for (int i = 1; i < n1; ++i) {
                xi_pow += m[i] + n[i];
                minus += n[i];
            }
            for (const int v : m) fact *= factorial(v);
            for (const int v : n) fact *= factorial(v);
            Rational c = Rational(Integer(1), fact);
            if (minus % 2 != 0) c = -c;
            R += tensor_of(leg1, leg2) * XiSeries::monomial(K, xi_pow, c);
        }
    }
    return R;
}

// The ordered-product form: prod^{<} exp(pi_a (x) xi x_a) prod^{>} exp(-xi x_a (x) pi_a).
inline TensorElement r_ordered_product(int N, int K) {
    const AlgebraPtr g = make_borel_restricted(N);
    const UEAElement sig = sigma_element(g, K);
    const UEAElement H = UEAElement::generator(g, K, g->meta().h_index);
    const UEAElement damp2 = exp_sigma(g, K, -2);
    const XiSeries two_xi = XiSeries::monomial(K, 1, 2);

    TensorElement R = exp_positive(tensor_of(sig, H));
    for (int a = 2; a <= N - 1; ++a) {
        const UEAElement x = UEAElement::generator(g, K, "E1" + std::to_string(a));
        const UEAElement pi =
            UEAElement::generator(g, K, "E" + std::to_string(a) + std::to_string(N)) * damp2;
        R = R * exp_positive(tensor_of(pi, x) * two_xi);
    }
    for (int a = N - 1; a >= 2; --a) {
        const UEAElement x = UEAElement::generator(g, K, "E1" + std::to_string(a));
        const UEAElement pi =
            UEAElement::generator(g, K, "E" + std::to_string(a) + std::to_string(N)) * damp2;
        R = R * exp_positive(-(tensor_of(x, pi) * two_xi));
    }
    return R * exp_positive(-tensor_of(H, sig));
}

// ----- real form -------------------------------------------------------------------

// Apply the sign anti-automorphism to both legs.
inline TensorElement theta_tensor(const TensorElement& t, const std::vector<Rational>& signs) {
    const auto fn = [&signs](const UEAElement& a) { return apply_antimorphism(a, signs); };
    return transform_leg(transform_leg(t, 1, fn), 2, fn);
}

struct RealFormReport {
    std::vector<std::array<int, 3>> lie_violations;
    bool involution_ok = false;
    bool twist_inverse_ok = false;
    bool ok() const { return lie_violations.empty() && involution_ok && twist_inverse_ok; }
};

// theta is an anti-automorphism of the matrix algebra negating all generators
// except those with exactly one index equal to N; on the twist it must act as
// (theta (x) theta)(F) = F^{-1}.
inline RealFormReport real_form_check(int N, int K) {
    RealFormReport rep;
    const auto gl = make_gl(N);
    rep.lie_violations = anti_automorphism_violations(*gl, theta_signs_gl(N));
    rep.involution_ok = true;
    for (const auto& s : theta_signs_gl(N))
        if (s * s != 1) rep.involution_ok = false;

    TwistSpec spec;
    spec.variant = TwistVariant::extended_multi;
    spec.N = N;
    spec.order = K;
    const TensorElement F = build_extended_twist(spec, false);
    rep.twist_inverse_ok = theta_tensor(F, theta_signs_borel(N)) == invert(F);
    return rep;
}

} // namespace jtwist
