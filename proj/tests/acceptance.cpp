// Acceptance gate: twelve end-to-end criteria over the deformation engine.
//
// Each criterion prints exactly one PASS/FAIL line; the process exits with
// the number of failed criteria.  Every check is exact: residuals are
// required to vanish identically in the truncated polynomial ring, and the
// displayed structure maps are compared term by term against their
// closed-form expressions.

#include <jtwist/report.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace jtwist;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TwistSpec spec_for(int N, int K) {
    TwistSpec s;
    s.variant = TwistVariant::extended_multi;
    s.N = N;
    s.order = K;
    return s;
}

UEAElement gen(const AlgebraPtr& g, int K, const std::string& name) {
    return UEAElement::generator(g, K, name);
}

UEAElement random_element(const AlgebraPtr& g, int K, std::mt19937& rng, int nterms = 4) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> pick(0, g->dim() - 1);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_int_distribution<int> xipow(0, K);
    UEAElement r(g, K);
    for (int t = 0; t < nterms; ++t) {
        Monomial m = unit_monomial(g->dim());
        const int d = deg(rng);
        for (int j = 0; j < d; ++j) ++m[pick(rng)];
        r.add_term(m, XiSeries::monomial(K, xipow(rng), coef(rng)));
    }
    return r;
}

WeylElement random_weyl(int N, int K, bool heis, std::mt19937& rng, int nterms) {
    std::uniform_int_distribution<int> slot(0, 2 * N - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, 2);
    WeylElement out(N, K, heis);
    for (int t = 0; t < nterms; ++t) {
        WeylMonomial m(2 * static_cast<std::size_t>(N), '\0');
        const int d = deg(rng);
        for (int f = 0; f < d; ++f) ++m[slot(rng)];
        out.add_term(m, XiSeries::scalar(K, Rational(coef(rng))));
    }
    return out;
}

// (N, K) instances shared by criteria 1, 2, and 5.
const std::vector<std::pair<int, int>> kChainInstances = {{2, 4}, {3, 4}, {4, 3}};

// --- criterion 1: twist equation ------------------------------------------
bool criterion_twist_equation() {
    bool ok = true;
    for (const auto& [N, K] : kChainInstances) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = spec_for(N, K);
        const auto F = build_extended_twist(s, false);
        const auto residual = twist_equation_residual(F, CoproductMap::classical(s.algebra(), K));
        const double wall = seconds_since(t0);
        ok = ok && residual.is_zero() && wall < 300.0;
    }
    return ok;
}

// --- criterion 2: factorization identities --------------------------------
bool criterion_factorizable() {
    bool ok = true;
    for (const auto& [N, K] : kChainInstances) {
        const auto s = spec_for(N, K);
        const auto F = build_extended_twist(s, false);
        const auto d = CoproductMap::classical(s.algebra(), K);
        const auto dt = CoproductMap::conjugated_by(F);
        ok = ok && factorizable_residuals(F, d, dt).ok();
    }
    // The order-reversed extension block stays a twist over the jordanian
    // structure but must fail the first factorization identity.
    const auto s = spec_for(3, 3);
    const auto ext_rev = build_reversed_extension(s);
    const auto d_phi = CoproductMap::conjugated_by(build_phi(s));
    ok = ok && twist_equation_residual(ext_rev, d_phi).is_zero();
    const auto r1 =
        d_phi.apply_leg(ext_rev, 1) - embed_pair(ext_rev, 13) * embed_pair(ext_rev, 23);
    ok = ok && !r1.is_zero();
    return ok;
}

// --- criterion 3: twisted coproducts ---------------------------------------
bool chain_coproducts_match(int N, int K) {
    const auto s = spec_for(N, K);
    const auto g = s.algebra();
    const auto dF = CoproductMap::conjugated_by(build_extended_twist(s, false));
    const auto one = UEAElement::unit(g, K);
    const std::string sN = std::to_string(N);
    const auto H = gen(g, K, "H1" + sN), E = gen(g, K, "E1" + sN);
    bool ok = true;

    auto dH = tensor_of(H, exp_sigma(g, K, -2)) + tensor_of(one, H);
    for (int j = 2; j <= N - 1; ++j) {
        const auto A = gen(g, K, "E1" + std::to_string(j));
        const auto B = gen(g, K, "E" + std::to_string(j) + sN);
        dH -= tensor_of(A, B * exp_sigma(g, K, -3)) * XiSeries::monomial(K, 1, 4);
        ok = ok && dF.apply(A) == tensor_of(A, exp_sigma(g, K, -1)) + tensor_of(one, A);
        ok = ok && dF.apply(B) ==
                       tensor_of(B, exp_sigma(g, K, 1)) + tensor_of(exp_sigma(g, K, 2), B);
    }
    ok = ok && dF.apply(H) == dH;
    ok = ok && dF.apply(E) == tensor_of(E, exp_sigma(g, K, 2)) + tensor_of(one, E);
    return ok;
}

bool seven_term_coproduct_matches() {
    // conjugation inside the full rank-3 matrix algebra reaches the lowering
    // generator E32; its twisted coproduct has exactly seven closed-form terms
    const int K = 3;
    const auto g = make_gl(3);
    const auto F = build_gl_twist(3, K);
    const int e13 = g->index_of("E13");
    const auto one = UEAElement::unit(g, K);
    const auto E32 = gen(g, K, "E32"), E12 = gen(g, K, "E12"), E23 = gen(g, K, "E23");
    const auto H13 = gen(g, K, "E11") - gen(g, K, "E33");
    const auto H23 = gen(g, K, "E22") - gen(g, K, "E33");
    const auto em = [&](const Rational& r) { return exp_sigma(g, K, r, e13); };

    const auto lhs = F * (tensor_of(E32, one) + tensor_of(one, E32)) * invert(F);
    auto rhs = tensor_of(E32, em(-1)) + tensor_of(one, E32);
    rhs += tensor_of(H13, E12 * em(-2)) * XiSeries::xi(K);
    rhs += tensor_of(E12, H23 * em(-1)) * XiSeries::monomial(K, 1, 2);
    rhs -= tensor_of(H13 * E12, em(-1) - em(-3)) * XiSeries::xi(K);
    rhs -= tensor_of(E12, E23 * E12 * em(-3)) * XiSeries::monomial(K, 2, 4);
    rhs -= tensor_of(E12 * E12, E23 * em(-4)) * XiSeries::monomial(K, 2, 4);
    return lhs == rhs;
}

bool criterion_twisted_coproducts() {
    return chain_coproducts_match(3, 3) && chain_coproducts_match(4, 3) &&
           seven_term_coproduct_matches();
}

// --- criterion 4: twisted antipodes ----------------------------------------
bool chain_antipodes_match(int N, int K) {
    const auto s = spec_for(N, K);
    const auto g = s.algebra();
    const TwistedStructure tw(build_extended_twist(s, false));
    const std::string sN = std::to_string(N);
    const auto H = gen(g, K, "H1" + sN), E = gen(g, K, "E1" + sN);
    bool ok = tw.antipode(sigma_element(g, K)) == -sigma_element(g, K);

    auto sH = -(H * exp_sigma(g, K, 2));
    for (int j = 2; j <= N - 1; ++j) {
        const auto A = gen(g, K, "E1" + std::to_string(j));
        const auto B = gen(g, K, "E" + std::to_string(j) + sN);
        sH -= A * B * XiSeries::monomial(K, 1, 4);
        ok = ok && tw.antipode(A) == -(A * exp_sigma(g, K, 1));
        ok = ok && tw.antipode(B) == -(B * exp_sigma(g, K, -3));
    }
    ok = ok && tw.antipode(E) == -(E * exp_sigma(g, K, -2));
    ok = ok && tw.antipode(H) == sH;
    return ok;
}

bool criterion_twisted_antipodes() {
    return chain_antipodes_match(3, 3) && chain_antipodes_match(4, 3);
}

// --- criterion 5: quantum Yang-Baxter and triangularity --------------------
bool criterion_qybe_triangular() {
    bool ok = true;
    for (const auto& [N, K] : kChainInstances) {
        const auto s = spec_for(N, K);
        const auto R = universal_r(build_extended_twist(s, false));
        ok = ok && qybe_residual(R).is_zero();
        ok = ok && triangularity_residual(R).is_zero();
        const auto rm = evaluate_tensor(R);
        ok = ok && matrix_qybe_residual(rm, N).is_zero();
        ok = ok && matrix_triangularity_residual(rm, N).is_zero();
    }
    return ok;
}

// --- criterion 6: classical limit -------------------------------------------
bool criterion_classical_limit() {
    bool ok = true;
    for (const int N : {3, 4}) {
        const auto s = spec_for(N, 2);
        const auto ex = extract_classical_r(universal_r(build_extended_twist(s, false)));
        ok = ok && ex.ok() && ex.r == classical_r_borel(N, 1);
        ok = ok && ex.r.is_antisymmetric();
        ok = ok && cybe_residual(classical_r_borel(N, 1)).is_zero();
    }
    for (const Rational& h : {Rational(1, 2), Rational(-3), Rational(7, 5)})
        ok = ok && cybe_residual(classical_r_gl(3, h, 1)).is_zero();
    return ok;
}

// --- criterion 7: basis decompositions of R ---------------------------------
bool criterion_r_expansion() {
    bool ok = true;
    for (const int N : {2, 3}) {
        const int K = 4;
        const auto R = universal_r(build_extended_twist(spec_for(N, K), false));
        ok = ok && r_basis_expansion(N, K) == R;
        ok = ok && r_ordered_product(N, K) == R;
    }
    return ok;
}

// --- criterion 8: dual bracket and the induced isomorphism ------------------
bool criterion_dual_isomorphism() {
    bool ok = true;
    for (const int N : {3, 4}) {
        const auto dual = make_dual_borel(N);
        ok = ok && antisymmetry_violations(*dual).empty();
        ok = ok && check_jacobi(*dual).ok();
        const auto rep = r_hom_check(N);
        ok = ok && rep.ok();
    }
    return ok;
}

// --- criterion 9: deformed coordinate space ---------------------------------
bool criterion_qspace() { return check_qspace_relations(3, 3).ok(); }

// --- criterion 10: real form -------------------------------------------------
bool criterion_real_form() {
    bool ok = true;
    for (const int N : {2, 3}) {
        ok = ok && anti_automorphism_violations(*make_gl(N), theta_signs_gl(N)).empty();
        ok = ok && real_form_check(N, 4).ok();
    }
    return ok;
}

// --- criterion 11: inhomogeneous actions and the cocycle twist ---------------
bool criterion_inhom() {
    const std::vector<ActionConstants> valid = {
        action_seed_1d(),
        action_borel_split(3),
        action_borel_split(4),
        action_abstract_split(Rational(1, 2), Rational(2)),
    };
    const std::vector<ActionConstants> perturbed = {
        action_borel_split(3).with_bracket_perturbation(0, 1, 1, Rational(1)),
        action_abstract_split(Rational(1, 2), Rational(2))
            .with_bracket_perturbation(0, 1, 0, Rational(1, 3)),
        action_borel_split(4).with_bracket_perturbation(1, 2, 0, Rational(-2)),
    };

    bool ok = true;
    // validation and the classical Yang-Baxter equation hold or fail together
    for (const auto& a : valid) {
        ok = ok && validate_action(a).ok();
        ok = ok && cybe_residual(classical_r_inhom(a)).is_zero();
        ok = ok && uea_cybe_residual(classical_r_inhom(a), 1).is_zero();
    }
    for (const auto& a : perturbed) {
        ok = ok && !validate_action(a).ok();
        ok = ok && !cybe_residual(classical_r_inhom(a)).is_zero();
    }

    // the exponential cocycle element is a twist and matches every closed form
    // (coproducts of the coordinates and of the action generators, antipodes)
    for (const auto& a : valid) {
        if (a.d > 2) continue; // d = 1 seed, the rank-3 split, and one more d = 2
        const auto rep = check_cocycle_identities(a, 4);
        ok = ok && rep.ok();
    }
    return ok;
}

// --- criterion 12: property suites -------------------------------------------
bool property_hopf() { return all_pass(suite_hopf(spec_for(3, 3))); }

bool property_star_associativity() {
    const int N = 3, K = 3;
    StarAlgebra A(N, K);
    std::mt19937 rng(20260819);
    for (bool heis : {true, false})
        for (int trial = 0; trial < 2; ++trial) {
            const auto f = random_weyl(N, K, heis, rng, 2);
            const auto g = random_weyl(N, K, heis, rng, 2);
            const auto h = random_weyl(N, K, heis, rng, 2);
            if (!(A.star(A.star(f, g), h) == A.star(f, A.star(g, h)))) return false;
        }
    return true;
}

bool property_pbw() {
    std::mt19937 rng(7);
    for (const auto& g : {make_gl(2), make_borel_restricted(3)}) {
        const int K = 3;
        const auto one = UEAElement::unit(g, K);
        for (int trial = 0; trial < 4; ++trial) {
            const auto a = random_element(g, K, rng);
            const auto b = random_element(g, K, rng);
            const auto c = random_element(g, K, rng);
            if (!((a * b) * c == a * (b * c))) return false;
            if (!(a * one == a && one * a == a)) return false;
            // normal form is idempotent: rebuilding an ordered element from
            // its own monomials reproduces it exactly
            UEAElement rebuilt(g, K);
            for (const auto& [m, s] : a.terms()) {
                UEAElement word = one;
                for (int i = 0; i < g->dim(); ++i)
                    for (int rep = static_cast<unsigned char>(m[i]); rep > 0; --rep)
                        word = word * gen(g, K, g->name(i));
                rebuilt += word * s;
            }
            if (!(rebuilt == a)) return false;
        }
    }
    return true;
}

bool property_truncation_coherence() {
    // products commute with truncation
    const auto b3 = make_borel_restricted(3);
    std::mt19937 rng(11);
    for (int t = 0; t < 3; ++t) {
        const auto a = random_element(b3, 4, rng);
        const auto b = random_element(b3, 4, rng);
        const auto full = a * b;
        for (int k = 0; k <= 3; ++k)
            if (!(full.truncated(k) == a.truncated(k) * b.truncated(k))) return false;
    }
    // a high-order twist truncates onto the low-order construction
    const auto F4 = build_extended_twist(spec_for(3, 4), false);
    for (int k : {2, 3})
        if (!(F4.truncated(k) == build_extended_twist(spec_for(3, k), false))) return false;
    return true;
}

bool criterion_properties() {
    return property_hopf() && property_star_associativity() && property_pbw() &&
           property_truncation_coherence();
}

} // namespace

int main() {
    struct Criterion {
        const char* description;
        bool (*run)();
    };
    const std::vector<Criterion> criteria = {
        {"twist equation residual vanishes on the restricted borel carrier, N in {2,3,4}",
         criterion_twist_equation},
        {"factorization identities hold; the order-reversed block fails the first one",
         criterion_factorizable},
        {"twisted coproducts match their closed forms, including the seven-term display",
         criterion_twisted_coproducts},
        {"twisted antipodes match their closed forms", criterion_twisted_antipodes},
        {"R = F21 F^-1 satisfies the quantum Yang-Baxter equation and is triangular",
         criterion_qybe_triangular},
        {"first-order part of R is the classical element and solves the classical equation",
         criterion_classical_limit},
        {"basis decompositions of R reproduce the quantum element, N in {2,3}",
         criterion_r_expansion},
        {"dual bracket passes Jacobi and the boundary element induces an isomorphism",
         criterion_dual_isomorphism},
        {"deformed coordinate, momentum, and derivative relations hold with the invariant",
         criterion_qspace},
        {"conjugation is an anti-automorphism and inverts the twist", criterion_real_form},
        {"action validation is equivalent to the classical equation; cocycle twists verify",
         criterion_inhom},
        {"property suites: Hopf axioms, star associativity, ordered basis, truncation",
         criterion_properties},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            note = std::string("  [exception: ") + e.what() + "]";
        }
        if (!ok) ++failures;
        std::printf("%s  criterion %2zu: %s  (%.1fs)%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].description, seconds_since(t0), note.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria hold\n", criteria.size());
    else
        std::printf("%d of %zu acceptance criteria FAILED\n", failures, criteria.size());
    return failures;
}
