#include <catch2/catch_amalgamated.hpp>

#include "jtwist/lie_algebra.hpp"

using namespace jtwist;

namespace {

// Single bracket as a dense coordinate vector.
std::vector<Rational> bracket_vec(const LieAlgebra& g, int i, int j) {
    std::vector<Rational> v(g.dim(), Rational(0));
    for (const auto& [k, c] : g.bracket(i, j)) v[k] = c;
    return v;
}

std::vector<Rational> unit_vec(const LieAlgebra& g, int k, const Rational& c = 1) {
    std::vector<Rational> v(g.dim(), Rational(0));
    v[k] = c;
    return v;
}

AlgebraPtr perturbed_copy(const LieAlgebra& g, int i, int j, int k, const Rational& delta) {
    const int d = g.dim();
    std::vector<Rational> c(static_cast<std::size_t>(d) * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e)
                c[(static_cast<std::size_t>(a) * d + b) * d + e] = g.c(a, b, e);
    c[(static_cast<std::size_t>(i) * d + j) * d + k] += delta;
    return std::make_shared<const LieAlgebra>(AlgebraMeta{}, g.names(), std::move(c));
}

} // namespace

TEST_CASE("gl(N) structure constants") {
    const auto gl2 = make_gl(2);
    SECTION("[E12, E21] = E11 - E22") {
        auto v = bracket_vec(*gl2, gl_index(2, 1, 2), gl_index(2, 2, 1));
        std::vector<Rational> expect(4, Rational(0));
        expect[gl_index(2, 1, 1)] = 1;
        expect[gl_index(2, 2, 2)] = -1;
        REQUIRE(v == expect);
    }
    SECTION("[E11, E11] = 0") {
        REQUIRE(gl2->bracket(gl_index(2, 1, 1), gl_index(2, 1, 1)).empty());
    }
    SECTION("[E12, E23] = E13 in gl(3)") {
        const auto gl3 = make_gl(3);
        REQUIRE(bracket_vec(*gl3, gl_index(3, 1, 2), gl_index(3, 2, 3)) ==
                unit_vec(*gl3, gl_index(3, 1, 3)));
    }
    SECTION("N < 2 rejected") {
        REQUIRE_THROWS_AS(make_gl(1), ConstraintViolation);
    }
}

TEST_CASE("restricted Borel subalgebra") {
    SECTION("N=2 is the two-generator Borel with [H,E] = 2E") {
        const auto b2 = make_borel_restricted(2);
        REQUIRE(b2->dim() == 2);
        REQUIRE(bracket_vec(*b2, 0, 1) == unit_vec(*b2, 1, 2));
    }
    SECTION("N=3: [E12, E23] = E13 and [E12, E13] = 0") {
        const auto b3 = make_borel_restricted(3);
        REQUIRE(b3->dim() == 4);
        const int a = b3->index_of("E12"), b = b3->index_of("E23"), e = b3->index_of("E13");
        REQUIRE(bracket_vec(*b3, a, b) == unit_vec(*b3, e));
        REQUIRE(b3->bracket(a, e).empty());
    }
    SECTION("dimension is 2(N-1)") {
        for (int N = 2; N <= 5; ++N) REQUIRE(make_borel_restricted(N)->dim() == 2 * (N - 1));
    }
    SECTION("brackets agree with gl(N) through the embedding") {
        const int N = 4;
        const auto b = make_borel_restricted(N);
        const auto gl = make_gl(N);
        const auto& embed = b->meta().gl_embedding;
        for (int i = 0; i < b->dim(); ++i)
            for (int j = 0; j < b->dim(); ++j) {
                // bracket in gl of the embedded generators
                auto glv = detail::gl_bracket_vec(*gl, embed[i], embed[j]);
                // embedded image of the Borel bracket
                std::map<int, Rational> expect;
                for (const auto& [k, c] : b->bracket(i, j))
                    for (const auto& [p, a] : embed[k]) {
                        auto& cur = expect[p];
                        cur += c * a;
                        if (cur == 0) expect.erase(p);
                    }
                REQUIRE(glv == expect);
            }
    }
    SECTION("weights: [H, A-type] = A, [H, B-type] = B, [H, E] = 2E") {
        const auto b4 = make_borel_restricted(4);
        const auto& m = b4->meta();
        for (int a : m.a_indices) REQUIRE(bracket_vec(*b4, m.h_index, a) == unit_vec(*b4, a));
        for (int bb : m.b_indices) REQUIRE(bracket_vec(*b4, m.h_index, bb) == unit_vec(*b4, bb));
        REQUIRE(bracket_vec(*b4, m.h_index, m.e_index) == unit_vec(*b4, m.e_index, 2));
    }
}

TEST_CASE("abstract four-generator algebra") {
    const auto L = make_L_abstract(rat(1, 2), rat(3));
    SECTION("defining brackets") {
        REQUIRE(bracket_vec(*L, 0, 1) == unit_vec(*L, 1, 2));        // [H,E] = 2E
        REQUIRE(bracket_vec(*L, 0, 2) == unit_vec(*L, 2, rat(1, 2))); // [H,A] = alpha A
        REQUIRE(bracket_vec(*L, 0, 3) == unit_vec(*L, 3, rat(3, 2))); // [H,B] = (2-alpha) B
        REQUIRE(L->bracket(1, 2).empty());
        REQUIRE(L->bracket(1, 3).empty());
        REQUIRE(bracket_vec(*L, 2, 3) == unit_vec(*L, 1, 3)); // [A,B] = gamma E
    }
    SECTION("Jacobi holds for any alpha (alpha + beta = 2)") {
        for (const auto& alpha : {rat(0), rat(1), rat(2), rat(-5, 3), rat(7, 2)})
            REQUIRE(check_jacobi(*make_L_abstract(alpha, rat(2))).ok());
    }
    SECTION("gamma = 0 gives commuting A, B") {
        REQUIRE(make_L_abstract(rat(1), rat(0))->bracket(2, 3).empty());
    }
}

TEST_CASE("dual Borel sector") {
    const auto d3 = make_dual_borel(3);
    SECTION("coordinate-level products match the defining table") {
        using P = std::pair<int, int>;
        // mu'(Y_12, Y_13) = -Y_12
        auto r = detail::mu_prime_coord(3, P{1, 2}, P{1, 3});
        REQUIRE(r == decltype(r){{P{1, 2}, Rational(-1)}});
        // mu'(Y_11, Y_13) = -(Y_11 - Y_33)
        r = detail::mu_prime_coord(3, P{1, 1}, P{1, 3});
        REQUIRE(r == decltype(r){{P{1, 1}, Rational(-1)}, {P{3, 3}, Rational(1)}});
        // mu'(Y_12, Y_12) = 0 and the delta_i1-killed case
        REQUIRE(detail::mu_prime_coord(3, P{1, 2}, P{1, 2}).empty());
        REQUIRE(detail::mu_prime_coord(4, P{1, 2}, P{1, 3}).empty());
    }
    SECTION("sector brackets") {
        const int F = d3->index_of("Y13"), w = d3->index_of("Y23");
        const int D = d3->index_of("D"), u = d3->index_of("Y12");
        REQUIRE(bracket_vec(*d3, u, F) == unit_vec(*d3, u, -1));  // [Y12, Y13] = -Y12
        REQUIRE(bracket_vec(*d3, F, w) == unit_vec(*d3, w));      // [Y13, Y23] = Y23
        REQUIRE(bracket_vec(*d3, D, F) == unit_vec(*d3, D, -2));  // [D, Y13] = -2D
        REQUIRE(bracket_vec(*d3, u, w) == unit_vec(*d3, D, -2));  // [Y12, Y23] = -2D
        REQUIRE(d3->bracket(D, u).empty());
        REQUIRE(d3->bracket(D, w).empty());
    }
    SECTION("off-diagonal u/w pairs commute at N=4") {
        const auto d4 = make_dual_borel(4);
        REQUIRE(d4->bracket(d4->index_of("Y12"), d4->index_of("Y13")).empty());
        REQUIRE(d4->bracket(d4->index_of("Y24"), d4->index_of("Y34")).empty());
        REQUIRE(bracket_vec(*d4, d4->index_of("Y13"), d4->index_of("Y34")) ==
                unit_vec(*d4, d4->index_of("D"), -2));
        REQUIRE(d4->bracket(d4->index_of("Y12"), d4->index_of("Y34")).empty());
    }
    SECTION("N < 3 rejected") {
        REQUIRE_THROWS_AS(make_dual_borel(2), ConstraintViolation);
    }
}

TEST_CASE("Jacobi and antisymmetry for every constructor") {
    std::vector<AlgebraPtr> algebras = {
        make_gl(2),  make_gl(3),  make_gl(4),
        make_borel_restricted(2), make_borel_restricted(3), make_borel_restricted(4),
        make_L_abstract(rat(1), rat(2)), make_L_abstract(rat(1, 2), rat(0)),
        make_dual_borel(3), make_dual_borel(4)};
    for (const auto& g : algebras) {
        INFO("algebra kind " << g->meta().kind << " dim " << g->dim());
        REQUIRE(antisymmetry_violations(*g).empty());
        REQUIRE(check_jacobi(*g).ok());
    }
    SECTION("perturbed constants are caught") {
        const auto bad = perturbed_copy(*make_gl(3), 1, 2, 3, rat(1));
        REQUIRE_FALSE(check_jacobi(*bad).ok());
    }
}

TEST_CASE("classical r-matrices at the Lie level") {
    SECTION("boundary r-matrix is antisymmetric and solves CYBE") {
        for (int N : {3, 4}) {
            const auto r = classical_r_borel(N, rat(1));
            REQUIRE(r.is_antisymmetric());
            REQUIRE(cybe_residual(r).is_zero());
        }
    }
    SECTION("wrong extension weight breaks CYBE") {
        const auto alg = make_borel_restricted(3);
        const auto& m = alg->meta();
        TwoTensor r(alg);
        r.add_wedge(m.h_index, m.e_index, rat(-1));
        r.add_wedge(m.a_indices[0], m.b_indices[0], rat(-1)); // should be -2
        REQUIRE_FALSE(cybe_residual(r).is_zero());
    }
    SECTION("two-parameter r-matrix solves CYBE; h-polynomial sampled at 3 points") {
        // residual = h^2 P + h xi Q + xi^2 S; three h samples at xi = 1 force
        // P = Q = S = 0, hence the identity for all h and xi.
        for (const auto& h : {rat(1), rat(2), rat(1, 2)})
            REQUIRE(cybe_residual(classical_r_gl(3, h, rat(1))).is_zero());
        REQUIRE(cybe_residual(classical_r_gl(2, rat(3), rat(1))).is_zero());
        REQUIRE(cybe_residual(classical_r_gl(4, rat(1), rat(2))).is_zero());
    }
    SECTION("h = 0 limit agrees with the Borel preset under the embedding") {
        const int N = 3;
        const auto rb = classical_r_borel(N, rat(5, 7));
        const auto rg = classical_r_gl(N, rat(0), rat(5, 7));
        const auto& embed = rb.algebra()->meta().gl_embedding;
        TwoTensor lifted(make_gl(N));
        for (const auto& [ij, c] : rb.terms())
            for (const auto& [p, a] : embed[ij.first])
                for (const auto& [q, b] : embed[ij.second]) lifted.add(p, q, c * a * b);
        REQUIRE(lifted == rg);
    }
}

TEST_CASE("dual-to-Borel map is an isomorphism up to one scale") {
    for (int N : {3, 4}) {
        const auto rep = r_hom_check(N);
        INFO("N = " << N);
        REQUIRE(rep.bijective);
        REQUIRE(rep.scale_consistent);
        REQUIRE(rep.scale == rat(-1));
    }
}

TEST_CASE("index-sign involution is an anti-automorphism") {
    for (int N : {2, 3, 4})
        REQUIRE(anti_automorphism_violations(*make_gl(N), theta_signs_gl(N)).empty());
    for (int N : {2, 3, 4})
        REQUIRE(anti_automorphism_violations(*make_borel_restricted(N), theta_signs_borel(N))
                    .empty());
    SECTION("a wrong sign pattern is caught") {
        auto s = theta_signs_gl(2);
        s[gl_index(2, 1, 2)] = -s[gl_index(2, 1, 2)];
        REQUIRE_FALSE(anti_automorphism_violations(*make_gl(2), s).empty());
    }
}

TEST_CASE("algebra JSON round trip") {
    const auto g = make_borel_restricted(3);
    const auto j = algebra_to_json(*g);
    const auto back = algebra_from_json(j);
    REQUIRE(back->dim() == g->dim());
    REQUIRE(back->names() == g->names());
    for (int i = 0; i < g->dim(); ++i)
        for (int jj = 0; jj < g->dim(); ++jj)
            for (int k = 0; k < g->dim(); ++k) REQUIRE(back->c(i, jj, k) == g->c(i, jj, k));
    REQUIRE_THROWS_AS(algebra_from_json(nlohmann::json{{"dim", 2}}), ParseError);
}
