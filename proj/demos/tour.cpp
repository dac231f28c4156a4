// A guided tour of the library: builds the deformation data for small ranks
// and prints each object it verifies.
//
// Everything shown here is computed with exact rational coefficients,
// truncated at a chosen order K in the deformation parameter xi.

#include <jtwist/report.hpp>

#include <iostream>
#include <string>

using namespace jtwist;

namespace {
void heading(const std::string& s) { std::cout << "\n== " << s << " ==\n"; }
}

int main() {
    std::cout << "exact deformation tour (all coefficients are rationals)\n";

    // 1. The twist element for the chain variant on the rank-3 matrix algebra.
    TwistSpec spec;
    spec.variant = TwistVariant::extended_multi;
    spec.N = 3;
    spec.order = 2;
    const auto F = build_extended_twist(spec);
    heading("twist element F, N=3, truncated at order 2");
    std::cout << "F = " << F.str() << "\n";

    // 2. It solves the twist equation: F12 (D(x)id)(F) = F23 (id(x)D)(F).
    const auto residual = twist_equation_residual(F, CoproductMap::classical(spec.algebra(), 2));
    heading("twist equation residual");
    std::cout << "F12 (D(x)id)(F) - F23 (id(x)D)(F) = " << residual.str() << "\n";

    // 3. Deformed coproducts and antipodes.
    TwistedStructure ts(F);
    heading("deformed structure maps");
    for (const std::string name : {"E12", "E13", "H13"}) {
        const auto a = UEAElement::generator(spec.algebra(), spec.order, name);
        std::cout << "D_F(" << name << ")  = " << ts.coproduct(a).str() << "\n";
        std::cout << "S_F(" << name << ")  = " << ts.antipode(a).str() << "\n";
    }

    // 4. The triangular R-matrix in the defining representation.
    heading("R-matrix in the defining representation, N=2, order 3");
    std::cout << export_r_matrix(2, 3).to_text();

    // 5. Its classical limit: R = 1 + xi r + O(xi^2) with r a solution of the
    //    classical Yang-Baxter equation.
    const auto r = classical_r_borel(3, 1);
    heading("classical boundary element, N=3");
    std::cout << "r = " << two_tensor_wedge_str(r) << "\n";
    std::cout << "[[r,r]] = " << cybe_residual(r).str() << "\n";

    // 6. The deformed coordinate space: star products reproduce the
    //    commutation relations of the coordinates.
    heading("deformed coordinate relations, N=3, order 3");
    for (const auto& item : check_qspace_relations(3, 3).items)
        std::cout << (item.ok ? "holds " : "FAILS ") << item.name << "\n";

    // 7. The same machinery in exponential coordinates: an action of an
    //    abelian algebra on itself produces a cocycle twist from closed-form
    //    series, checked against the same twist equation.
    const auto a = action_seed_1d();
    heading("cocycle twist for the one-dimensional dilation action");
    const auto rep = check_cocycle_identities(a, 4);
    for (const auto& item : rep.items)
        std::cout << (item.ok ? "holds " : "FAILS ") << item.name << "\n";

    std::cout << "\nAll objects above were constructed and checked exactly, at the\n"
                 "stated truncation orders. Run the `jtwist` tool for the full suites.\n";
    return 0;
}
