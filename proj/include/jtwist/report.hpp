#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "jtwist/inhom.hpp"
#include "jtwist/qspace.hpp"
#include "jtwist/rep.hpp"

namespace jtwist {

// One verification result in the report stream.
struct CheckReport {
    std::string check;
    nlohmann::json params;
    bool pass = false;
    std::string residual_witness;  // first offending term, or an error note
    double wall_time_ms = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json j{{"check", check},
                         {"params", params},
                         {"status", pass ? "pass" : "fail"},
                         {"wall_time_ms", wall_time_ms}};
        if (!residual_witness.empty()) j["residual_witness"] = residual_witness;
        return j;
    }

    std::string text() const {
        std::string out = pass ? "PASS  " : "FAIL  ";
        out += check;
        if (!params.empty()) {
            out += "  (";
            bool first = true;
            for (auto it = params.begin(); it != params.end(); ++it) {
                if (!first) out += ", ";
                first = false;
                out += it.key() + "=" +
                       (it->is_string() ? it->get<std::string>() : it->dump());
            }
            out += ")";
        }
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%.1f", wall_time_ms);
        out += "  [";
        out += ms;
        out += " ms]";
        if (!pass && !residual_witness.empty()) out += "\n      witness: " + residual_witness;
        return out;
    }
};

inline bool all_pass(const std::vector<CheckReport>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.pass; });
}

// ----- witnesses -------------------------------------------------------------------

inline std::string first_term_witness(const TensorElement& t) {
    for (const auto& [key, s] : t.terms()) {
        if (s.is_zero()) continue;
        std::string legs;
        for (int l = 0; l < t.rank(); ++l) {
            if (l) legs += " (x) ";
            legs += monomial_str(*t.algebra(), key[l]);
        }
        return "(" + s.str() + ") * [" + legs + "]";
    }
    return "";
}

inline std::string first_term_witness(const UEAElement& a) {
    for (const auto& [m, s] : a.terms())
        if (!s.is_zero())
            return "(" + s.str() + ") * " + monomial_str(*a.algebra(), m);
    return "";
}

inline std::string first_term_witness(const ThreeTensor& t) {
    for (const auto& [k, c] : t.terms())
        return "(" + rational_str(c) + ") * [" + t.algebra()->name(k[0]) + " (x) " +
               t.algebra()->name(k[1]) + " (x) " + t.algebra()->name(k[2]) + "]";
    return "";
}

inline std::string index_witness(const std::vector<std::array<int, 3>>& vs) {
    if (vs.empty()) return "";
    return "indices (" + std::to_string(vs[0][0]) + "," + std::to_string(vs[0][1]) + "," +
           std::to_string(vs[0][2]) + ")" +
           (vs.size() > 1 ? " and " + std::to_string(vs.size() - 1) + " more" : "");
}

// ----- runner ----------------------------------------------------------------------

class SuiteRunner {
public:
    explicit SuiteRunner(nlohmann::json params) : params_(std::move(params)) {}

    // fn: () -> std::pair<bool, std::string> (pass, witness); exceptions are
    // reported as failures with the message as witness.
    template <typename Fn>
    void add(const std::string& name, Fn&& fn) {
        CheckReport r;
        r.check = name;
        r.params = params_;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto [pass, witness] = fn();
            r.pass = pass;
            r.residual_witness = std::move(witness);
        } catch (const std::exception& e) {
            r.pass = false;
            r.residual_witness = std::string("error: ") + e.what();
        }
        r.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        reports_.push_back(std::move(r));
    }

    template <typename Fn>
    void residual(const std::string& name, Fn&& fn) {
        add(name, [&] {
            const auto r = fn();
            return std::pair{r.is_zero(), first_term_witness(r)};
        });
    }

    std::vector<CheckReport> take() { return std::move(reports_); }

private:
    nlohmann::json params_;
    std::vector<CheckReport> reports_;
};

inline nlohmann::json spec_params(const TwistSpec& s) {
    nlohmann::json p{{"K", s.order}, {"variant", to_string(s.variant)}};
    if (s.variant != TwistVariant::abstract_L) p["N"] = s.N;
    return p;
}

// ----- verify suites ----------------------------------------------------------------

inline std::vector<CheckReport> suite_twist(const TwistSpec& spec) {
    SuiteRunner run(spec_params(spec));
    const auto g = spec.algebra();
    const int K = spec.order;
    run.residual("twist equation", [&] {
        return twist_equation_residual(build_extended_twist(spec, false),
                                       CoproductMap::classical(g, K));
    });
    run.add("factor-order independence", [&] {
        const bool same = build_extended_twist(spec, false) == build_reversed_twist(spec);
        return std::pair{same, same ? std::string() : "the two construction orders disagree"};
    });
    run.add("counit normalization", [&] {
        const auto F = build_extended_twist(spec, false);
        const auto unit = as_tensor(UEAElement::unit(g, K));
        const bool ok = counit_leg(F, 1) == unit && counit_leg(F, 2) == unit;
        return std::pair{ok, ok ? std::string() : "a counit leg of F is not 1"};
    });
    run.residual("inverse twist solves the equation for the twisted coproduct", [&] {
        const auto F = build_extended_twist(spec, false);
        return twist_equation_residual(invert(F), CoproductMap::conjugated_by(F));
    });
    return run.take();
}

inline std::vector<CheckReport> suite_factorizable(const TwistSpec& spec) {
    SuiteRunner run(spec_params(spec));
    const auto g = spec.algebra();
    const int K = spec.order;
    run.add("factorization identities", [&] {
        const auto F = build_extended_twist(spec, false);
        const auto res = factorizable_residuals(F, CoproductMap::classical(g, K),
                                                CoproductMap::conjugated_by(F));
        if (!res.first.is_zero()) return std::pair{false, first_term_witness(res.first)};
        return std::pair{res.second.is_zero(), first_term_witness(res.second)};
    });
    if (spec.variant != TwistVariant::jordanian_only) {
        run.residual("reversed extension block solves the twist equation", [&] {
            return twist_equation_residual(build_reversed_extension(spec),
                                           CoproductMap::conjugated_by(build_phi(spec)));
        });
        run.add("reversed extension block escapes the factorizable subclass", [&] {
            const auto ext = build_reversed_extension(spec);
            const auto d_phi = CoproductMap::conjugated_by(build_phi(spec));
            const auto r1 =
                d_phi.apply_leg(ext, 1) - embed_pair(ext, 13) * embed_pair(ext, 23);
            return std::pair{!r1.is_zero(),
                             r1.is_zero() ? "factorization residual vanished unexpectedly"
                                          : std::string()};
        });
    }
    return run.take();
}

inline std::vector<CheckReport> suite_qybe(const TwistSpec& spec) {
    SuiteRunner run(spec_params(spec));
    run.residual("quantum Yang-Baxter equation, universal element", [&] {
        return qybe_residual(universal_r(build_extended_twist(spec, false)));
    });
    run.add("intertwining of the twisted coproduct", [&] {
        const auto F = build_extended_twist(spec, false);
        const auto R = universal_r(F);
        const auto dF = CoproductMap::conjugated_by(F);
        const auto g = spec.algebra();
        for (int i = 0; i < g->dim(); ++i) {
            const auto res =
                intertwining_residual(R, dF, UEAElement::generator(g, spec.order, i));
            if (!res.is_zero())
                return std::pair{false, g->name(i) + ": " + first_term_witness(res)};
        }
        return std::pair{true, std::string()};
    });
    if (spec.variant != TwistVariant::abstract_L)
        run.add("quantum Yang-Baxter equation, defining representation", [&] {
            const auto rm =
                evaluate_tensor(universal_r(build_extended_twist(spec, false)));
            const bool ok = matrix_qybe_residual(rm, spec.N).is_zero();
            return std::pair{ok, ok ? std::string() : "matrix residual is nonzero"};
        });
    return run.take();
}

inline std::vector<CheckReport> suite_triangular(const TwistSpec& spec) {
    SuiteRunner run(spec_params(spec));
    run.residual("triangularity, universal element", [&] {
        return triangularity_residual(universal_r(build_extended_twist(spec, false)));
    });
    if (spec.variant != TwistVariant::abstract_L)
        run.add("triangularity, defining representation", [&] {
            const auto rm =
                evaluate_tensor(universal_r(build_extended_twist(spec, false)));
            const bool ok = matrix_triangularity_residual(rm, spec.N).is_zero();
            return std::pair{ok, ok ? std::string() : "matrix residual is nonzero"};
        });
    return run.take();
}

inline std::vector<CheckReport> suite_cybe(int N, const std::vector<Rational>& h_samples) {
    SuiteRunner run(nlohmann::json{{"N", N}});
    run.add("first-order extraction of the classical element", [&] {
        TwistSpec spec;
        spec.variant = TwistVariant::extended_multi;
        spec.N = N;
        spec.order = 2;
        const auto ex = extract_classical_r(universal_r(build_extended_twist(spec, false)));
        if (!ex.ok())
            return std::pair{false, ex.stray.empty() ? std::string("no unit at order zero")
                                                     : ex.stray.front()};
        const bool match = ex.r == classical_r_borel(N, 1) && ex.r.is_antisymmetric();
        return std::pair{match, match ? std::string() : "extracted element is not the wedge preset"};
    });
    run.residual("classical Yang-Baxter equation, boundary element", [&] {
        return cybe_residual(classical_r_borel(N, 1));
    });
    for (const auto& h : h_samples)
        run.residual("classical Yang-Baxter equation, bulk element at h = " + rational_str(h),
                     [&] { return cybe_residual(classical_r_gl(N, h, 1)); });
    return run.take();
}

inline std::vector<CheckReport> suite_hopf(const TwistSpec& spec) {
    SuiteRunner run(spec_params(spec));
    const auto g = spec.algebra();
    const int K = spec.order;

    const auto d0 = CoproductMap::classical(g, K);
    const TwistedStructure ts(build_extended_twist(spec, false));

    struct Structure {
        std::string tag;
        const CoproductMap& map;
        std::function<UEAElement(const UEAElement&)> anti;
    };
    const std::vector<Structure> structures = {
        {"classical", d0, [](const UEAElement& a) { return antipode(a); }},
        {"twisted", ts.coproduct_map(),
         [&ts](const UEAElement& a) { return ts.antipode(a); }}};

    for (const auto& st : structures) {
        run.add("coassociativity, " + st.tag + " structure", [&] {
            for (int i = 0; i < g->dim(); ++i) {
                const auto da = st.map.apply(UEAElement::generator(g, K, i));
                if (!(st.map.apply_leg(da, 1) == st.map.apply_leg(da, 2)))
                    return std::pair{false, "generator " + g->name(i)};
            }
            return std::pair{true, std::string()};
        });
        run.add("counit axiom, " + st.tag + " structure", [&] {
            for (int i = 0; i < g->dim(); ++i) {
                const auto a = UEAElement::generator(g, K, i);
                const auto da = st.map.apply(a);
                if (!(counit_leg(da, 1) == as_tensor(a) && counit_leg(da, 2) == as_tensor(a)))
                    return std::pair{false, "generator " + g->name(i)};
            }
            return std::pair{true, std::string()};
        });
        run.add("antipode axiom, " + st.tag + " structure", [&] {
            for (int i = 0; i < g->dim(); ++i) {
                const auto a = UEAElement::generator(g, K, i);
                const auto da = st.map.apply(a);
                const auto target = UEAElement::unit(g, K) * counit(a);
                for (int leg = 1; leg <= 2; ++leg) {
                    const auto sa = transform_leg(da, leg, st.anti);
                    if (!(multiply_all_legs(sa) == target))
                        return std::pair{false, "generator " + g->name(i)};
                }
            }
            return std::pair{true, std::string()};
        });
    }
    run.add("antipode is an anti-homomorphism, twisted structure", [&] {
        for (int i = 0; i < g->dim(); ++i)
            for (int j = 0; j < g->dim(); ++j) {
                const auto a = UEAElement::generator(g, K, i);
                const auto b = UEAElement::generator(g, K, j);
                if (!(ts.antipode(a * b) == ts.antipode(b) * ts.antipode(a)))
                    return std::pair{false, g->name(i) + ", " + g->name(j)};
            }
        return std::pair{true, std::string()};
    });
    return run.take();
}

inline std::vector<CheckReport> suite_r_expansion(const TwistSpec& spec) {
    SuiteRunner run(spec_params(spec));
    if (spec.variant != TwistVariant::extended_multi) {
        SuiteRunner bad(spec_params(spec));
        bad.add("basis decomposition applies to the chain variant only",
                [] { return std::pair{false, std::string("use --variant extended_multi")}; });
        return bad.take();
    }
    run.residual("double-sum decomposition matches the quantum element", [&] {
        return r_basis_expansion(spec.N, spec.order) -
               universal_r(build_extended_twist(spec, false));
    });
    run.residual("ordered-product decomposition matches the quantum element", [&] {
        return r_ordered_product(spec.N, spec.order) -
               universal_r(build_extended_twist(spec, false));
    });
    return run.take();
}

inline std::vector<CheckReport> suite_real_form(int N, int K) {
    SuiteRunner run(nlohmann::json{{"N", N}, {"K", K}});
    run.add("sign map is a Lie anti-automorphism", [&] {
        const auto vs = anti_automorphism_violations(*make_gl(N), theta_signs_gl(N));
        return std::pair{vs.empty(), index_witness(vs)};
    });
    run.add("sign map is involutive and inverts the twist", [&] {
        const auto rep = real_form_check(N, K);
        if (!rep.involution_ok) return std::pair{false, std::string("a sign is not a square root of 1")};
        return std::pair{rep.twist_inverse_ok,
                         rep.twist_inverse_ok ? std::string()
                                              : "applying the map legwise does not invert F"};
    });
    return run.take();
}

// Expands a named-item report (one line per verified relation) into the
// report stream, sharing the single construction's wall time across items.
template <typename ItemReport>
inline void append_itemized(std::vector<CheckReport>& out, const std::string& label,
                            nlohmann::json params, const std::function<ItemReport()>& make) {
    const auto t0 = std::chrono::steady_clock::now();
    ItemReport rep;
    std::string error;
    try {
        rep = make();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double total =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!error.empty()) {
        out.push_back({label, params, false, "error: " + error, total});
        return;
    }
    const double each = rep.items.empty() ? 0.0 : total / static_cast<double>(rep.items.size());
    for (const auto& item : rep.items)
        out.push_back({item.name, params, item.ok, item.ok ? "" : item.residual, each});
}

inline std::vector<CheckReport> suite_qspace(int N, int K) {
    std::vector<CheckReport> reports;
    append_itemized<QspaceReport>(reports, "deformed-space relation table",
                                  nlohmann::json{{"N", N}, {"K", K}},
                                  [&] { return check_qspace_relations(N, K); });
    return reports;
}

inline std::vector<CheckReport> suite_jacobi(int N) {
    SuiteRunner run(nlohmann::json{{"N", N}});
    const std::vector<std::pair<std::string, AlgebraPtr>> algebras = {
        {"matrix algebra", make_gl(N)},
        {"restricted borel subalgebra", make_borel_restricted(N)},
        {"dual coordinate algebra", make_dual_borel(N)}};
    for (const auto& [label, g] : algebras) {
        run.add("bracket antisymmetry, " + label, [&] {
            const auto vs = antisymmetry_violations(*g);
            if (vs.empty()) return std::pair{true, std::string()};
            return std::pair{false, "indices (" + std::to_string(vs[0][0]) + "," +
                                        std::to_string(vs[0][1]) + ")"};
        });
        run.add("Jacobi identity, " + label, [&] {
            const auto rep = check_jacobi(*g);
            return std::pair{rep.ok(), index_witness(rep.violations)};
        });
    }
    return run.take();
}

inline std::vector<CheckReport> suite_r_hom(int N) {
    SuiteRunner run(nlohmann::json{{"N", N}});
    run.add("dual bracket satisfies the Jacobi identity", [&] {
        const auto rep = check_jacobi(*make_dual_borel(N));
        return std::pair{rep.ok(), index_witness(rep.violations)};
    });
    run.add("boundary element induces an isomorphism onto the borel half", [&] {
        const auto rep = r_hom_check(N);
        if (!rep.bijective) return std::pair{false, std::string("induced map is not bijective")};
        std::string note = "bracket scale " + rational_str(rep.scale);
        for (const auto& n : rep.notes) note += "; " + n;
        return std::pair{rep.scale_consistent,
                         rep.scale_consistent ? std::string() : note};
    });
    return run.take();
}

inline std::vector<CheckReport> suite_inhom(const ActionConstants& a, int K) {
    SuiteRunner run(nlohmann::json{{"d", a.d}, {"K", K}});
    run.add("action validation", [&] {
        const auto rep = validate_action(a);
        if (rep.ok()) return std::pair{true, std::string()};
        const auto& v = rep.violations.front();
        return std::pair{false, v.check + " at (" + std::to_string(v.where[0]) + "," +
                                    std::to_string(v.where[1]) + "," +
                                    std::to_string(v.where[2]) + ")" +
                                    (rep.violations.size() > 1
                                         ? " and " + std::to_string(rep.violations.size() - 1) +
                                               " more"
                                         : "")};
    });
    run.residual("classical Yang-Baxter equation for the canonical element",
                 [&] { return cybe_residual(classical_r_inhom(a)); });
    run.residual("enveloping-algebra Yang-Baxter cross-check",
                 [&] { return uea_cybe_residual(classical_r_inhom(a), 1); });
    auto reports = run.take();
    append_itemized<CocycleReport>(reports, "cocycle twist identities",
                                   nlohmann::json{{"d", a.d}, {"K", K}},
                                   [&] { return check_cocycle_identities(a, K); });
    return reports;
}

// ----- emitted documents --------------------------------------------------------------

inline nlohmann::json tensor_to_json(const TensorElement& t) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, s] : t.terms()) {
        if (s.is_zero()) continue;
        nlohmann::json legs = nlohmann::json::array();
        for (int l = 0; l < t.rank(); ++l) legs.push_back(monomial_str(*t.algebra(), key[l]));
        terms.push_back({{"legs", legs}, {"coefficient", s.str()}});
    }
    return {{"order", t.order()}, {"rank", t.rank()}, {"terms", terms}};
}

inline nlohmann::json two_tensor_to_json(const TwoTensor& r) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [ij, c] : r.terms())
        terms.push_back({{"first", r.algebra()->name(ij.first)},
                         {"second", r.algebra()->name(ij.second)},
                         {"coefficient", rational_str(c)}});
    return {{"terms", terms}};
}

// Renders an antisymmetric two-tensor as a sum of wedges.
inline std::string two_tensor_wedge_str(const TwoTensor& r) {
    if (!r.is_antisymmetric()) throw ConstraintViolation("element is not antisymmetric");
    std::string out;
    for (const auto& [ij, c] : r.terms()) {
        if (ij.first >= ij.second) continue;
        if (!out.empty()) out += "  +  ";
        out += "(" + rational_str(c) + ") " + r.algebra()->name(ij.first) + " ^ " +
               r.algebra()->name(ij.second);
    }
    return out.empty() ? "0" : out;
}

} // namespace jtwist
