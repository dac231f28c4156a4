// Command-line driver: runs named verification suites over the deformation
// engine and exports twist / R-matrix documents.
//
//   jtwist verify <suite> [--n INT] [--order INT] [--variant NAME]
//                         [--coeffs FILE] [--constants FILE] [--h RATIONAL]...
//                         [--format json|text] [--out FILE] [--config FILE]
//   jtwist emit <object>  [--n INT] [--order INT] [--variant NAME]
//                         [--format json|text] [--out FILE] [--config FILE]
//
// Exit status is 0 iff every selected check passes.  The environment variable
// JTWIST_ORDER supplies the default truncation order; a config file (JSON with
// the long option names as keys) fills in anything not given as a flag.

#include <CLI11.hpp>

#include <jtwist/report.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace jtwist;

struct Options {
    std::string suite;   // verify
    std::string object;  // emit
    int n = 3;
    int order = 4;
    std::string variant = "extended_multi";
    std::string coeffs_file;
    std::string constants_file;
    std::vector<std::string> h_values;
    std::string format = "text";
    std::string out_file;
    std::string config_file;
};

const std::set<std::string> kSuites = {"twist",  "factorizable", "qybe",   "triangular",
                                       "cybe",   "hopf-axioms",  "r-expansion",
                                       "real-form", "qspace",    "jacobi", "r-hom",
                                       "inhom"};
const std::set<std::string> kObjects = {"r-matrix", "twist", "classical-r"};

nlohmann::json load_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + what + " file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(what + " file " + path + " is not valid JSON: " + e.what());
    }
    return j;
}

// Fills options the flags did not set: first from the config file, then (for
// the truncation order) from the environment.
void apply_config_and_env(const CLI::App& cmd, Options& opt) {
    nlohmann::json cfg;
    if (!opt.config_file.empty()) cfg = load_json_file(opt.config_file, "config");
    const auto unset = [&](const std::string& flag) { return cmd.count(flag) == 0; };

    if (cfg.is_object()) {
        if (cfg.contains("n") && unset("--n")) opt.n = cfg.at("n").get<int>();
        if (cfg.contains("order") && unset("--order")) opt.order = cfg.at("order").get<int>();
        if (cfg.contains("variant") && unset("--variant"))
            opt.variant = cfg.at("variant").get<std::string>();
        if (cfg.contains("coeffs") && unset("--coeffs"))
            opt.coeffs_file = cfg.at("coeffs").get<std::string>();
        if (cfg.contains("constants") && unset("--constants"))
            opt.constants_file = cfg.at("constants").get<std::string>();
        if (cfg.contains("format") && unset("--format"))
            opt.format = cfg.at("format").get<std::string>();
        if (cfg.contains("out") && unset("--out")) opt.out_file = cfg.at("out").get<std::string>();
        if (cfg.contains("h") && unset("--h")) {
            opt.h_values.clear();
            if (cfg.at("h").is_array())
                for (const auto& v : cfg.at("h")) opt.h_values.push_back(v.get<std::string>());
            else
                opt.h_values.push_back(cfg.at("h").get<std::string>());
        }
    } else if (!opt.config_file.empty()) {
        throw ParseError("config file must hold a JSON object");
    }

    if (cmd.count("--order") == 0 && !(cfg.is_object() && cfg.contains("order"))) {
        if (const char* env = std::getenv("JTWIST_ORDER")) {
            try {
                opt.order = std::stoi(env);
            } catch (const std::exception&) {
                throw ParseError("JTWIST_ORDER is not an integer: " + std::string(env));
            }
        }
    }
}

TwistSpec make_spec(const Options& opt) {
    TwistSpec spec;
    spec.variant = twist_variant_from_string(opt.variant);
    spec.N = opt.n;
    spec.order = opt.order;
    if (!opt.coeffs_file.empty())
        spec.coefficients =
            ExtensionCoefficients::from_json(load_json_file(opt.coeffs_file, "coefficients"));
    return spec;
}

ActionConstants load_constants(const Options& opt) {
    if (opt.constants_file.empty()) return action_seed_1d();
    return ActionConstants::from_json(load_json_file(opt.constants_file, "action constants"));
}

void write_output(const Options& opt, const std::string& body) {
    if (opt.out_file.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(opt.out_file);
    if (!out) throw Error("cannot open output file: " + opt.out_file);
    out << body;
}

int run_verify(const Options& opt) {
    if (opt.order < 1) throw ParseError("deformation checks need --order >= 1");
    if (opt.n < 2) throw ParseError("--n must be at least 2");

    std::vector<CheckReport> reports;
    if (opt.suite == "twist") reports = suite_twist(make_spec(opt));
    else if (opt.suite == "factorizable") reports = suite_factorizable(make_spec(opt));
    else if (opt.suite == "qybe") reports = suite_qybe(make_spec(opt));
    else if (opt.suite == "triangular") reports = suite_triangular(make_spec(opt));
    else if (opt.suite == "cybe") {
        std::vector<Rational> hs;
        for (const auto& h : opt.h_values) hs.push_back(parse_rational(h));
        reports = suite_cybe(opt.n, hs);
    } else if (opt.suite == "hopf-axioms") reports = suite_hopf(make_spec(opt));
    else if (opt.suite == "r-expansion") reports = suite_r_expansion(make_spec(opt));
    else if (opt.suite == "real-form") reports = suite_real_form(opt.n, opt.order);
    else if (opt.suite == "qspace") reports = suite_qspace(opt.n, opt.order);
    else if (opt.suite == "jacobi") reports = suite_jacobi(opt.n);
    else if (opt.suite == "r-hom") reports = suite_r_hom(opt.n);
    else if (opt.suite == "inhom") reports = suite_inhom(load_constants(opt), opt.order);
    else throw ParseError("unknown suite: " + opt.suite);

    const bool pass = all_pass(reports);
    std::string body;
    if (opt.format == "json") {
        nlohmann::json j{{"suite", opt.suite}, {"status", pass ? "pass" : "fail"}};
        auto arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        j["reports"] = arr;
        body = j.dump(2) + "\n";
    } else {
        for (const auto& r : reports) body += r.text() + "\n";
        body += std::string(pass ? "OK" : "FAILED") + ": " + std::to_string(reports.size()) +
                " checks in suite '" + opt.suite + "'\n";
    }
    write_output(opt, body);
    return pass ? 0 : 1;
}

int run_emit(const Options& opt) {
    if (opt.order < 1) throw ParseError("emitting deformed objects needs --order >= 1");
    if (opt.n < 2) throw ParseError("--n must be at least 2");

    std::string body;
    if (opt.object == "r-matrix") {
        const auto doc = export_r_matrix(opt.n, opt.order);
        body = opt.format == "json" ? doc.to_json().dump(2) + "\n" : doc.to_text();
    } else if (opt.object == "twist") {
        const auto F = build_extended_twist(make_spec(opt), false);
        if (opt.format == "json") {
            auto j = tensor_to_json(F);
            j["object"] = "twist";
            j["params"] = spec_params(make_spec(opt));
            body = j.dump(2) + "\n";
        } else {
            body = "F = " + F.str() + "\n";
        }
    } else if (opt.object == "classical-r") {
        const auto r = classical_r_borel(opt.n, 1);
        if (opt.format == "json") {
            auto j = two_tensor_to_json(r);
            j["object"] = "classical-r";
            j["params"] = {{"N", opt.n}};
            body = j.dump(2) + "\n";
        } else {
            body = "r = " + two_tensor_wedge_str(r) + "\n";
        }
    } else {
        throw ParseError("unknown object: " + opt.object);
    }
    write_output(opt, body);
    return 0;
}

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->set_help_flag("--help", "print this help message and exit");
    cmd->add_option("--n", opt.n, "rank parameter of the matrix algebra (default 3)");
    cmd->add_option("--order", opt.order,
                    "truncation order in the deformation parameter (default 4, or JTWIST_ORDER)");
    cmd->add_option("--variant", opt.variant,
                    "twist variant: jordanian_only | extended_single | extended_multi | abstract_L");
    cmd->add_option("--coeffs", opt.coeffs_file, "extension coefficients JSON file");
    cmd->add_option("--constants", opt.constants_file, "action constants JSON file");
    cmd->add_option("--h", opt.h_values, "rational parameter sample (repeatable)");
    cmd->add_option("--format", opt.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", opt.out_file, "write the report to a file instead of stdout");
    cmd->add_option("--config", opt.config_file,
                    "JSON config file with option-name keys; flags win over the file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of jordanian-family deformations"};
    app.require_subcommand(1);
    Options opt;

    auto* verify = app.add_subcommand("verify", "run a named check suite");
    verify->add_option("suite", opt.suite, "one of: twist factorizable qybe triangular cybe "
                                           "hopf-axioms r-expansion real-form qspace jacobi "
                                           "r-hom inhom")
        ->required()
        ->check(CLI::IsMember(kSuites));
    add_common_options(verify, opt);

    auto* emit = app.add_subcommand("emit", "export a deformed object");
    emit->add_option("object", opt.object, "one of: r-matrix twist classical-r")
        ->required()
        ->check(CLI::IsMember(kObjects));
    add_common_options(emit, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            apply_config_and_env(*verify, opt);
            return run_verify(opt);
        }
        apply_config_and_env(*emit, opt);
        return run_emit(opt);
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
