// Command-line front end: statistics, reductions, per-tuple solving,
// tree/graph construction, path simulation, family generation, and
// verification of externally supplied artifacts.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ruletree/constructions.hpp"
#include "ruletree/core.hpp"
#include "ruletree/oracle.hpp"
#include "ruletree/pathsim.hpp"
#include "ruletree/system_ops.hpp"
#include "ruletree/textio.hpp"
#include "ruletree/trees.hpp"

namespace rt = ruletree;

namespace {

struct Options {
    rt::Limits limits;
    rt::Syntax syntax = rt::Syntax::ascii_decimal;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

rt::RuleSystem load_system(const std::string& path, const Options& opt) {
    return rt::parse_system(read_input(path), opt.syntax);
}

rt::ProblemKind problem_of(const std::string& text) {
    auto kind = rt::parse_problem_kind(text);
    if (!kind) throw std::runtime_error("unknown problem '" + text + "'");
    return *kind;
}

// Positional tuple over A(S) in ascending index order; `*` only for the
// extended problems, and a numeric value outside V_S(a) is folded to `*`
// there as well.
rt::ValueTuple parse_tuple(const rt::RuleSystem& s, const std::string& text,
                           rt::ProblemKind kind) {
    std::vector<rt::Value> values;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part == "*") {
            values.push_back(rt::Value::star());
        } else {
            try {
                values.push_back(rt::Value(std::stoull(part)));
            } catch (const std::exception&) {
                throw std::runtime_error("bad tuple value '" + part + "'");
            }
        }
    }
    if (values.size() != s.stats().attribute_count) {
        throw std::runtime_error("expected " + std::to_string(s.stats().attribute_count) +
                                 " tuple values over " +
                                 std::to_string(s.stats().attribute_count) + " attributes");
    }
    if (rt::is_extended(kind)) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].is_star()) continue;
            const auto& dom = s.stats().values[i];
            if (!std::binary_search(dom.begin(), dom.end(), values[i])) {
                values[i] = rt::Value::star();
            }
        }
    }
    rt::ValueTuple t(s.stats().attributes, values);
    if (!rt::is_extended(kind) && !t.in_base_domain(s)) {
        throw std::runtime_error("tuple is not in V(S); the o-problems allow only values "
                                 "occurring in the system");
    }
    return t;
}

std::string attr_set_text(const std::vector<rt::Attribute>& attrs) {
    std::string out = "{";
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i > 0) out += ",";
        out += rt::to_string(attrs[i]);
    }
    return out + "}";
}

std::string rule_set_text(const std::vector<std::size_t>& rules) {
    std::string out = "{";
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i > 0) out += ",";
        out += "r" + std::to_string(rules[i]);
    }
    return out + "}";
}

template <typename Fn>
std::string capped(Fn fn) {
    try {
        return std::to_string(fn());
    } catch (const rt::CapExceeded&) {
        return "n/a (cap)";
    }
}

// ── Subcommands ─────────────────────────────────────────────────────────────

int run_stats(const std::string& file, const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    const auto& st = s.stats();
    std::cout << "rules: " << s.size() << "\n";
    std::cout << "n: " << st.attribute_count << "\n";
    std::cout << "d: " << st.max_rule_length << "\n";
    std::cout << "k: " << st.max_value_count << "\n";
    std::cout << "decisions: {";
    for (std::size_t i = 0; i < st.decisions.size(); ++i) {
        std::cout << (i ? "," : "") << st.decisions[i];
    }
    std::cout << "}\n";
    std::cout << "attributes: " << attr_set_text(st.attributes) << "\n";
    for (std::size_t i = 0; i < st.attributes.size(); ++i) {
        std::cout << "V(" << rt::to_string(st.attributes[i]) << "): {";
        for (std::size_t j = 0; j < st.values[i].size(); ++j) {
            std::cout << (j ? "," : "") << rt::to_string(st.values[i][j]);
        }
        std::cout << "}\n";
    }
    std::cout << "size: " << rt::size_of(s) << "\n";
    std::cout << "beta: " << capped([&] { return rt::beta_of(s, opt.limits); }) << "\n";
    std::cout << "beta+: " << capped([&] { return rt::beta_plus_of(s, opt.limits); }) << "\n";
    std::cout << "reduced: " << (rt::is_reduced_form(s) ? "yes" : "no") << "\n";
    try {
        std::cout << "complete: " << (rt::is_complete(s, opt.limits) ? "yes" : "no") << "\n";
    } catch (const rt::CapExceeded&) {
        std::cout << "complete: n/a (cap)\n";
    }
    return 0;
}

int run_reduce(const std::string& file, const std::string& flavor, const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    if (flavor != "sr" && flavor != "ad") throw std::runtime_error("--flavor must be sr or ad");
    rt::RuleSystem reduced = flavor == "sr" ? rt::reduce_sr(s) : rt::reduce_ad(s);
    std::cout << rt::serialize_system(reduced, opt.syntax);
    return 0;
}

int run_solve(const std::string& file, const std::string& problem, const std::string& tuple,
              const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    rt::ProblemKind kind = problem_of(problem);
    rt::ValueTuple t = parse_tuple(s, tuple, kind);
    rt::SolutionSpec spec = rt::solve_direct(s, t, kind);
    std::vector<std::size_t> solution = spec.canonical(s);
    std::cout << "solution (" << rt::to_string(kind) << "): " << rule_set_text(solution) << "\n";
    std::cout << "decisions: {";
    for (std::size_t i = 0; i < spec.decisions.size(); ++i) {
        std::cout << (i ? "," : "") << spec.decisions[i];
    }
    std::cout << "}\n";
    for (auto idx : solution) {
        std::cout << "r" << idx << ": " << rt::serialize_rule(s.rule(idx), opt.syntax) << "\n";
    }
    return 0;
}

int run_build_tree(const std::string& file, const std::string& problem,
                   const std::string& optimal, bool poly, const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    rt::ProblemKind kind = problem_of(problem);
    rt::DecisionTree tree = [&] {
        if (poly) {
            const auto& st = s.stats();
            if (st.max_rule_length <= 1 &&
                (kind == rt::ProblemKind::sr || kind == rt::ProblemKind::esr)) {
                return rt::build_tree_d1(s, kind);
            }
            if (st.max_value_count == 1 && !rt::is_extended(kind)) {
                return rt::build_path_tree_k1(s, kind);
            }
            throw std::runtime_error("no polynomial builder applies: need d(S)=1 with sr/esr, "
                                     "or k(S)=1 with sr/ad/ar (try build-dag)");
        }
        if (optimal == "h") return rt::min_depth(s, kind, opt.limits).witness;
        if (optimal == "l") return rt::min_nodes(s, kind, opt.limits).witness;
        if (optimal == "t") return rt::min_distinct_terminals(s, kind, opt.limits).witness;
        throw std::runtime_error("--optimal must be h, l or t");
    }();
    rt::TreeMetrics m = rt::metrics(tree);
    std::cout << "// h=" << m.depth << " L=" << m.node_count << " T="
              << m.distinct_terminal_labels << "\n";
    std::cout << rt::export_dot(tree, s);
    return 0;
}

int run_build_dag(const std::string& file, const std::string& problem, bool writing,
                  const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    rt::ProblemKind kind = problem_of(problem);
    if (writing) {
        rt::DecisionGraphWithWriting g = rt::build_dagw_chain(s, kind);
        std::cout << "// L=" << rt::metrics(g).node_count << "\n";
        std::cout << rt::export_dot(g, s);
    } else {
        rt::DecisionGraph g = rt::build_dag_chain(s, kind);
        std::cout << "// L=" << rt::metrics(g).node_count << "\n";
        std::cout << rt::export_dot(g, s);
    }
    return 0;
}

int run_simulate(const std::string& file, const std::string& problem, const std::string& tuple,
                 const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    rt::ProblemKind kind = problem_of(problem);
    rt::ValueTuple t = parse_tuple(s, tuple, kind);

    rt::PathTrace trace;
    std::string bound_label;
    std::string bound_value;
    switch (kind) {
        case rt::ProblemKind::ar:
        case rt::ProblemKind::ear:
            trace = rt::simulate_ar(s, t, kind);
            bound_label = "d^2 x beta_C+";
            bound_value = capped([&] {
                const auto& st = s.stats();
                return st.max_rule_length * st.max_rule_length *
                       rt::beta_measures(s, kind, opt.limits).beta_c_plus;
            });
            break;
        case rt::ProblemKind::ad:
        case rt::ProblemKind::sr:
            trace = rt::simulate_ad_sr(s, t, kind);
            bound_label = "d^2 x beta_C+";
            bound_value = capped([&] {
                const auto& st = s.stats();
                return st.max_rule_length * st.max_rule_length *
                       rt::beta_measures(s, kind, opt.limits).beta_c_plus;
            });
            break;
        default: {
            trace = rt::simulate_esr_ead(s, t, kind);
            bound_label = "d(I_C(S'))^2 x beta_C+(S')";
            bound_value = capped([&] {
                rt::RuleSystem reduced =
                    kind == rt::ProblemKind::ead ? rt::reduce_ad(s) : rt::reduce_sr(s);
                rt::ReductionFlavor flavor = kind == rt::ProblemKind::ead
                                                 ? rt::ReductionFlavor::ad
                                                 : rt::ReductionFlavor::sr;
                std::size_t d_ic = rt::subsystem_i(reduced, flavor).stats().max_rule_length;
                if (reduced.stats().attribute_count == 0) return std::size_t{0};
                return d_ic * d_ic * rt::beta_measures(reduced, kind, opt.limits).beta_c_plus;
            });
            break;
        }
    }

    std::cout << "problem: " << rt::to_string(kind) << "\n";
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const auto& round = trace.rounds[i];
        std::cout << "round " << (i + 1) << ": cover=" << attr_set_text(round.cover)
                  << " acquired={";
        const auto& eqs = round.acquired.equations();
        for (std::size_t j = 0; j < eqs.size(); ++j) {
            std::cout << (j ? "," : "") << rt::to_string(eqs[j]);
        }
        std::cout << "}\n";
    }
    std::cout << "result: " << rule_set_text(trace.result) << "\n";
    std::cout << "queried: " << trace.queried << "\n";
    std::cout << "rounds: " << trace.rounds.size() << "\n";
    std::cout << "bound (" << bound_label << "): " << bound_value << "\n";
    return 0;
}

int run_gen_family(const std::string& which, std::size_t n, std::size_t k, std::size_t d,
                   const Options& opt) {
    auto kind = rt::parse_family_kind(which);
    if (!kind) throw std::runtime_error("unknown family '" + which + "'");
    rt::RuleSystem s = rt::gen_family(*kind, rt::FamilyParams{n, k, d});
    std::cout << rt::serialize_system(s, opt.syntax);
    return 0;
}

int run_verify(const std::string& file, const std::string& problem, const std::string& artifact,
               const Options& opt) {
    rt::RuleSystem s = load_system(file, opt);
    rt::ProblemKind kind = problem_of(problem);
    rt::Artifact loaded = rt::parse_dot(read_input(artifact));
    bool ok = std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, rt::DecisionTree>) {
                return rt::validate_tree(a, s, kind);
            } else {
                return rt::validate_graph(a, s, kind, opt.limits);
            }
        },
        loaded);
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compile and analyze decision rule systems"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    bool binary_indices = false;
    std::size_t max_attrs = 0, max_enum = 0;
    app.add_flag("--binary-indices", binary_indices,
                 "read/write the word alphabet with binary numbers");
    app.add_option("--max-attrs", max_attrs, "override attribute caps for the exact searches");
    app.add_option("--max-enum", max_enum, "override the enumeration cap");

    std::string file, problem, tuple, flavor, optimal = "h", artifact, family;
    bool poly = false, writing = false;
    std::size_t fam_n = 1, fam_k = 1, fam_d = 1;

    auto* stats = app.add_subcommand("stats", "system statistics");
    stats->add_option("file", file)->required();

    auto* reduce = app.add_subcommand("reduce", "print the SR- or AD-reduction");
    reduce->add_option("file", file)->required();
    reduce->add_option("--flavor", flavor, "sr|ad")->required();

    auto* solve = app.add_subcommand("solve", "solve a problem for one tuple");
    solve->add_option("file", file)->required();
    solve->add_option("--problem", problem, "ar|ear|ad|ead|sr|esr")->required();
    solve->add_option("--tuple", tuple, "comma-separated values over A(S)")->required();

    auto* build_tree = app.add_subcommand("build-tree", "emit a decision tree as DOT");
    build_tree->add_option("file", file)->required();
    build_tree->add_option("--problem", problem)->required();
    auto* optimal_opt =
        build_tree->add_option("--optimal", optimal, "h|l|t (exact search, cap-guarded)");
    build_tree->add_flag("--poly", poly, "use the polynomial builder instead")
        ->excludes(optimal_opt);

    auto* build_dag = app.add_subcommand("build-dag", "emit a chained decision graph as DOT");
    build_dag->add_option("file", file)->required();
    build_dag->add_option("--problem", problem)->required();
    build_dag->add_flag("--writing", writing, "build the writing variant");

    auto* simulate = app.add_subcommand("simulate", "describe one computation path");
    simulate->add_option("file", file)->required();
    simulate->add_option("--problem", problem)->required();
    simulate->add_option("--tuple", tuple)->required();

    auto* gen = app.add_subcommand("gen-family", "generate a worst-case family system");
    gen->add_option("which", family, "l9|l10|l11a|l11b")->required();
    gen->add_option("--n", fam_n)->required();
    gen->add_option("--k", fam_k);
    gen->add_option("--d", fam_d)->required();

    auto* verify = app.add_subcommand("verify", "validate an artifact against a system");
    verify->add_option("file", file)->required();
    verify->add_option("--problem", problem)->required();
    verify->add_option("--artifact", artifact, "a DOT file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (binary_indices) opt.syntax = rt::Syntax::binary_word;
    if (max_attrs > 0) {
        std::cerr << "warning: raising attribute caps to " << max_attrs
                  << "; exact searches are exponential\n";
        opt.limits.max_cover_attributes = max_attrs;
        opt.limits.max_depth_attributes = max_attrs;
        opt.limits.max_size_attributes = max_attrs;
    }
    if (max_enum > 0) {
        std::cerr << "warning: raising the enumeration cap to " << max_enum << "\n";
        opt.limits.max_enumeration = max_enum;
    }

    try {
        if (stats->parsed()) return run_stats(file, opt);
        if (reduce->parsed()) return run_reduce(file, flavor, opt);
        if (solve->parsed()) return run_solve(file, problem, tuple, opt);
        if (build_tree->parsed()) return run_build_tree(file, problem, optimal, poly, opt);
        if (build_dag->parsed()) return run_build_dag(file, problem, writing, opt);
        if (simulate->parsed()) return run_simulate(file, problem, tuple, opt);
        if (gen->parsed()) return run_gen_family(family, fam_n, fam_k, fam_d, opt);
        if (verify->parsed()) return run_verify(file, problem, artifact, opt);
    } catch (const rt::CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (see --max-attrs / --max-enum)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
