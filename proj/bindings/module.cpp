// Python bindings for the main operations: systems are built from the
// textual syntax, tuples from lists of ints / "*", and the heavier results
// come back as plain dicts and DOT strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ruletree/constructions.hpp"
#include "ruletree/core.hpp"
#include "ruletree/oracle.hpp"
#include "ruletree/pathsim.hpp"
#include "ruletree/system_ops.hpp"
#include "ruletree/textio.hpp"
#include "ruletree/trees.hpp"

namespace py = pybind11;
namespace rt = ruletree;

namespace {

rt::ProblemKind kind_of(const std::string& name) {
    auto kind = rt::parse_problem_kind(name);
    if (!kind) throw py::value_error("unknown problem '" + name + "'");
    return *kind;
}

rt::Value value_from(const py::handle& obj) {
    if (py::isinstance<py::str>(obj)) {
        if (obj.cast<std::string>() == "*") return rt::Value::star();
        throw py::value_error("tuple entries are ints or '*'");
    }
    return rt::Value(obj.cast<std::uint64_t>());
}

rt::ValueTuple tuple_over(const rt::RuleSystem& s, const py::sequence& values) {
    std::vector<rt::Value> out;
    for (const auto& v : values) out.push_back(value_from(v));
    return rt::ValueTuple::over(s, std::move(out));
}

py::object value_to_py(rt::Value v) {
    if (v.is_star()) return py::str("*");
    return py::int_(v.number());
}

py::dict stats_dict(const rt::RuleSystem& s) {
    const auto& st = s.stats();
    py::dict values;
    for (std::size_t i = 0; i < st.attributes.size(); ++i) {
        py::list vals;
        for (const auto& v : st.values[i]) vals.append(value_to_py(v));
        values[py::int_(st.attributes[i].index)] = vals;
    }
    py::list attrs;
    for (const auto& a : st.attributes) attrs.append(a.index);
    using namespace py::literals;
    return py::dict("n"_a = st.attribute_count, "d"_a = st.max_rule_length,
                    "k"_a = st.max_value_count, "decisions"_a = st.decisions,
                    "attributes"_a = attrs, "values"_a = values, "rules"_a = s.size());
}

py::dict trace_dict(const rt::PathTrace& trace) {
    py::list rounds;
    for (const auto& round : trace.rounds) {
        py::list cover;
        for (const auto& a : round.cover) cover.append(a.index);
        py::dict acquired;
        for (const auto& e : round.acquired.equations()) {
            acquired[py::int_(e.attribute.index)] = value_to_py(e.value);
        }
        using namespace py::literals;
        rounds.append(py::dict("cover"_a = cover, "acquired"_a = acquired));
    }
    using namespace py::literals;
    return py::dict("kind"_a = std::string(rt::to_string(trace.kind)), "rounds"_a = rounds,
                    "queried"_a = trace.queried, "result"_a = trace.result);
}

py::dict metrics_dict(const rt::TreeMetrics& m) {
    using namespace py::literals;
    return py::dict("h"_a = m.depth, "L"_a = m.node_count, "T"_a = m.distinct_terminal_labels);
}

py::dict simulate_any(const rt::RuleSystem& s, const py::sequence& tuple,
                      const std::string& kind_name) {
    rt::ProblemKind k = kind_of(kind_name);
    rt::ValueTuple t = tuple_over(s, tuple);
    if (k == rt::ProblemKind::ar || k == rt::ProblemKind::ear) {
        return trace_dict(rt::simulate_ar(s, t, k));
    }
    if (k == rt::ProblemKind::ad || k == rt::ProblemKind::sr) {
        return trace_dict(rt::simulate_ad_sr(s, t, k));
    }
    return trace_dict(rt::simulate_esr_ead(s, t, k));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "decision rule systems compiled into trees and decision graphs";

    py::register_exception<rt::CapExceeded>(m, "CapExceeded");

    py::class_<rt::RuleSystem>(m, "RuleSystem")
        .def_static(
            "parse",
            [](const std::string& text, bool binary) {
                return rt::parse_system(
                    text, binary ? rt::Syntax::binary_word : rt::Syntax::ascii_decimal);
            },
            py::arg("text"), py::arg("binary") = false)
        .def("__len__", &rt::RuleSystem::size)
        .def("__str__", [](const rt::RuleSystem& s) { return rt::serialize_system(s); })
        .def(
            "serialize",
            [](const rt::RuleSystem& s, bool binary) {
                return rt::serialize_system(
                    s, binary ? rt::Syntax::binary_word : rt::Syntax::ascii_decimal);
            },
            py::arg("binary") = false)
        .def("stats", &stats_dict)
        .def("size_of", [](const rt::RuleSystem& s) { return rt::size_of(s); })
        .def("is_reduced", &rt::is_reduced_form)
        .def("is_complete", [](const rt::RuleSystem& s) { return rt::is_complete(s); })
        .def("reduce_sr", &rt::reduce_sr)
        .def("reduce_ad", &rt::reduce_ad)
        .def("beta", [](const rt::RuleSystem& s) { return rt::beta_of(s); })
        .def("beta_plus", [](const rt::RuleSystem& s) { return rt::beta_plus_of(s); })
        .def("beta_measures",
             [](const rt::RuleSystem& s, const std::string& kind) {
                 rt::CoverMeasures cm = rt::beta_measures(s, kind_of(kind));
                 using namespace py::literals;
                 return py::dict("beta"_a = cm.beta, "beta_plus"_a = cm.beta_plus,
                                 "beta_c"_a = cm.beta_c, "beta_c_plus"_a = cm.beta_c_plus);
             })
        .def("solve",
             [](const rt::RuleSystem& s, const py::sequence& tuple, const std::string& kind) {
                 rt::ProblemKind k = kind_of(kind);
                 rt::SolutionSpec spec = rt::solve_direct(s, tuple_over(s, tuple), k);
                 using namespace py::literals;
                 return py::dict("realizable"_a = spec.realizable, "decisions"_a = spec.decisions,
                                 "solution"_a = spec.canonical(s));
             })
        .def("simulate", &simulate_any);

    py::class_<rt::DecisionTree>(m, "DecisionTree")
        .def("metrics", [](const rt::DecisionTree& t) { return metrics_dict(rt::metrics(t)); })
        .def("prune_star", &rt::prune_star)
        .def("to_dot", [](const rt::DecisionTree& t,
                          const rt::RuleSystem& s) { return rt::export_dot(t, s); })
        .def("eval",
             [](const rt::DecisionTree& tree, const rt::RuleSystem& s, const py::sequence& tuple) {
                 return rt::eval_tree(tree, s, tuple_over(s, tuple)).label;
             })
        .def("validate",
             [](const rt::DecisionTree& t, const rt::RuleSystem& s, const std::string& kind) {
                 return rt::validate_tree(t, s, kind_of(kind));
             });

    py::class_<rt::DecisionGraph>(m, "DecisionGraph")
        .def("metrics", [](const rt::DecisionGraph& g) { return metrics_dict(rt::metrics(g)); })
        .def("to_dot", [](const rt::DecisionGraph& g,
                          const rt::RuleSystem& s) { return rt::export_dot(g, s); })
        .def("eval",
             [](const rt::DecisionGraph& g, const rt::RuleSystem& s, const py::sequence& tuple) {
                 return rt::eval_graph(g, s, tuple_over(s, tuple));
             })
        .def("validate",
             [](const rt::DecisionGraph& g, const rt::RuleSystem& s, const std::string& kind) {
                 return rt::validate_graph(g, s, kind_of(kind));
             });

    py::class_<rt::DecisionGraphWithWriting>(m, "DecisionGraphWithWriting")
        .def("metrics",
             [](const rt::DecisionGraphWithWriting& g) { return metrics_dict(rt::metrics(g)); })
        .def("to_dot", [](const rt::DecisionGraphWithWriting& g,
                          const rt::RuleSystem& s) { return rt::export_dot(g, s); })
        .def("eval",
             [](const rt::DecisionGraphWithWriting& g, const rt::RuleSystem& s,
                const py::sequence& tuple) {
                 return rt::eval_graph_writing(g, s, tuple_over(s, tuple));
             })
        .def("validate",
             [](const rt::DecisionGraphWithWriting& g, const rt::RuleSystem& s,
                const std::string& kind) { return rt::validate_graph(g, s, kind_of(kind)); });

    m.def("min_depth", [](const rt::RuleSystem& s, const std::string& kind) {
        rt::OptimalTree best = rt::min_depth(s, kind_of(kind));
        return py::make_tuple(best.value, best.witness);
    });
    m.def("min_nodes", [](const rt::RuleSystem& s, const std::string& kind) {
        rt::OptimalTree best = rt::min_nodes(s, kind_of(kind));
        return py::make_tuple(best.value, best.witness);
    });
    m.def("min_distinct_terminals", [](const rt::RuleSystem& s, const std::string& kind) {
        rt::OptimalTree best = rt::min_distinct_terminals(s, kind_of(kind));
        return py::make_tuple(best.value, best.witness);
    });
    m.def("build_path_tree_k1", [](const rt::RuleSystem& s, const std::string& kind) {
        return rt::build_path_tree_k1(s, kind_of(kind));
    });
    m.def("build_tree_d1", [](const rt::RuleSystem& s, const std::string& kind) {
        return rt::build_tree_d1(s, kind_of(kind));
    });
    m.def("build_dag_chain", [](const rt::RuleSystem& s, const std::string& kind) {
        return rt::build_dag_chain(s, kind_of(kind));
    });
    m.def("build_dagw_chain", [](const rt::RuleSystem& s, const std::string& kind) {
        return rt::build_dagw_chain(s, kind_of(kind));
    });
    m.def(
        "gen_family",
        [](const std::string& which, std::size_t n, std::size_t k, std::size_t d) {
            auto fam = rt::parse_family_kind(which);
            if (!fam) throw py::value_error("unknown family '" + which + "'");
            return rt::gen_family(*fam, rt::FamilyParams{n, k, d});
        },
        py::arg("which"), py::arg("n") = 1, py::arg("k") = 1, py::arg("d") = 1);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
