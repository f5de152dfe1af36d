#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ruletree/constructions.hpp"
#include "ruletree/oracle.hpp"
#include "ruletree/trees.hpp"

namespace {

rt::DecisionTree single_terminal(std::vector<std::size_t> label,
                                 rt::Flavor flavor = rt::Flavor::ordinary) {
    std::vector<rt::TreeNode> nodes{rt::TerminalNode{std::move(label)}};
    return rt::DecisionTree(flavor, std::move(nodes), 0);
}

}  // namespace

TEST_CASE("evaluating a single-terminal tree returns its label") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    auto tree = single_terminal({0, 1});
    auto path = rt::eval_tree(tree, s, tuple_of(s, {v(0)}));
    CHECK(path.label == std::vector<std::size_t>{0, 1});
    CHECK(path.depth() == 0);
}

TEST_CASE("the k=1 path tree walks the unique tuple to a terminal labeled S") {
    auto s = sys("(a1=0)&(a2=0)->1;(a2=0)->2;");
    auto tree = rt::build_path_tree_k1(s, rt::ProblemKind::ar);
    auto path = rt::eval_tree(tree, s, tuple_of(s, {v(0), v(0)}));
    CHECK(path.label == std::vector<std::size_t>{0, 1});
    CHECK(path.depth() == 2);
    CHECK(path.equations() ==
          rt::EquationSystem{{rt::attr(1), v(0)}, {rt::attr(2), v(0)}});
}

TEST_CASE("the d=1 fan tree routes each value to its rule") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    auto tree = rt::build_tree_d1(s, rt::ProblemKind::sr);
    CHECK(rt::eval_tree(tree, s, tuple_of(s, {v(0)})).label == std::vector<std::size_t>{0});
    CHECK(rt::eval_tree(tree, s, tuple_of(s, {v(1)})).label == std::vector<std::size_t>{1});
}

TEST_CASE("an off-domain value routes along the star edge in e-flavor trees") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    auto tree = rt::build_tree_d1(s, rt::ProblemKind::esr);
    CHECK(rt::eval_tree(tree, s, tuple_of(s, {star()})).label.empty());
}

TEST_CASE("metrics") {
    CHECK(rt::metrics(single_terminal({0})).depth == 0);
    CHECK(rt::metrics(single_terminal({0})).node_count == 1);
    CHECK(rt::metrics(single_terminal({0})).distinct_terminal_labels == 1);

    // A path tree over m attributes: h = m, L = m + 1.
    auto path_sys = sys("(a1=0)&(a2=0)&(a3=0)->1;");
    auto path_tree = rt::build_path_tree_k1(path_sys, rt::ProblemKind::ar);
    auto pm = rt::metrics(path_tree);
    CHECK(pm.depth == 3);
    CHECK(pm.node_count == 4);
    CHECK(pm.distinct_terminal_labels == 1);

    // The depth-1 fan with m values of the root attribute: h=1, L=m+1, T=m.
    auto fan_sys = sys("(a1=0)->1;(a1=1)->2;(a1=2)->3;");
    auto fan = rt::build_tree_d1(fan_sys, rt::ProblemKind::sr);
    auto fm = rt::metrics(fan);
    CHECK(fm.depth == 1);
    CHECK(fm.node_count == 4);
    CHECK(fm.distinct_terminal_labels == 3);
}

TEST_CASE("complete path enumeration matches evaluation") {
    std::mt19937 rng(7201);
    for (int i = 0; i < 50; ++i) {
        RandomSystemParams p;
        p.max_attributes = 4;
        p.max_rules = 4;
        auto s = random_system(rng, p);
        if (s.stats().attribute_count == 0) continue;
        for (auto kind : {rt::ProblemKind::ar, rt::ProblemKind::ear}) {
            auto best = rt::min_depth(s, kind);
            auto paths = rt::complete_paths(best.witness);
            std::size_t max_depth = 0;
            for (const auto& path : paths) {
                max_depth = std::max(max_depth, path.depth());
                CHECK(rt::is_consistent(path.equations()));
            }
            CHECK(max_depth == rt::metrics(best.witness).depth);

            // Every evaluated tuple follows one of the enumerated paths, and
            // the path's equations hold on the tuple.
            rt::for_each_tuple(s, rt::is_extended(kind), [&](const rt::ValueTuple& t) {
                auto path = rt::eval_tree(best.witness, s, t);
                CHECK(t.equations().includes(path.equations()));
            });
        }
    }
}

TEST_CASE("tree metrics invariants") {
    std::mt19937 rng(7202);
    for (int i = 0; i < 50; ++i) {
        RandomSystemParams p;
        p.max_attributes = 4;
        p.max_rules = 4;
        auto s = random_system(rng, p);
        if (s.stats().attribute_count == 0) continue;
        auto best = rt::min_depth(s, rt::ProblemKind::ad);
        auto m = rt::metrics(best.witness);
        CHECK(m.distinct_terminal_labels <= m.node_count);
        CHECK(m.depth + 1 <= m.node_count);
    }
}

TEST_CASE("prune_star removes everything below a star edge") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    auto spine = rt::build_tree_d1(s, rt::ProblemKind::esr);
    auto pruned = rt::prune_star(spine);
    CHECK(pruned.flavor() == rt::Flavor::ordinary);
    auto pm = rt::metrics(pruned);
    CHECK(pm.node_count < rt::metrics(spine).node_count);
    // The pruned tree solves SR (the o-problem behind ESR).
    CHECK(rt::validate_tree(pruned, s, rt::ProblemKind::sr));

    auto single = single_terminal({0}, rt::Flavor::extended);
    auto pruned_single = rt::prune_star(single);
    CHECK(pruned_single.nodes().size() == 1);

    CHECK_THROWS_AS(rt::prune_star(single_terminal({0})), std::invalid_argument);
}

TEST_CASE("prune_star keeps the solving property and shrinks L and T") {
    std::mt19937 rng(7203);
    for (int i = 0; i < 60; ++i) {
        RandomSystemParams p;
        p.max_attributes = 4;
        p.max_rules = 4;
        auto s = random_system(rng, p);
        if (s.stats().attribute_count == 0) continue;
        for (auto kind : {rt::ProblemKind::ear, rt::ProblemKind::ead, rt::ProblemKind::esr}) {
            auto e_tree = rt::min_depth(s, kind).witness;
            auto o_tree = rt::prune_star(e_tree);
            CHECK(rt::metrics(o_tree).node_count <= rt::metrics(e_tree).node_count);
            CHECK(rt::metrics(o_tree).distinct_terminal_labels <=
                  rt::metrics(e_tree).distinct_terminal_labels);
            CHECK(rt::validate_tree(o_tree, s, rt::base_kind(kind)));
        }
    }
}

TEST_CASE("structural validation") {
    // A working node must have edges.
    CHECK_THROWS_AS(rt::DecisionTree(rt::Flavor::ordinary,
                                     {rt::WorkingNode{rt::attr(1), {}}, rt::TerminalNode{{}}}, 0),
                    std::invalid_argument);
    // Edge labels must be distinct.
    CHECK_THROWS_AS(
        rt::DecisionTree(rt::Flavor::ordinary,
                         {rt::WorkingNode{rt::attr(1),
                                          {rt::TreeEdge{v(0), 1}, rt::TreeEdge{v(0), 1}}},
                          rt::TerminalNode{{}}},
                         0),
        std::invalid_argument);
    // A tree node may not have two parents.
    CHECK_THROWS_AS(
        rt::DecisionTree(rt::Flavor::ordinary,
                         {rt::WorkingNode{rt::attr(1),
                                          {rt::TreeEdge{v(0), 1}, rt::TreeEdge{v(1), 1}}},
                          rt::TerminalNode{{}}},
                         0),
        std::invalid_argument);
    // ... but a decision graph may.
    CHECK_NOTHROW(
        rt::DecisionGraph(rt::Flavor::ordinary,
                          {rt::WorkingNode{rt::attr(1),
                                           {rt::TreeEdge{v(0), 1}, rt::TreeEdge{v(1), 1}}},
                           rt::TerminalNode{{}}},
                          0));
    // Writing graphs have exactly one terminal.
    CHECK_THROWS_AS(rt::DecisionGraphWithWriting(
                        rt::Flavor::ordinary,
                        {rt::WritingNode{0, 1}, rt::TerminalNode{{}}, rt::TerminalNode{{}}}, 0),
                    std::invalid_argument);
}

TEST_CASE("conformance checks fan-out against the system") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    // One edge where V_S(a1) has two values.
    rt::DecisionTree narrow(rt::Flavor::ordinary,
                            {rt::WorkingNode{rt::attr(1), {rt::TreeEdge{v(0), 1}}},
                             rt::TerminalNode{{0}}},
                            0);
    std::string reason;
    CHECK_FALSE(rt::conforms_to(narrow, s, &reason));
    CHECK(reason.find("edges") != std::string::npos);

    rt::DecisionTree foreign(rt::Flavor::ordinary,
                             {rt::WorkingNode{rt::attr(9), {rt::TreeEdge{v(0), 1}}},
                              rt::TerminalNode{{0}}},
                             0);
    CHECK_FALSE(rt::conforms_to(foreign, s, &reason));

    auto good = rt::build_tree_d1(s, rt::ProblemKind::sr);
    CHECK(rt::conforms_to(good, s));
}
