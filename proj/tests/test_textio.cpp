#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ruletree/constructions.hpp"
#include "ruletree/oracle.hpp"
#include "ruletree/textio.hpp"

namespace {

// Independent size oracle: materialize the word over the 9-symbol alphabet,
// one byte per symbol, and count its length.
std::size_t word_length(const rt::RuleSystem& s) {
    std::string word;
    auto binary = [](std::uint64_t x) {
        std::string bits;
        do {
            bits.push_back(static_cast<char>('0' + (x & 1)));
            x >>= 1;
        } while (x != 0);
        std::reverse(bits.begin(), bits.end());
        return bits;
    };
    for (const auto& r : s.rules()) {
        for (std::size_t i = 0; i < r.conditions().size(); ++i) {
            if (i > 0) word += '^';  // stands in for the conjunction symbol
            word += "(a" + binary(r.conditions()[i].attribute.index) + "=" +
                    binary(r.conditions()[i].value.number()) + ")";
        }
        word += '>';  // stands in for the arrow symbol
        word += binary(r.decision()) + ";";
    }
    return word.size();
}

double size_bound(const rt::RuleSystem& s) {
    double sd = static_cast<double>(s.size());
    double d = static_cast<double>(s.stats().max_rule_length);
    return 10.0 * sd * d * (std::log2(d * sd) + 1.0);
}

}  // namespace

TEST_CASE("parsing the surface syntax") {
    auto s = rt::parse_system("(a1=0)->1;(a1=1)&(a2=0)->2;");
    CHECK(s.size() == 2);
    CHECK(s.rule(1).length() == 2);
    CHECK(s.rule(1).decision() == 2);

    // Whitespace and newlines are free; the empty left-hand side is bare.
    auto spaced = rt::parse_system(" ->3;\n( a2 = 5 ) -> 1 ;");
    CHECK(spaced.rule(0).length() == 0);
    CHECK(spaced.rule(1).conditions()[0].attribute == rt::attr(2));
    CHECK(spaced.rule(1).conditions()[0].value == v(5));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(rt::parse_system("(a1=0)&(a1=1)->2;"), rt::ParseError);
    CHECK_THROWS_AS(rt::parse_system("(a1=0)->1;(a1=0)->1;"), rt::ParseError);
    CHECK_THROWS_AS(rt::parse_system("(a1=0->1;"), rt::ParseError);
    CHECK_THROWS_AS(rt::parse_system(""), rt::ParseError);
    CHECK_THROWS_AS(rt::parse_system("(a1=0)->1"), rt::ParseError);

    try {
        rt::parse_system("(a1=0)->1;\n(a2=x)->2;");
        FAIL("expected a parse error");
    } catch (const rt::ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("serialization round-trips and keeps rule order") {
    std::mt19937 rng(7601);
    for (int i = 0; i < 200; ++i) {
        auto s = random_system(rng);
        auto back = rt::parse_system(rt::serialize_system(s));
        REQUIRE(back.size() == s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            CHECK(rt::rules_equal(back.rule(j), s.rule(j)));
        }

        auto word = rt::parse_system(rt::serialize_system(s, rt::Syntax::binary_word),
                                     rt::Syntax::binary_word);
        REQUIRE(word.size() == s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            CHECK(rt::rules_equal(word.rule(j), s.rule(j)));
        }
    }
}

TEST_CASE("the binary syntax uses the word alphabet") {
    auto s = sys("(a1=0)&(a2=1)->3;");
    CHECK(rt::serialize_system(s, rt::Syntax::binary_word) ==
          "(a1=0)∧(a10=1)→11;\n");
}

TEST_CASE("word size") {
    // ->1; is the arrow, the digit and the separator: three symbols.
    CHECK(rt::size_of(sys("->1;")) == 3);
    CHECK(rt::size_of(sys("->1;")) == word_length(sys("->1;")));

    // (a10=1)>(binary 2 = "10"): symbols ( a 1 0 = 1 ) > 1 0 ; = 11.
    CHECK(rt::size_of(sys("(a2=1)->2;")) == 11);

    std::mt19937 rng(7602);
    for (int i = 0; i < 200; ++i) {
        RandomSystemParams p;
        p.max_values = 4;
        p.max_decision = 9;
        auto s = random_system(rng, p);
        CHECK(rt::size_of(s) == word_length(s));
    }
}

TEST_CASE("size doubles when the structure is duplicated") {
    auto once = sys("(a1=0)&(a2=1)->1;");
    auto twice = sys("(a1=0)&(a2=1)->1;(a3=0)&(a4=1)->1;");
    // a3/a4 use two binary digits where a1/a2 use one.
    CHECK(rt::size_of(twice) >= 2 * rt::size_of(once));
    CHECK(rt::size_of(twice) <= 2 * rt::size_of(once) + 4);
}

TEST_CASE("the size bound holds on reduced systems and families") {
    std::mt19937 rng(7603);
    for (int i = 0; i < 300; ++i) {
        auto s = random_system(rng);
        if (!rt::is_reduced_form(s)) continue;
        CHECK(static_cast<double>(rt::size_of(s)) <= size_bound(s));
    }
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(rt::size_of(rt::gen_family(rt::FamilyKind::l9, {n, 2, 2})) <=
              size_bound(rt::gen_family(rt::FamilyKind::l9, {n, 2, 2})));
        CHECK(rt::size_of(rt::gen_family(rt::FamilyKind::l10, {n, 1, 2})) <=
              size_bound(rt::gen_family(rt::FamilyKind::l10, {n, 1, 2})));
        CHECK(rt::size_of(rt::gen_family(rt::FamilyKind::l11a, {n, 1, 1})) <=
              size_bound(rt::gen_family(rt::FamilyKind::l11a, {n, 1, 1})));
        CHECK(rt::size_of(rt::gen_family(rt::FamilyKind::l11b, {n, 2, 1})) <=
              size_bound(rt::gen_family(rt::FamilyKind::l11b, {n, 2, 1})));
    }
}

TEST_CASE("DOT export is deterministic and parses back") {
    auto s = sys("(a1=0)->1;(a1=1)->2;(a2=0)->3;");
    auto tree = rt::build_tree_d1(s, rt::ProblemKind::esr);
    std::string dot = rt::export_dot(tree, s);
    CHECK(dot == rt::export_dot(tree, s));
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("\"*\"") != std::string::npos);

    auto loaded = rt::parse_dot(dot);
    auto* loaded_tree = std::get_if<rt::DecisionTree>(&loaded);
    REQUIRE(loaded_tree != nullptr);
    CHECK(rt::export_dot(*loaded_tree, s) == dot);
    CHECK(rt::validate_tree(*loaded_tree, s, rt::ProblemKind::esr));

    auto chain = rt::build_dag_chain(s, rt::ProblemKind::sr);
    std::string chain_dot = rt::export_dot(chain, s);
    auto loaded_chain = rt::parse_dot(chain_dot);
    auto* graph = std::get_if<rt::DecisionGraph>(&loaded_chain);
    REQUIRE(graph != nullptr);
    CHECK(rt::export_dot(*graph, s) == chain_dot);

    auto writing = rt::build_dagw_chain(s, rt::ProblemKind::ead);
    std::string writing_dot = rt::export_dot(writing, s);
    auto loaded_writing = rt::parse_dot(writing_dot);
    auto* dagw = std::get_if<rt::DecisionGraphWithWriting>(&loaded_writing);
    REQUIRE(dagw != nullptr);
    CHECK(rt::export_dot(*dagw, s) == writing_dot);
    CHECK(rt::validate_graph(*dagw, s, rt::ProblemKind::ead));
}

TEST_CASE("single-node artifacts export with one node statement") {
    auto s = sys("->1;(a1=0)->2;");
    auto tree = rt::build_tree_d1(s, rt::ProblemKind::sr);
    std::string dot = rt::export_dot(tree, s);
    CHECK(dot.find("n0") != std::string::npos);
    CHECK(dot.find("n1") == std::string::npos);
}

TEST_CASE("DOT parse rejects junk") {
    CHECK_THROWS_AS(rt::parse_dot("graph g { }"), rt::ParseError);
    CHECK_THROWS_AS(rt::parse_dot("digraph g {\n  n0 -> n1;\n}"), rt::ParseError);
    CHECK_THROWS_AS(rt::parse_dot("digraph g {\n  n0 [kind=\"work\"];\n}"), rt::ParseError);
}

TEST_CASE("hand-written DOT trees may repeat attributes; inconsistent paths are skipped") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    // The a1=0 branch queries a1 again.  The 0,1 path is inconsistent, so
    // only its 0,0 continuation must carry a correct label.
    const char* dot = R"(digraph g {
  graph [artifact="tree", flavor="o", root="n0"];
  n0 [kind="work", attr="1"];
  n1 [kind="work", attr="1"];
  n2 [kind="term", rules="1"];
  n3 [kind="term", rules="0"];
  n4 [kind="term", rules=""];
  n0 -> n1 [value="0"];
  n0 -> n2 [value="1"];
  n1 -> n3 [value="0"];
  n1 -> n4 [value="1"];
})";
    auto loaded = rt::parse_dot(dot);
    auto* tree = std::get_if<rt::DecisionTree>(&loaded);
    REQUIRE(tree != nullptr);
    CHECK(rt::validate_tree(*tree, s, rt::ProblemKind::sr));
    // The same shape with the consistent 0,0 path mislabeled is rejected.
    std::string broken(dot);
    broken.replace(broken.find("rules=\"0\""), 9, "rules=\"1\"");
    auto bad = rt::parse_dot(broken);
    CHECK_FALSE(rt::validate_tree(std::get<rt::DecisionTree>(bad), s, rt::ProblemKind::sr));
}

TEST_CASE("the root attribute of a DOT file is honored") {
    auto s = sys("(a1=0)->1;(a1=1)->2;");
    const char* dot = R"(digraph g {
  graph [artifact="tree", flavor="o", root="top"];
  leaf0 [kind="term", rules="0"];
  leaf1 [kind="term", rules="1"];
  top [kind="work", attr="1"];
  top -> leaf0 [value="0"];
  top -> leaf1 [value="1"];
})";
    auto loaded = rt::parse_dot(dot);
    auto* tree = std::get_if<rt::DecisionTree>(&loaded);
    REQUIRE(tree != nullptr);
    CHECK(rt::validate_tree(*tree, s, rt::ProblemKind::sr));
    CHECK(rt::eval_tree(*tree, s, tuple_of(s, {v(1)})).label == std::vector<std::size_t>{1});
}
