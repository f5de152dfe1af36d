"""Smoke tests for the python bindings."""

import pytest

import ruletree

EXAMPLE1 = "(a1=0)->1;(a1=1)&(a2=0)->2;(a1=2)&(a3=0)&(a4=0)->3;"
EXAMPLE3 = "(a1=0)->1;(a1=0)&(a2=1)->1;(a1=0)&(a2=1)&(a3=2)->2;"


def test_parse_and_stats():
    s = ruletree.RuleSystem.parse(EXAMPLE1)
    st = s.stats()
    assert st["n"] == 4
    assert st["d"] == 3
    assert st["k"] == 3
    assert st["decisions"] == [1, 2, 3]
    assert st["values"][1] == [0, 1, 2]
    assert len(s) == 3


def test_roundtrip():
    s = ruletree.RuleSystem.parse(EXAMPLE3)
    again = ruletree.RuleSystem.parse(s.serialize())
    assert again.serialize() == s.serialize()
    binary = ruletree.RuleSystem.parse(s.serialize(binary=True), binary=True)
    assert binary.serialize() == s.serialize()


def test_solve():
    s = ruletree.RuleSystem.parse(EXAMPLE3)
    assert s.solve([0, 1, 2], "ar")["solution"] == [0, 1, 2]
    assert s.solve([0, 1, 2], "ad")["solution"] == [0, 2]
    assert s.solve([0, 1, 2], "sr")["solution"] == [0]
    assert s.solve([0, 1, "*"], "ear")["solution"] == [0, 1]


def test_reductions():
    s = ruletree.RuleSystem.parse("(a1=0)&(a2=1)&(a3=2)->1;(a1=0)&(a2=1)->2;(a1=0)->2;")
    assert len(s.reduce_sr()) == 1
    assert len(s.reduce_ad()) == 2


def test_min_depth_and_witness():
    s = ruletree.RuleSystem.parse(EXAMPLE3)
    depth, witness = ruletree.min_depth(s, "ar")
    assert depth == 3
    assert witness.validate(s, "ar")
    assert witness.metrics()["h"] == 3
    assert "digraph" in witness.to_dot(s)


def test_chains_solve_everything():
    s = ruletree.RuleSystem.parse(EXAMPLE1)
    chain = ruletree.build_dagw_chain(s, "ead")
    assert chain.validate(s, "ead")
    assert chain.eval(s, [0, 0, 0, 0]) == [0]
    plain = ruletree.build_dag_chain(s, "sr")
    assert plain.validate(s, "sr")


def test_simulate():
    s = ruletree.RuleSystem.parse(EXAMPLE1)
    trace = s.simulate([2, 0, 0, 0], "ar")
    assert trace["result"] == [2]
    assert trace["queried"] <= 9  # d^2 * beta+
    trace = s.simulate([0, "*", "*", "*"], "esr")
    assert trace["result"] == [0]


def test_gen_family():
    l9 = ruletree.gen_family("l9", n=1, k=2, d=2)
    assert len(l9) == 3
    assert l9.stats()["n"] == 4
    assert l9.is_reduced()


def test_beta_measures():
    s = ruletree.RuleSystem.parse("(a1=0)->1;")
    m = s.beta_measures("ar")
    assert m == {"beta": 1, "beta_plus": 1, "beta_c": 1, "beta_c_plus": 1}


def test_cap_exceeded():
    l9 = ruletree.gen_family("l9", n=6, k=2, d=2)  # n(S) = 14
    with pytest.raises(ruletree.CapExceeded):
        ruletree.min_depth(l9, "ar")


def test_prune_star():
    s = ruletree.RuleSystem.parse("(a1=0)->1;(a1=1)->2;")
    spine = ruletree.build_tree_d1(s, "esr")
    assert spine.validate(s, "esr")
    pruned = spine.prune_star()
    assert pruned.validate(s, "sr")
