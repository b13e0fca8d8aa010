import random

import pytest

from stablelab import (
    CardConstraint,
    TOP,
    cc_from_normal,
    cc_gl_via_schemes,
    cc_least_model,
    cc_minimal_supports,
    cc_parse,
    cc_satisfies,
    cc_stable_models_bruteforce,
    cc_stable_models_via_equations,
    cc_support_formula,
    cc_support_preceq,
    cc_theory,
    cc_tp_step,
    cc_transform,
    ccgl,
    nss_reduct,
    parse_program,
    stable_models_bruteforce,
    theory,
)
from stablelab.cc import CCRawClause, cc_support_family, is_cc_stable_model, pretty_cc_program
from stablelab.errors import CompoundHead, NotCCHorn, ParseError
from stablelab.formulas import (
    And,
    BOT,
    Iff,
    Lit,
    Or,
    all_models,
    entails,
    equivalent,
    evaluate,
    neg_set,
)

from genprog import random_cc_program


def test_cc_parse_basic():
    prog = cc_parse("p :- 1 {q; r} 1.")
    assert prog.names == ("p", "q", "r")
    assert prog.clauses[0] == CCRawClause(
        0, (CardConstraint(1, frozenset({1, 2}), 1),)
    )


def test_cc_parse_sugar():
    prog = cc_parse("p :- q, not r.")
    assert prog.clauses[0].constraints == (
        CardConstraint(1, frozenset({1}), None),
        CardConstraint(None, frozenset({2}), 0),
    )
    upper_only = cc_parse("p :- {s} 0.")
    assert upper_only.clauses[0].constraints == (
        CardConstraint(None, frozenset({1}), 0),
    )
    lower_only = cc_parse("p :- 1 {p}.")
    assert lower_only.clauses[0].constraints == (
        CardConstraint(1, frozenset({0}), None),
    )


def test_cc_parse_errors():
    with pytest.raises(CompoundHead):
        cc_parse("1 {p; q} 1 :- r.")
    with pytest.raises(CompoundHead):
        cc_parse("{p} :- r.")
    with pytest.raises(ParseError):
        cc_parse("p :- 2 {q} 1.")
    with pytest.raises(ParseError):
        cc_parse("p :- {q.")


def test_cc_satisfies():
    c = CardConstraint(1, frozenset({1, 2}), 1)
    assert cc_satisfies(frozenset({1}), c)
    assert not cc_satisfies(frozenset(), c)
    assert not cc_satisfies(frozenset({1, 2}), c)
    wide = CardConstraint(None, frozenset(range(1, 7)), 4)
    assert cc_satisfies(frozenset({1, 2, 3}), wide)
    assert not cc_satisfies(frozenset({0}), CardConstraint(None, frozenset({0}), 0))


def test_cc_constraint_validation():
    with pytest.raises(ValueError):
        CardConstraint(2, frozenset({0}), 1)
    with pytest.raises(ValueError):
        CardConstraint(1, frozenset(), None)


def test_cc_transform():
    c = CCRawClause(0, (CardConstraint(1, frozenset({1, 2}), 1),))
    t = cc_transform(c)
    assert t.lowers == ((1, frozenset({1, 2})),)
    assert t.uppers == ((frozenset({1, 2}), 1),)
    # vacuous bounds (l = 0, u >= |X|) disappear
    v = cc_transform(
        CCRawClause(0, (CardConstraint(0, frozenset({1}), 1),))
    )
    assert v.lowers == () and v.uppers == ()
    lower = cc_transform(CCRawClause(0, (CardConstraint(2, frozenset({1, 2, 3}), None),)))
    assert lower.lowers == ((2, frozenset({1, 2, 3})),) and lower.uppers == ()


def test_cc_tp_step():
    prog = cc_parse("p :- 1 {q; r}.")
    assert cc_tp_step(prog, frozenset({1})) == {0}
    two = cc_parse("p :- 2 {q; r}.")
    assert cc_tp_step(two, frozenset({1})) == frozenset()
    assert cc_tp_step(two, frozenset({1, 2})) == {0}
    with pytest.raises(NotCCHorn):
        cc_tp_step(cc_parse("p :- {q} 0."), frozenset())


def test_cc_tp_step_monotone():
    for seed in range(30):
        rng = random.Random(seed)
        prog = random_cc_program(seed)
        horn = type(prog)(
            prog.names,
            tuple(
                CCRawClause(
                    c.head,
                    tuple(
                        CardConstraint(cc.lower, cc.atoms, None)
                        for cc in c.constraints
                    ),
                )
                for c in prog.clauses
            ),
        )
        n = prog.n_atoms
        small = frozenset(a for a in range(n) if rng.random() < 0.4)
        big = small | frozenset(a for a in range(n) if rng.random() < 0.4)
        assert cc_tp_step(horn, small) <= cc_tp_step(horn, big)


def test_cc_least_model():
    assert cc_least_model(cc_parse("p. q :- 1 {p}.")) == {0, 1}
    assert cc_least_model(cc_parse("")) == frozenset()
    assert cc_least_model(cc_parse("p :- 1 {q}.")) == frozenset()


def test_nss_reduct():
    prog = cc_parse("p :- 1 {q}, {s} 0.")
    dropped = nss_reduct(prog, prog.interpretation(["s"]))
    assert dropped.clauses == ()
    kept = nss_reduct(prog, prog.interpretation(["q"]))
    assert len(kept.clauses) == 1
    assert kept.clauses[0].constraints == (CardConstraint(1, frozenset({1}), None),)
    # a CC-Horn program survives any reduct unchanged up to representation
    horn = cc_parse("p :- 1 {q}. q.")
    for m in (frozenset(), frozenset({0, 1})):
        assert cc_least_model(nss_reduct(horn, m)) == cc_least_model(horn)


def test_ccgl():
    neg_self = cc_parse("p :- {p} 0.")
    assert ccgl(neg_self, frozenset()) == {0}
    assert ccgl(neg_self, frozenset({0})) == frozenset()
    assert cc_stable_models_bruteforce(neg_self) == []
    pos_self = cc_parse("p :- 1 {p}.")
    assert ccgl(pos_self, frozenset()) == frozenset()
    assert is_cc_stable_model(pos_self, frozenset())


def test_cc_bruteforce_pair():
    pair = cc_parse("p :- {q} 0. q :- {p} 0.")
    assert [pair.atom_names(m) for m in cc_stable_models_bruteforce(pair)] == [
        ["p"], ["q"],
    ]
    horn = cc_parse("p. q :- 1 {p}.")
    assert cc_stable_models_bruteforce(horn) == [cc_least_model(horn)]


def test_cc_support_formula_worked_pair():
    u1 = frozenset({
        (frozenset({0, 1, 2}), 2),
        (frozenset({3, 4, 5}), 2),
    })
    u2 = frozenset({(frozenset(range(6)), 4)})
    f1 = cc_support_formula(u1)
    assert f1 == And((
        Or((Lit(0, False), Lit(1, False), Lit(2, False))),
        Or((Lit(3, False), Lit(4, False), Lit(5, False))),
    ))
    f2 = cc_support_formula(u2)
    expected_pairs = tuple(
        And((Lit(i, False), Lit(j, False)))
        for i in range(6)
        for j in range(i + 1, 6)
    )
    assert f2 == Or(expected_pairs)
    assert entails(f1, f2)
    assert not entails(f2, f1)
    assert cc_support_preceq(u2, u1)
    assert not cc_support_preceq(u1, u2)


def test_cc_support_formula_boundaries():
    assert cc_support_formula(frozenset()) is TOP
    vacuous = frozenset({(frozenset({0}), 1)})
    assert cc_support_formula(vacuous) is TOP


def test_preceq_is_a_preorder():
    rng = random.Random(0)

    def rand_support():
        out = set()
        for _ in range(rng.randint(0, 2)):
            size = rng.randint(1, 4)
            atoms = frozenset(rng.sample(range(6), size))
            out.add((atoms, rng.randint(0, size)))
        return frozenset(out)

    sups = [rand_support() for _ in range(25)]
    for u in sups:
        assert cc_support_preceq(u, u)
    for u in sups[:10]:
        for v in sups[:10]:
            for w in sups[:10]:
                if cc_support_preceq(u, v) and cc_support_preceq(v, w):
                    assert cc_support_preceq(u, w)
    # set inclusion refines the preorder
    for u in sups:
        for v in sups:
            if u <= v:
                assert cc_support_preceq(u, v)


def test_cc_minimal_supports_examples():
    single = cc_parse("p :- {s} 0.")
    assert cc_minimal_supports(single, 0) == [
        frozenset({(frozenset({1}), 0)})
    ]
    chained = cc_parse("q. p :- 1 {q}, {q; r} 1.")
    sups = cc_minimal_supports(chained, chained.atom("p"))
    assert sups == [frozenset({(frozenset({0, 2}), 1)})]
    phi = cc_support_formula(sups[0])
    assert evaluate(phi, frozenset({0}))
    assert not evaluate(phi, frozenset({0, 2}))


def test_cc_gl_via_schemes_matches_ccgl():
    for seed in range(60):
        prog = random_cc_program(seed)
        fam = cc_support_family(prog, minimal=True)
        n = prog.n_atoms
        for mask in range(1 << n):
            m = frozenset(i for i in range(n) if mask >> i & 1)
            assert cc_gl_via_schemes(prog, m, fam) == ccgl(prog, m)


def test_ccgl_antimonotone():
    for seed in range(40):
        prog = random_cc_program(seed)
        n = prog.n_atoms
        table = {}
        for mask in range(1 << n):
            m = frozenset(i for i in range(n) if mask >> i & 1)
            table[m] = ccgl(prog, m)
        for x in table:
            for y in table:
                if x <= y:
                    assert table[y] <= table[x]


def test_ccgl_continuity_on_decreasing_chain():
    prog = cc_parse("p :- {q} 0. q :- {p} 1, {r} 0. r.")
    n = prog.n_atoms
    chain = [frozenset(range(n)), frozenset({0, 2}), frozenset({2}), frozenset({2})]
    meet = frozenset.intersection(*chain)
    union = frozenset()
    for x in chain:
        union |= ccgl(prog, x)
    assert ccgl(prog, meet) == union


def test_cc_theory_examples():
    pair = cc_parse("p :- {q} 0. q :- {p} 0.")
    th = cc_theory(pair)
    assert th.formulas == (
        Iff(Lit(0), Lit(1, False)),
        Iff(Lit(1), Lit(0, False)),
    )
    assert all_models(th) == cc_stable_models_bruteforce(pair)
    neg_self = cc_parse("p :- {p} 0.")
    assert cc_stable_models_via_equations(neg_self) == []
    horn = cc_parse("#atoms p, q. p.")
    assert cc_theory(horn).formulas == (Iff(Lit(0), TOP), Iff(Lit(1), BOT))


def test_cc_equations_match_oracle_on_random_programs():
    for seed in range(60):
        prog = random_cc_program(seed)
        oracle = cc_stable_models_bruteforce(prog)
        assert cc_stable_models_via_equations(prog, reduced=True) == oracle
        assert cc_stable_models_via_equations(prog, reduced=False) == oracle


def test_normal_embedding(ex1):
    cc = cc_from_normal(ex1)
    assert cc_stable_models_bruteforce(cc) == stable_models_bruteforce(ex1)
    assert cc_stable_models_via_equations(cc) == stable_models_bruteforce(ex1)


def test_embedded_supports_equivalent_to_normal(ex1):
    from stablelab.schemes import minimal_support_family

    cc = cc_from_normal(ex1)
    cc_fam = cc_support_family(cc, minimal=True)
    fam = minimal_support_family(ex1)
    for a in range(ex1.n_atoms):
        normal_rhs = (
            Or(tuple(neg_set(u) for u in fam[a])) if len(fam[a]) > 1
            else (neg_set(next(iter(fam[a]))) if fam[a] else BOT)
        )
        cc_rhs = (
            Or(tuple(cc_support_formula(u) for u in cc_fam[a]))
            if len(cc_fam[a]) > 1
            else (cc_support_formula(next(iter(cc_fam[a]))) if cc_fam[a] else BOT)
        )
        assert equivalent(normal_rhs, cc_rhs)


def test_cc_pretty_round_trip():
    for seed in range(30):
        prog = random_cc_program(seed)
        back = cc_parse(pretty_cc_program(prog))
        assert back.names == prog.names
        assert back.clauses == prog.clauses
