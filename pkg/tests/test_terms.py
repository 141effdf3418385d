import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoidkit.monoid import OrderedMonoid, Transformation, cyclic_group, from_generators, from_table
from monoidkit.terms import (BudgetExceeded, Concat, Int, OmegaPlus, One, Power, Pseudoidentity,
                             TermSyntaxError, Variable, check, check_identity, check_inequality,
                             concat, evaluate, omega, parse_term, sample_check, substitute, variables, word_term)


def naive_value(t, M, sigma):
    if isinstance(t, One):
        return M.identity
    if isinstance(t, Variable):
        return sigma[t.name]
    if isinstance(t, Concat):
        acc = M.identity
        for p in t.parts:
            acc = M.mul(acc, naive_value(p, M, sigma))
        return acc
    base = naive_value(t.base, M, sigma)
    if isinstance(t.exp, Int):
        acc = M.identity
        for _ in range(t.exp.k):
            acc = M.mul(acc, base)
        return acc
    # omega + k: walk powers until idempotent, then step within the cycle
    seq = [base]
    while M.mul(seq[-1], base) not in seq:
        seq.append(M.mul(seq[-1], base))
    e = next(i + 1 for i, p in enumerate(seq) if M.mul(p, p) == p)
    period = len(seq) - seq.index(M.mul(seq[-1], base))
    # a multiple of the period past the index, shifted by k
    exp = e * period + period * 10 + t.exp.k
    acc = M.identity
    for _ in range(exp):
        acc = M.mul(acc, base)
    return acc


def terms(depth=3):
    leaf = st.sampled_from([Variable("x"), Variable("y"), Variable("z"), One()])
    if depth == 0:
        return leaf
    sub = terms(depth - 1)
    exps = st.one_of(st.integers(1, 4).map(Int), st.integers(-2, 2).map(OmegaPlus))
    return st.one_of(
        leaf,
        st.tuples(sub, sub).map(lambda p: concat(*p)),
        st.tuples(sub, exps).map(lambda p: Power(*p)),
    )


MONOIDS = [
    from_generators([Transformation((1, 2, 0, 0)), Transformation((0, 0, 2, 3))]),
    from_generators([Transformation((1, 0, 2)), Transformation((0, 0, 1))]),
    cyclic_group(6),
]


def test_parse_and_print():
    t = parse_term("(x y^w z)^(w+1)")
    assert str(t) == "(x y^w z)^(w+1)"
    assert parse_term(str(t)) == t
    assert parse_term("x^(w-1)").exp == OmegaPlus(-1)
    assert isinstance(parse_term("1"), One)
    assert variables(parse_term("(x y)^w x t")) == {"x", "y", "t"}


@pytest.mark.parametrize("bad", ["x^0", "x^", "(x y", "x^(w*2)", "", "x ) y"])
def test_parse_errors(bad):
    with pytest.raises(TermSyntaxError):
        parse_term(bad)


@given(terms())
@settings(max_examples=100, deadline=None)
def test_print_parse_round_trip(t):
    assert parse_term(str(t)) == t


@given(terms(), st.integers(0, 2), st.data())
@settings(max_examples=200, deadline=None)
def test_evaluation_matches_naive(t, which, data):
    M = MONOIDS[which]
    sigma = {v: data.draw(st.integers(0, M.size - 1)) for v in "xyz"}
    assert evaluate(t, M, sigma) == naive_value(t, M, sigma)


def test_substitute():
    t = parse_term("(x y)^w")
    s = substitute(t, {"x": word_term("ab")})
    assert str(s) == "(a b y)^w"
    assert omega(word_term("ab"), 1) == parse_term("(a b)^(w+1)")


def brute_first_witness(M, pid, leq=None):
    names = pid.variables
    for vals in itertools.product(range(M.size), repeat=len(names)):
        sigma = dict(zip(names, vals))
        a, b = naive_value(pid.lhs, M, sigma), naive_value(pid.rhs, M, sigma)
        ok = leq[a, b] if leq is not None else a == b
        if not ok:
            return sigma
    return None


IDENTITIES = ["x y = y x", "x^(w+1) = x^w", "(x y)^w = (y x)^w", "x^w y x^w = x^w",
              "(x^w y)^w = (y x^w)^w", "x^6 = 1", "x^2 y = y x^2"]


@pytest.mark.parametrize("text", IDENTITIES)
@pytest.mark.parametrize("which", range(3))
def test_check_identity_matches_brute_force(text, which):
    M = MONOIDS[which]
    pid = Pseudoidentity.parse(text)
    res = check_identity(M, pid)
    want = brute_first_witness(M, pid)
    assert res.holds == (want is None)
    if want is not None:
        assert res.witness == want
        assert res.lhs_value != res.rhs_value


def test_inequalities():
    # U_1 = {1, 0} ordered by 0 <= 1
    M = from_table([[0, 1], [1, 1]], identity=0, generators=(1,))
    OM = OrderedMonoid(M, np.array([[True, False], [True, True]]))
    assert check_inequality(OM, Pseudoidentity.parse("x <= 1"))
    res = check_inequality(OM, Pseudoidentity.parse("1 <= x"))
    assert not res and res.witness == {"x": 1}
    assert brute_first_witness(M, Pseudoidentity.parse("1 <= x"), OM.leq) == res.witness
    # on a plain monoid an inequality is read with equality as the order
    assert not check(M, Pseudoidentity.parse("1 <= x"))


def test_budget():
    M = MONOIDS[0]
    pid = Pseudoidentity.parse("x y z t = t z y x")
    with pytest.raises(BudgetExceeded):
        check_identity(M, pid, budget=100)
    assert check_identity(M, pid, budget=100, override=True).holds is False


def test_sample_check_only_reports_real_failures():
    M = MONOIDS[1]
    rng = np.random.default_rng(0)
    pid = Pseudoidentity.parse("x y = y x")
    res = sample_check(M, pid, 500, rng)
    assert not res
    w = res.witness
    assert M.mul(w["x"], w["y"]) != M.mul(w["y"], w["x"])
    assert sample_check(cyclic_group(4), pid, 200, rng)
