import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoidkit import dfa as D
from monoidkit.regex import RegexError, compile as rx
from monoidkit.words import all_words


def test_documented_examples():
    a_star = rx("a*", "ab")
    assert a_star.states == 2
    assert a_star.accepts("") and a_star.accepts("aaa") and not a_star.accepts("ab")
    cyc = rx("(abcacb)*", "abc")
    assert cyc.states == 7
    everything = rx("~()", "ab")
    assert everything.states == 1 and all(everything.accepts(w) for w in all_words("ab", 4))


def test_operators():
    assert rx("()*", "ab").accepts("") and not rx("()*", "ab").accepts("a")
    assert rx("()", "ab").is_empty()
    both = rx(".*a.* & .*b.*", "ab")
    assert both.accepts("ab") and both.accepts("ba") and not both.accepts("aaa")
    plus = rx("(ab)+", "ab")
    assert not plus.accepts("") and plus.accepts("abab")
    assert rx("ab*", "ab").accepts("abbb") and not rx("ab*", "ab").accepts("abab")


@pytest.mark.parametrize("bad, pos", [("(ab", 3), ("a|*", 2), ("ab)", 2), ("a~", 2)])
def test_parse_errors_carry_position(bad, pos):
    with pytest.raises(RegexError) as exc:
        rx(bad, "ab")
    assert exc.value.position == pos


def test_letter_outside_alphabet():
    with pytest.raises(RegexError):
        rx("abc", "ab")


def test_empty_alphabet():
    with pytest.raises((RegexError, D.DfaError)):
        rx("", "")


# random plain regexes, checked against Python's re module ---------------------

def plain_regex(depth):
    leaf = st.sampled_from(["a", "b", "ab", "ba", "."])
    if depth == 0:
        return leaf
    sub = plain_regex(depth - 1)
    return st.one_of(
        leaf,
        st.tuples(sub, sub).map(lambda p: p[0] + p[1]),
        st.tuples(sub, sub).map(lambda p: f"({p[0]}|{p[1]})"),
        sub.map(lambda p: f"({p})*"),
        sub.map(lambda p: f"({p})+"),
    )


WORDS = list(all_words("ab", 7))


@given(plain_regex(3))
@settings(max_examples=150, deadline=None)
def test_compile_agrees_with_re(pattern):
    d = rx(pattern, "ab")
    pyre = re.compile(pattern.replace(".", "[ab]"))
    for w in WORDS:
        assert d.accepts(w) == bool(pyre.fullmatch(w)), (pattern, w)


@given(plain_regex(2), plain_regex(2))
@settings(max_examples=60, deadline=None)
def test_boolean_operations(p, q):
    a, b = rx(p, "ab"), rx(q, "ab")
    for name, op in (("&", lambda x, y: x and y), ("|", lambda x, y: x or y)):
        d = D.intersection(a, b) if name == "&" else D.union(a, b)
        for w in WORDS[:127]:
            assert d.accepts(w) == op(a.accepts(w), b.accepts(w))
    c = D.complement(a)
    assert all(c.accepts(w) != a.accepts(w) for w in WORDS[:63])
    assert D.equivalent(D.complement(c), a)


@given(plain_regex(3))
@settings(max_examples=80, deadline=None)
def test_minimal_dfa_is_minimal(pattern):
    d = rx(pattern, "ab")
    # Myhill-Nerode: states pairwise distinguished by short suffixes, and all reachable
    sigs = set()
    for q in range(d.states):
        sigs.add(tuple(d.final_mask()[d.run(w, q)] for w in all_words("ab", d.states)))
    assert len(sigs) == d.states
    assert D.reachable(d).all()
    # canonical numbering: re-minimising changes nothing
    again = D.minimize(d)
    assert np.array_equal(again.delta, d.delta) and again.finals == d.finals


def brute_factors(lang_words, max_len):
    out = set()
    for w in lang_words:
        for i in range(len(w) + 1):
            for j in range(i, min(len(w), i + max_len) + 1):
                out.add(w[i:j])
    return out


def test_factor_closure_examples():
    F = D.factor_closure(rx("(ab)*", "ab"))
    assert F.accepts("ba") and not F.accepts("aa")
    assert D.equivalent(D.factor_closure(rx("a*", "ab")), rx("a*", "ab"))
    # brute force to length 6
    members = [w for w in all_words("ab", 12) if re.fullmatch("(ab)*", w)]
    facs = brute_factors(members, 6)
    for w in all_words("ab", 6):
        assert F.accepts(w) == (w in facs)


@given(plain_regex(3))
@settings(max_examples=60, deadline=None)
def test_factor_closure_properties(pattern):
    L = rx(pattern, "ab")
    F = D.factor_closure(L)
    assert D.equivalent(D.factor_closure(F), F)
    assert D.difference(L, F).is_empty()
    members = [w for w in all_words("ab", 9) if L.accepts(w)]
    facs = brute_factors(members, 5)
    for w in all_words("ab", 5):
        if w in facs:
            assert F.accepts(w)


def test_finite_language_and_text_format():
    words = ["", "ab", "abb", "ba"]
    d = D.finite_language(words, "ab")
    assert {w for w in all_words("ab", 5) if d.accepts(w)} == set(words)
    d2 = D.loads_dfa(D.dumps_dfa(d))
    assert D.equivalent(d, d2)
    with pytest.raises(D.DfaError):
        D.loads_dfa("alphabet ab\nstates 2\n")


def test_literal_and_length():
    assert D.literal("aba", "ab").accepts("aba")
    long = D.words_of_length_at_least(3, "ab")
    assert not long.accepts("ab") and long.accepts("bbb")
