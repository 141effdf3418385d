import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoidkit.monoid import (ElementCapExceeded, MonoidError, OrderedMonoid, Transformation,
                              cyclic_group, dumps_monoid, from_generators, from_table, green_data,
                              loads_monoid, omega_power, stable_closure, submonoid, trivial_monoid)


def T(*imgs):
    return Transformation(tuple(imgs))


# brute-force oracles -------------------------------------------------------

def ideals(M):
    n = M.size
    t = M.table
    right = [frozenset(int(x) for x in t[s]) for s in range(n)]
    left = [frozenset(int(x) for x in t[:, s]) for s in range(n)]
    two = [frozenset(int(t[t[a, s], b]) for a in range(n) for b in range(n)) for s in range(n)]
    return right, left, two


def same_partition(labels, keys):
    n = len(keys)
    for a in range(n):
        for b in range(n):
            assert (labels[a] == labels[b]) == (keys[a] == keys[b])


def naive_omega(M, s, k=0):
    powers = [s]
    while True:
        nxt = M.mul(powers[-1], s)
        if nxt in powers:
            break
        powers.append(nxt)
    # powers[i] = s^(i+1); find the idempotent
    idem = [i + 1 for i, p in enumerate(powers) if M.mul(p, p) == p][0]
    period = len(powers) - powers.index(M.mul(powers[-1], s))
    e = idem
    while (e - k) % period:
        e += 1
    return M.power(s, e)


transformations = st.integers(2, 5).flatmap(
    lambda d: st.lists(st.tuples(*[st.integers(0, d - 1)] * d), min_size=1, max_size=3))


# ---------------------------------------------------------------------------

def test_full_transformation_monoid_sizes():
    # T_2 has 4 elements, T_3 has 27
    assert from_generators([T(1, 0), T(0, 0)]).size == 4
    assert from_generators([T(1, 2, 0), T(1, 0, 2), T(0, 0, 2)]).size == 27


def test_identity_first_and_labels_shortlex():
    M = from_generators([T(1, 0), T(0, 0)], names=["a", "b"])
    assert M.identity == 0
    assert M.label(0) == "1"
    assert M.element_labels[1:3] == ["a", "b"]
    for s in range(M.size):
        word = M.element_labels[s]
        assert M.evaluate_word([M.generator_names.index(c) for c in word]) == s


def test_cap():
    with pytest.raises(ElementCapExceeded):
        from_generators([T(1, 2, 0), T(1, 0, 2), T(0, 0, 2)], cap=10)


def test_cyclic_and_trivial():
    C = cyclic_group(5)
    assert C.is_group() and C.is_commutative()
    assert trivial_monoid().size == 1


@given(transformations)
@settings(max_examples=60, deadline=None)
def test_monoid_axioms_on_random_transformations(maps):
    M = from_generators([Transformation(m) for m in maps])
    assert M.check_identity_element()
    assert M.is_associative()
    assert M.generated_by_generators()


@given(transformations)
@settings(max_examples=40, deadline=None)
def test_omega_powers_match_naive(maps):
    M = from_generators([Transformation(m) for m in maps])
    for s in range(M.size):
        e = omega_power(M, s)
        assert M.is_idempotent(e)
        assert e == naive_omega(M, s)
        for k in (1, 2, -1):
            assert omega_power(M, s, k) == naive_omega(M, s, k)
    assert np.array_equal(M.omega_array(1), [omega_power(M, s, 1) for s in range(M.size)])


@given(transformations)
@settings(max_examples=40, deadline=None)
def test_green_relations_match_ideals(maps):
    M = from_generators([Transformation(m) for m in maps])
    g = green_data(M)
    R, L, J = ideals(M)
    same_partition(g.r_class, R)
    same_partition(g.l_class, L)
    same_partition(g.j_class, J)
    same_partition(g.h_class, list(zip(R, L)))


def test_green_counts_full_t3():
    M = from_generators([T(1, 2, 0), T(1, 0, 2), T(0, 0, 2)])
    g = green_data(M)
    # J-classes of T_3 are the ranks 1, 2, 3
    assert g.num_classes("J") == 3
    assert len(g.regular_j_classes()) == 3
    assert g.idempotents_per_r.max() > 1


def test_submonoid_embedding():
    M = from_generators([T(1, 2, 0), T(0, 0, 2)])
    S, embed = submonoid(M, [1])
    assert S.is_group() and S.size == 3
    for a in range(S.size):
        for b in range(S.size):
            assert embed[S.mul(a, b)] == M.mul(embed[a], embed[b])


def test_from_table_rejects_bad_tables():
    with pytest.raises(MonoidError):
        from_table([[0, 1], [1, 1]], identity=1)
    # not associative: a*a = 1 but (a*b)... on three elements
    bad = [[0, 1, 2], [1, 2, 0], [2, 2, 2]]
    with pytest.raises(MonoidError):
        from_table(bad, identity=0)


def test_text_round_trip():
    M = from_generators([T(1, 0, 0), T(2, 2, 1)])
    M2 = loads_monoid(dumps_monoid(M))
    assert np.array_equal(M.table, M2.table)
    assert M2.generators == M.generators


def test_stable_closure():
    # U_1 = {1, 0}: requiring 0 <= 1 gives the order {0 <= 1}
    M = from_table([[0, 1], [1, 1]], identity=0, generators=(1,))
    sc = stable_closure(M, [(1, 0)])
    assert sc.antisymmetric
    assert sc.ordered.is_partial_order() and sc.ordered.is_stable()
    # in C_3, 1 <= g forces g <= g^2 <= 1, so the quasiorder collapses
    sc = stable_closure(cyclic_group(3), [(0, 1)])
    assert not sc.antisymmetric and sc.offending_pair is not None


@given(transformations, st.data())
@settings(max_examples=30, deadline=None)
def test_stable_closure_is_least(maps, data):
    M = from_generators([Transformation(m) for m in maps])
    pairs = data.draw(st.lists(st.tuples(st.integers(0, M.size - 1), st.integers(0, M.size - 1)), max_size=3))
    rel = stable_closure(M, pairs).relation
    n = M.size
    t = M.table
    # brute force: reflexive, transitive, stable under all elements, contains pairs
    assert rel.diagonal().all()
    for a, b in pairs:
        assert rel[a, b]
    for a, b in zip(*np.nonzero(rel)):
        assert rel[t[a], t[b]].all() and rel[t[:, a], t[:, b]].all()
    assert ((rel.astype(int) @ rel.astype(int) > 0) <= rel).all()
    # least: every pair is forced by a chain of u*p*v <= u*q*v steps
    base = np.zeros_like(rel)
    base[np.diag_indices(n)] = True
    for a, b in pairs:
        for u, v in itertools.product(range(n), repeat=2):
            base[t[t[u, a], v], t[t[u, b], v]] = True
    closed = base.copy()
    for k in range(n):
        closed |= closed[:, [k]] & closed[[k], :]
    assert np.array_equal(closed, rel)


def test_ordered_monoid_checks():
    M = from_table([[0, 1], [1, 1]], identity=0, generators=(1,))
    assert OrderedMonoid(M, np.array([[1, 0], [1, 1]], bool)).is_stable()
    assert OrderedMonoid.trivial(M).is_partial_order()
