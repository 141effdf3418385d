import numpy as np

from monoidkit.corpus import (KINDS, _draw, count_mod, language_corpus, random_regex,
                              random_transformation_monoids, scattered_upset)
from monoidkit.words import all_words, is_subsequence


def test_monoid_corpus_is_deterministic_and_bounded():
    a = random_transformation_monoids(40, seed=3)
    b = random_transformation_monoids(40, seed=3)
    assert [it.name for it in a] == [it.name for it in b]
    for x, y in zip(a, b):
        assert np.array_equal(x.monoid.table, y.monoid.table)
    for it in a:
        M = it.monoid
        assert M.size <= 300
        assert len(M.generators) <= 3
        M.validate()
    assert {it.kind for it in a} == set(KINDS)
    c = random_transformation_monoids(40, seed=4)
    assert [x.monoid.size for x in a] != [y.monoid.size for y in c]


def test_generator_draws_stay_small():
    rng = np.random.default_rng(0)
    for _ in range(300):
        for kind in KINDS:
            maps = _draw(rng, kind, 8, 3)
            assert 1 <= len(maps) <= 3
            assert all(2 <= len(m) <= 8 and set(m) <= set(range(len(m))) for m in maps)


def test_cap_is_respected():
    for it in random_transformation_monoids(20, seed=5, cap=40):
        assert it.monoid.size <= 40


def test_count_mod():
    L = count_mod("ab", "a", 3, 1)
    for w in all_words("ab", 6):
        assert L.accepts(w) == (w.count("a") % 3 == 1)


def test_scattered_upset():
    L = scattered_upset("aba", "ab")
    for w in all_words("ab", 6):
        assert L.accepts(w) == is_subsequence("aba", w)


def test_random_regex_is_seeded():
    r1 = [random_regex(np.random.default_rng(9), "ab") for _ in range(3)]
    r2 = [random_regex(np.random.default_rng(9), "ab") for _ in range(3)]
    assert r1 == r2


def test_language_corpus():
    items = language_corpus(2, seed=0, random_count=10)
    names = [it.name for it in items]
    assert "L2" in names and len(set(names)) == len(names)
    assert all(it.result.monoid.size <= 300 for it in items)
    again = language_corpus(2, seed=0, random_count=10)
    assert [it.name for it in again] == names
