"""Seeded corpora of small monoids and languages for property suites."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dfa as D
from .lang import SyntacticResult, factor_separated, lang_L2, power_factor_or_long, syntactic_ordered_monoid
from .monoid import ElementCapExceeded, FiniteMonoid, Transformation, from_generators
from .regex import compile as compile_regex

KINDS = ("random", "extensive", "permutation", "blocks", "sink")


@dataclass
class CorpusItem:
    name: str
    kind: str
    monoid: FiniteMonoid


def _random_map(rng, d):
    return tuple(int(x) for x in rng.integers(0, d, size=d))


def _extensive_map(rng, d):
    # order-preserving and extensive: generates a J-trivial monoid
    out, lo = [], 0
    for i in range(d):
        lo = max(lo, i)
        lo = int(rng.integers(lo, d)) if rng.random() < 0.5 else lo
        out.append(lo)
    return tuple(out)


def _permutation(rng, d, order=None):
    if order == 2:
        pts = list(rng.permutation(d))
        img = list(range(d))
        for k in range(int(rng.integers(1, d // 2 + 1))):
            a, b = int(pts[2 * k]), int(pts[2 * k + 1])
            img[a], img[b] = b, a
        return tuple(img)
    if order == 3 and d >= 3:
        img = list(range(d))
        pts = list(rng.permutation(d))
        for k in range(int(rng.integers(1, d // 3 + 1))):
            a, b, c = (int(p) for p in pts[3 * k:3 * k + 3])
            img[a], img[b], img[c] = b, c, a
        return tuple(img)
    return tuple(int(x) for x in rng.permutation(d))


def _sink_map(rng, d):
    # every point moves strictly up or falls into the sink d-1
    out = []
    for i in range(d - 1):
        out.append(int(rng.integers(i + 1, d)) if rng.random() < 0.7 else d - 1)
    out.append(d - 1)
    return tuple(out)


def _blocks(rng, d):
    """A group part on the first points, a J-trivial part on the rest."""
    g = int(rng.integers(2, min(4, d - 1) + 1))
    order = int(rng.choice([2, 3]))
    perm = _permutation(rng, g, order)
    ext = _extensive_map(rng, d - g)
    shifted = tuple(x + g for x in ext)
    a = perm + tuple(range(g, d))
    b = tuple(range(g)) + shifted
    c = perm + shifted
    return [a, b, c][: int(rng.integers(2, 4))]


def _draw(rng, kind, max_points, max_gens):
    d = int(rng.integers(2, max_points + 1))
    k = int(rng.integers(1, max_gens + 1))
    if kind == "random":
        return [_random_map(rng, d) for _ in range(k)]
    if kind == "extensive":
        return [_extensive_map(rng, d) for _ in range(k)]
    if kind == "permutation":
        order = int(rng.choice([2, 3, 0]))
        return [_permutation(rng, d, order or None) for _ in range(k)]
    if kind == "sink":
        maps = [_sink_map(rng, d) for _ in range(k)]
        if rng.random() < 0.2:
            maps[-1] = _permutation(rng, d, 2)
        return maps
    if kind == "blocks":
        return _blocks(rng, max(d, 4))
    raise ValueError(kind)


def random_transformation_monoids(count: int, seed: int = 0, max_points: int = 8, max_gens: int = 3,
                                  cap: int = 300, kinds=KINDS) -> list[CorpusItem]:
    """Deterministic list of transformation monoids of at most ``cap`` elements."""
    rng = np.random.default_rng(seed)
    out: list[CorpusItem] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        kind = kinds[len(out) % len(kinds)]
        maps = _draw(rng, kind, max_points, max_gens)
        try:
            M = from_generators([Transformation(m) for m in maps], cap=cap + 1)
        except ElementCapExceeded:
            continue
        if M.size > cap:
            continue
        out.append(CorpusItem(f"{kind}-{len(out)}", kind, M))
    return out


# -- languages ----------------------------------------------------------------


def count_mod(alphabet: str, letter: str, n: int, residue: int) -> D.Dfa:
    k = len(alphabet)
    j = alphabet.index(letter)
    delta = np.array([[(q + 1) % n if a == j else q for a in range(k)] for q in range(n)], dtype=np.int64)
    return D.minimize(D.Dfa(alphabet, delta, 0, frozenset({residue % n})))


def scattered_upset(word: str, alphabet: str) -> D.Dfa:
    """Words containing ``word`` as a scattered subword (closed under any insertion)."""
    pattern = ".*" + ".*".join(word) + ".*"
    return compile_regex(pattern, alphabet)


def random_regex(rng, alphabet: str, depth: int = 3) -> str:
    if depth == 0 or rng.random() < 0.25:
        return str(rng.choice(list(alphabet)))
    op = rng.choice(["cat", "alt", "star", "cat", "neg"])
    if op == "cat":
        return random_regex(rng, alphabet, depth - 1) + random_regex(rng, alphabet, depth - 1)
    if op == "alt":
        return f"({random_regex(rng, alphabet, depth - 1)}|{random_regex(rng, alphabet, depth - 1)})"
    if op == "neg":
        return f"~({random_regex(rng, alphabet, depth - 1)})"
    return f"({random_regex(rng, alphabet, depth - 1)})*"


@dataclass
class LanguageItem:
    name: str
    result: SyntacticResult


def language_corpus(n: int, seed: int = 0, random_count: int = 40, cap: int = 300) -> list[LanguageItem]:
    """Syntactic ordered monoids (at most ``cap`` elements) of designed and random languages."""
    rng = np.random.default_rng(seed)
    langs: list[tuple[str, D.Dfa]] = []
    if n == 2:
        langs.append(("L2", lang_L2()))
    for ab in ("ab", "abc"):
        for bound in range(3, 7):
            langs.append((f"power{n}-or-long{bound}-{ab}", power_factor_or_long(ab, n, bound)))
    for r in range(n):
        langs.append((f"count-a-mod{n}={r}", count_mod("ab", "a", n, r)))
    for w in ("ab", "aba", "abb", "ba"):
        langs.append((f"upset-{w}", scattered_upset(w, "ab")))
    for w in ("ab", "abc", "abcacb", "aab", "abac"):
        alpha = "".join(sorted(set(w)))
        if len(alpha) > 1:
            langs.append((f"sep-{w}-{n}", factor_separated(w, n, alpha)))
    for i in range(random_count):
        pat = random_regex(rng, "ab")
        langs.append((f"rand{i}:{pat}", compile_regex(pat, "ab")))
    out = []
    for name, dfa in langs:
        try:
            res = syntactic_ordered_monoid(dfa, cap=cap + 1)
        except ElementCapExceeded:
            continue
        if res.monoid.size <= cap:
            out.append(LanguageItem(name, res))
    return out
