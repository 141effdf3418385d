"""Finite monoids from presentations, optionally with an absorbing zero.

The word problem is solved by Knuth-Bendix completion under the shortlex
order (generators in declared order, the zero symbol ``0`` below every
generator).  If completion or enumeration does not finish within its caps
the result is :class:`Undecided`; a table is never guessed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .monoid import FiniteMonoid

ZERO = "0"


class PresentationError(ValueError):
    pass


class Undecided(RuntimeError):
    pass


@dataclass
class Presentation:
    generators: str
    relations: list[tuple[str, str]] = field(default_factory=list)
    zero_rules: list[str] = field(default_factory=list)
    has_zero: bool = False

    def __post_init__(self):
        if not self.generators or len(set(self.generators)) != len(self.generators):
            raise PresentationError("generators must be distinct letters")
        if ZERO in self.generators:
            raise PresentationError("'0' is reserved for the zero element")
        if self.zero_rules:
            self.has_zero = True
        allowed = set(self.generators)
        for u, v in self.relations:
            if not set(u + v) <= allowed:
                raise PresentationError(f"relation {u} = {v} uses unknown letters")
        for w in self.zero_rules:
            if not set(w) <= allowed:
                raise PresentationError(f"zero rule {w} uses unknown letters")

    def all_relations(self) -> list[tuple[str, str]]:
        rels = list(self.relations)
        rels += [(w, ZERO) for w in self.zero_rules]
        return rels

    def dumps(self) -> str:
        lines = [f"gens {self.generators}"]
        lines += [f"rel {u or '1'} = {v or '1'}" for u, v in self.relations]
        lines += [f"zero {w}" for w in self.zero_rules]
        if self.has_zero and not self.zero_rules:
            lines.append("haszero")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        gens = None
        rels, zeros, has_zero = [], [], False
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(" ")
            rest = rest.strip()
            if key == "gens":
                gens = rest
            elif key == "rel":
                u, sep, v = rest.partition("=")
                if not sep:
                    raise PresentationError(f"bad relation line: {raw!r}")
                u, v = (s.strip() for s in (u, v))
                u = "" if u == "1" else u
                v = "" if v == "1" else v
                if v == ZERO:
                    zeros.append(u)
                else:
                    rels.append((u, v))
            elif key == "zero":
                zeros.append(rest)
            elif key == "haszero":
                has_zero = True
            else:
                raise PresentationError(f"unknown line: {raw!r}")
        if gens is None:
            raise PresentationError("missing 'gens' line")
        return cls(gens, rels, zeros, has_zero or bool(zeros))


def builder_monoid_0(n: int) -> Presentation:
    """``a^n b^n a^n = a^n``, ``b^n a^n b^n = b^n``, ``a^(n+1) = b^(n+1) = a b^i a = b a^i b = 0``."""
    if n < 2:
        raise PresentationError("n must be >= 2")
    a, b = "a" * n, "b" * n
    rels = [(a + b + a, a), (b + a + b, b)]
    zeros = ["a" * (n + 1), "b" * (n + 1)]
    for i in range(1, n):
        zeros += ["a" + "b" * i + "a", "b" + "a" * i + "b"]
    return Presentation("ab", rels, zeros, True)


def builder_monoid_1(n: int) -> Presentation:
    """``a^n b a^n = a^n``, ``b a^n b = b``, ``b a^i b = 0`` (0 <= i < n), ``a^(n+1) = 0``."""
    if n < 2:
        raise PresentationError("n must be >= 2")
    a = "a" * n
    rels = [(a + "b" + a, a), ("b" + a + "b", "b")]
    zeros = ["b" + "a" * i + "b" for i in range(n)] + ["a" * (n + 1)]
    return Presentation("ab", rels, zeros, True)


# -- rewriting -----------------------------------------------------------


class RewritingSystem:
    def __init__(self, generators: str, has_zero: bool):
        self.generators = generators
        self.has_zero = has_zero
        rank = {ZERO: -1}
        rank.update({g: i for i, g in enumerate(generators)})
        self._rank = rank
        self.rules: dict[str, str] = {}

    def key(self, w: str):
        return (len(w), [self._rank[c] for c in w])

    def orient(self, u: str, v: str) -> tuple[str, str] | None:
        if u == v:
            return None
        return (u, v) if self.key(u) > self.key(v) else (v, u)

    def reduce(self, w: str) -> str:
        rules = self.rules
        changed = True
        while changed:
            changed = False
            if self.has_zero and ZERO in w and w != ZERO:
                return ZERO
            for lhs, rhs in rules.items():
                if lhs in w:
                    w = w.replace(lhs, rhs)
                    changed = True
        if self.has_zero and ZERO in w:
            return ZERO
        return w

    def is_irreducible(self, w: str) -> bool:
        return not any(lhs in w for lhs in self.rules)

    def _interreduce(self):
        changed = True
        while changed:
            changed = False
            for lhs in list(self.rules):
                rhs = self.rules.pop(lhs)
                l2 = self.reduce(lhs)
                r2 = self.reduce(rhs)
                pair = self.orient(l2, r2)
                if pair is None:
                    changed = True
                    continue
                if pair != (lhs, rhs):
                    changed = True
                self.rules[pair[0]] = pair[1]

    def _critical_pairs(self):
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                # overlap: suffix of l1 equals prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        yield r1 + l2[k:], l1[:-k] + r2
                # inclusion of l2 inside l1
                if l1 != l2:
                    i = l1.find(l2)
                    while i >= 0:
                        yield r1, l1[:i] + r2 + l1[i + len(l2):]
                        i = l1.find(l2, i + 1)

    def complete(self, relations, max_rules: int = 2000, max_rounds: int = 200, max_len: int = 200):
        for u, v in relations:
            pair = self.orient(u, v)
            if pair:
                self.rules.setdefault(*pair)
        if self.has_zero:
            for g in self.generators + ZERO:
                self.rules[g + ZERO] = ZERO
                self.rules[ZERO + g] = ZERO
        self._interreduce()
        for _ in range(max_rounds):
            added = False
            for p, q in list(self._critical_pairs()):
                p, q = self.reduce(p), self.reduce(q)
                pair = self.orient(p, q)
                if pair is None:
                    continue
                if len(pair[0]) > max_len:
                    raise Undecided(f"rule length exceeds {max_len}")
                self.rules[pair[0]] = pair[1]
                added = True
                if len(self.rules) > max_rules:
                    raise Undecided(f"more than {max_rules} rules")
            if not added:
                return self
            self._interreduce()
        raise Undecided(f"completion did not converge in {max_rounds} rounds")


@dataclass(eq=False)
class EnumeratedMonoid:
    monoid: FiniteMonoid
    words: list[str]
    system: RewritingSystem
    presentation: Presentation

    def element(self, word: str) -> int:
        nf = self.system.reduce(word)
        return self.words.index(nf)

    @property
    def zero(self) -> int | None:
        return self.words.index(ZERO) if ZERO in self.words else None


def enumerate_presentation(p: Presentation, cap: int = 100_000, **completion_caps) -> EnumeratedMonoid:
    if cap < 1:
        raise PresentationError("cap must be >= 1")
    rs = RewritingSystem(p.generators, p.has_zero).complete(p.all_relations(), **completion_caps)
    words = [""]
    queue = deque(words)
    while queue:
        w = queue.popleft()
        for g in p.generators:
            v = w + g
            if rs.is_irreducible(v):
                if len(words) >= cap:
                    raise Undecided(f"more than {cap} elements")
                words.append(v)
                queue.append(v)
    if p.has_zero:
        words.append(ZERO)
    index = {w: i for i, w in enumerate(words)}
    n = len(words)
    table = np.empty((n, n), dtype=np.int64)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            table[i, j] = index[rs.reduce(u + v)]
    gens = tuple(index[rs.reduce(g)] for g in p.generators)
    labels = [w if w else "1" for w in words]
    M = FiniteMonoid(table, 0, gens, labels, tuple(p.generators))
    return EnumeratedMonoid(M, words, rs, p)
