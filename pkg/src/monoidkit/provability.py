"""Word-level proofs from ``1 <= x^n``: sequences of insertions of n-th powers."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .monoid import FiniteMonoid
from .terms import Pseudoidentity, check_identity, concat, omega, word_term
from .words import is_subsequence, letter_counts, power_decompositions

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass
class InsertionProof:
    start: str
    n: int
    steps: list[tuple[int, str]] = field(default_factory=list)  # (position, base word)

    def replay(self) -> str:
        w = self.start
        for pos, base in self.steps:
            if not base or not 0 <= pos <= len(w):
                raise ValueError(f"invalid step {(pos, base)}")
            w = w[:pos] + base * self.n + w[pos:]
        return w

    @property
    def end(self) -> str:
        return self.replay()

    def to_json(self) -> dict:
        return {"from": self.start, "to": self.end, "n": self.n,
                "steps": [{"position": p, "inserted": b * self.n, "base": b} for p, b in self.steps]}


@dataclass
class ProvabilityResult:
    provable: bool
    proof: InsertionProof | None
    explored: int
    reason: str = ""

    def __bool__(self):
        return self.provable


def successors(word: str, n: int, max_len: int, alphabet: str) -> set[str]:
    """All ``x w^n y`` with ``word = x y``, ``w`` nonempty, of length at most ``max_len``."""
    out = set()
    room = (max_len - len(word)) // n
    if room < 1:
        return out
    bases = [""]
    for _ in range(room):
        bases = [b + a for b in bases for a in alphabet]
        for b in bases:
            ins = b * n
            for i in range(len(word) + 1):
                out.add(word[:i] + ins + word[i:])
    return out


def counts_compatible(u: str, v: str, n: int) -> bool:
    cu, cv = letter_counts(u), letter_counts(v)
    return all((cv.get(a, 0) - cu.get(a, 0)) % n == 0 for a in set(cu) | set(cv))


def provable_leq(u: str, v: str, n: int, node_budget: int = DEFAULT_NODE_BUDGET) -> ProvabilityResult:
    """Decide whether ``v`` arises from ``u`` by inserting n-th powers.

    Inserting ``w^n`` is undone by deleting a factor ``w^n``, so the search
    runs backwards from ``v``, deleting n-th power factors, and keeps only
    words that still contain ``u`` as a subsequence.  Lengths strictly drop,
    so the search is finite.  Words are expanded in (length, lexicographic)
    order, which makes the certificate reproducible.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if u == v:
        return ProvabilityResult(True, InsertionProof(u, n), 1)
    if len(v) <= len(u) or (len(v) - len(u)) % n:
        return ProvabilityResult(False, None, 0, "length")
    if not counts_compatible(u, v, n):
        return ProvabilityResult(False, None, 0, "letter counts differ modulo n")
    if not is_subsequence(u, v):
        return ProvabilityResult(False, None, 0, "not a subsequence")

    # parent[z] = (word z came from by deletion, position, base)
    parent: dict[str, tuple[str, int, str] | None] = {v: None}
    frontier = [v]
    explored = 0
    while frontier:
        nxt = []
        for z in sorted(frontier):
            explored += 1
            if explored > node_budget:
                warnings.warn(f"provable_leq node budget {node_budget} exhausted", RuntimeWarning)
                return ProvabilityResult(False, None, explored, "node budget exhausted")
            for x, base, y in power_decompositions(z, n):
                w = x + y
                if w in parent or len(w) < len(u) or not is_subsequence(u, w):
                    continue
                parent[w] = (z, len(x), base)
                if w == u:
                    return ProvabilityResult(True, _rebuild(parent, u, n), explored)
                nxt.append(w)
        frontier = nxt
    return ProvabilityResult(False, None, explored, "search exhausted")


def _rebuild(parent, u, n) -> InsertionProof:
    steps = []
    w = u
    while parent[w] is not None:
        z, pos, base = parent[w]
        steps.append((pos, base))
        w = z
    return InsertionProof(u, n, steps)


def random_provable_pair(rng: np.random.Generator, alphabet: str, n: int, start_len: int = 3,
                         steps: int = 2, max_base: int = 2) -> tuple[str, str, InsertionProof]:
    u = "".join(rng.choice(list(alphabet), size=int(rng.integers(0, start_len + 1))))
    proof = InsertionProof(u, n)
    w = u
    for _ in range(int(rng.integers(1, steps + 1))):
        base = "".join(rng.choice(list(alphabet), size=int(rng.integers(1, max_base + 1))))
        pos = int(rng.integers(0, len(w) + 1))
        proof.steps.append((pos, base))
        w = w[:pos] + base * n + w[pos:]
    return u, w, proof


def consequence_identities(u: str, v: str, include_c: bool = False) -> dict[str, Pseudoidentity]:
    """The pseudoidentities forced on ``(BG)_n`` by a word-level proof of ``u <= v``."""
    U, V = word_term(u), word_term(v)
    ids = {
        "a1": Pseudoidentity(omega(V, 1), concat(omega(U, 1), omega(V))),
        "a2": Pseudoidentity(omega(V, 1), concat(omega(V), omega(U, 1))),
        "b1": Pseudoidentity(omega(V), concat(omega(U), omega(V))),
        "b2": Pseudoidentity(omega(V), concat(omega(V), omega(U))),
    }
    if include_c:
        ids["c"] = Pseudoidentity(omega(U, 1), omega(V, 1))
    return ids


@dataclass
class ConsequenceResult:
    holds: bool
    failures: dict[str, dict]
    checked: list[str]

    def __bool__(self):
        return self.holds


def check_consequences(M: FiniteMonoid, u: str, v: str, n: int, verify_proof: bool = True,
                       budget: int = 10**9) -> ConsequenceResult:
    """Check the (a), (b) and, when ``v <= u`` is also provable, (c) identities on ``M``.

    Letters of ``u`` and ``v`` act as variables ranging over ``M``.
    """
    if verify_proof and len(v) <= 24 and not provable_leq(u, v, n):
        raise ValueError(f"{u!r} <= {v!r} is not provable from 1 <= x^{n}")
    # insertions strictly lengthen, so v <= u is provable as well only when u == v
    include_c = u == v
    ids = consequence_identities(u, v, include_c)
    failures = {}
    for name, pid in ids.items():
        res = check_identity(M, pid, budget=budget)
        if not res:
            failures[name] = {"pseudoidentity": str(pid), "witness": res.witness}
    return ConsequenceResult(not failures, failures, list(ids))
