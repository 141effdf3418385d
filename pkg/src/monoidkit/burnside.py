"""Free Burnside groups B(k, n) for exponents 1, 2 and 3.

Exponent 3 uses a power-commutator presentation with generators ordered by
weight: the letters ``a_i``, the commutators ``b_ij = [a_i, a_j]`` (i < j),
and ``c_ijl = [a_i, a_j, a_l]`` (i < j < l).  Groups of exponent 3 are
2-Engel, so weight-3 commutators are central and alternating in their
indices, and every commutator of weight 4 vanishes.  Conventions:
``[x, y] = x^-1 y^-1 x y`` and ``x^y = y^-1 x y``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations

import numpy as np

SUPPORTED = (1, 2, 3)
DEFAULT_ENUM_CAP = 10**6


class OracleUnavailable(ValueError):
    pass


class BurnsideError(ValueError):
    pass


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class BurnsideGroup:
    """Normal-form arithmetic in B(k, n); elements are exponent tuples."""

    def __init__(self, gens: str, n: int):
        if n not in SUPPORTED:
            raise OracleUnavailable(f"no Burnside oracle for exponent {n}; supported: {SUPPORTED}")
        if not gens or len(set(gens)) != len(gens):
            raise BurnsideError("generators must be a nonempty string of distinct letters")
        self.gens = gens
        self.n = n
        self.k = len(gens)
        self._index = {g: i for i, g in enumerate(gens)}
        self._cayley = None
        self._inverses = None
        if n == 3:
            self._build_pc()
            self.rank = len(self.pc_names)
        else:
            self.rank = self.k if n == 2 else 0

    # -- presentation ----------------------------------------------------

    def _build_pc(self):
        k = self.k
        names = [(i,) for i in range(k)]
        pairs = list(combinations(range(k), 2))
        triples = list(combinations(range(k), 3))
        names += pairs + triples
        self.pc_names = names
        pos = {nm: p for p, nm in enumerate(names)}
        self._pos = pos
        conj = {}
        # a_j ^ a_i = a_j [a_j, a_i] = a_j b_ij^-1
        for i, j in pairs:
            conj[(pos[(j,)], pos[(i,)])] = ((pos[(j,)], 1), (pos[(i, j)], 2))
        # b_pq ^ a_l = b_pq [a_p, a_q, a_l]
        for p, q in pairs:
            b = pos[(p, q)]
            for l in range(k):
                if l in (p, q):
                    continue
                c = pos[tuple(sorted((p, q, l)))]
                e = 1 if _perm_sign((p, q, l)) == 1 else 2
                conj[(b, pos[(l,)])] = ((b, 1), (c, e))
        self._conj = conj

    def pc_label(self, p: int) -> str:
        nm = self.pc_names[p]
        letters = ",".join(self.gens[i] for i in nm)
        return letters if len(nm) == 1 else f"[{letters}]"

    # -- arithmetic --------------------------------------------------------

    @property
    def identity(self) -> tuple:
        return (0,) * self.rank

    def _mul_pc(self, exps: list[int], i: int):
        """In place: ``exps <- exps * g_i`` by collection."""
        tail = exps[i + 1:]
        for j in range(i + 1, len(exps)):
            exps[j] = 0
        exps[i] = (exps[i] + 1) % 3
        for off, e in enumerate(tail):
            if not e:
                continue
            j = i + 1 + off
            word = self._conj.get((j, i), ((j, 1),))
            for _ in range(e):
                for g, m in word:
                    for _ in range(m):
                        self._mul_pc(exps, g)

    def generator(self, letter: str) -> tuple:
        try:
            i = self._index[letter]
        except KeyError:
            raise BurnsideError(f"{letter!r} is not a generator of {self.gens!r}") from None
        if self.n == 1:
            return ()
        e = [0] * self.rank
        e[i] = 1
        return tuple(e)

    def _times_letter(self, a: tuple, i: int) -> tuple:
        if self.n == 1:
            return ()
        e = list(a)
        if self.n == 2:
            e[i] ^= 1
        else:
            self._mul_pc(e, i)
        return tuple(e)

    def sigma(self, word: str) -> tuple:
        """Normal form of the image of ``word``."""
        e = self.identity
        for ch in word:
            if ch not in self._index:
                raise BurnsideError(f"{ch!r} is not a generator of {self.gens!r}")
            e = self._times_letter(e, self._index[ch])
        return e

    def multiply(self, a: tuple, b: tuple) -> tuple:
        self._check(a)
        self._check(b)
        if self.n == 1:
            return ()
        if self.n == 2:
            return tuple(x ^ y for x, y in zip(a, b))
        e = list(a)
        for p, m in enumerate(b):
            for _ in range(m):
                self._mul_pc(e, p)
        return tuple(e)

    def inverse(self, a: tuple) -> tuple:
        if self.n in (1, 2):
            self._check(a)
            return a
        return self.multiply(a, a)

    def power(self, a: tuple, m: int) -> tuple:
        out = self.identity
        for _ in range(m % self.n if self.n > 1 else 0):
            out = self.multiply(out, a)
        return out

    def is_identity(self, a: tuple) -> bool:
        return not any(a)

    def _check(self, a):
        if len(a) != self.rank:
            raise BurnsideError("element does not belong to this group (exponent or generator mismatch)")

    def format(self, a: tuple) -> str:
        if self.is_identity(a):
            return "1"
        if self.n == 2:
            return " ".join(g for g, e in zip(self.gens, a) if e)
        return " ".join(
            self.pc_label(p) + ("" if e == 1 else f"^{e}") for p, e in enumerate(a) if e
        )

    def order(self) -> int:
        return self.n ** self.rank if self.n > 1 else 1

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> list[tuple]:
        """All elements, by BFS over right multiplication by generators."""
        seen = {self.identity}
        out = [self.identity]
        queue = deque(out)
        while queue:
            a = queue.popleft()
            for i in range(self.k):
                b = self._times_letter(a, i)
                if b not in seen:
                    if len(seen) >= cap:
                        raise BurnsideError(f"enumeration exceeds cap {cap}")
                    seen.add(b)
                    out.append(b)
                    queue.append(b)
        return out


    def cayley_table(self, cap: int = DEFAULT_ENUM_CAP) -> tuple[list[tuple], "np.ndarray"]:
        """Elements in BFS order (identity first) and ``table[e, i] = e * generator i``."""
        if self._cayley is None:
            elems = self.enumerate(cap)
            index = {e: j for j, e in enumerate(elems)}
            table = np.array([[index[self._times_letter(e, i)] for i in range(self.k)] for e in elems],
                             dtype=np.int64).reshape(len(elems), self.k)
            self._cayley = (elems, table)
        return self._cayley

    def inverse_indices(self) -> "np.ndarray":
        """``inv[j]`` is the index of the inverse of element ``j`` of :meth:`cayley_table`."""
        if self._inverses is None:
            elems, _ = self.cayley_table()
            index = {e: j for j, e in enumerate(elems)}
            self._inverses = np.array([index[self.inverse(e)] for e in elems], dtype=np.int64)
        return self._inverses


@lru_cache(maxsize=None)
def burnside_group(gens: str, n: int) -> BurnsideGroup:
    return BurnsideGroup(gens, n)


def sigma(word: str, n: int, gens: str | None = None) -> tuple:
    gens = gens or "".join(sorted(set(word))) or "x"
    return burnside_group(gens, n).sigma(word)


def enumerate_group(k: int, n: int, cap: int = DEFAULT_ENUM_CAP) -> list[tuple]:
    gens = "".join(chr(ord("a") + i) for i in range(k))
    return burnside_group(gens, n).enumerate(cap)
