"""Finite monoids as dense multiplication tables.

Elements are integer indices into ``table``; ``table[s, t]`` is the product
``s * t``.  Everything above this module speaks in indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

DEFAULT_ELEMENT_CAP = 200_000
FULL_ASSOC_LIMIT = 500


class MonoidError(ValueError):
    pass


class ElementCapExceeded(MonoidError):
    pass


@dataclass(frozen=True)
class Transformation:
    """A total map on ``{0, ..., degree-1}``, acting on the right."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if d < 1:
            raise MonoidError("transformation degree must be >= 1")
        if any(not 0 <= i < d for i in self.images):
            raise MonoidError(f"image out of range in {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Transformation":
        return cls(tuple(range(degree)))

    def then(self, other: "Transformation") -> "Transformation":
        """Apply ``self`` first, then ``other``."""
        return Transformation(tuple(other.images[i] for i in self.images))


@dataclass(eq=False)
class FiniteMonoid:
    table: np.ndarray
    identity: int = 0
    generators: tuple[int, ...] = ()
    element_labels: list[str] | None = None
    generator_names: tuple[str, ...] | None = None
    _cycles: dict = field(default_factory=dict, repr=False)
    _omega: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise MonoidError("table must be a non-empty square matrix")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise MonoidError("table entries out of range")
        t.setflags(write=False)
        self.table = t
        self.generators = tuple(int(g) for g in self.generators)
        if not 0 <= self.identity < n:
            raise MonoidError("identity out of range")

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.size

    def mul(self, *elements: int) -> int:
        acc = self.identity
        for e in elements:
            acc = int(self.table[acc, e])
        return acc

    def power(self, s: int, k: int) -> int:
        if k < 0:
            raise MonoidError("use omega_power for negative exponents")
        acc, base = self.identity, s
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def label(self, s: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[s] or "1"
        return str(s)

    def evaluate_word(self, word: Iterable[int]) -> int:
        """Product of a sequence of generator positions."""
        acc = self.identity
        for g in word:
            acc = int(self.table[acc, self.generators[g]])
        return acc

    # -- power structure ---------------------------------------------

    def cycle(self, s: int) -> tuple[int, list[int]]:
        """Return ``(index, cycle)`` for the power sequence of ``s``.

        ``cycle[j]`` is ``s**(index + j)``; the period is ``len(cycle)``.
        """
        hit = self._cycles.get(s)
        if hit is not None:
            return hit
        seen: dict[int, int] = {}
        powers: list[int] = []
        x, e = s, 1
        while x not in seen:
            seen[x] = e
            powers.append(x)
            x = int(self.table[x, s])
            e += 1
        index = seen[x]
        result = (index, powers[index - 1:])
        self._cycles[s] = result
        return result

    def index_period(self, s: int) -> tuple[int, int]:
        index, cyc = self.cycle(s)
        return index, len(cyc)

    def omega_array(self, k: int = 0) -> np.ndarray:
        """Vector of ``s^(omega+k)`` for every element ``s``."""
        arr = self._omega.get(k)
        if arr is None:
            out = np.empty(self.size, dtype=np.int64)
            for s in range(self.size):
                index, cyc = self.cycle(s)
                out[s] = cyc[(k - index) % len(cyc)]
            out.setflags(write=False)
            self._omega[k] = out
            arr = out
        return arr

    # -- predicates ---------------------------------------------------

    @cached_property
    def idempotents(self) -> np.ndarray:
        idx = np.arange(self.size)
        return np.flatnonzero(self.table[idx, idx] == idx)

    def is_idempotent(self, s: int) -> bool:
        return int(self.table[s, s]) == s

    def is_group(self) -> bool:
        # a finite monoid is a group iff its only idempotent is the identity
        return len(self.idempotents) == 1

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def check_identity_element(self) -> bool:
        e = self.identity
        idx = np.arange(self.size)
        return bool(np.array_equal(self.table[e], idx) and np.array_equal(self.table[:, e], idx))

    def is_associative(self) -> bool:
        """Full triple check up to 500 elements, Light's test beyond."""
        t = self.table
        if self.size <= FULL_ASSOC_LIMIT:
            for a in range(self.size):
                # (a*b)*c versus a*(b*c), all b, c at once
                if not np.array_equal(t[t[a]], t[a][t]):
                    return False
            return True
        for g in set(self.generators):
            # (x*g)*y == x*(g*y) for all x, y
            if not np.array_equal(t[t[:, g]], t[:, t[g]]):
                return False
        return self.generated_by_generators()

    def generated_by_generators(self) -> bool:
        return len(closure(self, self.generators)) == self.size

    def validate(self):
        if not self.check_identity_element():
            raise MonoidError("identity element is not two-sided")
        if not self.is_associative():
            raise MonoidError("table is not associative")
        if self.generators and not self.generated_by_generators():
            raise MonoidError("generators do not generate the monoid")
        return self

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, generators={self.generators})"


def omega_power(M: FiniteMonoid, s: int, k: int = 0) -> int:
    """``s^(omega+k)``: the power ``s**e`` with ``e >= index`` and ``e = k`` mod period."""
    index, cyc = M.cycle(s)
    return cyc[(k - index) % len(cyc)]


def closure(M: FiniteMonoid, gens: Iterable[int]) -> list[int]:
    """Elements of the submonoid generated by ``gens``, in BFS order."""
    gens = list(dict.fromkeys(int(g) for g in gens))
    seen = {M.identity}
    order = [M.identity]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for g in gens:
            p = int(M.table[s, g])
            if p not in seen:
                seen.add(p)
                order.append(p)
                queue.append(p)
    return order


def submonoid(M: FiniteMonoid, gens: Sequence[int]) -> tuple[FiniteMonoid, np.ndarray]:
    """Submonoid generated by ``gens`` and the embedding into ``M``."""
    elems = closure(M, gens)
    embed = np.array(elems, dtype=np.int64)
    back = np.full(M.size, -1, dtype=np.int64)
    back[embed] = np.arange(len(elems))
    table = back[M.table[np.ix_(embed, embed)]]
    local_gens = tuple(int(back[g]) for g in gens)
    labels = None
    if M.element_labels is not None:
        labels = [M.element_labels[e] for e in elems]
    return FiniteMonoid(table, 0, local_gens, labels), embed


def from_generators(
    gens: Sequence[Transformation],
    names: Sequence[str] | None = None,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> FiniteMonoid:
    """Close a list of transformations under composition.

    The identity map is element 0.  Elements are numbered in BFS order over
    words ordered by length, then lexicographically by generator position,
    so ``element_labels`` holds shortlex-least representatives.
    """
    return transformation_monoid(gens, names, cap)[0]


def transformation_monoid(gens, names=None, cap=DEFAULT_ELEMENT_CAP) -> tuple[FiniteMonoid, np.ndarray]:
    """Like :func:`from_generators`, also returning the ``elements x degree`` image matrix."""
    if not gens:
        raise MonoidError("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise MonoidError("generators must share one degree")
    if names is None:
        names = [chr(ord("a") + i) for i in range(len(gens))]
    names = tuple(names)
    if len(names) != len(gens):
        raise MonoidError("one name per generator")

    gen_arrays = [np.asarray(g.images, dtype=np.int32) for g in gens]
    ident = np.arange(degree, dtype=np.int32)
    index = {ident.tobytes(): 0}
    elements = [ident]
    parent = [-1]
    last_gen = [-1]
    ngen = len(gens)
    right: list[list[int]] = []

    i = 0
    while i < len(elements):
        cur = elements[i]
        row = []
        for gi, g in enumerate(gen_arrays):
            img = g[cur]
            key = img.tobytes()
            j = index.get(key)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise ElementCapExceeded(f"closure exceeds element cap {cap}")
                index[key] = j
                elements.append(img)
                parent.append(i)
                last_gen.append(gi)
            row.append(j)
        right.append(row)
        i += 1

    n = len(elements)
    right_arr = np.array(right, dtype=np.int64).reshape(n, ngen)
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for t in range(1, n):
        table[:, t] = right_arr[table[:, parent[t]], last_gen[t]]

    labels = [""] * n
    for t in range(1, n):
        labels[t] = labels[parent[t]] + names[last_gen[t]]
    generators = tuple(int(right_arr[0, g]) for g in range(ngen))
    return FiniteMonoid(table, 0, generators, labels, names), np.array(elements, dtype=np.int64)


def cyclic_group(order: int) -> FiniteMonoid:
    shift = Transformation(tuple((i + 1) % order for i in range(order)))
    return from_generators([shift], names=["g"])


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(np.zeros((1, 1), dtype=np.int64), 0, (), [""])


def from_table(rows, identity=0, generators=(), labels=None, validate=True) -> FiniteMonoid:
    M = FiniteMonoid(np.asarray(rows), identity, tuple(generators), labels)
    if validate:
        M.validate()
    return M


# -- Green's relations ---------------------------------------------------


@dataclass
class GreenData:
    r_class: np.ndarray
    l_class: np.ndarray
    j_class: np.ndarray
    h_class: np.ndarray
    idempotents: np.ndarray

    def _counts(self, labels) -> np.ndarray:
        counts = np.zeros(labels.max() + 1, dtype=np.int64)
        np.add.at(counts, labels[self.idempotents], 1)
        return counts

    @property
    def idempotents_per_r(self) -> np.ndarray:
        return self._counts(self.r_class)

    @property
    def idempotents_per_l(self) -> np.ndarray:
        return self._counts(self.l_class)

    @property
    def idempotents_per_j(self) -> np.ndarray:
        return self._counts(self.j_class)

    def num_classes(self, relation: str) -> int:
        return int(getattr(self, f"{relation.lower()}_class").max()) + 1

    def is_trivial(self, relation: str) -> bool:
        labels = getattr(self, f"{relation.lower()}_class")
        return len(np.unique(labels)) == len(labels)

    def regular_j_classes(self) -> np.ndarray:
        return np.flatnonzero(self.idempotents_per_j > 0)


def _scc(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    graph = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="strong")
    return _canonical_labels(labels)


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    # renumber in order of first appearance so reports are reproducible
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse]


def green_data(M: FiniteMonoid) -> GreenData:
    """Green's relations from strongly connected components of Cayley graphs."""
    n = M.size
    gens = list(dict.fromkeys(M.generators)) or list(range(n))
    nodes = np.arange(n)
    rsrc = np.concatenate([nodes for _ in gens])
    rdst = np.concatenate([M.table[:, g] for g in gens])
    ldst = np.concatenate([M.table[g, :] for g in gens])
    r = _scc(n, rsrc, rdst)
    l = _scc(n, rsrc, ldst)
    j = _scc(n, np.concatenate([rsrc, rsrc]), np.concatenate([rdst, ldst]))
    h = _canonical_labels(r * (l.max() + 1) + l)
    return GreenData(r, l, j, h, M.idempotents)


# -- ordered monoids -----------------------------------------------------


@dataclass(eq=False)
class OrderedMonoid:
    """A finite monoid with a stable partial order; ``leq[a, b]`` means a <= b."""

    monoid: FiniteMonoid
    leq: np.ndarray

    def __post_init__(self):
        self.leq = np.asarray(self.leq, dtype=bool)

    def is_partial_order(self) -> bool:
        L = self.leq
        if not L.diagonal().all():
            return False
        if (L & L.T & ~np.eye(len(L), dtype=bool)).any():
            return False
        return bool(np.array_equal(_transitive_closure(L), L))

    def is_stable(self) -> bool:
        t = self.monoid.table
        a, b = np.nonzero(self.leq)
        for g in range(self.monoid.size):
            if not self.leq[t[a, g], t[b, g]].all() or not self.leq[t[g, a], t[g, b]].all():
                return False
        return True

    @classmethod
    def trivial(cls, M: FiniteMonoid) -> "OrderedMonoid":
        return cls(M, np.eye(M.size, dtype=bool))


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    out = rel.copy()
    for k in range(len(out)):
        col = out[:, k]
        if col.any():
            out[col] |= out[k]
    return out


@dataclass
class StableClosure:
    relation: np.ndarray
    antisymmetric: bool
    offending_pair: tuple[int, int] | None = None
    ordered: OrderedMonoid | None = None


def stable_closure(M: FiniteMonoid, required: Iterable[tuple[int, int]]) -> StableClosure:
    """Least stable quasiorder containing ``required``.

    When the result is antisymmetric, ``ordered`` carries the corresponding
    ordered monoid; otherwise ``offending_pair`` is a pair ``a != b`` with
    ``a <= b <= a``.
    """
    n = M.size
    t = M.table
    rel = np.eye(n, dtype=bool)
    gens = list(dict.fromkeys(M.generators)) or list(range(n))
    queue = deque()
    for a, b in required:
        if not rel[a, b]:
            rel[a, b] = True
            queue.append((a, b))
    while queue:
        a, b = queue.popleft()
        for g in gens:
            for p, q in ((t[a, g], t[b, g]), (t[g, a], t[g, b])):
                if not rel[p, q]:
                    rel[p, q] = True
                    queue.append((int(p), int(q)))
    # transitive closure of a stable relation stays stable
    rel = _transitive_closure(rel)
    sym = rel & rel.T & ~np.eye(n, dtype=bool)
    if sym.any():
        a, b = map(int, np.argwhere(sym)[0])
        return StableClosure(rel, False, (a, b))
    return StableClosure(rel, True, None, OrderedMonoid(M, rel))


# -- text format ---------------------------------------------------------


def dumps_monoid(M: FiniteMonoid) -> str:
    lines = [
        f"size {M.size}",
        f"identity {M.identity}",
        "generators " + " ".join(str(g) for g in M.generators),
    ]
    lines += [" ".join(str(int(x)) for x in row) for row in M.table]
    return "\n".join(lines) + "\n"


def loads_monoid(text: str, validate: bool = True) -> FiniteMonoid:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        key, size = lines[0].split()
        assert key == "size"
        k = int(size)
        key, ident = lines[1].split()
        assert key == "identity"
        parts = lines[2].split()
        assert parts[0] == "generators"
        gens = tuple(int(p) for p in parts[1:])
        rows = [[int(x) for x in ln.split()] for ln in lines[3:3 + k]]
    except (AssertionError, ValueError, IndexError) as exc:
        raise MonoidError(f"malformed monoid file: {exc}") from None
    if len(rows) != k or any(len(r) != k for r in rows):
        raise MonoidError("table shape does not match declared size")
    return from_table(rows, int(ident), gens, validate=validate)
