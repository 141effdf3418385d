"""Complete deterministic automata over single-character alphabets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class DfaError(ValueError):
    pass


@dataclass(eq=False)
class Dfa:
    alphabet: str
    delta: np.ndarray  # states x letters
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        if not self.alphabet:
            raise DfaError("empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DfaError("repeated letter in alphabet")
        d = np.asarray(self.delta, dtype=np.int64)
        if d.ndim != 2 or d.shape[1] != len(self.alphabet):
            raise DfaError("delta must have one column per letter")
        if d.size and (d.min() < 0 or d.max() >= d.shape[0]):
            raise DfaError("transition target out of range")
        self.delta = d
        self.finals = frozenset(int(f) for f in self.finals)
        if not 0 <= self.initial < d.shape[0]:
            raise DfaError("initial state out of range")

    @property
    def states(self) -> int:
        return self.delta.shape[0]

    @property
    def letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def final_mask(self) -> np.ndarray:
        mask = np.zeros(self.states, dtype=bool)
        mask[list(self.finals)] = True
        return mask

    def run(self, word: str, state: int | None = None) -> int:
        idx = self.letter_index
        q = self.initial if state is None else state
        for ch in word:
            try:
                q = int(self.delta[q, idx[ch]])
            except KeyError:
                raise DfaError(f"letter {ch!r} not in alphabet {self.alphabet!r}") from None
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.finals

    def __contains__(self, word: str) -> bool:
        return self.accepts(word)

    def is_empty(self) -> bool:
        return not (reachable(self) & self.final_mask()).any()

    def __repr__(self):
        return f"Dfa(alphabet={self.alphabet!r}, states={self.states}, finals={sorted(self.finals)})"


def reachable(dfa: Dfa) -> np.ndarray:
    seen = np.zeros(dfa.states, dtype=bool)
    seen[dfa.initial] = True
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for r in dfa.delta[q]:
            if not seen[r]:
                seen[r] = True
                queue.append(int(r))
    return seen


def coaccessible(dfa: Dfa) -> np.ndarray:
    """States from which some final state is reachable."""
    good = dfa.final_mask()
    while True:
        nxt = good | good[dfa.delta].any(axis=1)
        if np.array_equal(nxt, good):
            return good
        good = nxt


def canonical(dfa: Dfa) -> Dfa:
    """Drop unreachable states and renumber by BFS in alphabet order."""
    order = {dfa.initial: 0}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for r in dfa.delta[q]:
            r = int(r)
            if r not in order:
                order[r] = len(order)
                queue.append(r)
    old = np.array(sorted(order, key=order.get))
    remap = np.full(dfa.states, -1, dtype=np.int64)
    remap[old] = np.arange(len(old))
    delta = remap[dfa.delta[old]]
    finals = {order[f] for f in dfa.finals if f in order}
    return Dfa(dfa.alphabet, delta, 0, frozenset(finals))


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement followed by canonical renumbering."""
    dfa = canonical(dfa)
    n, k = dfa.delta.shape
    finals = dfa.final_mask()

    inverse = [[[] for _ in range(n)] for _ in range(k)]
    for q in range(n):
        for a in range(k):
            inverse[a][int(dfa.delta[q, a])].append(q)

    block_of = np.where(finals, 0, 1) if finals.any() and not finals.all() else np.zeros(n, dtype=np.int64)
    blocks: list[set[int]] = []
    for b in range(int(block_of.max()) + 1):
        blocks.append(set(np.flatnonzero(block_of == b).tolist()))
    block_of = block_of.tolist()

    work = deque()
    if len(blocks) == 2:
        smaller = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        for a in range(k):
            work.append((smaller, a))
        in_work = {(smaller, a) for a in range(k)}
    else:
        work.extend((0, a) for a in range(k))
        in_work = set(work)

    while work:
        splitter, a = work.popleft()
        in_work.discard((splitter, a))
        pre: dict[int, set[int]] = {}
        for r in blocks[splitter]:
            for q in inverse[a][r]:
                pre.setdefault(block_of[q], set()).add(q)
        for b, hit in pre.items():
            if len(hit) == len(blocks[b]):
                continue
            rest = blocks[b] - hit
            blocks[b] = rest
            new = len(blocks)
            blocks.append(hit)
            for q in hit:
                block_of[q] = new
            for c in range(k):
                if (b, c) in in_work:
                    work.append((new, c))
                    in_work.add((new, c))
                else:
                    pick = new if len(hit) <= len(rest) else b
                    work.append((pick, c))
                    in_work.add((pick, c))

    block_of = np.array(block_of, dtype=np.int64)
    nb = len(blocks)
    delta = np.empty((nb, k), dtype=np.int64)
    for b, members in enumerate(blocks):
        q = next(iter(members))
        delta[b] = block_of[dfa.delta[q]]
    fin = {int(block_of[f]) for f in dfa.finals}
    return canonical(Dfa(dfa.alphabet, delta, int(block_of[dfa.initial]), frozenset(fin)))


def equivalent(a: Dfa, b: Dfa) -> bool:
    if set(a.alphabet) != set(b.alphabet):
        return False
    b = realphabet(b, a.alphabet)
    return symmetric_difference(a, b).is_empty()


def realphabet(dfa: Dfa, alphabet: str) -> Dfa:
    """Reorder (or extend, with a sink) the alphabet of ``dfa``."""
    if alphabet == dfa.alphabet:
        return dfa
    idx = dfa.letter_index
    n = dfa.states
    delta = np.full((n + 1, len(alphabet)), n, dtype=np.int64)
    for j, ch in enumerate(alphabet):
        if ch in idx:
            delta[:n, j] = dfa.delta[:, idx[ch]]
    return canonical(Dfa(alphabet, delta, dfa.initial, dfa.finals))


def complement(dfa: Dfa) -> Dfa:
    finals = frozenset(range(dfa.states)) - dfa.finals
    return Dfa(dfa.alphabet, dfa.delta, dfa.initial, finals)


def product(a: Dfa, b: Dfa, op) -> Dfa:
    if a.alphabet != b.alphabet:
        if set(a.alphabet) != set(b.alphabet):
            raise DfaError("product of automata over different alphabets")
        b = realphabet(b, a.alphabet)
    nb = b.states
    start = a.initial * nb + b.initial
    order = {start: 0}
    queue = deque([start])
    rows = []
    while queue:
        s = queue.popleft()
        p, q = divmod(s, nb)
        row = []
        for j in range(len(a.alphabet)):
            t = int(a.delta[p, j]) * nb + int(b.delta[q, j])
            if t not in order:
                order[t] = len(order)
                queue.append(t)
            row.append(order[t])
        rows.append(row)
    finals = {i for s, i in order.items() if op(s // nb in a.finals, s % nb in b.finals)}
    return Dfa(a.alphabet, np.array(rows, dtype=np.int64), 0, frozenset(finals))


def intersection(a: Dfa, b: Dfa) -> Dfa:
    return minimize(product(a, b, lambda x, y: x and y))


def union(a: Dfa, b: Dfa) -> Dfa:
    return minimize(product(a, b, lambda x, y: x or y))


def difference(a: Dfa, b: Dfa) -> Dfa:
    return minimize(product(a, b, lambda x, y: x and not y))


def symmetric_difference(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x != y)


# -- nondeterministic fragments ------------------------------------------


@dataclass
class Nfa:
    """Epsilon-NFA; ``moves[q]`` maps letter index to a set of targets."""

    alphabet: str
    moves: list[dict[int, set[int]]]
    eps: list[set[int]]
    initial: set[int]
    finals: set[int]

    @classmethod
    def empty(cls, alphabet: str) -> "Nfa":
        return cls(alphabet, [], [], set(), set())

    def add_state(self) -> int:
        self.moves.append({})
        self.eps.append(set())
        return len(self.moves) - 1

    def embed(self, other: "Nfa") -> int:
        offset = len(self.moves)
        for mv in other.moves:
            self.moves.append({a: {t + offset for t in ts} for a, ts in mv.items()})
        for es in other.eps:
            self.eps.append({t + offset for t in es})
        return offset

    @classmethod
    def from_dfa(cls, dfa: Dfa) -> "Nfa":
        moves = [{a: {int(dfa.delta[q, a])} for a in range(len(dfa.alphabet))} for q in range(dfa.states)]
        return cls(dfa.alphabet, moves, [set() for _ in range(dfa.states)], {dfa.initial}, set(dfa.finals))

    def _eclose(self, states: Iterable[int]) -> frozenset[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            q = stack.pop()
            for r in self.eps[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    def determinize(self) -> Dfa:
        start = self._eclose(self.initial)
        order = {start: 0}
        queue = deque([start])
        rows = []
        k = len(self.alphabet)
        while queue:
            S = queue.popleft()
            row = []
            for a in range(k):
                targets = set()
                for q in S:
                    targets |= self.moves[q].get(a, set())
                T = self._eclose(targets)
                if T not in order:
                    order[T] = len(order)
                    queue.append(T)
                row.append(order[T])
            rows.append(row)
        finals = {i for S, i in order.items() if S & self.finals}
        return minimize(Dfa(self.alphabet, np.array(rows, dtype=np.int64).reshape(len(rows), k), 0, frozenset(finals)))


def concat(a: Dfa, b: Dfa) -> Dfa:
    nfa = Nfa.from_dfa(a)
    off = nfa.embed(Nfa.from_dfa(realphabet(b, a.alphabet)))
    for f in a.finals:
        nfa.eps[f].add(b.initial + off)
    nfa.finals = {f + off for f in b.finals}
    return nfa.determinize()


def star(a: Dfa) -> Dfa:
    nfa = Nfa.from_dfa(a)
    s = nfa.add_state()
    nfa.eps[s].add(a.initial)
    for f in a.finals:
        nfa.eps[f].add(s)
    nfa.initial = {s}
    nfa.finals = {s}
    return nfa.determinize()


def factor_closure(dfa: Dfa) -> Dfa:
    """Automaton for the set of factors of words of the language."""
    dfa = minimize(dfa)
    useful = reachable(dfa) & coaccessible(dfa)
    nfa = Nfa.from_dfa(dfa)
    nfa.initial = set(np.flatnonzero(useful).tolist())
    nfa.finals = set(np.flatnonzero(useful).tolist())
    if not nfa.initial:
        return minimize(Dfa(dfa.alphabet, np.zeros((1, len(dfa.alphabet)), dtype=np.int64), 0, frozenset()))
    return nfa.determinize()


def literal(word: str, alphabet: str) -> Dfa:
    idx = {a: i for i, a in enumerate(alphabet)}
    n = len(word)
    delta = np.full((n + 2, len(alphabet)), n + 1, dtype=np.int64)
    for i, ch in enumerate(word):
        if ch not in idx:
            raise DfaError(f"letter {ch!r} not in alphabet {alphabet!r}")
        delta[i, idx[ch]] = i + 1
    return minimize(Dfa(alphabet, delta, 0, frozenset({n})))


def finite_language(words: Iterable[str], alphabet: str) -> Dfa:
    """Minimal automaton of a finite set of words (trie plus suffix sharing)."""
    idx = {a: i for i, a in enumerate(alphabet)}
    k = len(alphabet)
    children: list[dict[int, int]] = [{}]
    final = [False]
    for w in words:
        q = 0
        for ch in w:
            a = idx[ch]
            nxt = children[q].get(a)
            if nxt is None:
                nxt = len(children)
                children.append({})
                final.append(False)
                children[q][a] = nxt
            q = nxt
        final[q] = True

    # bottom-up register of equivalent subtrees; id 0 is the dead state
    register: dict[tuple, int] = {}
    classes: list[tuple] = [(False,) + (0,) * k]
    register[classes[0]] = 0
    cls_of = [0] * len(children)
    order = []
    stack = [(0, False)]
    while stack:
        q, done = stack.pop()
        if done:
            order.append(q)
            continue
        stack.append((q, True))
        stack.extend((c, False) for c in children[q].values())
    for q in order:
        sig = (final[q],) + tuple(cls_of[children[q][a]] if a in children[q] else 0 for a in range(k))
        c = register.get(sig)
        if c is None:
            c = len(classes)
            register[sig] = c
            classes.append(sig)
        cls_of[q] = c
    delta = np.array([sig[1:] for sig in classes], dtype=np.int64).reshape(len(classes), k)
    finals = {i for i, sig in enumerate(classes) if sig[0]}
    return minimize(Dfa(alphabet, delta, cls_of[0], frozenset(finals)))


def words_of_length_at_least(m: int, alphabet: str) -> Dfa:
    k = len(alphabet)
    delta = np.array([[min(i + 1, m)] * k for i in range(m + 1)], dtype=np.int64).reshape(m + 1, k)
    return minimize(Dfa(alphabet, delta, 0, frozenset({m})))


def universal(alphabet: str) -> Dfa:
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, frozenset({0}))


def empty_language(alphabet: str) -> Dfa:
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, frozenset())


# -- text format ---------------------------------------------------------


def dumps_dfa(dfa: Dfa) -> str:
    lines = [
        f"alphabet {dfa.alphabet}",
        f"states {dfa.states}",
        f"initial {dfa.initial}",
        "finals " + " ".join(str(f) for f in sorted(dfa.finals)),
    ]
    lines += [" ".join(str(int(t)) for t in row) for row in dfa.delta]
    return "\n".join(lines) + "\n"


def loads_dfa(text: str) -> Dfa:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        fields = {}
        for ln in lines[:4]:
            key, _, rest = ln.partition(" ")
            fields[key] = rest.strip()
        alphabet = fields["alphabet"]
        n = int(fields["states"])
        initial = int(fields["initial"])
        finals = frozenset(int(x) for x in fields["finals"].split())
        rows = [[int(x) for x in ln.split()] for ln in lines[4:4 + n]]
    except (KeyError, ValueError) as exc:
        raise DfaError(f"malformed DFA file: {exc}") from None
    if len(rows) != n:
        raise DfaError("number of transition rows does not match 'states'")
    return Dfa(alphabet, np.array(rows, dtype=np.int64).reshape(n, len(alphabet)), initial, finals)
