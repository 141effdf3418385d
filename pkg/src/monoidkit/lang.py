"""Syntactic ordered monoids and the witness languages.

Order convention, fixed throughout: ``u <= v`` in Synt(L) iff for all words
``x, y``, ``xuy in L`` implies ``xvy in L``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import dfa as D
from .monoid import DEFAULT_ELEMENT_CAP, FiniteMonoid, OrderedMonoid, Transformation, transformation_monoid
from .regex import compile as compile_regex
from .words import ends_with_power, find_power_factor, in_star, is_factor_of_star

ORDER_CONVENTION = "u <= v iff every context x_y with xuy in L also has xvy in L"
DEFAULT_ORDER_BUDGET = int(float(os.environ.get("MONOIDKIT_MEMORY_BUDGET", 1.5e9)))


class LanguageError(ValueError):
    pass


@dataclass(eq=False)
class SyntacticResult:
    dfa: D.Dfa
    monoid: FiniteMonoid
    order: OrderedMonoid
    accept_set: frozenset[int]
    letter_map: dict[str, int]
    action: np.ndarray  # elements x states

    def element_of(self, word: str) -> int:
        M = self.monoid
        acc = M.identity
        for ch in word:
            acc = int(M.table[acc, self.letter_map[ch]])
        return acc

    def accepts(self, word: str) -> bool:
        return self.element_of(word) in self.accept_set


def transition_monoid(dfa: D.Dfa, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[FiniteMonoid, np.ndarray]:
    gens = [Transformation(tuple(int(q) for q in dfa.delta[:, a])) for a in range(len(dfa.alphabet))]
    return transformation_monoid(gens, names=list(dfa.alphabet), cap=cap)


def language_preorder(dfa: D.Dfa) -> np.ndarray:
    """``out[p, q]`` is True iff the language accepted from ``p`` is contained in that from ``q``."""
    fin = dfa.final_mask()
    bad = fin[:, None] & ~fin[None, :]
    while True:
        nxt = bad.copy()
        for a in range(len(dfa.alphabet)):
            col = dfa.delta[:, a]
            nxt |= bad[np.ix_(col, col)]
        if np.array_equal(nxt, bad):
            return ~bad
        bad = nxt


def syntactic_order(dfa: D.Dfa, action: np.ndarray, budget: int | None = None) -> np.ndarray:
    """Order on transition-monoid elements of a minimal DFA.

    ``m <= m'`` iff for every state ``q``, the language from ``q.m`` is
    contained in the language from ``q.m'``; every state of a minimal DFA is
    reachable, so this is the context-containment order.
    """
    n = action.shape[0]
    budget = DEFAULT_ORDER_BUDGET if budget is None else budget
    if n * n > budget:
        raise LanguageError(f"order matrix of {n}x{n} exceeds memory budget {budget}")
    pre = language_preorder(dfa)
    leq = np.ones((n, n), dtype=bool)
    for q in range(dfa.states):
        col = action[:, q]
        leq &= pre[np.ix_(col, col)]
    return leq


def syntactic_ordered_monoid(dfa: D.Dfa, cap: int = DEFAULT_ELEMENT_CAP, budget: int | None = None) -> SyntacticResult:
    dfa = D.minimize(dfa)
    M, action = transition_monoid(dfa, cap)
    leq = syntactic_order(dfa, action, budget)
    accept = frozenset(int(m) for m in np.flatnonzero(np.isin(action[:, dfa.initial], list(dfa.finals))))
    letter_map = {ch: M.generators[i] for i, ch in enumerate(dfa.alphabet)}
    return SyntacticResult(dfa, M, OrderedMonoid(M, leq), accept, letter_map, action)


def synt(pattern: str, alphabet: str | None = None, **kw) -> SyntacticResult:
    return syntactic_ordered_monoid(compile_regex(pattern, alphabet), **kw)


factor_closure = D.factor_closure


# -- witness languages ---------------------------------------------------


def power_progression(w: str, k: int, l: int, alphabet: str | None = None) -> D.Dfa:
    """Automaton for ``{w**(k + l*i) : i >= 0}``."""
    if not w:
        raise LanguageError("base word must be nonempty")
    if k < 0 or l < 0:
        raise LanguageError("exponents must be non-negative")
    alphabet = alphabet or "".join(sorted(set(w)))
    head = D.literal(w * k, alphabet)
    if l == 0:
        return head
    return D.concat(head, D.star(D.literal(w * l, alphabet)))


def factor_separated(w: str, n: int, alphabet: str) -> D.Dfa:
    """``(A* minus F(w*))`` together with ``w^(1 + n*)``."""
    outside = D.complement(D.factor_closure(D.star(D.literal(w, alphabet))))
    return D.union(outside, power_progression(w, 1, n, alphabet))


L2_BASE = "abcacb"


def ln_base(n: int) -> str:
    if n < 3:
        raise LanguageError("n must be >= 3")
    return ("b" * (n - 1) + "a") * (n - 1) + "ab" * (n - 1) + "aa"


def lang_L2() -> D.Dfa:
    return factor_separated(L2_BASE, 2, "abc")


def lang_Ln(n: int) -> D.Dfa:
    return factor_separated(ln_base(n), n, "ab")


def lemma32_params(n: int) -> tuple[str, int]:
    if n < 2:
        raise LanguageError("n must be >= 2")
    if n == 2:
        return "xyzt", 9
    return "xyt", (n + 1) ** 2


def _power_free_automaton(alphabet: str, n: int, max_len: int) -> D.Dfa:
    """Minimal DFA of the ``n``-power-free words of length at most ``max_len``.

    Depth-first over the tree of power-free words, numbering each node by the
    class of its right language as soon as its subtree is done, so the tree
    itself is never stored.  Class 0 is the empty language.
    """
    k = len(alphabet)
    register: dict[tuple, int] = {(False,) + (0,) * k: 0}
    sigs = [(False,) + (0,) * k]
    # frames: [word, next letter to try, child classes]
    stack = [["", 0, []]]
    root = None
    while stack:
        frame = stack[-1]
        w, i, kids = frame
        if i < k and len(w) < max_len:
            frame[1] += 1
            v = w + alphabet[i]
            if ends_with_power(v, n):
                kids.append(0)
            else:
                stack.append([v, 0, []])
            continue
        kids += [0] * (k - len(kids))
        sig = (True,) + tuple(kids)
        c = register.get(sig)
        if c is None:
            c = register[sig] = len(sigs)
            sigs.append(sig)
        stack.pop()
        if stack:
            stack[-1][2].append(c)
        else:
            root = c
    delta = np.array([sig[1:] for sig in sigs], dtype=np.int64).reshape(len(sigs), k)
    finals = frozenset(i for i, sig in enumerate(sigs) if sig[0])
    return D.minimize(D.Dfa(alphabet, delta, root, finals))


def power_factor_or_long(alphabet: str, n: int, bound: int) -> D.Dfa:
    """Words with a nonempty ``n``-th power factor, plus all words of length at least ``bound``."""
    return D.minimize(D.complement(_power_free_automaton(alphabet, n, bound - 1)))


def lang_lemma32(n: int) -> D.Dfa:
    alphabet, bound = lemma32_params(n)
    return power_factor_or_long(alphabet, n, bound)


# -- direct membership predicates (oracles for the builders) --------------


def in_L2(word: str) -> bool:
    if not is_factor_of_star(word, L2_BASE):
        return True
    e = len(word) // len(L2_BASE)
    return in_star(word, L2_BASE) and e % 2 == 1


def in_Ln(word: str, n: int) -> bool:
    w = ln_base(n)
    if not is_factor_of_star(word, w):
        return True
    return in_star(word, w) and (len(word) // len(w)) % n == 1


def in_lemma32(word: str, n: int) -> bool:
    _, bound = lemma32_params(n)
    return len(word) >= bound or find_power_factor(word, n) is not None
