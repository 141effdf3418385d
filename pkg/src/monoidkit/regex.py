"""Regular expressions with complement and intersection, compiled to minimal DFAs.

Grammar (whitespace is ignored)::

    expr    := inter ('|' inter)*
    inter   := concat ('&' concat)*
    concat  := unary*
    unary   := '~' unary | postfix
    postfix := atom ('*' | '+')*
    atom    := letter | '.' | '(' expr? ')'

``()`` is the empty language, so ``~()`` is everything and ``()*`` is the
empty word.  ``.`` matches any single letter of the alphabet.
"""

from __future__ import annotations

import numpy as np

from . import dfa as D


class RegexError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_SPECIAL = set("|&~*+.()")


class _Parser:
    def __init__(self, text: str, alphabet: str):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, ch: str):
        if self.peek() != ch:
            raise RegexError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def parse(self) -> D.Dfa:
        result = self.expr()
        if self.peek() is not None:
            raise RegexError(f"unexpected {self.peek()!r}", self.pos)
        return result

    def expr(self) -> D.Dfa:
        left = self.inter()
        while self.peek() == "|":
            self.pos += 1
            left = D.union(left, self.inter())
        return left

    def inter(self) -> D.Dfa:
        left = self.concat()
        while self.peek() == "&":
            self.pos += 1
            left = D.intersection(left, self.concat())
        return left

    def concat(self) -> D.Dfa:
        parts = []
        while True:
            ch = self.peek()
            if ch is None or ch in "|&)":
                break
            parts.append(self.unary())
        if not parts:
            # empty concatenation is the empty word
            return D.literal("", self.alphabet)
        result = parts[0]
        for p in parts[1:]:
            result = D.concat(result, p)
        return result

    def unary(self) -> D.Dfa:
        if self.peek() == "~":
            self.pos += 1
            return D.minimize(D.complement(self.unary()))
        return self.postfix()

    def postfix(self) -> D.Dfa:
        base = self.atom()
        while self.peek() in ("*", "+"):
            op = self.text[self.pos]
            self.pos += 1
            starred = D.star(base)
            base = starred if op == "*" else D.concat(base, starred)
        return base

    def atom(self) -> D.Dfa:
        ch = self.peek()
        start = self.pos
        if ch is None:
            raise RegexError("unexpected end of pattern", self.pos)
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return D.empty_language(self.alphabet)
            inner = self.expr()
            self.take(")")
            return inner
        if ch == ".":
            self.pos += 1
            return _any_letter(self.alphabet)
        if ch in _SPECIAL:
            raise RegexError(f"unexpected {ch!r}", start)
        if ch not in self.alphabet:
            raise RegexError(f"letter {ch!r} not in alphabet {self.alphabet!r}", start)
        # a maximal run of letters is one literal
        end = self.pos
        while end < len(self.text) and self.text[end] in self.alphabet:
            end += 1
        # postfix operators bind to the last letter only
        if end < len(self.text) and self.text[end] in "*+" and end - self.pos > 1:
            end -= 1
        word = self.text[self.pos:end]
        self.pos = end
        return D.literal(word, self.alphabet)


def _any_letter(alphabet: str) -> D.Dfa:
    k = len(alphabet)
    delta = np.array([[1] * k, [2] * k, [2] * k], dtype=np.int64)
    return D.minimize(D.Dfa(alphabet, delta, 0, frozenset({1})))


def infer_alphabet(pattern: str) -> str:
    letters = sorted({ch for ch in pattern if not ch.isspace() and ch not in _SPECIAL})
    return "".join(letters)


def compile(pattern: str, alphabet: str | None = None) -> D.Dfa:
    """Minimal complete DFA for ``pattern`` over ``alphabet``.

    When ``alphabet`` is omitted it is the sorted set of letters occurring in
    the pattern.
    """
    if alphabet is None:
        alphabet = infer_alphabet(pattern)
    if not alphabet:
        raise RegexError("empty alphabet", 0)
    bad = set(alphabet) & _SPECIAL
    if bad or any(ch.isspace() for ch in alphabet):
        raise RegexError(f"reserved character in alphabet: {sorted(bad)}", 0)
    return D.minimize(_Parser(pattern, alphabet).parse())
