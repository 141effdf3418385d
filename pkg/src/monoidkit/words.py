"""Brute-force combinatorics on words, used as independent oracles."""

from __future__ import annotations

from typing import Iterator


def find_power_factor(word: str, n: int) -> tuple[int, str] | None:
    """First ``(position, u)`` with ``u`` nonempty and ``u**n`` a factor at ``position``."""
    L = len(word)
    for i in range(L):
        for m in range(1, (L - i) // n + 1):
            u = word[i:i + m]
            if word[i:i + n * m] == u * n:
                return i, u
    return None


def has_power_factor(word: str, n: int) -> bool:
    return find_power_factor(word, n) is not None


def ends_with_power(word: str, n: int) -> bool:
    L = len(word)
    for m in range(1, L // n + 1):
        tail = word[L - n * m:]
        if tail == tail[:m] * n:
            return True
    return False


def power_free_words(alphabet: str, n: int, max_len: int) -> Iterator[str]:
    """All words of length ``<= max_len`` without a nonempty ``n``-th power factor."""
    stack = [""]
    while stack:
        w = stack.pop()
        yield w
        if len(w) == max_len:
            continue
        for ch in reversed(alphabet):
            v = w + ch
            if not ends_with_power(v, n):
                stack.append(v)


def power_decompositions(word: str, n: int) -> Iterator[tuple[str, str, str]]:
    """Every ``(x, u, y)`` with ``word == x + u*n + y`` and ``u`` nonempty."""
    L = len(word)
    for i in range(L + 1):
        for m in range(1, (L - i) // n + 1):
            u = word[i:i + m]
            if word[i:i + n * m] == u * n:
                yield word[:i], u, word[i + n * m:]


def in_star(word: str, base: str) -> bool:
    """Whether ``word`` belongs to ``base*``."""
    if not base:
        return word == ""
    q, r = divmod(len(word), len(base))
    return r == 0 and word == base * q


def star_exponent(word: str, base: str) -> int | None:
    if in_star(word, base):
        return len(word) // len(base) if base else 0
    return None


def is_factor_of_star(word: str, base: str) -> bool:
    """Whether ``word`` is a factor of some power of ``base``."""
    if not word:
        return True
    reps = len(word) // len(base) + 2
    return word in base * reps


def letter_counts(word: str) -> dict[str, int]:
    counts: dict[str, int] = {}
    for ch in word:
        counts[ch] = counts.get(ch, 0) + 1
    return counts


def is_subsequence(small: str, big: str) -> bool:
    it = iter(big)
    return all(ch in it for ch in small)


def all_words(alphabet: str, max_len: int) -> Iterator[str]:
    """Words in shortlex order up to ``max_len``."""
    layer = [""]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + a for w in layer for a in alphabet]
