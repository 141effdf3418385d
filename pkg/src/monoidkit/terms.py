"""Omega-terms: parsing, evaluation in finite monoids, identity checking.

Evaluation is vectorised: a substitution batch maps each variable to an
integer array, and every node evaluates to an array of element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .monoid import FiniteMonoid, OrderedMonoid

DEFAULT_BUDGET = 10**9
CHUNK = 1 << 18


class TermError(ValueError):
    pass


class TermSyntaxError(TermError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class BudgetExceeded(RuntimeError):
    pass


# -- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise TermError("integer exponents must be >= 1")

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True)
class OmegaPlus:
    k: int = 0

    def __str__(self):
        if self.k == 0:
            return "w"
        return f"(w{self.k:+d})"


Exponent = Union[Int, OmegaPlus]


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Concat:
    parts: tuple

    def __post_init__(self):
        if len(self.parts) < 2:
            raise TermError("Concat needs at least two factors")

    def __str__(self):
        return " ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Power:
    base: object
    exp: Exponent

    def __str__(self):
        b = str(self.base)
        if not isinstance(self.base, Variable):
            b = f"({b})"
        return f"{b}^{self.exp}"


OmegaTerm = Union[One, Variable, Concat, Power]


def _wrap(t) -> str:
    return f"({t})" if isinstance(t, Concat) else str(t)


def concat(*parts) -> OmegaTerm:
    flat = []
    for p in parts:
        if isinstance(p, Concat):
            flat.extend(p.parts)
        elif not isinstance(p, One):
            flat.append(p)
    if not flat:
        return One()
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def word_term(word: str) -> OmegaTerm:
    """The term spelling a word letter by letter (``1`` for the empty word)."""
    return concat(*(Variable(ch) for ch in word))


def omega(t, k: int = 0) -> Power:
    return Power(t, OmegaPlus(k))


def power(t, k: int) -> Power:
    return Power(t, Int(k))


def variables(t) -> frozenset[str]:
    if isinstance(t, Variable):
        return frozenset({t.name})
    if isinstance(t, Concat):
        return frozenset().union(*(variables(p) for p in t.parts))
    if isinstance(t, Power):
        return variables(t.base)
    return frozenset()


def substitute(t, mapping: Mapping[str, OmegaTerm]):
    """Replace variables by terms."""
    if isinstance(t, Variable):
        return mapping.get(t.name, t)
    if isinstance(t, Concat):
        return concat(*(substitute(p, mapping) for p in t.parts))
    if isinstance(t, Power):
        return Power(substitute(t.base, mapping), t.exp)
    return t


# -- parser --------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expect(self, ch: str):
        if self.peek() != ch:
            raise TermSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def term(self):
        factors = []
        while True:
            ch = self.peek()
            if ch is None or ch == ")":
                break
            factors.append(self.factor())
        if not factors:
            raise TermSyntaxError("empty term", self.pos)
        return concat(*factors) if len(factors) > 1 else factors[0]

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return Power(base, self.exponent())
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.term()
            self.expect(")")
            return inner
        if ch == "1":
            self.pos += 1
            return One()
        if ch is not None and ch.isalpha():
            self.pos += 1
            return Variable(ch)
        raise TermSyntaxError(f"unexpected {ch!r}", self.pos)

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise TermSyntaxError("expected integer", start)
        return int(self.text[start:self.pos])

    def exponent(self) -> Exponent:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            return OmegaPlus(0)
        if ch == "(":
            self.pos += 1
            self.expect("w")
            sign = self.peek()
            if sign not in ("+", "-"):
                raise TermSyntaxError("expected '+' or '-'", self.pos)
            self.pos += 1
            k = self.integer()
            self.expect(")")
            return OmegaPlus(k if sign == "+" else -k)
        start = self.pos
        k = self.integer()
        if k == 0:
            raise TermSyntaxError("exponent 0 is not allowed", start)
        return Int(k)


def parse_term(text: str) -> OmegaTerm:
    p = _Parser(text)
    t = p.term()
    if p.peek() is not None:
        raise TermSyntaxError(f"unexpected {p.peek()!r}", p.pos)
    return t


# -- evaluation ----------------------------------------------------------


def _int_power(M: FiniteMonoid, vals: np.ndarray, k: int) -> np.ndarray:
    acc = None
    base = vals
    t = M.table
    while k:
        if k & 1:
            acc = base if acc is None else t[acc, base]
        k >>= 1
        if k:
            base = t[base, base]
    return acc


def eval_batch(t, M: FiniteMonoid, env: Mapping[str, np.ndarray], size: int) -> np.ndarray:
    if isinstance(t, Variable):
        try:
            return env[t.name]
        except KeyError:
            raise TermError(f"unbound variable {t.name!r}") from None
    if isinstance(t, One):
        return np.full(size, M.identity, dtype=np.int64)
    if isinstance(t, Concat):
        acc = eval_batch(t.parts[0], M, env, size)
        for p in t.parts[1:]:
            acc = M.table[acc, eval_batch(p, M, env, size)]
        return acc
    if isinstance(t, Power):
        vals = eval_batch(t.base, M, env, size)
        if isinstance(t.exp, Int):
            return _int_power(M, vals, t.exp.k)
        return M.omega_array(t.exp.k)[vals]
    raise TermError(f"not a term: {t!r}")


def evaluate(t, M: FiniteMonoid, sigma: Mapping[str, int]) -> int:
    """Value of ``t`` under the substitution ``sigma``."""
    env = {k: np.array([v], dtype=np.int64) for k, v in sigma.items()}
    return int(eval_batch(t, M, env, 1)[0])


# -- pseudoidentities ----------------------------------------------------


@dataclass(frozen=True)
class Pseudoidentity:
    lhs: OmegaTerm
    rhs: OmegaTerm
    kind: str = "eq"  # "eq" or "leq"

    def __post_init__(self):
        if self.kind not in ("eq", "leq"):
            raise TermError(f"unknown kind {self.kind!r}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(variables(self.lhs) | variables(self.rhs)))

    @classmethod
    def parse(cls, text: str) -> "Pseudoidentity":
        for sep, kind in (("<=", "leq"), ("=", "eq")):
            if sep in text:
                left, right = text.split(sep, 1)
                return cls(parse_term(left), parse_term(right), kind)
        raise TermError("expected '=' or '<='")

    def __str__(self):
        op = "<=" if self.kind == "leq" else "="
        return f"{self.lhs} {op} {self.rhs}"


@dataclass
class CheckResult:
    holds: bool
    witness: dict[str, int] | None = None
    checked: int = 0
    lhs_value: int | None = None
    rhs_value: int | None = None

    def __bool__(self):
        return self.holds


def _batches(n: int, nvars: int, start: int = 0, stop: int | None = None):
    total = n ** nvars
    stop = total if stop is None else min(stop, total)
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = []
        for _ in range(nvars):
            idx, d = np.divmod(idx, n)
            digits.append(d)
        # first variable is the most significant digit
        yield lo, hi - lo, digits[::-1]


def _check(M: FiniteMonoid, pid: Pseudoidentity, compare, budget: int, override: bool) -> CheckResult:
    names = pid.variables
    n = M.size
    total = n ** len(names)
    if total > budget and not override:
        raise BudgetExceeded(f"{n}^{len(names)} = {total} substitutions exceeds budget {budget}")
    for lo, size, digits in _batches(n, len(names)):
        env = dict(zip(names, digits))
        left = eval_batch(pid.lhs, M, env, size)
        right = eval_batch(pid.rhs, M, env, size)
        ok = compare(left, right)
        if not ok.all():
            i = int(np.argmin(ok))
            witness = {v: int(d[i]) for v, d in zip(names, digits)}
            return CheckResult(False, witness, lo + i + 1, int(left[i]), int(right[i]))
    return CheckResult(True, None, total)


def check_identity(M: FiniteMonoid, pid: Pseudoidentity, budget: int = DEFAULT_BUDGET,
                   override: bool = False) -> CheckResult:
    """Exhaustively test ``lhs = rhs`` over all substitutions.

    Substitutions are visited in odometer order (variables sorted, first one
    most significant), so the returned witness is the lexicographically first.
    """
    if pid.kind != "eq":
        raise TermError("check_identity expects an equality")
    return _check(M, pid, np.equal, budget, override)


def check_inequality(OM: OrderedMonoid, pid: Pseudoidentity, budget: int = DEFAULT_BUDGET,
                     override: bool = False) -> CheckResult:
    if pid.kind != "leq":
        raise TermError("check_inequality expects an inequality")
    leq = OM.leq
    return _check(OM.monoid, pid, lambda a, b: leq[a, b], budget, override)


def check(M, pid: Pseudoidentity, **kw) -> CheckResult:
    """Dispatch on ``pid.kind``; inequalities need an ordered monoid."""
    if pid.kind == "leq":
        if not isinstance(M, OrderedMonoid):
            M = OrderedMonoid.trivial(M)
        return check_inequality(M, pid, **kw)
    if isinstance(M, OrderedMonoid):
        M = M.monoid
    return check_identity(M, pid, **kw)


def sample_check(M: FiniteMonoid, pid: Pseudoidentity, samples: int, rng: np.random.Generator,
                 leq: np.ndarray | None = None) -> CheckResult:
    """Randomised check; can only ever report failures that exist."""
    names = pid.variables
    env = {v: rng.integers(0, M.size, size=samples) for v in names}
    left = eval_batch(pid.lhs, M, env, samples)
    right = eval_batch(pid.rhs, M, env, samples)
    ok = leq[left, right] if pid.kind == "leq" else left == right
    if ok.all():
        return CheckResult(True, None, samples)
    i = int(np.argmin(ok))
    return CheckResult(False, {v: int(env[v][i]) for v in names}, i + 1, int(left[i]), int(right[i]))
