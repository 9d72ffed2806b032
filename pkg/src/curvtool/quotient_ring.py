"""Exact arithmetic in R[y1..ym, t] / (t^2 + y1^2 + ... + ym^2).

Every element of the quotient has a unique representative p + t*q with p, q
polynomials in the y variables; all coefficients are exact rationals and all
divisibility answers are exact. For m >= 5 the class of t generates a prime
ideal and the t-valuation below is a genuine valuation; for smaller m the
number still computes but carries no unique-factorization meaning.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import ParseError, ZeroElement

MAX_VARS = 6
MAX_T_DEGREE = 3

Coeff = Union[int, Fraction]

_ZERO = Fraction(0)


def _grlex(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


class MultiPoly:
    """Polynomial in y1..ym with exact rational coefficients.

    Terms live in a map from exponent tuples to nonzero Fractions; floats are
    rejected outright since approximate divisibility is meaningless.
    """

    __slots__ = ("m", "_terms")

    def __init__(self, m: int, terms: Optional[Mapping[tuple, Coeff]] = None):
        if not 1 <= m <= MAX_VARS:
            raise ValueError(f"m must be in [1, {MAX_VARS}]")
        object.__setattr__(self, "m", m)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != m or any(not isinstance(e, int) or e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for m={m}")
            if isinstance(coeff, float):
                raise TypeError("floating coefficients are rejected; use Fraction")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[exp] = clean.get(exp, _ZERO) + coeff
                if clean[exp] == 0:
                    del clean[exp]
        object.__setattr__(self, "_terms", clean)

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, m: int) -> "MultiPoly":
        return cls(m)

    @classmethod
    def one(cls, m: int) -> "MultiPoly":
        return cls.constant(m, 1)

    @classmethod
    def constant(cls, m: int, c: Coeff) -> "MultiPoly":
        return cls(m, {(0,) * m: c})

    @classmethod
    def variable(cls, m: int, index: int) -> "MultiPoly":
        """The variable y_index, with 1-based index as in the literal syntax."""
        if not 1 <= index <= m:
            raise ValueError(f"variable index {index} outside 1..{m}")
        exp = [0] * m
        exp[index - 1] = 1
        return cls(m, {tuple(exp): 1})

    @classmethod
    def norm_squared(cls, m: int) -> "MultiPoly":
        """The defining quadric y1^2 + ... + ym^2."""
        terms = {}
        for i in range(m):
            exp = [0] * m
            exp[i] = 2
            terms[tuple(exp)] = 1
        return cls(m, terms)

    # -- ring structure ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        return self._terms.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.m == other.m and self._terms == other._terms

    def __hash__(self):
        return hash((self.m, frozenset(self._terms.items())))

    def _require_same_m(self, other: "MultiPoly"):
        if self.m != other.m:
            raise ValueError("mixed variable counts")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._require_same_m(other)
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            new = terms.get(exp, _ZERO) + coeff
            if new:
                terms[exp] = new
            else:
                terms.pop(exp, None)
        return MultiPoly(self.m, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.m, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: Union["MultiPoly", Coeff]) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.m, {e: c * other for e, c in self._terms.items()})
        self._require_same_m(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(exp, _ZERO) + c1 * c2
                if new:
                    terms[exp] = new
                else:
                    terms.pop(exp, None)
        return MultiPoly(self.m, terms)

    __rmul__ = __mul__

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """Largest term in graded-lex order."""
        if self.is_zero():
            raise ZeroElement("zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex)
        return exp, self._terms[exp]

    def divide_by(self, divisor: "MultiPoly") -> Optional["MultiPoly"]:
        """Exact quotient self/divisor, or None when divisor does not divide.

        Single-divisor division: the leading remainder term is cancelled
        against the divisor's leading term each round; the first leading
        term that is not a multiple proves non-divisibility (a term moved
        to the remainder can never be cancelled later).
        """
        self._require_same_m(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MultiPoly.zero(self.m)
        d_exp, d_coeff = divisor.leading_term()
        rem = dict(self._terms)
        quo: dict[tuple[int, ...], Fraction] = {}
        while rem:
            exp = max(rem, key=_grlex)
            q_exp = tuple(a - b for a, b in zip(exp, d_exp))
            if any(e < 0 for e in q_exp):
                return None
            q_coeff = rem[exp] / d_coeff
            quo[q_exp] = quo.get(q_exp, _ZERO) + q_coeff
            for e2, c2 in divisor._terms.items():
                tgt = tuple(a + b for a, b in zip(q_exp, e2))
                new = rem.get(tgt, _ZERO) - q_coeff * c2
                if new:
                    rem[tgt] = new
                else:
                    rem.pop(tgt, None)
        return MultiPoly(self.m, quo)

    # -- printing ----------------------------------------------------------
    def _term_strings(self, t_power: int = 0) -> list[str]:
        out = []
        for exp in sorted(self._terms, key=_grlex, reverse=True):
            coeff = self._terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(f"y{i + 1}")
                elif e > 1:
                    factors.append(f"y{i + 1}^{e}")
            if t_power == 1:
                factors.append("t")
            elif t_power > 1:
                factors.append(f"t^{t_power}")
            mag = -coeff if coeff < 0 else coeff
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            out.append(("-" if coeff < 0 else "+") + "*".join(factors))
        return out

    def __str__(self) -> str:
        return _join_signed(self._term_strings())

    def __repr__(self) -> str:
        return f"MultiPoly(m={self.m}, {self})"


def _join_signed(signed_terms: list[str]) -> str:
    if not signed_terms:
        return "0"
    head = signed_terms[0]
    text = head[1:] if head[0] == "+" else "-" + head[1:]
    for term in signed_terms[1:]:
        text += (" + " if term[0] == "+" else " - ") + term[1:]
    return text


@dataclass(frozen=True)
class QuotElem:
    """Residue class p + t*q; the pair (p, q) is the unique representative."""

    p: MultiPoly
    q: MultiPoly

    def __post_init__(self):
        if self.p.m != self.q.m:
            raise ValueError("mixed variable counts")

    @property
    def m(self) -> int:
        return self.p.m

    @classmethod
    def zero(cls, m: int) -> "QuotElem":
        return cls(MultiPoly.zero(m), MultiPoly.zero(m))

    @classmethod
    def one(cls, m: int) -> "QuotElem":
        return cls(MultiPoly.one(m), MultiPoly.zero(m))

    @classmethod
    def tbar(cls, m: int) -> "QuotElem":
        return cls(MultiPoly.zero(m), MultiPoly.one(m))

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "QuotElem":
        return cls(p, MultiPoly.zero(p.m))

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def __add__(self, other: "QuotElem") -> "QuotElem":
        return QuotElem(self.p + other.p, self.q + other.q)

    def __neg__(self) -> "QuotElem":
        return QuotElem(-self.p, -self.q)

    def __sub__(self, other: "QuotElem") -> "QuotElem":
        return QuotElem(self.p - other.p, self.q - other.q)

    def __mul__(self, other: "QuotElem") -> "QuotElem":
        return mul(self, other)

    def __str__(self) -> str:
        return format_element(self)


def reduce(t_coefficients: Sequence[MultiPoly]) -> QuotElem:
    """Reduce sum_k c_k t^k (degree <= 3) by substituting t^2 -> -|Y|^2."""
    coeffs = list(t_coefficients)
    if not coeffs:
        raise ValueError("need at least the constant coefficient")
    if len(coeffs) > MAX_T_DEGREE + 1:
        raise ValueError(f"degree in t capped at {MAX_T_DEGREE}")
    m = coeffs[0].m
    if any(c.m != m for c in coeffs):
        raise ValueError("mixed variable counts")
    while len(coeffs) < 4:
        coeffs.append(MultiPoly.zero(m))
    s = MultiPoly.norm_squared(m)
    return QuotElem(coeffs[0] - s * coeffs[2], coeffs[1] - s * coeffs[3])


def mul(a: QuotElem, b: QuotElem) -> QuotElem:
    """Product in the quotient: (p1 + t q1)(p2 + t q2) with t^2 = -|Y|^2."""
    if a.m != b.m:
        raise ValueError("mixed variable counts")
    s = MultiPoly.norm_squared(a.m)
    return QuotElem(a.p * b.p - s * (a.q * b.q), a.p * b.q + a.q * b.p)


def tbar_divide(e: QuotElem) -> Optional[QuotElem]:
    """The unique e' with tbar * e' = e, or None when tbar does not divide e.

    tbar * (p', q') = (-|Y|^2 q', p'), so e = (p, q) is divisible exactly
    when |Y|^2 divides p, with quotient (q, -p/|Y|^2).
    """
    ratio = e.p.divide_by(MultiPoly.norm_squared(e.m))
    if ratio is None:
        return None
    return QuotElem(e.q, -ratio)


def tbar_valuation(e: QuotElem, cap: int = 4) -> int:
    """Largest k <= cap with tbar^k dividing e; the zero element is rejected."""
    if e.is_zero():
        raise ZeroElement("the zero element is divisible by every power")
    k = 0
    while k < cap:
        nxt = tbar_divide(e)
        if nxt is None:
            break
        e = nxt
        k += 1
    return k


@dataclass(frozen=True)
class MinorReport:
    ok: bool
    failing_minor: Optional[tuple[int, int, int, int]] = None


def minor_divisibility_check(entries: Sequence[Sequence[QuotElem]]) -> MinorReport:
    """Test every 2x2 minor for divisibility by t^2 + |Y|^2.

    Entries are degree <= 1 in t; each minor expands to F + tG + t^2 H and
    is divisible exactly when G = 0 and F = |Y|^2 H as polynomials. The
    first failing minor is reported as (row1, row2, col1, col2).
    """
    rows = [list(r) for r in entries]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("entries must form a non-empty rectangular matrix")
    m = rows[0][0].m
    if any(e.m != m for r in rows for e in r):
        raise ValueError("mixed variable counts")
    s = MultiPoly.norm_squared(m)
    n_rows, n_cols = len(rows), len(rows[0])
    for i1 in range(n_rows):
        for i2 in range(i1 + 1, n_rows):
            for j1 in range(n_cols):
                for j2 in range(j1 + 1, n_cols):
                    a, b = rows[i1][j1], rows[i1][j2]
                    c, d = rows[i2][j1], rows[i2][j2]
                    f = a.p * d.p - b.p * c.p
                    g = a.p * d.q + a.q * d.p - b.p * c.q - b.q * c.p
                    h = a.q * d.q - b.q * c.q
                    if not g.is_zero() or f != s * h:
                        return MinorReport(ok=False, failing_minor=(i1, i2, j1, j2))
    return MinorReport(ok=True)


# --- literal syntax (CLI surface) --------------------------------------------
#
# Sums of terms `c*y1^a1*...*t^k` with rational c written as p/q; whitespace
# is ignored, every +/- starts a new term, and the t-degree is capped at 3.

_RATIONAL_RE = re.compile(r"\d+(?:/\d+)?$")
_VARIABLE_RE = re.compile(r"y(\d+)(?:\^(\d+))?$")
_T_RE = re.compile(r"t(?:\^(\d+))?$")


def parse_t_poly(text: str, m: int) -> list[MultiPoly]:
    """Parse a literal into coefficients [c0..c3] of powers of t."""
    compact = "".join(text.split())
    if not compact:
        raise ParseError("empty polynomial literal")
    if compact[0] not in "+-":
        compact = "+" + compact
    chunks = re.findall(r"[+-][^+-]+", compact)
    if sum(len(c) for c in chunks) != len(compact):
        raise ParseError(f"malformed polynomial literal: {text!r}")
    buckets: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(4)]
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        coeff = Fraction(sign)
        exp = [0] * m
        t_power = 0
        for factor in chunk[1:].split("*"):
            if not factor:
                raise ParseError(f"empty factor in term {chunk!r}")
            if _RATIONAL_RE.match(factor):
                try:
                    coeff *= Fraction(factor)
                except ZeroDivisionError:
                    raise ParseError(f"zero denominator in {factor!r}") from None
                continue
            var = _VARIABLE_RE.match(factor)
            if var:
                index = int(var.group(1))
                if not 1 <= index <= m:
                    raise ParseError(f"variable y{index} outside y1..y{m}")
                exp[index - 1] += int(var.group(2) or 1)
                continue
            t_match = _T_RE.match(factor)
            if t_match:
                t_power += int(t_match.group(1) or 1)
                continue
            raise ParseError(f"unrecognized factor {factor!r}")
        if t_power > MAX_T_DEGREE:
            raise ParseError(f"degree in t exceeds {MAX_T_DEGREE}")
        bucket = buckets[t_power]
        key = tuple(exp)
        new = bucket.get(key, _ZERO) + coeff
        if new:
            bucket[key] = new
        else:
            bucket.pop(key, None)
    return [MultiPoly(m, b) for b in buckets]


def parse_element(text: str, m: int) -> QuotElem:
    """Parse a literal and reduce it to its unique (p, q) representative."""
    return reduce(parse_t_poly(text, m))


def format_element(e: QuotElem) -> str:
    """Canonical literal: p-terms in graded-lex order, then q-terms with *t."""
    signed = e.p._term_strings() + e.q._term_strings(t_power=1)
    return _join_signed(signed)
