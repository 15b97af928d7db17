"""Positive-part expressions: signed sums of products of (n - s)^+.

An expression is kept as a tuple of ``PlusTerm`` in normal form: one term per
shift multiset, no zero coefficients, terms ordered by degree (descending) and
then by shifts. The zero expression has no terms.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import sympy as sp

N = sp.Symbol("n")


class PlusTerm(NamedTuple):
    coeff: int
    shifts: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.shifts)

    def evaluate(self, n: int) -> int:
        value = self.coeff
        for s in self.shifts:
            if n <= s:
                return 0
            value *= n - s
        return value


def _term_order(term: PlusTerm):
    return -term.degree, term.shifts


@dataclass(frozen=True)
class DensePolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coefficients))

    @classmethod
    def from_sympy(cls, poly: sp.Poly) -> "DensePolynomial":
        return cls(tuple(reversed([int(c) for c in poly.all_coeffs()])))

    def to_sympy(self, symbol: sp.Symbol = N) -> sp.Poly:
        return sp.Poly(list(reversed(self.coefficients)) or [0], symbol, domain=sp.ZZ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def format(self, var: str = "n") -> str:
        """Descending powers, e.g. ``n^3 - 9n^2 + 30n - 36``."""
        parts = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                monomial = var if power == 1 else f"{var}^{power}"
                body = monomial if magnitude == 1 else f"{magnitude}{monomial}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class PluspartExpression:
    terms: Tuple[PlusTerm, ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, Sequence[int]]]) -> "PluspartExpression":
        return normalize(cls(tuple(PlusTerm(c, tuple(sorted(s))) for c, s in terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def __add__(self, other: "PluspartExpression") -> "PluspartExpression":
        return add(self, other)

    def __sub__(self, other: "PluspartExpression") -> "PluspartExpression":
        return add(self, negate(other))

    def __neg__(self) -> "PluspartExpression":
        return negate(self)

    def __mul__(self, other: "PluspartExpression") -> "PluspartExpression":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_expression(self)


ZERO = PluspartExpression()
ONE = PluspartExpression((PlusTerm(1, ()),))


def evaluate(expr: PluspartExpression, n: int) -> int:
    if n < 0:
        raise ValueError(f"expressions are evaluated at n >= 0, got {n}")
    return sum(term.evaluate(n) for term in expr.terms)


def normalize(expr: PluspartExpression) -> PluspartExpression:
    merged = defaultdict(int)
    for term in expr.terms:
        merged[tuple(sorted(term.shifts))] += term.coeff
    terms = [PlusTerm(c, s) for s, c in merged.items() if c != 0]
    terms.sort(key=_term_order)
    return PluspartExpression(tuple(terms))


def add(a: PluspartExpression, b: PluspartExpression) -> PluspartExpression:
    return normalize(PluspartExpression(a.terms + b.terms))


def negate(a: PluspartExpression) -> PluspartExpression:
    return PluspartExpression(tuple(PlusTerm(-t.coeff, t.shifts) for t in a.terms))


def scale(a: PluspartExpression, k: int) -> PluspartExpression:
    return normalize(PluspartExpression(tuple(PlusTerm(k * t.coeff, t.shifts) for t in a.terms)))


def multiply(a: PluspartExpression, b: PluspartExpression) -> PluspartExpression:
    products = [
        PlusTerm(x.coeff * y.coeff, tuple(sorted(x.shifts + y.shifts)))
        for x in a.terms
        for y in b.terms
    ]
    return normalize(PluspartExpression(tuple(products)))


def translate(expr: PluspartExpression, c: int) -> PluspartExpression:
    """Replace every factor (n - s)^+ by (n - s - c)^+."""
    if c == 0:
        return expr
    return PluspartExpression(
        tuple(PlusTerm(t.coeff, tuple(s + c for s in t.shifts)) for t in expr.terms)
    )


def degree(expr: PluspartExpression) -> int:
    return max((t.degree for t in expr.terms), default=0)


def max_shift(expr: PluspartExpression) -> int:
    return max((s for t in expr.terms for s in t.shifts), default=0)


def eventual_polynomial(expr: PluspartExpression) -> DensePolynomial:
    """The polynomial obtained by dropping every ^+."""
    total = sp.Poly(0, N, domain=sp.ZZ)
    for term in expr.terms:
        product = sp.Poly(term.coeff, N, domain=sp.ZZ)
        for s, group in groupby(term.shifts):
            product *= sp.Poly(N - s, N, domain=sp.ZZ) ** len(list(group))
        total += product
    return DensePolynomial.from_sympy(total)


def polynomial_threshold(expr: PluspartExpression) -> int:
    """Least N >= 0 with expr(n) equal to its eventual polynomial for all n >= N."""
    poly = eventual_polynomial(expr)
    threshold = max(0, max_shift(expr))
    while threshold > 0 and evaluate(expr, threshold - 1) == poly(threshold - 1):
        threshold -= 1
    return threshold


def functions_equal(a: PluspartExpression, b: PluspartExpression) -> bool:
    """Equality as functions on n >= 0, decided on a finite window."""
    top = max(0, max_shift(a), max_shift(b)) + max(degree(a), degree(b)) + 1
    return all(evaluate(a, n) == evaluate(b, n) for n in range(top + 1))


def sign_pattern_violations(expr: PluspartExpression, q: int) -> List[str]:
    """Departures from the structure of a zero-weighted chromatic function.

    Expected: a single degree-q term +n^q, sign (-1)^(q-d) on every degree-d
    term and no negative shift.
    """
    problems = []
    top = [t for t in expr.terms if t.degree == q]
    if top != [PlusTerm(1, (0,) * q)]:
        problems.append(f"degree-{q} part is {top}, expected a single +n^{q}")
    for t in expr.terms:
        if t.degree > q:
            problems.append(f"term {t} has degree above {q}")
        elif (t.coeff > 0) != ((q - t.degree) % 2 == 0):
            problems.append(f"term {t} has sign against (-1)^(q-d)")
        if any(s < 0 for s in t.shifts):
            problems.append(f"term {t} has a negative shift")
    return problems


def _format_factors(shifts: Tuple[int, ...]) -> str:
    pieces = []
    for s, group in groupby(shifts):
        power = len(list(group))
        if s == 0:
            pieces.append("n" if power == 1 else f"n^{power}")
            continue
        factor = f"(n-{s})^+" if s > 0 else f"(n+{-s})^+"
        pieces.append(factor if power == 1 else f"({factor})^{power}")
    return "".join(pieces)


def format_expression(expr: PluspartExpression) -> str:
    """Text form such as ``n^2 - n - 2(n-1)^+``."""
    if expr.is_zero():
        return "0"
    text = ""
    for position, term in enumerate(expr.terms):
        magnitude = abs(term.coeff)
        factors = _format_factors(term.shifts)
        if not factors:
            body = str(magnitude)
        else:
            body = factors if magnitude == 1 else f"{magnitude}{factors}"
        if position == 0:
            text = ("-" if term.coeff < 0 else "") + body
        else:
            text += f" {'-' if term.coeff < 0 else '+'} {body}"
    return text


def to_json(expr: PluspartExpression) -> dict:
    return {"terms": [{"coeff": t.coeff, "shifts": list(t.shifts)} for t in expr.terms]}


def from_json(payload: dict) -> PluspartExpression:
    try:
        raw = payload["terms"]
        terms = [(item["coeff"], item["shifts"]) for item in raw]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed expression payload: {exc}") from exc
    for coeff, shifts in terms:
        if not isinstance(coeff, int) or not all(isinstance(s, int) for s in shifts):
            raise ValueError(f"non-integer data in term {coeff} {shifts}")
    expr = PluspartExpression.from_terms(terms)
    logging.debug(f"loaded expression with {len(expr.terms)} terms")
    return expr
