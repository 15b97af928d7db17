"""Rational generating functions P(t) / (1-t)^k of positive-part expressions."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import List, Tuple

import sympy as sp

from core.pluspoly import DensePolynomial, PluspartExpression, PlusTerm
from utils.errors import InternalConsistencyError

T = sp.Symbol("t")
P = sp.Symbol("p")


@dataclass(frozen=True)
class RationalCountSeries:
    numerator: DensePolynomial
    denominator_exponent: int

    def to_json(self) -> dict:
        return {
            "numerator": list(self.numerator.coefficients),
            "denominator_exponent": self.denominator_exponent,
        }


@dataclass(frozen=True)
class EulerianPolynomial:
    """A_j(t) with sum of n^j t^n equal to A_j(t) / (1-t)^(j+1)."""

    coefficients: Tuple[int, ...]

    def to_sympy(self) -> sp.Poly:
        return DensePolynomial(self.coefficients).to_sympy(T)


@lru_cache(maxsize=None)
def _eulerian_numbers(j: int) -> Tuple[int, ...]:
    if j == 0:
        return (1,)
    previous = _eulerian_numbers(j - 1)
    row = []
    for k in range(j):
        keep = previous[k] if k < len(previous) else 0
        rise = previous[k - 1] if 0 < k <= len(previous) else 0
        row.append((k + 1) * keep + (j - k) * rise)
    return tuple(row)


def eulerian(j: int) -> EulerianPolynomial:
    if j < 0:
        raise ValueError(f"Eulerian polynomials are indexed by j >= 0, got {j}")
    if j == 0:
        return EulerianPolynomial((1,))
    return EulerianPolynomial((0,) + _eulerian_numbers(j))


def _one_minus_t(power: int) -> sp.Poly:
    return sp.Poly(1 - T, T, domain=sp.ZZ) ** power


def term_gf(term: PlusTerm, denominator_exponent: int) -> RationalCountSeries:
    """Generating function of n -> coeff * prod (n - s)^+ over (1-t)^k.

    With p = n - s_max the product is a polynomial in p with nonnegative
    coefficients c_j, and sum of p^j t^p is A_j(t) / (1-t)^(j+1).
    """
    r = term.degree
    if r + 1 > denominator_exponent:
        raise ValueError(f"term of degree {r} does not fit over (1-t)^{denominator_exponent}")
    if any(s < 0 for s in term.shifts):
        raise ValueError(f"negative shift in {term}")

    top = max(term.shifts, default=0)
    product = sp.Poly(1, P, domain=sp.ZZ)
    for s in term.shifts:
        product *= sp.Poly(P + (top - s), P, domain=sp.ZZ)
    by_power = list(reversed(product.all_coeffs()))

    numerator = sp.Poly(0, T, domain=sp.ZZ)
    for j, c in enumerate(by_power):
        if c == 0:
            continue
        numerator += int(c) * eulerian(j).to_sympy() * _one_minus_t(denominator_exponent - j - 1)
    numerator = term.coeff * numerator * sp.Poly(T ** top, T, domain=sp.ZZ)
    return RationalCountSeries(DensePolynomial.from_sympy(numerator), denominator_exponent)


def expression_gf(expr: PluspartExpression, q: int) -> RationalCountSeries:
    total = sp.Poly(0, T, domain=sp.ZZ)
    for term in expr.terms:
        total += term_gf(term, q + 1).numerator.to_sympy(T)
    gf = RationalCountSeries(DensePolynomial.from_sympy(total), q + 1)
    logging.debug(f"generating function of {len(expr.terms)} terms: {format_gf(gf)}")
    return gf


def rescale(gf: RationalCountSeries, exponent: int) -> RationalCountSeries:
    """Same series written over (1-t)^exponent."""
    if exponent < gf.denominator_exponent:
        raise ValueError(f"cannot lower the denominator exponent {gf.denominator_exponent} to {exponent}")
    numerator = gf.numerator.to_sympy(T) * _one_minus_t(exponent - gf.denominator_exponent)
    return RationalCountSeries(DensePolynomial.from_sympy(numerator), exponent)


def subtract(a: RationalCountSeries, b: RationalCountSeries) -> RationalCountSeries:
    exponent = max(a.denominator_exponent, b.denominator_exponent)
    a, b = rescale(a, exponent), rescale(b, exponent)
    numerator = a.numerator.to_sympy(T) - b.numerator.to_sympy(T)
    return RationalCountSeries(DensePolynomial.from_sympy(numerator), exponent)


def divide_exact(gf: RationalCountSeries, divisor: int) -> RationalCountSeries:
    if divisor <= 0:
        raise ValueError(f"divisor must be positive, got {divisor}")
    for c in gf.numerator.coefficients:
        if c % divisor:
            raise InternalConsistencyError(f"numerator coefficient {c} is not divisible by {divisor}")
    return RationalCountSeries(
        DensePolynomial(tuple(c // divisor for c in gf.numerator.coefficients)),
        gf.denominator_exponent,
    )


def series(gf: RationalCountSeries, count: int) -> List[int]:
    """First ``count`` power-series coefficients."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    k = gf.denominator_exponent
    # 1/(1-t)^k = sum of C(i+k-1, k-1) t^i
    binomials = [comb(i + k - 1, k - 1) for i in range(count)]
    numerator = gf.numerator.coefficients
    return [
        sum(numerator[a] * binomials[i - a] for a in range(min(i, len(numerator) - 1) + 1))
        for i in range(count)
    ]


def format_gf(gf: RationalCountSeries) -> str:
    numerator = gf.numerator.format("t")
    if len([c for c in gf.numerator.coefficients if c]) > 1:
        numerator = f"({numerator})"
    return f"{numerator} / (1-t)^{gf.denominator_exponent}"
