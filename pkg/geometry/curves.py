"""The curve Gamma_{a,b}: y^q - y - a^q x^{2q} + ax^2 + (b - b^q)x^{q+1} = 0.

Gamma_{a,b} contains every affine point of U_{a,b}; (x, y) -> (x, y - ax^2)
carries it onto the Hermitian curve, and for a != 0 it is the only curve of
degree 2q through U_{a,b}.
"""
from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from django.conf import settings

from .exceptions import BoundExceededError, DomainError
from .gf import FieldSpec
from .pg import PointSet
from .report import VerificationReport
from .unitals import construct_bm
from .utils.linalg import nullspace, proportional

logger = logging.getLogger(__name__)

DEFAULT_LINALG_MAX_COLUMNS = 2000

Monomial = tuple[int, int, int]


@dataclass(frozen=True)
class CurveSpec:
    field: FieldSpec
    a: int
    b: int

    @property
    def degree(self) -> int:
        return 2 * self.field.q if self.a else self.field.q + 1

    def __call__(self, x: int, y: int) -> int:
        return gamma_eval(self.field, self.a, self.b, x, y)

    def to_json(self) -> dict:
        return {'a': self.a, 'b': self.b, 'degree': self.degree}


def gamma_eval(F: FieldSpec, a: int, b: int, x: int, y: int) -> int:
    c = F.sub(b, F.frobenius(b))
    ax2 = F.mul(a, F.mul(x, x))
    value = F.sub(F.frobenius(y), y)
    value = F.add(value, F.sub(ax2, F.frobenius(ax2)))
    return F.add(value, F.mul(c, F.rel_norm(x)))


def gamma_contains(F: FieldSpec, a: int, b: int, S: PointSet) -> Fraction:
    """Share of the affine points of S lying on Gamma_{a,b}."""
    affine = S.affine_part()
    if not affine:
        return Fraction(0)
    on_curve = sum(1 for x, y in affine if gamma_eval(F, a, b, x, y) == 0)
    return Fraction(on_curve, len(affine))


def affine_zeros(F: FieldSpec, evaluator: Callable[[int, int], int]) -> list[tuple[int, int]]:
    """All (x, y) in AG(2,q^2) with evaluator(x, y) = 0, by exhaustion."""
    return [(x, y) for x in F.elements() for y in F.elements() if evaluator(x, y) == 0]


def gamma_zeros(F: FieldSpec, a: int, b: int) -> list[tuple[int, int]]:
    """Affine zeros of Gamma_{a,b}, solving y^q - y = t fibre by fibre."""
    c = F.sub(b, F.frobenius(b))
    fibres: dict[int, list[int]] = {}
    for y in F.elements():
        fibres.setdefault(F.sub(F.frobenius(y), y), []).append(y)
    zeros = []
    for x in F.elements():
        ax2 = F.mul(a, F.mul(x, x))
        target = F.neg(F.add(F.sub(ax2, F.frobenius(ax2)), F.mul(c, F.rel_norm(x))))
        zeros.extend((x, y) for y in fibres.get(target, ()))
    return zeros


def birational_transfer(F: FieldSpec, a: int, points) -> list[tuple[int, int]]:
    """(x, y) -> (x, y - ax^2), sorted."""
    return sorted((x, F.sub(y, F.mul(a, F.mul(x, x)))) for x, y in points)


def check_birational_transfer(F: FieldSpec, a: int, b: int) -> VerificationReport:
    report = VerificationReport('birational_transfer')
    zeros = gamma_zeros(F, a, b)
    image = birational_transfer(F, a, zeros)
    hermitian = sorted(gamma_zeros(F, 0, b))
    report.check('gamma_size', len(zeros) == F.q ** 3)
    report.check('injective', len(set(image)) == len(image))
    report.check('onto_hermitian', image == hermitian)
    report.metadata.update(q=F.q, a=a, b=b, zeros=len(zeros))
    return report


def monomials(d: int) -> list[Monomial]:
    """Exponents (i, j, k) of x0^i x1^j x2^k with i + j + k = d, graded-lex."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def homogenized_gamma(F: FieldSpec, a: int, b: int) -> dict[Monomial, int]:
    """Gamma_{a,b} as a form in (x0, x1, x2) with x = x1/x0 and y = x2/x0."""
    q = F.q
    D = 2 * q if a else q + 1
    c = F.sub(b, F.frobenius(b))
    terms = Counter()
    terms[(D - q, 0, q)] = 1
    terms[(D - 1, 0, 1)] = F.neg(1)
    if a:
        terms[(0, 2 * q, 0)] = F.neg(F.frobenius(a))
        terms[(D - 2, 2, 0)] = a
    terms[(D - q - 1, q + 1, 0)] = c
    return {m: terms[m] for m in monomials(D) if terms[m]}


def bezout_guard(q: int) -> None:
    """Degree 2q curves share fewer than q^3 points unless they coincide."""
    if not 2 * q * (q + 1) < q ** 3:
        raise DomainError(f'2q(q+1) < q^3 fails for q = {q}')


def _monomial_value(F: FieldSpec, coords, exponents: Monomial) -> int:
    value = 1
    for c, k in zip(coords, exponents):
        if k:
            value = F.mul(value, F.pow(c, k))
    return value


@dataclass
class NullityResult:
    degree: int
    nullity: int
    basis: list[dict[Monomial, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            'degree': self.degree,
            'nullity': self.nullity,
            'basis': [[{'monomial': list(m), 'coefficient': c} for m, c in form.items()]
                      for form in self.basis],
        }


def interpolation_nullity(S: PointSet, d: int, max_columns: int | None = None) -> NullityResult:
    """Dimension of the degree-d forms vanishing on S, with a nullspace basis."""
    if d < 1:
        raise DomainError('the degree must be at least 1')
    if max_columns is None:
        max_columns = getattr(settings, 'UNITAL_LINALG_MAX_COLUMNS', DEFAULT_LINALG_MAX_COLUMNS)
    ncols = comb(d + 2, 2)
    if ncols > max_columns:
        raise BoundExceededError(f'{ncols} monomials of degree {d} exceed the bound {max_columns}')
    F = S.field
    columns = monomials(d)
    rows = [[_monomial_value(F, P, m) for m in columns] for P in S.coords()]
    basis = nullspace(F, rows, ncols)
    logger.debug('degree %d: %d points, %d monomials, nullity %d', d, len(rows), ncols, len(basis))
    forms = [{m: c for m, c in zip(columns, vector) if c} for vector in basis]
    return NullityResult(d, len(basis), forms)


def check_minimal_degree(F: FieldSpec, a: int, b: int, degrees=None) -> VerificationReport:
    """No curve of degree below deg Gamma_{a,b} contains U_{a,b}; at deg Gamma the
    only one is Gamma_{a,b} itself."""
    started = time.perf_counter()
    q = F.q
    bezout_guard(q)
    curve = CurveSpec(F, a, b)
    top = curve.degree
    if degrees is None:
        degrees = range(q + 1, top + 1)
    unital = construct_bm(F, a, b)
    report = VerificationReport('minimal_degree')
    report.check('contains_unital', gamma_contains(F, a, b, unital) == 1)
    expected = homogenized_gamma(F, a, b)
    nullities = {}
    for d in degrees:
        result = interpolation_nullity(unital, d)
        nullities[d] = result.nullity
        if d < top:
            report.check('no_lower_degree_curve', result.nullity == 0, {'degree': d, 'nullity': result.nullity})
        elif d == top:
            report.check('unique_curve', result.nullity == 1, {'degree': d, 'nullity': result.nullity})
            if result.nullity == 1:
                columns = monomials(d)
                found = [result.basis[0].get(m, 0) for m in columns]
                wanted = [expected.get(m, 0) for m in columns]
                report.check('matches_gamma', proportional(F, found, wanted))
    report.metadata.update(curve.to_json(), q=q, nullities=nullities)
    report.elapsed = time.perf_counter() - started
    logger.info('minimal degree check (q=%d, a=%d, b=%d): %s %s', q, a, b, report.verdict, nullities)
    return report
