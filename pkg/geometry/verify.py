"""Intersection profiles and unital verification in any plane model."""
from __future__ import annotations

import logging
import time
from collections import Counter
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .exceptions import DomainError
from .gf import FieldSpec
from .pg import PointSet, is_point_key, standard_line_keys
from .report import MAX_WITNESSES, VerificationReport
from .utils.parallel import chunked_map

logger = logging.getLogger(__name__)

Lines = Sequence[tuple[Any, tuple[int, ...]]]


def _describe(descriptor) -> Any:
    return descriptor.to_json() if hasattr(descriptor, 'to_json') else descriptor


@lru_cache(maxsize=8)
def line_matrix(lines: tuple) -> np.ndarray:
    """Point keys of every line as one (lines x points-per-line) array."""
    return np.array([keys for _, keys in lines], dtype=np.int64)


def _count_rows(matrix: np.ndarray, mask: np.ndarray, rows) -> np.ndarray:
    return mask[matrix[np.asarray(rows)]].sum(axis=1)


def intersection_profile(S: PointSet, lines: Lines, jobs: int | None = None,
                         name: str = 'intersection_profile') -> VerificationReport:
    """Histogram of |L n S| over the given lines.

    The verdict passes exactly when every intersection has 1 or q+1 points.
    """
    F = S.field
    bad = next((k for k in S if not is_point_key(F, k)), None)
    if bad is not None:
        raise DomainError(f'key {bad} is not a point of PG(2,{F.qsq})')
    started = time.perf_counter()
    lines = tuple(lines)
    matrix = line_matrix(lines)
    mask = np.zeros(F.qsq ** 3, dtype=bool)
    mask[np.fromiter(S.keys, dtype=np.int64, count=len(S))] = True
    sizes = np.concatenate(chunked_map(_count_rows, range(len(lines)), matrix, mask, jobs=jobs))

    allowed = {1, F.q + 1}
    report = VerificationReport(name)
    profile, kinds = Counter(), Counter()
    for (descriptor, _), size in zip(lines, sizes.tolist()):
        profile[size] += 1
        kind = getattr(descriptor, 'kind', 'line')
        kinds[(getattr(kind, 'value', kind), size)] += 1
        if size not in allowed and len(report.witnesses) < MAX_WITNESSES:
            report.add_witness({'line': _describe(descriptor), 'size': size})
    report.profile = dict(sorted(profile.items()))
    report.kind_profile = dict(sorted(kinds.items()))
    report.check('two_character', set(profile) <= allowed)
    report.metadata.update(q=F.q, points=len(S), lines=len(lines))
    report.elapsed = time.perf_counter() - started
    return report


def count_pairs_on_lines(profile: dict[int, int]) -> int:
    """Point pairs covered by the lines of a profile, sum of count*C(k,2)."""
    return sum(count * size * (size - 1) // 2 for size, count in profile.items())


def assert_unital(S: PointSet, model=None, jobs: int | None = None) -> VerificationReport:
    """Check that S is a unital of the plane ``model`` (default PG(2,q^2))."""
    F = S.field
    q = F.q
    if len(S) != q ** 3 + 1:
        raise DomainError(f'a unital has {q ** 3 + 1} points, got {len(S)}')
    lines = model.lines() if model is not None else standard_line_keys(F)
    report = intersection_profile(S, lines, jobs=jobs, name='assert_unital')
    profile = report.profile
    report.check('tangents', profile.get(1, 0) == q ** 3 + 1)
    report.check('secants', profile.get(q + 1, 0) == q ** 4 - q ** 3 + q ** 2)
    report.check('pair_count', count_pairs_on_lines(profile) == len(S) * (len(S) - 1) // 2)
    report.metadata['model'] = model.name if model is not None else 'standard'
    logger.debug('assert_unital on %s (q=%d): %s %s', report.metadata['model'], q, report.verdict, profile)
    return report


# --- the affine Hermitian curve y^q - y + (b - b^q) x^{q+1} = 0 -----------

def _require_nonsubfield(F: FieldSpec, b: int):
    if F.in_subfield(b):
        raise DomainError(f'b = {F.format(b)} must lie outside GF({F.q})')


def hermitian_eval(F: FieldSpec, b: int, x: int, y: int) -> int:
    c = F.sub(b, F.frobenius(b))
    return F.add(F.sub(F.frobenius(y), y), F.mul(c, F.rel_norm(x)))


def hermitian_points(F: FieldSpec, b: int) -> list[tuple[int, int]]:
    """The q^3 affine points of the Hermitian curve, sorted."""
    _require_nonsubfield(F, b)
    c = F.sub(b, F.frobenius(b))
    fibres: dict[int, list[int]] = {}
    for y in F.elements():
        fibres.setdefault(F.sub(F.frobenius(y), y), []).append(y)
    points = []
    for x in F.elements():
        target = F.neg(F.mul(c, F.rel_norm(x)))
        points.extend((x, y) for y in fibres.get(target, ()))
    return sorted(points)


def _parabola_lhs(F: FieldSpec, a: int, c: int, m: int, x: int) -> int:
    """a^q x^{2q} + (b-b^q) x^{q+1} + m^q x^q - a x^2 - m x."""
    xq = F.frobenius(x)
    ax2 = F.mul(a, F.mul(x, x))
    mx = F.mul(m, x)
    value = F.add(F.frobenius(ax2), F.mul(c, F.mul(x, xq)))
    value = F.add(value, F.frobenius(mx))
    return F.sub(value, F.add(ax2, mx))


def parabola_hermitian_count(F: FieldSpec, a: int, b: int, m: int, d: int) -> int:
    """Number of affine points shared by y = ax^2+mx+d and the Hermitian curve.

    Counts the roots x of a^q x^{2q} + (b-b^q)x^{q+1} + m^q x^q - a x^2 - m x
    + d^q - d; each root gives exactly one point of the parabola.
    """
    _require_nonsubfield(F, b)
    c = F.sub(b, F.frobenius(b))
    target = F.sub(d, F.frobenius(d))
    return sum(1 for x in F.elements() if _parabola_lhs(F, a, c, m, x) == target)


def parabola_counts_for_slope(F: FieldSpec, a: int, b: int, m: int) -> list[int]:
    """parabola_hermitian_count for every d at once, indexed by d."""
    _require_nonsubfield(F, b)
    c = F.sub(b, F.frobenius(b))
    histogram = Counter(_parabola_lhs(F, a, c, m, x) for x in F.elements())
    return [histogram.get(F.sub(d, F.frobenius(d)), 0) for d in F.elements()]


def tangent_parabola(F: FieldSpec, a: int, b: int, w: int, z: int) -> tuple[int, int]:
    """(m, d) of the parabola y = ax^2+mx+d tangent to the curve at (w, z).

    m = -2aw + (b-b^q) w^q and d = z^q + aw^2, so that x = w gives y = z.
    """
    if hermitian_eval(F, b, w, z) != 0:
        raise DomainError(f'({F.format(w)}, {F.format(z)}) is not on the Hermitian curve')
    c = F.sub(b, F.frobenius(b))
    two_a_w = F.mul(F.scalar(2), F.mul(a, w))
    m = F.sub(F.mul(c, F.frobenius(w)), two_a_w)
    d = F.add(F.frobenius(z), F.mul(a, F.mul(w, w)))
    return m, d
