"""Affine planes on the points of AG(2,q^2) whose non-vertical lines are graphs.

Every model here has lines x = k and y = G(x) + mx + d for a fixed graph
part G: G = 0 gives the standard plane, G(x) = ax^2 the parabola plane and
G(x) = [B-T bracket]eps + bx^{q+1} the epsilon plane. The closure adds one
point at infinity per slope m, shared with the ambient point (0, 1, m), the
vertical direction Y_inf and the line at infinity.
"""
from __future__ import annotations

import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .exceptions import DomainError
from .gf import FieldSpec
from .pg import PointSet, Y_INF, affine_key, decode_key, point_key
from .report import VerificationReport
from .unitals import bt_bracket

logger = logging.getLogger(__name__)

EXHAUSTIVE_PAIRS_MAX_Q = 3
DEFAULT_PAIR_SAMPLES = 10 ** 4

AffineMap = Callable[[int, int], tuple[int, int]]


class PointKind(str, Enum):
    AFFINE = 'affine'
    DIRECTION = 'direction'
    VERTICAL = 'vertical'


class LineKind(str, Enum):
    VERTICAL = 'vertical'
    CURVE = 'curve'
    INFINITY = 'infinity'


@dataclass(frozen=True, order=True)
class ModelPoint:
    kind: PointKind
    x: int = 0
    y: int = 0

    @classmethod
    def affine(cls, x: int, y: int) -> ModelPoint:
        return cls(PointKind.AFFINE, x, y)

    @classmethod
    def direction(cls, m: int) -> ModelPoint:
        return cls(PointKind.DIRECTION, m)

    @classmethod
    def inf_vertical(cls) -> ModelPoint:
        return cls(PointKind.VERTICAL)

    @classmethod
    def from_key(cls, F: FieldSpec, key: int) -> ModelPoint:
        x0, x1, x2 = decode_key(F, key)
        if x0:
            return cls.affine(x1, x2)
        return cls.direction(x2) if x1 else cls.inf_vertical()

    @property
    def is_affine(self) -> bool:
        return self.kind == PointKind.AFFINE

    def key(self, F: FieldSpec) -> int:
        if self.kind == PointKind.AFFINE:
            return affine_key(F, self.x, self.y)
        if self.kind == PointKind.DIRECTION:
            return point_key(F, (0, 1, self.x))
        return point_key(F, Y_INF)

    def to_json(self) -> dict:
        if self.kind == PointKind.AFFINE:
            return {'kind': self.kind.value, 'x': self.x, 'y': self.y}
        if self.kind == PointKind.DIRECTION:
            return {'kind': self.kind.value, 'm': self.x}
        return {'kind': self.kind.value}


@dataclass(frozen=True, order=True)
class ModelLine:
    kind: LineKind
    m: int = 0
    d: int = 0

    @classmethod
    def vertical(cls, k: int) -> ModelLine:
        return cls(LineKind.VERTICAL, k)

    @classmethod
    def curve(cls, m: int, d: int) -> ModelLine:
        return cls(LineKind.CURVE, m, d)

    @classmethod
    def at_infinity(cls) -> ModelLine:
        return cls(LineKind.INFINITY)

    def to_json(self) -> dict:
        if self.kind == LineKind.VERTICAL:
            return {'kind': self.kind.value, 'k': self.m}
        if self.kind == LineKind.CURVE:
            return {'kind': self.kind.value, 'm': self.m, 'd': self.d}
        return {'kind': self.kind.value}


class PlaneModel:
    """The standard affine plane AG(2,q^2) and base class of the graph models."""
    name = 'standard'

    def __init__(self, field: FieldSpec):
        self.field = field
        self.graph = tuple(self.graph_part(x) for x in field.elements())
        self._lines = None

    def graph_part(self, x: int) -> int:
        return 0

    def to_standard(self, x: int, y: int) -> tuple[int, int]:
        """Affine map carrying Curve(m, d) onto the ambient line y = mx + d."""
        return x, self.field.sub(y, self.graph[x])

    def from_standard(self, x: int, y: int) -> tuple[int, int]:
        return x, self.field.add(y, self.graph[x])

    def parameters(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {'model': self.name, **self.parameters()}

    def __repr__(self):
        params = ', '.join(f'{k}={v}' for k, v in self.parameters().items())
        return f'{type(self).__name__}(GF({self.field.qsq}){", " if params else ""}{params})'

    def describe_line(self, L: ModelLine) -> dict:
        return {**self.to_json(), 'line': L.to_json()}

    def all_lines(self) -> list[ModelLine]:
        """Verticals by k, curves by (m, d), then the line at infinity."""
        elements = self.field.elements()
        lines = [ModelLine.vertical(k) for k in elements]
        lines += [ModelLine.curve(m, d) for m in elements for d in elements]
        lines.append(ModelLine.at_infinity())
        return lines

    def line_points(self, L: ModelLine) -> list[ModelPoint]:
        F = self.field
        if L.kind == LineKind.VERTICAL:
            points = [ModelPoint.affine(L.m, y) for y in F.elements()]
            return points + [ModelPoint.inf_vertical()]
        if L.kind == LineKind.CURVE:
            points = [ModelPoint.affine(x, F.add(F.add(self.graph[x], F.mul(L.m, x)), L.d))
                      for x in F.elements()]
            return points + [ModelPoint.direction(L.m)]
        return [ModelPoint.direction(m) for m in F.elements()] + [ModelPoint.inf_vertical()]

    def line_keys(self, L: ModelLine) -> tuple[int, ...]:
        return tuple(sorted(P.key(self.field) for P in self.line_points(L)))

    def lines(self) -> tuple[tuple[ModelLine, tuple[int, ...]], ...]:
        """Every line of the closure with its sorted ambient point keys."""
        if self._lines is None:
            started = time.perf_counter()
            self._lines = tuple((L, self.line_keys(L)) for L in self.all_lines())
            logger.info('enumerated %r: %d lines in %.2fs', self, len(self._lines),
                        time.perf_counter() - started)
        return self._lines

    def contains(self, L: ModelLine, P: ModelPoint) -> bool:
        F = self.field
        if L.kind == LineKind.INFINITY:
            return not P.is_affine
        if L.kind == LineKind.VERTICAL:
            return P.kind == PointKind.VERTICAL or (P.is_affine and P.x == L.m)
        if P.kind == PointKind.DIRECTION:
            return P.x == L.m
        if not P.is_affine:
            return False
        return P.y == F.add(F.add(self.graph[P.x], F.mul(L.m, P.x)), L.d)

    def line_through(self, P: ModelPoint, R: ModelPoint) -> ModelLine:
        """The unique line joining two distinct points of the closure."""
        if P == R:
            raise DomainError('a line needs two distinct points')
        F = self.field
        if not P.is_affine and not R.is_affine:
            return ModelLine.at_infinity()
        if not P.is_affine:
            P, R = R, P
        if R.kind == PointKind.VERTICAL or (R.is_affine and R.x == P.x):
            return ModelLine.vertical(P.x)
        eta_p = F.sub(P.y, self.graph[P.x])
        if R.kind == PointKind.DIRECTION:
            m = R.x
        else:
            eta_r = F.sub(R.y, self.graph[R.x])
            m = F.div(F.sub(eta_p, eta_r), F.sub(P.x, R.x))
        return ModelLine.curve(m, F.sub(eta_p, F.mul(m, P.x)))

    def points(self) -> list[ModelPoint]:
        F = self.field
        points = [ModelPoint.affine(x, y) for x in F.elements() for y in F.elements()]
        points += [ModelPoint.direction(m) for m in F.elements()]
        return points + [ModelPoint.inf_vertical()]


StandardPlane = PlaneModel


class ParabolaPlane(PlaneModel):
    """Lines x = k and the parabolas y = ax^2 + mx + d."""
    name = 'A_a'

    def __init__(self, field: FieldSpec, a: int):
        self.a = field.check(a)
        super().__init__(field)

    def graph_part(self, x: int) -> int:
        return self.field.mul(self.a, self.field.mul(x, x))

    def parameters(self) -> dict:
        return {'a': self.a}


class EpsilonPlane(PlaneModel):
    """Lines x = k and the curves y = [B-T bracket]eps + bx^{q+1} + mx + d."""
    name = 'A_eps'

    def __init__(self, field: FieldSpec, eps: int, b: int):
        if field.p != 2 or field.e <= 1 or field.e % 2 == 0:
            raise DomainError('the epsilon plane needs q = 2^e with e > 1 odd')
        if field.in_subfield(b):
            raise DomainError(f'b = {field.format(b)} must lie outside GF({field.q})')
        self.eps = field.check(eps)
        self.b = field.check(b)
        super().__init__(field)

    def graph_part(self, x: int) -> int:
        F = self.field
        return F.add(F.mul(bt_bracket(F, self.eps, x), self.eps), F.mul(self.b, F.rel_norm(x)))

    def parameters(self) -> dict:
        return {'epsilon': self.eps, 'b': self.b}


def phi_map(F: FieldSpec, a: int, x: int, y: int) -> tuple[int, int]:
    """(x, y) -> (x, y - ax^2)."""
    return x, F.sub(y, F.mul(a, F.mul(x, x)))


def phi_inv(F: FieldSpec, a: int, x: int, y: int) -> tuple[int, int]:
    return x, F.add(y, F.mul(a, F.mul(x, x)))


def gamma_map(F: FieldSpec, eps: int, b: int, x: int, y: int) -> tuple[int, int]:
    """Add [B-T bracket]eps + bx^{q+1} to y; an involution in characteristic 2."""
    if F.p != 2 or F.e <= 1 or F.e % 2 == 0:
        raise DomainError('gamma needs q = 2^e with e > 1 odd')
    shift = F.add(F.mul(bt_bracket(F, eps, x), eps), F.mul(b, F.rel_norm(x)))
    return x, F.add(y, shift)


def apply_to_set(mapping: AffineMap, S: PointSet) -> PointSet:
    """Map the affine points of S; points at infinity are kept."""
    F = S.field
    N = F.qsq
    start = N * N
    keys = []
    for k in S:
        if k < start:
            keys.append(k)
        else:
            keys.append(affine_key(F, *mapping(*divmod(k - start, N))))
    return PointSet(F, keys)


def _sample_pairs(points: list, samples: int, seed: int) -> list[tuple]:
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < samples:
        i, j = rng.integers(0, len(points), size=2).tolist()
        if i != j:
            pairs.append((points[i], points[j]))
    return pairs


def _point_pairs(model: PlaneModel, exhaustive_max_q: int, samples: int, seed: int,
                 affine_only: bool = False) -> tuple[list[tuple], bool]:
    points = model.points()
    if affine_only:
        points = [P for P in points if P.is_affine]
    if model.field.q <= exhaustive_max_q:
        return [(P, R) for i, P in enumerate(points) for R in points[i + 1:]], True
    return _sample_pairs(points, samples, seed), False


def plane_axiom_check(model: PlaneModel, exhaustive_max_q: int = EXHAUSTIVE_PAIRS_MAX_Q,
                      samples: int = DEFAULT_PAIR_SAMPLES, seed: int = 0) -> VerificationReport:
    """Check that the closure of ``model`` is a projective plane of order q^2.

    Unique joining lines are established per point: the lines through P must
    cover every other point exactly once. The solver ``line_through`` is
    additionally checked on all point pairs for small q, else on a sample.
    """
    started = time.perf_counter()
    F = model.field
    n = F.qsq
    total = n * n + n + 1
    report = VerificationReport('plane_axiom_check')
    lines = model.lines()
    matrix = np.array([keys for _, keys in lines], dtype=np.int64)

    report.check('line_count', len(lines) == total)
    sizes = [len(set(keys)) for _, keys in lines]
    for (L, _), size in zip(lines, sizes):
        report.check('line_size', size == n + 1, {'line': model.describe_line(L), 'size': size})
    point_keys = np.unique(matrix)
    report.check('point_count', len(point_keys) == total)

    through = defaultdict(list)
    for row, (_, keys) in enumerate(lines):
        for k in keys:
            through[k].append(row)
    for k in point_keys.tolist():
        covered = matrix[through[k]].ravel()
        others = covered[covered != k]
        ok = len(others) == total - 1 and len(np.unique(others)) == total - 1
        report.check('unique_joining_lines', ok, {'point': ModelPoint.from_key(F, k).to_json()})

    pairs, exhaustive = _point_pairs(model, exhaustive_max_q, samples, seed)
    for P, R in pairs:
        L = model.line_through(P, R)
        ok = model.contains(L, P) and model.contains(L, R)
        report.check('line_through', ok, {'points': [P.to_json(), R.to_json()], 'line': L.to_json()})

    report.metadata.update(model.to_json(), q=F.q, points=len(point_keys), lines=len(lines),
                           pairs=len(pairs), exhaustive=exhaustive)
    report.elapsed = time.perf_counter() - started
    logger.info('plane_axiom_check %r: %s in %.2fs', model, report.verdict, report.elapsed)
    return report


def check_incidence_transfer(model: PlaneModel, mapping: AffineMap | None = None,
                             exhaustive_max_q: int = EXHAUSTIVE_PAIRS_MAX_Q,
                             samples: int = DEFAULT_PAIR_SAMPLES, seed: int = 0) -> VerificationReport:
    """Check that ``mapping`` (ambient to model) carries lines to model lines.

    For affine P, R the image of the ambient line PR must be the model line
    through the images of P and R. ``mapping`` defaults to the model's own
    ``from_standard``.
    """
    started = time.perf_counter()
    F = model.field
    mapping = mapping or model.from_standard
    standard = PlaneModel(F)
    report = VerificationReport('incidence_transfer')
    pairs, exhaustive = _point_pairs(standard, exhaustive_max_q, samples, seed, affine_only=True)
    for P, R in pairs:
        ambient = standard.line_through(P, R)
        image = apply_to_set(mapping, PointSet(F, standard.line_keys(ambient)))
        P2 = ModelPoint.affine(*mapping(P.x, P.y))
        R2 = ModelPoint.affine(*mapping(R.x, R.y))
        L = model.line_through(P2, R2)
        ok = tuple(image.keys) == model.line_keys(L)
        report.check('lines_preserved', ok, {'points': [P.to_json(), R.to_json()], 'line': L.to_json()})
    report.metadata.update(model.to_json(), q=F.q, pairs=len(pairs), exhaustive=exhaustive)
    report.elapsed = time.perf_counter() - started
    logger.info('incidence transfer into %r: %s', model, report.verdict)
    return report


def check_parallel_classes(model: PlaneModel) -> VerificationReport:
    """Curves of one slope partition the affine points."""
    F = model.field
    report = VerificationReport('parallel_classes')
    affine = set(range(F.qsq * F.qsq))
    for m in F.elements():
        seen = []
        for d in F.elements():
            seen.extend(P.x * F.qsq + P.y for P in model.line_points(ModelLine.curve(m, d)) if P.is_affine)
        report.check('partition', len(seen) == len(affine) and set(seen) == affine, {'m': m})
    report.metadata.update(model.to_json(), q=F.q)
    return report
