"""Points, lines and incidence in PG(2,q^2), and points of PG(3,q^2).

Coordinates are normalized so the first nonzero coordinate is 1. A
normalized point is packed into one integer key, x0*N^2 + x1*N + x2 with
N = q^2 (four digits in PG(3,q^2)); keys sort in the lexicographic order of
the normalized coordinates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from sortedcontainers import SortedSet

from .exceptions import DomainError
from .gf import FieldSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ProjPoint2:
    coords: tuple[int, int, int]

    def key(self, F: FieldSpec) -> int:
        x0, x1, x2 = self.coords
        return (x0 * F.qsq + x1) * F.qsq + x2

    @property
    def is_affine(self) -> bool:
        return self.coords[0] == 1

    def to_json(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True, order=True)
class ProjLine2:
    """The line a0*x0 + a1*x1 + a2*x2 = 0, coefficients normalized."""
    coeffs: tuple[int, int, int]

    @property
    def kind(self) -> str:
        a0, a1, a2 = self.coeffs
        if a1 == 0 and a2 == 0:
            return 'infinity'
        return 'vertical' if a2 == 0 else 'line'

    def to_json(self) -> dict:
        return {'kind': self.kind, 'coeffs': list(self.coeffs)}


@dataclass(frozen=True, order=True)
class ProjPoint3:
    coords: tuple[int, int, int, int]

    def key(self, F: FieldSpec) -> int:
        key = 0
        for c in self.coords:
            key = key * F.qsq + c
        return key

    def to_json(self) -> list[int]:
        return list(self.coords)


X_INF = (0, 1, 0)
Y_INF = (0, 0, 1)


def _normalized(F: FieldSpec, coords) -> tuple[int, ...]:
    coords = tuple(coords)
    for c in coords:
        if c:
            scale = F.inv(c)
            return tuple(F.mul(x, scale) for x in coords)
    raise DomainError('the zero vector is not a projective point')


def normalize(F: FieldSpec, coords) -> ProjPoint2 | ProjPoint3:
    """Scale by the inverse of the first nonzero coordinate."""
    coords = _normalized(F, coords)
    if len(coords) == 3:
        return ProjPoint2(coords)
    if len(coords) == 4:
        return ProjPoint3(coords)
    raise DomainError(f'expected 3 or 4 coordinates, got {len(coords)}')


def normalize_line(F: FieldSpec, coeffs) -> ProjLine2:
    return ProjLine2(_normalized(F, coeffs))


def point_key(F: FieldSpec, coords) -> int:
    """Key of a point given by already-normalized coordinates."""
    key = 0
    for c in coords:
        key = key * F.qsq + c
    return key


def affine_key(F: FieldSpec, x: int, y: int) -> int:
    N = F.qsq
    return (N + x) * N + y


def decode_key(F: FieldSpec, key: int, dimension: int = 2) -> tuple[int, ...]:
    coords = []
    for _ in range(dimension + 1):
        key, c = divmod(key, F.qsq)
        coords.append(c)
    return tuple(reversed(coords))


def is_point_key(F: FieldSpec, key: int, dimension: int = 2) -> bool:
    if not 0 < key < F.qsq ** (dimension + 1):
        return False
    for c in decode_key(F, key, dimension):
        if c:
            return c == 1
    return False


def line_through(F: FieldSpec, P: ProjPoint2, R: ProjPoint2) -> ProjLine2:
    if P == R:
        raise DomainError('a line needs two distinct points')
    p0, p1, p2 = P.coords
    r0, r1, r2 = R.coords
    cross = (
        F.sub(F.mul(p1, r2), F.mul(p2, r1)),
        F.sub(F.mul(p2, r0), F.mul(p0, r2)),
        F.sub(F.mul(p0, r1), F.mul(p1, r0)),
    )
    return normalize_line(F, cross)


def incident(F: FieldSpec, L: ProjLine2, P: ProjPoint2) -> bool:
    a0, a1, a2 = L.coeffs
    x0, x1, x2 = P.coords
    return F.add(F.add(F.mul(a0, x0), F.mul(a1, x1)), F.mul(a2, x2)) == 0


def line_keys(F: FieldSpec, L: ProjLine2) -> tuple[int, ...]:
    """Keys of the q^2+1 points of L, already normalized by construction."""
    a0, a1, a2 = L.coeffs
    N = F.qsq
    if a2:
        inv = F.neg(F.inv(a2))
        keys = [point_key(F, (0, 1, F.mul(a1, inv)))]
        keys += [affine_key(F, x, F.mul(F.add(a0, F.mul(a1, x)), inv)) for x in range(N)]
    elif a1:
        x = F.neg(F.div(a0, a1))
        keys = [point_key(F, Y_INF)] + [affine_key(F, x, y) for y in range(N)]
    else:
        keys = [point_key(F, Y_INF)] + [point_key(F, (0, 1, y)) for y in range(N)]
    return tuple(sorted(keys))


def points_on(F: FieldSpec, L: ProjLine2) -> list[ProjPoint2]:
    return [ProjPoint2(decode_key(F, k)) for k in line_keys(F, L)]


def all_point_coords(F: FieldSpec) -> Iterator[tuple[int, int, int]]:
    N = F.qsq
    yield Y_INF
    for y in range(N):
        yield (0, 1, y)
    for x in range(N):
        for y in range(N):
            yield (1, x, y)


def enumerate_plane(F: FieldSpec) -> tuple[list[ProjPoint2], list[ProjLine2]]:
    """All q^4+q^2+1 points and lines, each in lexicographic order."""
    points = [ProjPoint2(c) for c in all_point_coords(F)]
    lines = [ProjLine2(c) for c in all_point_coords(F)]
    logger.debug('enumerated PG(2,%d): %d points, %d lines', F.q, len(points), len(lines))
    return points, lines


@lru_cache(maxsize=8)
def standard_line_keys(F: FieldSpec) -> tuple[tuple[ProjLine2, tuple[int, ...]], ...]:
    _, lines = enumerate_plane(F)
    return tuple((L, line_keys(F, L)) for L in lines)


class PointSet:
    """Duplicate-free point set kept sorted by canonical key."""

    def __init__(self, field: FieldSpec, keys: Iterable[int] = (), dimension: int = 2):
        self.field = field
        self.dimension = dimension
        self.keys = SortedSet(keys)

    @classmethod
    def from_points(cls, field: FieldSpec, points: Iterable[ProjPoint2 | ProjPoint3]) -> PointSet:
        points = list(points)
        dimension = len(points[0].coords) - 1 if points else 2
        return cls(field, (P.key(field) for P in points), dimension)

    def __contains__(self, item) -> bool:
        if isinstance(item, (ProjPoint2, ProjPoint3)):
            item = item.key(self.field)
        return item in self.keys

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[int]:
        return iter(self.keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.field == other.field and self.dimension == other.dimension
                and self.keys == other.keys)

    def __repr__(self):
        return f'PointSet(GF({self.field.qsq}), {len(self)} points, dim={self.dimension})'

    def coords(self) -> list[tuple[int, ...]]:
        return [decode_key(self.field, k, self.dimension) for k in self.keys]

    def points(self) -> list[ProjPoint2 | ProjPoint3]:
        cls = ProjPoint2 if self.dimension == 2 else ProjPoint3
        return [cls(c) for c in self.coords()]

    def affine_part(self) -> list[tuple[int, int]]:
        """(x, y) for every point (1, x, y) of a planar set."""
        N = self.field.qsq
        start = N * N
        return [divmod(k - start, N) for k in self.keys if k >= start]

    def symmetric_difference(self, other: PointSet) -> list[int]:
        return sorted(self.keys ^ other.keys)
