"""The collineations alpha_{u,v} and beta_lambda of the parabola plane A_a.

alpha_{u,v}: (x, y) -> (x + u, y - 2aux + u^q(b - b^q)x + v) for (u, v) on
the curve y^q - y + a^q x^{2q} - ax^2 + (b - b^q)x^{q+1} = 0, and
beta_lambda: (x, y) -> (lambda x, lambda^2 y) for lambda in GF(q)*. Both
preserve that curve, which is where the Hermitian unital lives in A_a.
Elements are realized as numpy permutations of the q^4 affine points,
indexed x * q^2 + y.
"""
from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable

import numpy as np
from django.conf import settings

from .curves import gamma_eval, gamma_zeros
from .exceptions import BoundExceededError, DomainError
from .gf import FieldSpec
from .report import VerificationReport
from .unitals import ebert_check

logger = logging.getLogger(__name__)

DEFAULT_GROUP_MAX_Q = 5


class AffinityKind(str, Enum):
    ALPHA = 'alpha'
    BETA = 'beta'
    COMPOSITE = 'composite'


@dataclass(frozen=True)
class ModelAffinity:
    field: FieldSpec
    a: int
    b: int
    kind: AffinityKind
    u: int = 0
    v: int = 0
    lam: int = 1
    permutation: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def alpha(cls, F: FieldSpec, a: int, b: int, u: int, v: int, check: bool = True) -> ModelAffinity:
        if check and gamma_eval(F, F.neg(a), b, u, v) != 0:
            raise DomainError(f'({u}, {v}) is not on the invariant curve')
        return cls(F, a, b, AffinityKind.ALPHA, u=u, v=v)

    @classmethod
    def beta(cls, F: FieldSpec, a: int, b: int, lam: int) -> ModelAffinity:
        if not lam or not F.in_subfield(lam):
            raise DomainError(f'lambda = {lam} must lie in GF({F.q})*')
        return cls(F, a, b, AffinityKind.BETA, lam=lam)

    @classmethod
    def composite(cls, F: FieldSpec, a: int, b: int, permutation: np.ndarray) -> ModelAffinity:
        return cls(F, a, b, AffinityKind.COMPOSITE, permutation=tuple(int(i) for i in permutation))

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return apply(self, x, y)

    def to_json(self) -> dict:
        if self.kind == AffinityKind.ALPHA:
            return {'kind': self.kind.value, 'u': self.u, 'v': self.v}
        if self.kind == AffinityKind.BETA:
            return {'kind': self.kind.value, 'lambda': self.lam}
        return {'kind': self.kind.value}


def apply(f: ModelAffinity, x: int, y: int) -> tuple[int, int]:
    F = f.field
    if f.kind == AffinityKind.ALPHA:
        c = F.sub(f.b, F.frobenius(f.b))
        slope = F.sub(F.mul(F.frobenius(f.u), c), F.mul(F.scalar(2), F.mul(f.a, f.u)))
        return F.add(x, f.u), F.add(F.add(y, F.mul(slope, x)), f.v)
    if f.kind == AffinityKind.BETA:
        return F.mul(f.lam, x), F.mul(F.mul(f.lam, f.lam), y)
    image = f.permutation[x * F.qsq + y]
    return divmod(image, F.qsq)


def preserves(f: Callable[[int, int], tuple[int, int]], points: Iterable[tuple[int, int]]) -> bool:
    """f maps the finite affine set ``points`` onto itself."""
    points = set(points)
    return {f(x, y) for x, y in points} == points


def commutator_form(F: FieldSpec, b: int, u: int, u2: int) -> int:
    """(b - b^q)(u^q u' - u'^q u): alpha_{u,v} and alpha_{u',v'} commute iff it vanishes."""
    c = F.sub(b, F.frobenius(b))
    return F.mul(c, F.sub(F.mul(F.frobenius(u), u2), F.mul(F.frobenius(u2), u)))


def invariant_points(F: FieldSpec, a: int, b: int) -> list[tuple[int, int]]:
    """Affine points of the curve preserved by the group: Gamma_{-a,b}."""
    return sorted(gamma_zeros(F, F.neg(a), b))


class _Tables:
    """Addition and multiplication tables for vectorized permutations."""

    def __init__(self, F: FieldSpec):
        elements = list(F.elements())
        self.add = np.array([[F.add(x, y) for y in elements] for x in elements], dtype=np.int64)
        self.mul = np.array([[F.mul(x, y) for y in elements] for x in elements], dtype=np.int64)
        N = F.qsq
        index = np.arange(N * N, dtype=np.int64)
        self.x, self.y = np.divmod(index, N)
        self.N = N

    def alpha(self, F: FieldSpec, a: int, b: int, u: int, v: int) -> np.ndarray:
        c = F.sub(b, F.frobenius(b))
        slope = F.sub(F.mul(F.frobenius(u), c), F.mul(F.scalar(2), F.mul(a, u)))
        x = self.add[self.x, u]
        y = self.add[self.add[self.y, self.mul[slope, self.x]], v]
        return x * self.N + y

    def beta(self, F: FieldSpec, lam: int) -> np.ndarray:
        x = self.mul[lam, self.x]
        y = self.mul[F.mul(lam, lam), self.y]
        return x * self.N + y


def compose(p: np.ndarray, r: np.ndarray) -> np.ndarray:
    """p after r."""
    return p[r]


def _order(perm: np.ndarray) -> int:
    identity = np.arange(len(perm))
    power, k = perm, 1
    while not np.array_equal(power, identity):
        power = compose(perm, power)
        k += 1
    return k


def _closure(generators: list[np.ndarray], cap: int) -> dict[bytes, np.ndarray]:
    """Breadth-first closure of the generated group, refusing to grow past cap."""
    identity = np.arange(len(generators[0]), dtype=np.int64)
    seen = {identity.tobytes(): identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for h in generators:
            product = compose(h, g)
            key = product.tobytes()
            if key not in seen:
                if len(seen) >= cap:
                    raise BoundExceededError(f'group closure exceeded {cap} elements')
                seen[key] = product
                queue.append(product)
    return seen


@dataclass
class GroupData:
    translations: dict[tuple[int, int], np.ndarray]
    homotheties: dict[int, np.ndarray]
    invariant: list[tuple[int, int]]
    mask: np.ndarray = field(repr=False)


def _group_data(F: FieldSpec, a: int, b: int) -> GroupData:
    tables = _Tables(F)
    invariant = invariant_points(F, a, b)
    translations = {(u, v): tables.alpha(F, a, b, u, v) for u, v in invariant}
    homotheties = {lam: tables.beta(F, lam) for lam in F.subfield if lam}
    mask = np.zeros(F.qsq ** 2, dtype=bool)
    mask[[x * F.qsq + y for x, y in invariant]] = True
    return GroupData(translations, homotheties, invariant, mask)


def _check_bounds(F: FieldSpec, a: int, b: int, max_q: int | None):
    if max_q is None:
        max_q = getattr(settings, 'UNITAL_GROUP_MAX_Q', DEFAULT_GROUP_MAX_Q)
    if F.q > max_q:
        raise BoundExceededError(f'group verification is limited to q <= {max_q}')
    if F.in_subfield(b) and not ebert_check(F, a, b):
        raise DomainError('needs b outside GF(q) or an Ebert-valid pair')


def _preserves_mask(perm: np.ndarray, mask: np.ndarray) -> bool:
    return bool(mask[perm[mask]].all())


def verify_preservation(F: FieldSpec, a: int, b: int, max_q: int | None = None) -> VerificationReport:
    """Every element of the group generated by the alphas and betas maps the
    invariant curve onto itself."""
    _check_bounds(F, a, b, max_q)
    data = _group_data(F, a, b)
    generators = list(data.translations.values()) + list(data.homotheties.values())
    elements = _closure(generators, 2 * F.q ** 3 * (F.q - 1))
    report = VerificationReport('preservation')
    for perm in elements.values():
        report.check('preserves_curve', _preserves_mask(perm, data.mask))
    report.metadata.update(q=F.q, a=a, b=b, elements=len(elements), curve_points=len(data.invariant))
    return report


def verify_group_structure(F: FieldSpec, a: int, b: int, max_q: int | None = None) -> VerificationReport:
    """S = {alpha_{u,v}} has order q^3, R = {beta_lambda} is cyclic of order
    q - 1, S is normal and <S, R> = S x| R has order q^3(q - 1)."""
    started = time.perf_counter()
    _check_bounds(F, a, b, max_q)
    q = F.q
    data = _group_data(F, a, b)
    report = VerificationReport('group_structure')
    N2 = F.qsq ** 2
    identity = np.arange(N2, dtype=np.int64)

    S = {perm.tobytes(): params for params, perm in data.translations.items()}
    report.check('S_order', len(data.translations) == q ** 3)
    report.check('S_faithful', len(S) == len(data.translations))
    report.check('S_identity', identity.tobytes() in S)
    perms = list(data.translations.items())
    witness = None
    for (p1, g1) in perms:
        for (p2, g2) in perms:
            report.check('S_closed', compose(g1, g2).tobytes() in S, {'alpha': [p1, p2]})
            if witness is None and not np.array_equal(compose(g1, g2), compose(g2, g1)):
                witness = (p1, p2)
    c = F.sub(b, F.frobenius(b))
    report.check('S_non_abelian', (witness is not None) == (c != 0))
    if witness is not None:
        (u, v), (u2, v2) = witness
        form = commutator_form(F, b, u, u2)
        report.check('commutator_form', form != 0)
        report.metadata['commutator_witness'] = {'alpha': [[u, v], [u2, v2]], 'form': form}

    R = {perm.tobytes(): lam for lam, perm in data.homotheties.items()}
    report.check('R_order', len(R) == q - 1)
    orders = {lam: _order(perm) for lam, perm in data.homotheties.items()}
    report.check('R_cyclic', max(orders.values()) == q - 1)
    report.check('S_meets_R_trivially', set(S) & set(R) == {identity.tobytes()})

    for lam, beta in data.homotheties.items():
        beta_inv = np.argsort(beta)
        for params, alpha in perms:
            conjugate = compose(beta, compose(alpha, beta_inv))
            report.check('S_normal', conjugate.tobytes() in S, {'beta': lam, 'alpha': params})

    generators = [g for _, g in perms] + list(data.homotheties.values())
    cap = 2 * q ** 3 * (q - 1)
    elements = _closure(generators, cap)
    report.check('G_order', len(elements) == q ** 3 * (q - 1))
    for perm in elements.values():
        report.check('preserves_curve', _preserves_mask(perm, data.mask))

    report.metadata.update(q=q, a=a, b=b, orders={'S': len(S), 'R': len(R), 'G': len(elements)},
                           abelian=witness is None)
    report.elapsed = time.perf_counter() - started
    logger.info('group structure (q=%d, a=%d, b=%d): |S|=%d |R|=%d |G|=%d %s', q, a, b,
                len(S), len(R), len(elements), report.verdict)
    return report
