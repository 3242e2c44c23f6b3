"""Lift the classical unital onto the cone x0x2 = x1^2 of PG(3,q^2) and project
it from Q = (0, 0, 1, -a) onto the plane x2 = 0.

The image is the Buekenhout-Metz unital U_{a,b}. The plane x2 = 0 is read as
PG(2,q^2) through the coordinates (x0, x1, x3).
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass

from .exceptions import DomainError
from .gf import FieldSpec
from .pg import PointSet, ProjPoint2, ProjPoint3, Y_INF, normalize
from .report import VerificationReport
from .unitals import construct_bm, construct_hermitian
from .utils.parallel import chunked_map
from .verify import assert_unital

logger = logging.getLogger(__name__)

CONE_VERTEX_IMAGE = ProjPoint3((0, 0, 0, 1))


@dataclass(frozen=True)
class ConeConfig:
    field: FieldSpec
    a: int
    b: int

    def __post_init__(self):
        if self.field.in_subfield(self.b):
            raise DomainError(f'b = {self.field.format(self.b)} must lie outside GF({self.field.q})')

    @property
    def Q(self) -> ProjPoint3:
        return ProjPoint3((0, 0, 1, self.field.neg(self.a)))

    def to_json(self) -> dict:
        return {'a': self.a, 'b': self.b, 'Q': self.Q.to_json(), 'plane': 'x2=0'}


def lift(F: FieldSpec, b: int, P: ProjPoint2) -> ProjPoint3:
    """(1, t, bt^{q+1} + r) -> (1, t, t^2, bt^{q+1} + r) and Y_inf -> (0, 0, 0, 1)."""
    if P.coords == Y_INF:
        return CONE_VERTEX_IMAGE
    x0, t, y = P.coords
    if x0 != 1 or not F.in_subfield(F.sub(y, F.mul(b, F.rel_norm(t)))):
        raise DomainError(f'{P.coords} is not a point of the Hermitian unital')
    return ProjPoint3((1, t, F.mul(t, t), y))


def project(F: FieldSpec, a: int, X: ProjPoint3) -> ProjPoint2:
    """Meet the line QX with x2 = 0 and drop x2."""
    x0, x1, x2, x3 = X.coords
    if (x0, x1) == (0, 0) and x2 and F.div(x3, x2) == F.neg(a):
        raise DomainError('cannot project Q from itself')
    return normalize(F, (x0, x1, F.add(x3, F.mul(a, x2))))


def on_cone(F: FieldSpec, X: ProjPoint3) -> bool:
    x0, x1, x2, _ = X.coords
    return F.mul(x0, x2) == F.mul(x1, x1)


def collinear(F: FieldSpec, X: ProjPoint3, Y: ProjPoint3, Z: ProjPoint3) -> bool:
    """All 3x3 minors of the matrix with rows X, Y, Z vanish."""
    rows = (X.coords, Y.coords, Z.coords)
    for skip in range(4):
        cols = [c for c in range(4) if c != skip]
        (a, b, c), (d, e, f), (g, h, i) = ([row[k] for k in cols] for row in rows)
        det = F.sub(
            F.add(F.mul(a, F.sub(F.mul(e, i), F.mul(f, h))), F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))),
            F.mul(b, F.sub(F.mul(d, i), F.mul(f, g))),
        )
        if det:
            return False
    return True


def _secant_chunk(F: FieldSpec, points: list[ProjPoint3], Q: ProjPoint3, indices) -> list[list]:
    witnesses = []
    for i in indices:
        X = points[i]
        for Y in points[i + 1:]:
            if collinear(F, X, Y, Q):
                witnesses.append([X.to_json(), Y.to_json()])
    return witnesses


def cone_pipeline(F: FieldSpec, a: int, b: int, check_profile: bool = False,
                  jobs: int | None = None) -> VerificationReport:
    """Project the lifted Hermitian unital from Q and compare with U_{a,b}."""
    started = time.perf_counter()
    config = ConeConfig(F, a, b)
    q = F.q
    hermitian = construct_hermitian(F, b)
    lifted = [lift(F, b, P) for P in hermitian.points()]
    report = VerificationReport('cone_pipeline')
    report.check('on_cone', all(on_cone(F, X) for X in lifted))
    report.check('lift_injective', len(set(lifted)) == len(lifted))

    for witnesses in chunked_map(_secant_chunk, range(len(lifted)), F, lifted, config.Q, jobs=jobs):
        report.check('no_secant_through_Q', not witnesses)
        for witness in witnesses:
            report.add_witness({'secant_through_Q': witness})

    image = PointSet.from_points(F, (project(F, a, X) for X in lifted))
    expected = construct_bm(F, a, b)
    report.check('image_size', len(image) == q ** 3 + 1)
    report.check('image_is_bm_unital', image == expected)
    if check_profile:
        report.merge(assert_unital(image, jobs=jobs), prefix='image_profile')
    report.metadata.update(config.to_json(), q=q, image=list(image.keys), lifted=len(lifted))
    report.elapsed = time.perf_counter() - started
    logger.info('cone pipeline (q=%d, a=%d, b=%d): %s in %.2fs', q, a, b, report.verdict, report.elapsed)
    return report
