"""Hermitian, Buekenhout-Metz and Buekenhout-Tits unitals of PG(2,q^2)."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from django.conf import settings

from .exceptions import BoundExceededError, DomainError, VerificationFailure
from .gf import SUBFIELD, FieldSpec, find_epsilon
from .pg import PointSet, Y_INF, affine_key, point_key
from .utils.parallel import chunked_map
from .verify import assert_unital

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATE_MAX_Q = 5
DEFAULT_CROSSCHECK_MAX_Q = 4


class UnitalKind(str, Enum):
    HERMITIAN = 'hermitian'
    BM = 'bm'
    BT = 'bt'


class PairClass(str, Enum):
    INVALID = 'invalid'
    CLASSICAL = 'classical'
    HSZ = 'hsz'
    BM_GENERAL = 'bm_general'


def _require_bt_field(F: FieldSpec):
    if F.p != 2 or F.e <= 1 or F.e % 2 == 0:
        raise DomainError('B-T unitals need q = 2^e with e > 1 odd')


@dataclass(frozen=True)
class UnitalSpec:
    kind: UnitalKind
    field: FieldSpec
    a: int = 0
    b: int = 0
    epsilon: int | None = None
    delta: int | None = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', UnitalKind(self.kind))
        if self.kind == UnitalKind.HERMITIAN and self.field.in_subfield(self.b):
            raise DomainError('the Hermitian unital needs b outside GF(q)')
        if self.kind == UnitalKind.BT:
            _require_bt_field(self.field)

    def to_json(self) -> dict:
        data = {'kind': self.kind.value}
        if self.kind == UnitalKind.BM:
            data.update(a=self.a, b=self.b)
        elif self.kind == UnitalKind.HERMITIAN:
            data['b'] = self.b
        else:
            data['epsilon'] = self.epsilon
            if self.delta is not None:
                data['delta'] = self.delta
        return data


def ebert_value(F: FieldSpec, a: int, b: int) -> int | None:
    """The quantity Ebert's condition inspects.

    Odd q: 4a^{q+1} + (b^q-b)^2. Even q: a^{q+1}/(b^q+b)^2, or None when b is
    in GF(q).
    """
    if F.is_even:
        t = F.rel_trace(b)
        if t == 0:
            return None
        value = F.div(F.rel_norm(a), F.mul(t, t))
        if not F.in_subfield(value):
            raise VerificationFailure('a^{q+1}/(b^q+b)^2 left GF(q)')
        return value
    diff = F.sub(F.frobenius(b), b)
    return F.add(F.mul(F.scalar(4), F.rel_norm(a)), F.mul(diff, diff))


def ebert_check(F: FieldSpec, a: int, b: int) -> bool:
    value = ebert_value(F, a, b)
    if F.is_even:
        return value is not None and F.abs_trace(value) == 0
    return not F.is_square(value, SUBFIELD)


def _unital_keys(F: FieldSpec, graph) -> PointSet:
    """{(1, x, graph(x) + r) : x in GF(q^2), r in GF(q)} with Y_inf."""
    keys = [point_key(F, Y_INF)]
    subfield = F.subfield
    for x in F.elements():
        base = graph(x)
        keys.extend(affine_key(F, x, F.add(base, r)) for r in subfield)
    return PointSet(F, keys)


def construct_bm(F: FieldSpec, a: int, b: int) -> PointSet:
    """U_{a,b} = {(1, x, ax^2 + bx^{q+1} + r)} with Y_inf; never rejects (a, b)."""
    return _unital_keys(F, lambda x: F.add(F.mul(a, F.mul(x, x)), F.mul(b, F.rel_norm(x))))


def construct_hermitian(F: FieldSpec, b: int) -> PointSet:
    if F.in_subfield(b):
        raise DomainError(f'b = {F.format(b)} must lie outside GF({F.q})')
    return construct_bm(F, 0, b)


def bt_bracket(F: FieldSpec, eps: int, x: int) -> int:
    """s^{sigma+2} + t^sigma + st with t = x^q + x and s = x + t*eps."""
    t = F.rel_trace(x)
    s = F.add(F.mul(t, eps), x)
    if not (F.in_subfield(s) and F.in_subfield(t)):
        raise VerificationFailure('B-T parameters s, t left GF(q)')
    s_term = F.mul(F.sigma(s), F.mul(s, s))
    return F.add(F.add(s_term, F.sigma(t)), F.mul(s, t))


def construct_bt_parametric(F: FieldSpec, eps: int) -> PointSet:
    """U_eps from {(1, s + t*eps, (s^{sigma+2} + t^sigma + st)eps + r) : r, s, t in GF(q)}."""
    _require_bt_field(F)
    keys = [point_key(F, Y_INF)]
    subfield = F.subfield
    for s in subfield:
        s_term = F.mul(F.sigma(s), F.mul(s, s))
        for t in subfield:
            x = F.add(s, F.mul(t, eps))
            base = F.mul(F.add(F.add(s_term, F.sigma(t)), F.mul(s, t)), eps)
            keys.extend(affine_key(F, x, F.add(base, r)) for r in subfield)
    return PointSet(F, keys)


def construct_bt(F: FieldSpec, eps: int | None = None) -> PointSet:
    """U_eps via the x-parameterization, checked against the (s, t) form."""
    _require_bt_field(F)
    if eps is None:
        eps, _ = find_epsilon(F)
    if F.add(F.frobenius(eps), eps) != 1:
        raise DomainError('epsilon must satisfy epsilon^q + epsilon = 1')
    unital = _unital_keys(F, lambda x: F.mul(bt_bracket(F, eps, x), eps))
    parametric = construct_bt_parametric(F, eps)
    if unital != parametric:
        raise VerificationFailure(
            f'B-T parameterizations differ in {len(unital.symmetric_difference(parametric))} points')
    return unital


def affine_part(S: PointSet) -> list[tuple[int, int]]:
    return S.affine_part()


def construct(spec: UnitalSpec) -> PointSet:
    if spec.kind == UnitalKind.HERMITIAN:
        return construct_hermitian(spec.field, spec.b)
    if spec.kind == UnitalKind.BM:
        return construct_bm(spec.field, spec.a, spec.b)
    return construct_bt(spec.field, spec.epsilon)


def classify(F: FieldSpec, a: int, b: int) -> PairClass:
    if not ebert_check(F, a, b):
        return PairClass.INVALID
    if a == 0:
        return PairClass.CLASSICAL
    if not F.is_even and F.in_subfield(b) and not F.in_subfield(F.pow(a, (F.q + 1) // 2)):
        return PairClass.HSZ
    return PairClass.BM_GENERAL


@dataclass(frozen=True)
class PairRecord:
    a: int
    b: int
    pair_class: PairClass
    unital: bool | None = None

    @property
    def consistent(self) -> bool:
        return self.unital is None or self.unital == (self.pair_class != PairClass.INVALID)


def classify_chunk(F: FieldSpec, crosscheck: bool, pairs) -> list[PairRecord]:
    records = []
    for a, b in pairs:
        unital = assert_unital(construct_bm(F, a, b), jobs=1).passed if crosscheck else None
        records.append(PairRecord(a, b, classify(F, a, b), unital))
    return records


def enumerate_pairs(F: FieldSpec, max_q: int | None = None, crosscheck_max_q: int | None = None,
                    jobs: int | None = None, strict: bool = False) -> list[PairRecord]:
    """Classify all q^4 pairs (a, b); for small q also test each U_{a,b}.

    With ``strict``, a pair whose class disagrees with its cross-check raises VerificationFailure.
    """
    if max_q is None:
        max_q = getattr(settings, 'UNITAL_ENUMERATE_MAX_Q', DEFAULT_ENUMERATE_MAX_Q)
    if crosscheck_max_q is None:
        crosscheck_max_q = getattr(settings, 'UNITAL_CROSSCHECK_MAX_Q', DEFAULT_CROSSCHECK_MAX_Q)
    if F.q > max_q:
        raise BoundExceededError(f'pair enumeration is limited to q <= {max_q}')
    crosscheck = F.q <= crosscheck_max_q
    pairs = [(a, b) for a in F.elements() for b in F.elements()]
    records = [r for chunk in chunked_map(classify_chunk, pairs, F, crosscheck, jobs=jobs) for r in chunk]
    inconsistent = sum(1 for r in records if not r.consistent)
    logger.info('classified %d pairs at q=%d (crosscheck=%s, inconsistent=%d)',
                len(records), F.q, crosscheck, inconsistent)
    if strict and inconsistent:
        first = next(r for r in records if not r.consistent)
        raise VerificationFailure(
            f'{inconsistent} pairs disagree with the cross-check, first (a, b) = ({first.a}, {first.b})')
    return records
