"""GF(q^2) arithmetic on canonical integer encodings.

Only GF(q^2) = GF(p^{2e}) is materialized. GF(q) and GF(p) live inside it
and are recognized by x^q = x and x^p = x. An element is stored as the
integer sum(c_i * p^i) of its coefficients in the polynomial basis
1, t, t^2, ... modulo the field's modulus.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

from django.conf import settings

from .exceptions import (
    BoundExceededError, DomainError, FieldBoundError, FieldConstructionError,
    VerificationFailure,
)
from .utils import polynomials as poly

logger = logging.getLogger(__name__)

DEFAULT_MAX_FIELD = 2 ** 20
DEFAULT_TABLE_LIMIT = 2 ** 16
AXIOM_CHECK_LIMIT = 81

FULL_FIELD = 'full_field'
SUBFIELD = 'subfield'


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises FieldConstructionError if q is no prime power."""
    factors = prime_factors(q) if q > 1 else []
    if len(factors) != 1:
        raise FieldConstructionError(f'{q} is not a prime power')
    p, e = factors[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def canonical_modulus(p: int, n: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree n over GF(p).

    Coefficients are compared from the constant term upward.
    """
    for coeffs in itertools.product(range(p), repeat=n):
        candidate = list(coeffs) + [1]
        if poly.is_irreducible(candidate, p):
            return candidate
    raise FieldConstructionError(f'no irreducible polynomial of degree {n} over GF({p})')


def format_polynomial(coeffs) -> str:
    """Coefficients (constant term first) as a polynomial in t."""
    terms = []
    for i, c in reversed(list(enumerate(coeffs))):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            power = 't' if i == 1 else f't^{i}'
            terms.append(power if c == 1 else f'{c}{power}')
    return '+'.join(terms) or '0'


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with n = 2e, so that q = p^e and the field has q^2 elements."""
    p: int
    e: int
    modulus: tuple[int, ...]
    table_limit: int = field(default=DEFAULT_TABLE_LIMIT, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, '_exp', None)
        object.__setattr__(self, '_log', None)
        object.__setattr__(self, '_zech', None)
        object.__setattr__(self, '_frob', None)
        object.__setattr__(self, '_neg', None)
        object.__setattr__(self, '_generator', None)
        if self.qsq <= self.table_limit:
            self._build_tables()

    # -- sizes -----------------------------------------------------------

    @property
    def n(self) -> int:
        return 2 * self.e

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def qsq(self) -> int:
        return self.p ** self.n

    @property
    def order(self) -> int:
        return self.qsq

    @property
    def is_even(self) -> bool:
        return self.p == 2

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def __call__(self, value: int) -> FieldElement:
        self.check(value)
        return FieldElement(self, value)

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.qsq:
            raise DomainError(f'{x!r} is not an element of GF({self.qsq})')
        return x

    def scalar(self, c: int) -> int:
        """Encoding of the prime-field constant c mod p."""
        return c % self.p

    def elements(self) -> range:
        return range(self.qsq)

    @cached_property
    def subfield(self) -> tuple[int, ...]:
        """GF(q) inside GF(q^2), in encoding order."""
        return tuple(x for x in range(self.qsq) if self.frobenius(x) == x)

    def subfield_elements(self) -> tuple[int, ...]:
        return self.subfield

    def prime_subfield_elements(self) -> tuple[int, ...]:
        return tuple(range(self.p))

    # -- encoding --------------------------------------------------------

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.n):
            x, c = divmod(x, self.p)
            out.append(c)
        return out

    def encode(self, coeffs) -> int:
        value = 0
        for c in reversed(list(coeffs)[:self.n]):
            value = value * self.p + (c % self.p)
        return value

    def format(self, x: int) -> str:
        """Pretty form of x as a polynomial in t, e.g. ``2t^2+t+1``."""
        return format_polynomial(self.digits(x))

    def to_json(self) -> dict:
        return {'p': self.p, 'e': self.e, 'modulus': list(self.modulus)}

    # -- polynomial-basis arithmetic (used above the table limit) ---------

    def _add_digits(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, result, place = self.p, 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            result += ((da + db) % p) * place
            place *= p
        return result

    def _neg_digits(self, a: int) -> int:
        if self.p == 2:
            return a
        p, result, place = self.p, 0, 1
        while a:
            a, da = divmod(a, p)
            result += ((p - da) % p) * place
            place *= p
        return result

    def _mul_poly(self, a: int, b: int) -> int:
        product = poly.mul(poly.trim(self.digits(a)), poly.trim(self.digits(b)), self.p)
        return self.encode(poly.mod(product, list(self.modulus), self.p))

    def _pow_poly(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return result

    def _find_generator(self) -> int:
        order = self.qsq - 1
        factors = prime_factors(order)
        for g in range(1, self.qsq):
            if all(self._pow_poly(g, order // r) != 1 for r in factors):
                return g
        raise FieldConstructionError('no primitive element found; modulus is not irreducible')

    def _build_tables(self):
        size = self.qsq - 1
        g = self._find_generator()
        exp = [0] * (2 * size)
        log = [0] * self.qsq
        x = 1
        for i in range(size):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, g)
        if x != 1:
            raise FieldConstructionError('generator powers do not close up')
        exp[size:] = exp[:size]
        p = self.p
        zech = [-1] * size
        for k in range(size):
            y = exp[k]
            one_plus = y - y % p + (y % p + 1) % p
            zech[k] = log[one_plus] if one_plus else -1
        object.__setattr__(self, '_generator', g)
        object.__setattr__(self, '_exp', exp)
        object.__setattr__(self, '_log', log)
        object.__setattr__(self, '_zech', zech)
        object.__setattr__(self, '_neg', [self._neg_digits(a) for a in range(self.qsq)])
        q = self.q
        object.__setattr__(self, '_frob', [0] + [exp[(log[a] * q) % size] for a in range(1, self.qsq)])

    # -- field operations on encodings --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._exp is None:
            return self._add_digits(a, b)
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.qsq - 1)]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        if self._neg is None:
            return self._neg_digits(a)
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is None:
            return self._mul_poly(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError('zero has no inverse')
        if self._exp is None:
            return self._pow_poly(a, self.qsq - 2)
        return self._exp[(self.qsq - 1 - self._log[a]) % (self.qsq - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if not a:
            if k < 0:
                raise ZeroDivisionError('zero has no inverse')
            return 1 if k == 0 else 0
        size = self.qsq - 1
        if self._exp is None:
            return self._pow_poly(a, k % size)
        return self._exp[(self._log[a] * k) % size]

    def sum(self, values) -> int:
        total = 0
        for v in values:
            total = self.add(total, v)
        return total

    def multiplicative_order(self, x: int) -> int:
        if not x:
            raise DomainError('zero has no multiplicative order')
        size = self.qsq - 1
        if self._exp is not None:
            return size // gcd(self._log[x], size)
        order = size
        for r in prime_factors(size):
            while order % r == 0 and self.pow(x, order // r) == 1:
                order //= r
        return order

    def primitive_element(self) -> int:
        """Smallest-encoding generator of GF(q^2)*."""
        if self._generator is None:
            object.__setattr__(self, '_generator', self._find_generator())
        return self._generator

    # -- the GF(q^2)/GF(q) machinery ----------------------------------------

    def frobenius(self, x: int) -> int:
        """x -> x^q; an involution on GF(q^2)."""
        if self._frob is not None:
            return self._frob[x]
        return self._pow_poly(x, self.q)

    def in_subfield(self, x: int) -> bool:
        return self.frobenius(x) == x

    def rel_trace(self, x: int) -> int:
        return self.add(x, self.frobenius(x))

    def rel_norm(self, x: int) -> int:
        return self.mul(x, self.frobenius(x))

    def abs_trace(self, x: int) -> int:
        """Trace GF(q) -> GF(p): x + x^p + ... + x^{p^(e-1)}."""
        if not self.in_subfield(x):
            raise DomainError(f'{self.format(x)} is not in GF({self.q})')
        total, power = 0, x
        for _ in range(self.e):
            total = self.add(total, power)
            power = self.pow(power, self.p)
        return total

    def is_square(self, x: int, which: str = FULL_FIELD) -> bool:
        if which == SUBFIELD:
            if self.p == 2:
                raise DomainError('the subfield square test needs odd q')
            if not self.in_subfield(x):
                raise DomainError(f'{self.format(x)} is not in GF({self.q})')
            return x == 0 or self.pow(x, (self.q - 1) // 2) == 1
        if which != FULL_FIELD:
            raise DomainError(f'unknown field selector {which!r}')
        if x == 0 or self.p == 2:
            return True
        return self.pow(x, (self.qsq - 1) // 2) == 1

    def sigma(self, x: int) -> int:
        """x -> x^(2^((e+1)/2)) on GF(q), q = 2^e with e odd."""
        if self.p != 2 or self.e % 2 == 0:
            raise DomainError('sigma needs q = 2^e with e odd')
        if not self.in_subfield(x):
            raise DomainError(f'sigma applied to {self.format(x)} outside GF({self.q})')
        return self.pow(x, 2 ** ((self.e + 1) // 2))


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec with Python arithmetic operators."""
    spec: FieldSpec
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise DomainError('elements of different fields')
            return other.value
        if isinstance(other, int):
            return self.spec.check(other)
        return NotImplemented

    def _wrap(self, value: int) -> FieldElement:
        return FieldElement(self.spec, value)

    def __add__(self, other):
        return self._wrap(self.spec.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.spec.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.spec.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.spec.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.spec.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.spec.pow(self.value, k))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.spec.format(self.value)

    def conjugate(self) -> FieldElement:
        return self._wrap(self.spec.frobenius(self.value))

    def inverse(self) -> FieldElement:
        return self._wrap(self.spec.inv(self.value))


@lru_cache(maxsize=32)
def _cached_field(p: int, e: int, modulus: tuple[int, ...], table_limit: int) -> FieldSpec:
    F = FieldSpec(p, e, modulus, table_limit)
    logger.info('built GF(%d^%d) = GF(%d), modulus %s, tables=%s',
                p, 2 * e, F.qsq, list(modulus), F.has_tables)
    return F


def build_field(p: int, e: int, modulus_override=None, max_order: int | None = None,
                table_limit: int | None = None) -> FieldSpec:
    """Build GF(p^{2e}) with the canonical (or an overriding) modulus."""
    if not is_prime(p):
        raise FieldConstructionError(f'characteristic {p} is not prime')
    if e < 1:
        raise FieldConstructionError(f'exponent {e} must be positive')
    bound = max_order if max_order is not None else getattr(settings, 'UNITAL_MAX_FIELD', DEFAULT_MAX_FIELD)
    order = p ** (2 * e)
    if order > bound:
        raise FieldBoundError(f'GF({order}) exceeds the field size bound {bound}')
    if table_limit is None:
        table_limit = getattr(settings, 'UNITAL_TABLE_LIMIT', DEFAULT_TABLE_LIMIT)
    n = 2 * e
    if modulus_override is not None:
        modulus = [int(c) for c in modulus_override]
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldConstructionError(f'modulus must be monic of degree {n}')
        if any(not 0 <= c < p for c in modulus):
            raise FieldConstructionError(f'modulus coefficients must lie in [0, {p})')
        if not poly.is_irreducible(modulus, p):
            raise FieldConstructionError(f'modulus {modulus} is reducible over GF({p})')
    else:
        modulus = canonical_modulus(p, n)
    return _cached_field(p, e, tuple(modulus), table_limit)


def find_epsilon(F: FieldSpec, parity: str | None = None) -> tuple[int, int | None]:
    """The special element epsilon (and delta for even q).

    ``parity`` ('odd' or 'even') defaults to the parity of q; a parity the
    field does not have raises DomainError.

    Odd q: epsilon = beta^((q+1)/2) for the smallest-encoding primitive beta,
    so that epsilon^q = -epsilon and epsilon^2 is primitive in GF(q).
    Even q (e > 1 odd): the smallest delta in GF(q) minus {1} of absolute
    trace 1 and the smallest root epsilon of x^2 + x + delta, so that
    epsilon^q + epsilon = 1.
    """
    q = F.q
    if parity is not None and parity != ('even' if F.is_even else 'odd'):
        raise DomainError(f'GF({F.qsq}) has no {parity} epsilon')
    if not F.is_even:
        beta = F.primitive_element()
        eps = F.pow(beta, (q + 1) // 2)
        if F.frobenius(eps) != F.neg(eps):
            raise VerificationFailure('epsilon^q != -epsilon')
        eps_sq = F.mul(eps, eps)
        if not F.in_subfield(eps_sq) or F.multiplicative_order(eps_sq) != q - 1:
            raise VerificationFailure('epsilon^2 is not primitive in GF(q)')
        return eps, None
    if F.e <= 1 or F.e % 2 == 0:
        raise DomainError('even-q epsilon needs q = 2^e with e > 1 odd')
    delta = next(d for d in F.subfield if d not in (0, 1) and F.abs_trace(d) == 1)
    eps = next(x for x in F.elements() if F.add(F.add(F.mul(x, x), x), delta) == 0)
    if F.add(F.frobenius(eps), eps) != 1:
        raise VerificationFailure('epsilon^q + epsilon != 1')
    return eps, delta


def check_field_axioms(F: FieldSpec, limit: int = AXIOM_CHECK_LIMIT) -> list[str]:
    """Exhaustive field-axiom check; returns the violations found (at most 10)."""
    if F.qsq > limit:
        raise BoundExceededError(f'exhaustive axiom check is limited to order {limit}')
    violations = []
    elements = F.elements()
    for a in elements:
        if F.add(a, 0) != a or F.mul(a, 1) != a or F.add(a, F.neg(a)) != 0:
            violations.append(f'identity/negation fails at {a}')
        if a and F.mul(a, F.inv(a)) != 1:
            violations.append(f'inverse fails at {a}')
        for b in elements:
            if F.add(a, b) != F.add(b, a) or F.mul(a, b) != F.mul(b, a):
                violations.append(f'commutativity fails at {a}, {b}')
            ab = F.add(a, b)
            a_times_b = F.mul(a, b)
            for c in elements:
                if F.add(ab, c) != F.add(a, F.add(b, c)):
                    violations.append(f'additive associativity fails at {a}, {b}, {c}')
                if F.mul(a_times_b, c) != F.mul(a, F.mul(b, c)):
                    violations.append(f'multiplicative associativity fails at {a}, {b}, {c}')
                if F.mul(a, F.add(b, c)) != F.add(a_times_b, F.mul(a, c)):
                    violations.append(f'distributivity fails at {a}, {b}, {c}')
                if len(violations) >= 10:
                    return violations
    return violations
