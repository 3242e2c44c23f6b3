"""Dense polynomials over GF(p).

A polynomial is a list of coefficients, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: list[int]) -> int:
    return len(a) - 1


def add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, y in enumerate(b):
        r[i] = (r[i] + y) % p
    return trim(r)


def sub(a: list[int], b: list[int], p: int) -> list[int]:
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        r[i] = (r[i] - y) % p
    return trim(r)


def mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            r[i + j] += x * y
    return trim([c % p for c in r])


def divmod_(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError('division by zero polynomial')
    m, n = len(a), len(b)
    if m < n:
        return [], list(a)
    lead_inv = pow(b[-1], -1, p)
    q, r = [0] * (m - n + 1), list(a)
    for i in range(m - n, -1, -1):
        if len(r) >= i + n:
            q[i] = q_i = (r[-1] * lead_inv) % p
            for j in range(n):
                r[i + j] = (r[i + j] - q_i * b[j]) % p
            trim(r)
    return trim(q), r


def mod(a: list[int], b: list[int], p: int) -> list[int]:
    return divmod_(a, b, p)[1]


def powmod(a: list[int], n: int, modulus: list[int], p: int) -> list[int]:
    result = [1]
    base = mod(a, modulus, p)
    while n:
        if n & 1:
            result = mod(mul(result, base, p), modulus, p)
        base = mod(mul(base, base, p), modulus, p)
        n >>= 1
    return result


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    lead_inv = pow(a[-1], -1, p)
    return [(c * lead_inv) % p for c in a]


def gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def evaluate(a: list[int], x: int, p: int) -> int:
    value = 0
    for c in reversed(a):
        value = (value * x + c) % p
    return value


def has_root(a: list[int], p: int) -> bool:
    return any(evaluate(a, x, p) == 0 for x in range(p))


def is_irreducible(a: list[int], p: int) -> bool:
    """Ben-Or test: no factor of degree k divides a, for k up to deg(a)/2.

    gcd(a, x^(p^k) - x) collects every irreducible factor of degree
    dividing k, so a trivial gcd for all k <= n/2 rules out factors of
    every degree up to n/2.
    """
    a = trim(list(a))
    n = degree(a)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(n // 2):
        power = powmod(power, p, a, p)
        if gcd(sub(power, x, p), a, p) != [1]:
            return False
    return True
