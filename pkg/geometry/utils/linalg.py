"""Gaussian elimination over GF(q^2) on plain lists of element encodings."""
from __future__ import annotations

from ..gf import FieldSpec


def rref(F: FieldSpec, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; the pivot of each column is its first nonzero entry."""
    matrix = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][c]), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        scale = F.inv(matrix[r][c])
        matrix[r] = [F.mul(x, scale) for x in matrix[r]]
        for i, row in enumerate(matrix):
            if i != r and row[c]:
                factor = row[c]
                matrix[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(row, matrix[r])]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return matrix[:r], pivots


def rank(F: FieldSpec, rows: list[list[int]], ncols: int) -> int:
    return len(rref(F, rows, ncols)[1])


def nullspace(F: FieldSpec, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : Av = 0}, one vector per free column with that entry 1."""
    reduced, pivots = rref(F, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [0] * ncols
        vector[free] = 1
        for row, c in zip(reduced, pivots):
            vector[c] = F.neg(row[free])
        basis.append(vector)
    return basis


def proportional(F: FieldSpec, u: list[int], v: list[int]) -> bool:
    """True when u = cv for some nonzero c."""
    if len(u) != len(v):
        return False
    i = next((i for i, x in enumerate(v) if x), None)
    if i is None or not u[i]:
        return False
    c = F.div(u[i], v[i])
    return all(x == F.mul(c, y) for x, y in zip(u, v))
