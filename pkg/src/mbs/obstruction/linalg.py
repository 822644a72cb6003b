"""Exact integer linear algebra: determinants, gcd of maximal minors, Smith normal form, right inverses.

Matrices are :mod:`numpy` arrays of ``dtype=object`` holding Python integers, so no computation can overflow.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Sequence
    from typing import Union

    from numpy.typing import NDArray

    MatrixLike = Union[NDArray[np.generic], Sequence[Sequence[int]]]

logger = logging.getLogger(__name__)


class CertificateError(ArithmeticError):
    """Raised when a computed transformation fails its re-verification by exact multiplication."""


def as_integer_matrix(a: MatrixLike) -> NDArray[np.object_]:
    """Copy a matrix into a two-dimensional ``object`` array of Python integers.

    Arguments:
        a: a two-dimensional array or a list of rows
    """
    array = np.asarray(a, dtype=object)
    if array.size == 0:
        return np.zeros(array.shape if array.ndim == 2 else (0, 0), dtype=object)
    if array.ndim != 2:
        msg = f"Expected a two-dimensional matrix, got shape {array.shape}."
        raise ValueError(msg)
    result = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        if int(value) != value:
            msg = f"Matrix entry {value!r} at {index} is not an integer."
            raise ValueError(msg)
        result[index] = int(value)
    return result


def identity(n: int) -> NDArray[np.object_]:
    """The ``n x n`` identity as an ``object`` array."""
    result = np.zeros((n, n), dtype=object)
    for i in range(n):
        result[i, i] = 1
    return result


def matmul(a: NDArray[np.object_], b: NDArray[np.object_]) -> NDArray[np.object_]:
    """Exact product of two ``object`` matrices, including empty shapes."""
    if a.shape[1] != b.shape[0]:
        msg = f"Cannot multiply matrices of shapes {a.shape} and {b.shape}."
        raise ValueError(msg)
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return np.asarray(a @ b, dtype=object)


def determinant(a: MatrixLike) -> int:
    """Exact determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    matrix = as_integer_matrix(a)
    n, cols = matrix.shape
    if n != cols:
        msg = f"Determinant needs a square matrix, got shape {matrix.shape}."
        raise ValueError(msg)
    if n == 0:
        return 1

    rows = [list(row) for row in matrix.tolist()]
    sign, previous = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1]


def minor_gcd(a: MatrixLike, m: int | None = None) -> int:
    """Greatest common divisor of all ``m x m`` minors of an ``m x n`` matrix.

    The empty matrix (``m = 0``) has the single minor 1. The result is 0 if ``m > n`` or all minors vanish.

    Arguments:
        a: the matrix
        m: row count of ``a``; defaults to the actual row count
    """
    matrix = as_integer_matrix(a)
    rows, cols = matrix.shape
    if m is None:
        m = rows
    if m != rows:
        msg = f"Row count {m} does not match the matrix shape {matrix.shape}."
        raise ValueError(msg)
    if m == 0:
        return 1
    if m > cols:
        return 0

    divisor = 0
    for selection in itertools.combinations(range(cols), m):
        divisor = math.gcd(divisor, determinant(matrix[:, list(selection)]))
        if divisor == 1:
            break
    return divisor


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _gcd_step(a: int, b: int) -> NDArray[np.object_]:
    """A 2x2 integer matrix ``M`` of determinant 1 with ``M @ [a, b] = [g, 0]``, ``|g| = gcd(a, b)``.

    If ``a`` divides ``b`` the first row of ``M`` is ``[1, 0]``, so ``a`` is kept.
    """
    step = identity(2)
    if a != 0 and b % a == 0:
        step[1, 0] = -b // a
        return step
    g, x, y = _bezout(a, b)
    if g == 0:
        return step
    step[0, 0], step[0, 1] = x, y
    step[1, 0], step[1, 1] = -b // g, a // g
    return step


@dataclass(frozen=True)
class SmithForm:
    """Smith normal form ``S = U @ A @ V`` of an integer matrix.

    Attributes:
        s: diagonal matrix with nonnegative entries ``s_1 | s_2 | ...``, same shape as ``A``
        u: unimodular row transformation
        v: unimodular column transformation
    """

    s: NDArray[np.object_]
    u: NDArray[np.object_]
    v: NDArray[np.object_]

    @property
    def invariant_factors(self) -> list[int]:
        """Diagonal entries of ``s``."""
        return [int(self.s[i, i]) for i in range(min(self.s.shape))]

    def determinantal_divisor(self, k: int) -> int:
        """Product of the first ``k`` invariant factors, i.e. the gcd of all ``k x k`` minors."""
        factors = self.invariant_factors
        if k > len(factors):
            return 0
        return math.prod(factors[:k])


def smith_normal_form(a: MatrixLike) -> SmithForm:
    """Compute the Smith normal form with its unimodular transformations.

    Rows and columns are cleared with 2x2 gcd steps; an entry not divisible by the current pivot is
    pulled into the pivot row, which strictly decreases the pivot, so each pivot divides everything
    after it. The result is verified by multiplication before it is returned.

    Arguments:
        a: an integer matrix of any shape

    Raises:
        CertificateError: if the verification fails
    """
    original = as_integer_matrix(a)
    d = original.copy()
    rows, cols = d.shape
    u, v = identity(rows), identity(cols)

    def row_step(step: NDArray[np.object_], i: int, j: int) -> None:
        d[[i, j], :] = matmul(step, d[[i, j], :])
        u[[i, j], :] = matmul(step, u[[i, j], :])

    def col_step(step: NDArray[np.object_], i: int, j: int) -> None:
        d[:, [i, j]] = matmul(d[:, [i, j]], step.T)
        v[:, [i, j]] = matmul(v[:, [i, j]], step.T)

    swap = np.array([[0, 1], [1, 0]], dtype=object)
    for t in range(min(rows, cols)):
        nonzero = [(abs(d[i, j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i, j] != 0]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        if pi != t:
            row_step(swap, t, pi)
        if pj != t:
            col_step(swap, t, pj)

        while True:
            while True:
                for i in range(t + 1, rows):
                    if d[i, t] != 0:
                        row_step(_gcd_step(d[t, t], d[i, t]), t, i)
                for j in range(t + 1, cols):
                    if d[t, j] != 0:
                        col_step(_gcd_step(d[t, t], d[t, j]), t, j)
                if all(d[i, t] == 0 for i in range(t + 1, rows)):
                    break

            pivot = d[t, t]
            offending = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i, j] % pivot != 0),
                None,
            )
            if offending is None:
                break
            d[t, :] += d[offending, :]
            u[t, :] += u[offending, :]

        if d[t, t] < 0:
            d[t, :] = -d[t, :]
            u[t, :] = -u[t, :]

    if not np.array_equal(matmul(matmul(u, original), v), d):
        msg = "Smith normal form failed verification U @ A @ V == S."
        raise CertificateError(msg)
    if abs(determinant(u)) != 1 or abs(determinant(v)) != 1:
        msg = "Smith normal form transformations are not unimodular."
        raise CertificateError(msg)
    form = SmithForm(s=d, u=u, v=v)
    logger.debug("Smith normal form of a %dx%d matrix: %s", *original.shape, form.invariant_factors)
    return form


def verify_certificate(a: MatrixLike, b: MatrixLike) -> bool:
    """Whether ``A @ B`` is exactly the ``m x m`` identity."""
    left, right = as_integer_matrix(a), as_integer_matrix(b)
    if left.shape[1] != right.shape[0] or right.shape[1] != left.shape[0]:
        return False
    return bool(np.array_equal(matmul(left, right), identity(left.shape[0])))


def right_inverse_certificate(a: MatrixLike, n: int | None = None) -> NDArray[np.object_] | None:
    """Integer matrix ``B`` with ``A @ B = E`` for an ``m x n`` matrix ``A``, if one exists.

    ``B`` exists exactly when ``m <= n`` and the ``m x m`` minors of ``A`` have gcd 1. It is read off
    the Smith normal form ``U A V = [E | 0]`` as the first ``m`` columns of ``V`` times ``U``.

    Arguments:
        a: the ``m x n`` matrix
        n: column count, needed only when ``a`` has no rows and is given as a plain list

    Returns:
        the ``n x m`` certificate, or ``None``

    Raises:
        CertificateError: if the constructed matrix fails ``A @ B == E``
    """
    matrix = as_integer_matrix(a)
    if n is not None and matrix.shape[0] == 0:
        matrix = np.zeros((0, n), dtype=object)
    m, cols = matrix.shape
    if m > cols:
        return None
    if m == 0:
        return np.zeros((cols, 0), dtype=object)

    form = smith_normal_form(matrix)
    if any(factor != 1 for factor in form.invariant_factors[:m]):
        return None
    certificate = matmul(form.v[:, :m], form.u)
    if not verify_certificate(matrix, certificate):
        msg = "Right inverse failed verification A @ B == E."
        raise CertificateError(msg)
    return certificate
