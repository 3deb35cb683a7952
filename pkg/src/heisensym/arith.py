"""Exact integer and residue arithmetic: parameters, Bezout coefficients,
2x2 integer matrices and their inverses modulo k.

All matrices here are flat row-major tuples ``(a, b, c, d)`` for
``[[a, b], [c, d]]``; Python integers give arbitrary precision throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonInvertible

Mat2 = tuple[int, int, int, int]

I2: Mat2 = (1, 0, 0, 1)
J2: Mat2 = (0, 1, -1, 0)
E11: Mat2 = (1, 0, 0, 0)
E12: Mat2 = (0, 1, 0, 0)
E21: Mat2 = (0, 0, 1, 0)
E22: Mat2 = (0, 0, 0, 1)


@dataclass(frozen=True)
class GroupParams:
    """The parameter tuple (n, m, d, a, b) with its divisibility invariants.

    Requires d | n, d | m, n | a*b*d and m | a*b*d.  The canonical choice
    for a bipartite system of dimensions n x m is d = gcd(n, m), a = n/d,
    b = m/d, built by :meth:`from_dims`; the general constructor accepts
    any tuple satisfying the four divisibility conditions.
    """

    n: int
    m: int
    d: int
    a: int
    b: int

    def __post_init__(self):
        for name in ("n", "m", "d", "a", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        abd = self.a * self.b * self.d
        if self.n % self.d or self.m % self.d:
            raise ValueError(f"d={self.d} must divide both n={self.n} and m={self.m}")
        if abd % self.n or abd % self.m:
            raise ValueError(f"n={self.n} and m={self.m} must divide a*b*d={abd}")

    @classmethod
    def from_dims(cls, n: int, m: int) -> "GroupParams":
        """Canonical parameters: d = gcd(n, m), a = n/d, b = m/d."""
        if n < 1 or m < 1:
            raise ValueError("dimensions must be positive")
        d = math.gcd(n, m)
        return cls(n, m, d, n // d, m // d)

    @property
    def ab(self) -> int:
        return self.a * self.b

    @property
    def lcm(self) -> int:
        return self.a * self.b * self.d

    @property
    def is_canonical(self) -> bool:
        d = math.gcd(self.n, self.m)
        return self.d == d and self.a == self.n // d and self.b == self.m // d

    @property
    def coprime(self) -> bool:
        return math.gcd(self.n, self.m) == 1

    @property
    def class_count(self) -> int:
        """Number of congruence classes: n^4 * d^8 * m^4."""
        return self.n**4 * self.d**8 * self.m**4


def bezout(x: int, y: int) -> tuple[int, int, int]:
    """Return (g, alpha, beta) with alpha*x + beta*y = g = gcd(|x|, |y|) >= 0.

    bezout(0, 0) = (0, 0, 0) by convention.
    """
    old_r, r = abs(x), abs(y)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    alpha = old_s if x >= 0 else -old_s
    beta = old_t if y >= 0 else -old_t
    return old_r, alpha, beta


def det2(M: Mat2) -> int:
    return M[0] * M[3] - M[1] * M[2]


def mat2_mul(P: Mat2, Q: Mat2) -> Mat2:
    return (
        P[0] * Q[0] + P[1] * Q[2],
        P[0] * Q[1] + P[1] * Q[3],
        P[2] * Q[0] + P[3] * Q[2],
        P[2] * Q[1] + P[3] * Q[3],
    )


def mat2_transpose(M: Mat2) -> Mat2:
    return (M[0], M[2], M[1], M[3])


def mat2_adjugate(M: Mat2) -> Mat2:
    """Adjugate: M * adj(M) = det(M) * I."""
    return (M[3], -M[1], -M[2], M[0])


def mat2_mod(M: Mat2, k: int) -> Mat2:
    return (M[0] % k, M[1] % k, M[2] % k, M[3] % k)


def mat2_scale(c: int, M: Mat2) -> Mat2:
    return (c * M[0], c * M[1], c * M[2], c * M[3])


def inv2_mod(M: Mat2, k: int) -> Mat2:
    """Inverse of M modulo k, entries reduced to [0, k).

    Raises NonInvertible when gcd(det(M), k) != 1.
    """
    if k < 1:
        raise ValueError("modulus must be positive")
    dt = det2(M) % k
    if math.gcd(dt, k) != 1:
        raise NonInvertible(f"det {det2(M)} is not a unit modulo {k}")
    dt_inv = pow(dt, -1, k)
    return mat2_mod(mat2_scale(dt_inv, mat2_adjugate(M)), k)
