"""The symmetry group over 4x4 integer matrices with block congruence.

Elements are classes of matrices ``[[A11, a*A12], [b*A21, A22]]`` compared
blockwise modulo (n, d, d, m).  The group consists of the classes x with
x* j x = j, where * is the block-transpose involution and j is the class
of diag(J2, J2).  Two membership tests ship: the defining equation and an
equivalent six-congruence determinant criterion; their agreement is itself
a tested theorem.

Internally a class is a flat 16-tuple of canonical residues, ordered
A11, A12, A21, A22 (each row-major 2x2).  The ``_*16`` helpers operate on
raw tuples and carry the enumeration hot paths.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .arith import GroupParams, Mat2
from .errors import BlockDivisibility, BudgetExceeded, NotAMember, ParamMismatch

DEFAULT_BUDGET = 10**8

#: Above this many classes the "auto" enumeration method switches to BFS.
_EXHAUSTIVE_AUTO_LIMIT = 300_000


# ---------------------------------------------------------------------------
# raw 16-tuple layer
# ---------------------------------------------------------------------------

def _reduce16(t, n, d, m):
    return (
        t[0] % n, t[1] % n, t[2] % n, t[3] % n,
        t[4] % d, t[5] % d, t[6] % d, t[7] % d,
        t[8] % d, t[9] % d, t[10] % d, t[11] % d,
        t[12] % m, t[13] % m, t[14] % m, t[15] % m,
    )


def _mul16(x, y, n, d, m, ab):
    x0, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14, x15 = x
    y0, y1, y2, y3, y4, y5, y6, y7, y8, y9, y10, y11, y12, y13, y14, y15 = y
    return (
        (x0 * y0 + x1 * y2 + ab * (x4 * y8 + x5 * y10)) % n,
        (x0 * y1 + x1 * y3 + ab * (x4 * y9 + x5 * y11)) % n,
        (x2 * y0 + x3 * y2 + ab * (x6 * y8 + x7 * y10)) % n,
        (x2 * y1 + x3 * y3 + ab * (x6 * y9 + x7 * y11)) % n,
        (x0 * y4 + x1 * y6 + x4 * y12 + x5 * y14) % d,
        (x0 * y5 + x1 * y7 + x4 * y13 + x5 * y15) % d,
        (x2 * y4 + x3 * y6 + x6 * y12 + x7 * y14) % d,
        (x2 * y5 + x3 * y7 + x6 * y13 + x7 * y15) % d,
        (x8 * y0 + x9 * y2 + x12 * y8 + x13 * y10) % d,
        (x8 * y1 + x9 * y3 + x12 * y9 + x13 * y11) % d,
        (x10 * y0 + x11 * y2 + x14 * y8 + x15 * y10) % d,
        (x10 * y1 + x11 * y3 + x14 * y9 + x15 * y11) % d,
        (ab * (x8 * y4 + x9 * y6) + x12 * y12 + x13 * y14) % m,
        (ab * (x8 * y5 + x9 * y7) + x12 * y13 + x13 * y15) % m,
        (ab * (x10 * y4 + x11 * y6) + x14 * y12 + x15 * y14) % m,
        (ab * (x10 * y5 + x11 * y7) + x14 * y13 + x15 * y15) % m,
    )


def _star16(t):
    # diagonal blocks transpose in place; off-diagonal blocks swap and transpose
    return (
        t[0], t[2], t[1], t[3],
        t[8], t[10], t[9], t[11],
        t[4], t[6], t[5], t[7],
        t[12], t[14], t[13], t[15],
    )


def _id16(n, d, m):
    return _reduce16((1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1), n, d, m)


def _j16(n, d, m):
    return _reduce16((0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0), n, d, m)


def _member_def16(t, n, d, m, ab, j):
    return _mul16(_mul16(_star16(t), j, n, d, m, ab), t, n, d, m, ab) == j


def _member_crit16(t, n, d, m, ab):
    t0, t1, t2, t3, t4, t5, t6, t7, t8, t9, t10, t11, t12, t13, t14, t15 = t
    if (t0 * t3 - t1 * t2 + ab * (t8 * t11 - t9 * t10) - 1) % n:
        return False
    if (ab * (t4 * t7 - t5 * t6) + t12 * t15 - t13 * t14 - 1) % m:
        return False
    if (t0 * t6 - t4 * t2 + t8 * t14 - t12 * t10) % d:
        return False
    if (t0 * t7 - t5 * t2 + t8 * t15 - t13 * t10) % d:
        return False
    if (t1 * t6 - t4 * t3 + t9 * t14 - t12 * t11) % d:
        return False
    if (t1 * t7 - t5 * t3 + t9 * t15 - t13 * t11) % d:
        return False
    return True


def _all_class_tuples(n, d, m):
    mods = (n,) * 4 + (d,) * 8 + (m,) * 4
    return itertools.product(*map(range, mods))


# ---------------------------------------------------------------------------
# public element type
# ---------------------------------------------------------------------------

class SElement:
    """A canonical congruence class, the currency of the symmetry group.

    Instances are immutable value objects: equality and hashing use the
    canonical residue tuple together with the parameters.
    """

    __slots__ = ("params", "t")

    def __init__(self, params: GroupParams, t: tuple[int, ...]):
        # t must already be canonical; use the from_* constructors otherwise
        self.params = params
        self.t = t

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_blocks(cls, params: GroupParams, b11: Mat2, b12: Mat2,
                    b21: Mat2, b22: Mat2) -> "SElement":
        """Build from the four 2x2 integer blocks (reduced mod n, d, d, m)."""
        t = _reduce16(tuple(b11) + tuple(b12) + tuple(b21) + tuple(b22),
                      params.n, params.d, params.m)
        return cls(params, t)

    @classmethod
    def from_matrix(cls, params: GroupParams, rows) -> "SElement":
        """Build from a full 4x4 integer matrix including the a, b factors.

        The upper-right 2x2 block must be divisible entrywise by a and the
        lower-left by b; violations raise BlockDivisibility.
        """
        M = [list(map(int, r)) for r in rows]
        if len(M) != 4 or any(len(r) != 4 for r in M):
            raise BlockDivisibility("expected a 4x4 integer matrix")
        a, b = params.a, params.b
        for i in (0, 1):
            for j in (2, 3):
                if M[i][j] % a:
                    raise BlockDivisibility(
                        f"entry ({i + 1},{j + 1})={M[i][j]} is not divisible by a={a}")
        for i in (2, 3):
            for j in (0, 1):
                if M[i][j] % b:
                    raise BlockDivisibility(
                        f"entry ({i + 1},{j + 1})={M[i][j]} is not divisible by b={b}")
        return cls.from_blocks(
            params,
            (M[0][0], M[0][1], M[1][0], M[1][1]),
            (M[0][2] // a, M[0][3] // a, M[1][2] // a, M[1][3] // a),
            (M[2][0] // b, M[2][1] // b, M[3][0] // b, M[3][1] // b),
            (M[2][2], M[2][3], M[3][2], M[3][3]),
        )

    @classmethod
    def identity(cls, params: GroupParams) -> "SElement":
        return cls(params, _id16(params.n, params.d, params.m))

    # -- views -------------------------------------------------------------

    def blocks(self) -> tuple[Mat2, Mat2, Mat2, Mat2]:
        t = self.t
        return t[0:4], t[4:8], t[8:12], t[12:16]

    def to_matrix(self) -> list[list[int]]:
        """Canonical integer representative, a and b factors included."""
        t, a, b = self.t, self.params.a, self.params.b
        return [
            [t[0], t[1], a * t[4], a * t[5]],
            [t[2], t[3], a * t[6], a * t[7]],
            [b * t[8], b * t[9], t[12], t[13]],
            [b * t[10], b * t[11], t[14], t[15]],
        ]

    @property
    def is_identity(self) -> bool:
        p = self.params
        return self.t == _id16(p.n, p.d, p.m)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "SElement") -> "SElement":
        if self.params != other.params:
            raise ParamMismatch(f"{self.params} vs {other.params}")
        p = self.params
        return SElement(p, _mul16(self.t, other.t, p.n, p.d, p.m, p.ab))

    def star(self) -> "SElement":
        return SElement(self.params, _star16(self.t))

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, SElement)
                and self.params == other.params and self.t == other.t)

    def __hash__(self):
        return hash((self.params.n, self.params.m, self.params.d,
                     self.params.a, self.params.b, self.t))

    def __repr__(self):
        return f"SElement(n={self.params.n}, m={self.params.m}, t={self.t})"


# ---------------------------------------------------------------------------
# named elements and operations
# ---------------------------------------------------------------------------

def s_mul(x: SElement, y: SElement) -> SElement:
    return x * y


def s_star(x: SElement) -> SElement:
    return x.star()


def identity(params: GroupParams) -> SElement:
    return SElement.identity(params)


def j_element(params: GroupParams) -> SElement:
    """The class of diag(J2, J2)."""
    return SElement(params, _j16(params.n, params.d, params.m))


def minus_one(params: GroupParams) -> SElement:
    """The central class of -I4."""
    return SElement.from_blocks(params, (-1, 0, 0, -1), (0, 0, 0, 0),
                                (0, 0, 0, 0), (-1, 0, 0, -1))


def is_member_def(x: SElement) -> bool:
    """Membership via the defining equation x* j x = j."""
    p = x.params
    return _member_def16(x.t, p.n, p.d, p.m, p.ab, _j16(p.n, p.d, p.m))


@dataclass(frozen=True)
class CongruenceFailure:
    constraint: str
    lhs: int
    rhs: int
    modulus: int


@dataclass(frozen=True)
class MembershipCertificate:
    verdict: bool
    failures: tuple[CongruenceFailure, ...]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "failures": [
                {"constraint": f.constraint, "lhs": f.lhs, "rhs": f.rhs,
                 "modulus": f.modulus}
                for f in self.failures
            ],
        }


def is_member_criterion(x: SElement) -> MembershipCertificate:
    """Membership via six determinant congruences on the reduced matrix.

    The reduced matrix drops the a, b factors from the off-diagonal blocks.
    Constraints: det of the left column pair plus ab times its lower
    counterpart is 1 mod n; symmetrically 1 mod m for the right pair; and
    the four mixed column pairs give sums of 2x2 determinants that vanish
    mod d.  Column pair (i,j) selects columns, the row pair selects rows.
    """
    t = x.t
    p = x.params
    n, d, m, ab = p.n, p.d, p.m, p.ab
    t0, t1, t2, t3, t4, t5, t6, t7, t8, t9, t10, t11, t12, t13, t14, t15 = t
    failures = []

    lhs_n = (t0 * t3 - t1 * t2 + ab * (t8 * t11 - t9 * t10)) % n
    if lhs_n != 1 % n:
        failures.append(CongruenceFailure("det-pair-12", lhs_n, 1 % n, n))
    lhs_m = (ab * (t4 * t7 - t5 * t6) + t12 * t15 - t13 * t14) % m
    if lhs_m != 1 % m:
        failures.append(CongruenceFailure("det-pair-34", lhs_m, 1 % m, m))

    mixed = (
        ("mixed-13", t0 * t6 - t4 * t2 + t8 * t14 - t12 * t10),
        ("mixed-14", t0 * t7 - t5 * t2 + t8 * t15 - t13 * t10),
        ("mixed-23", t1 * t6 - t4 * t3 + t9 * t14 - t12 * t11),
        ("mixed-24", t1 * t7 - t5 * t3 + t9 * t15 - t13 * t11),
    )
    for name, val in mixed:
        if val % d:
            failures.append(CongruenceFailure(name, val % d, 0, d))

    return MembershipCertificate(not failures, tuple(failures))


def g_inverse(x: SElement) -> SElement:
    """Group inverse j* x* j; requires membership."""
    if not is_member_def(x):
        raise NotAMember(f"{x!r} is not in the symmetry group")
    j = j_element(x.params)
    return j.star() * x.star() * j


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    params: GroupParams
    method: str
    elements: frozenset[SElement]
    seconds: float

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[SElement]:
        return sorted(self.elements, key=lambda e: e.t)


def _bfs_closure_raw(gen_tuples, n, d, m, ab, budget):
    els = set(gen_tuples)
    boundary = list(els)
    while boundary:
        fresh = []
        for g in gen_tuples:
            for x in boundary:
                y = _mul16(x, g, n, d, m, ab)
                if y not in els:
                    els.add(y)
                    fresh.append(y)
                    if len(els) > budget:
                        raise BudgetExceeded(
                            f"closure exceeded budget of {budget} elements")
        boundary = fresh
    return els


def closure(generators: list[SElement], budget: int = DEFAULT_BUDGET) -> frozenset[SElement]:
    """Multiplicative closure of the given elements (a subgroup, since the
    ambient group is finite)."""
    if not generators:
        raise ValueError("need at least one generator")
    p = generators[0].params
    for g in generators:
        if g.params != p:
            raise ParamMismatch("mixed parameters in generator list")
    raw = _bfs_closure_raw([g.t for g in generators], p.n, p.d, p.m, p.ab, budget)
    return frozenset(SElement(p, t) for t in raw)


def enumerate_group(params: GroupParams, method: str = "auto",
                    budget: int = DEFAULT_BUDGET) -> GroupTable:
    """Enumerate the full symmetry group.

    ``exhaustive`` filters every canonical class through the determinant
    criterion (requires n^4 d^8 m^4 <= budget); ``bfs-closure`` closes the
    standard generator set; ``auto`` picks exhaustive for small class
    counts.  Both methods return identical sets where both are feasible.
    """
    if method not in ("auto", "exhaustive", "bfs-closure"):
        raise ValueError(f"unknown method {method!r}")
    n, d, m, ab = params.n, params.d, params.m, params.ab
    if method == "auto":
        method = ("exhaustive"
                  if params.class_count <= min(budget, _EXHAUSTIVE_AUTO_LIMIT)
                  else "bfs-closure")
    start = time.monotonic()
    if method == "exhaustive":
        if params.class_count > budget:
            raise BudgetExceeded(
                f"{params.class_count} classes exceed budget {budget}")
        els = frozenset(SElement(params, t)
                        for t in _all_class_tuples(n, d, m)
                        if _member_crit16(t, n, d, m, ab))
    else:
        from .words import standard_generators  # deferred: words builds on this module
        gens = [g.t for g in standard_generators(params)]
        raw = _bfs_closure_raw(gens, n, d, m, ab, budget)
        els = frozenset(SElement(params, t) for t in raw)
    return GroupTable(params, method, els, time.monotonic() - start)


def random_element(params: GroupParams, rng) -> SElement:
    """Uniformly random class (not necessarily a group member)."""
    mods = (params.n,) * 4 + (params.d,) * 8 + (params.m,) * 4
    return SElement(params, tuple(rng.randrange(md) for md in mods))
