"""Generators and constructive factorization into generator words.

The group is generated by one twist generator r(1) (powers r(k) have
matching k*E12 blocks scaled by a and b off the diagonal) together with
the block-diagonal subgroup of classes diag(S, T) with det S = 1 mod n
and det T = 1 mod m.  ``decompose`` factors any member into at most 16
tokens by clearing the last column with Bezout block rotations, forcing
the (4,4) and (3,3) corners to 1, and splitting the remainder into a
conjugated twist times block-diagonal factors.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .arith import I2, J2, Mat2, bezout, det2, mat2_adjugate, mat2_mod
from .errors import NotAMember
from .symmetry import GroupParams, SElement, is_member_def

_MINUS_J2: Mat2 = (0, -1, 1, 0)


# ---------------------------------------------------------------------------
# tokens
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RPower:
    """Token for r(1)^k."""
    k: int

    def inverse(self) -> "RPower":
        return RPower(-self.k)

    def to_selement(self, params: GroupParams) -> SElement:
        return make_r(params, self.k)

    def to_json(self) -> dict:
        return {"type": "r", "k": self.k}


@dataclass(frozen=True)
class BlockDiag:
    """Token for the class of diag(S, T); requires unit determinants."""
    S: Mat2
    T: Mat2

    def inverse(self) -> "BlockDiag":
        # det S = 1 mod n makes the adjugate a two-sided inverse mod n
        return BlockDiag(mat2_adjugate(self.S), mat2_adjugate(self.T))

    def to_selement(self, params: GroupParams) -> SElement:
        el = SElement.from_blocks(params, self.S, (0, 0, 0, 0), (0, 0, 0, 0), self.T)
        if det2(self.S) % params.n != 1 % params.n:
            raise NotAMember(f"det S = {det2(self.S)} is not 1 mod {params.n}")
        if det2(self.T) % params.m != 1 % params.m:
            raise NotAMember(f"det T = {det2(self.T)} is not 1 mod {params.m}")
        return el

    def to_json(self) -> dict:
        S, T = self.S, self.T
        return {"type": "blockdiag",
                "S": [[S[0], S[1]], [S[2], S[3]]],
                "T": [[T[0], T[1]], [T[2], T[3]]]}


Token = RPower | BlockDiag


def token_from_json(data: dict) -> Token:
    if data.get("type") == "r":
        return RPower(int(data["k"]))
    if data.get("type") == "blockdiag":
        S = data["S"]
        T = data["T"]
        return BlockDiag((int(S[0][0]), int(S[0][1]), int(S[1][0]), int(S[1][1])),
                         (int(T[0][0]), int(T[0][1]), int(T[1][0]), int(T[1][1])))
    raise ValueError(f"unknown token {data!r}")


@dataclass(frozen=True)
class GeneratorWord:
    """An ordered sequence of tokens; evaluates left-to-right."""
    params: GroupParams
    tokens: tuple[Token, ...]

    def __len__(self):
        return len(self.tokens)

    def evaluate(self) -> SElement:
        acc = SElement.identity(self.params)
        for tok in self.tokens:
            acc = acc * tok.to_selement(self.params)
        return acc

    def to_json(self) -> list[dict]:
        return [tok.to_json() for tok in self.tokens]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, params: GroupParams, data) -> "GeneratorWord":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(params, tuple(token_from_json(item) for item in data))


def eval_word(word: GeneratorWord) -> SElement:
    return word.evaluate()


# ---------------------------------------------------------------------------
# named generators
# ---------------------------------------------------------------------------

def make_r(params: GroupParams, k: int) -> SElement:
    """The twist generator power r(k): off-diagonal blocks k*E12."""
    ke12 = (0, k, 0, 0)
    return SElement.from_blocks(params, I2, ke12, ke12, I2)


_SL2_GENS: tuple[Mat2, Mat2] = (J2, (1, 1, 0, 1))


def generator_tokens(params: GroupParams) -> list[Token]:
    """r(1) plus the four one-sided block-diagonal SL2 generator tokens."""
    toks: list[Token] = [RPower(1)]
    for S in _SL2_GENS:
        toks.append(BlockDiag(S, I2))
    for T in _SL2_GENS:
        toks.append(BlockDiag(I2, T))
    return toks


def standard_generators(params: GroupParams) -> list[SElement]:
    return [tok.to_selement(params) for tok in generator_tokens(params)]


# ---------------------------------------------------------------------------
# twist conjugates: mixed-unit-block elements as conjugates of r(k)
# ---------------------------------------------------------------------------

_TWIST_KINDS = {
    # kind -> (upper-right unit, sign, lower-left unit, conjugator blocks)
    # [[I, -a*k*E11], [b*k*E22, I]] = diag(I, -J2) r(k) diag(I, J2)
    "e11": ((-1, (1, 0, 0, 0)), (1, (0, 0, 0, 1)), (I2, _MINUS_J2), (I2, J2)),
    # [[I, -a*k*E22], [b*k*E11, I]] = diag(J2, I) r(k) diag(-J2, I)
    "e22": ((-1, (0, 0, 0, 1)), (1, (1, 0, 0, 0)), (J2, I2), (_MINUS_J2, I2)),
    # [[I, a*k*E21], [b*k*E21, I]] = diag(-J2, J2) r(k) diag(J2, -J2)
    "e21": ((1, (0, 0, 1, 0)), (1, (0, 0, 1, 0)), (_MINUS_J2, J2), (J2, _MINUS_J2)),
}


def twist_conjugate_tokens(kind: str, k: int) -> list[Token]:
    """Token word for the mixed-unit-block element of the given kind."""
    _, _, left, right = _TWIST_KINDS[kind]
    return [BlockDiag(*left), RPower(k), BlockDiag(*right)]


def twist_conjugate_element(params: GroupParams, kind: str, k: int) -> SElement:
    """The mixed-unit-block element itself, built directly from its blocks."""
    (su, upper), (sl, lower), _, _ = _TWIST_KINDS[kind]
    b12 = tuple(su * k * v for v in upper)
    b21 = tuple(sl * k * v for v in lower)
    return SElement.from_blocks(params, I2, b12, b21, I2)


def verify_twist_conjugates(params: GroupParams, ks=(1,)) -> list[dict]:
    """Evaluate both sides of the three conjugation identities; report equality."""
    out = []
    for kind in _TWIST_KINDS:
        for k in ks:
            lhs = twist_conjugate_element(params, kind, k)
            rhs = GeneratorWord(params, tuple(twist_conjugate_tokens(kind, k))).evaluate()
            out.append({"kind": kind, "k": k, "holds": lhs == rhs})
    return out


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def _mat4_mul(X, Y):
    return [[sum(X[i][t] * Y[t][j] for t in range(4)) for j in range(4)]
            for i in range(4)]


def _token_matrix(tok: Token, a: int, b: int):
    if isinstance(tok, RPower):
        k = tok.k
        return [[1, 0, 0, a * k], [0, 1, 0, 0], [0, b * k, 1, 0], [0, 0, 0, 1]]
    S, T = tok.S, tok.T
    return [[S[0], S[1], 0, 0], [S[2], S[3], 0, 0],
            [0, 0, T[0], T[1]], [0, 0, T[2], T[3]]]


def _word_matrix(tokens, a, b):
    acc = [[int(i == j) for j in range(4)] for i in range(4)]
    for tok in tokens:
        acc = _mat4_mul(acc, _token_matrix(tok, a, b))
    return acc


def _is_identity_token(tok: Token, params: GroupParams) -> bool:
    if isinstance(tok, RPower):
        return tok.k % params.d == 0
    n, m = params.n, params.m
    return (mat2_mod(tok.S, n) == mat2_mod(I2, n)
            and mat2_mod(tok.T, m) == mat2_mod(I2, m))


def decompose(x: SElement) -> GeneratorWord:
    """Factor a group member into a word of at most 16 generator tokens.

    Works on an exact integer representative of the class, mirroring the
    constructive generation proof stage by stage:

    1. Bezout rotations on the last column's top and bottom entry pairs
       build a block-diagonal left factor clearing positions (1,4) and
       (3,4) and leaving gcd at (4,4).
    2. With those zeros in place, a twist power times an upper-triangular
       block factor puts a value congruent to 1 at (3,4); replacing the
       representative entry by 1 and repeating stage 1 forces (4,4) = 1.
    3. Two conjugated twist factors zero (1,3) and (2,4) and set (3,3) = 1;
       the determinant congruences make the residual (3,1), (3,2) entries
       vanish mod d, so the representative is rewritten with zeros there.
    4. A Bezout right factor clears (1,2); after the mod-d rewrites of
       (4,1), (4,2) licensed by the same congruences, the remainder splits
       exactly as conjugated-twist * block-diagonal, and the word is
       assembled from the collected inverses.

    Where a Bezout pair is (0, 0) the corresponding block is the identity
    (membership forces this to be harmless).  Two runs may emit different
    valid words when several Bezout coefficient choices exist; only
    evaluate(decompose(x)) == x is guaranteed, not word uniqueness.
    """
    if not is_member_def(x):
        raise NotAMember(f"{x!r} fails the membership equation")
    params = x.params
    n, d, m = params.n, params.d, params.m
    a, b, ab = params.a, params.b, params.ab
    if x.is_identity:
        return GeneratorWord(params, ())

    X = x.to_matrix()
    applied: list[list[Token]] = []  # left-factor token lists, application order

    def apply_left(tokens: list[Token]):
        nonlocal X
        X = _mat4_mul(_word_matrix(tokens, a, b), X)
        applied.append(tokens)

    def bezout_rotation_tokens() -> list[Token]:
        # clears (1,4) and (3,4); puts gcds at (2,4) and (4,4)
        x14, x24 = X[0][3] // a, X[1][3] // a
        x34, x44 = X[2][3], X[3][3]
        g1, al, be = bezout(x14, x24)
        U = (x24 // g1, -x14 // g1, al, be) if g1 else I2
        g2, ga, de = bezout(x34, x44)
        L = (x44 // g2, -x34 // g2, ga, de) if g2 else I2
        return [BlockDiag(U, L)]

    # stage 1
    if X[0][3] != 0 or X[2][3] != 0:
        apply_left(bezout_rotation_tokens())

    # stage 2
    if X[3][3] != 1:
        x13, x33 = X[0][2] // a, X[2][2]
        apply_left([RPower(x13), BlockDiag(I2, (1, x33, 0, 1))])
        assert (X[2][3] - 1) % m == 0
        X[2][3] = 1  # same class: entry only changed by a multiple of m
        apply_left(bezout_rotation_tokens())
    assert X[0][3] == 0 and X[2][3] == 0 and X[3][3] == 1

    # stage 3
    x13, x24, x33 = X[0][2] // a, X[1][3] // a, X[2][2]
    corner = 1 - ab * x13 * x24
    assert (x33 - corner) % m == 0
    X[2][2] = corner
    apply_left(twist_conjugate_tokens("e11", x13) + twist_conjugate_tokens("e22", x24))
    assert X[0][2] == 0 and X[1][3] == 0 and X[2][2] == 1 and X[3][3] == 1
    assert (X[2][0] // b) % d == 0 and (X[2][1] // b) % d == 0
    X[2][0] = 0
    X[2][1] = 0

    # stage 4
    x11, x12 = X[0][0], X[0][1]
    g, nu, ta = bezout(x11, x12)
    right_rot = (nu, -x12 // g, ta, x11 // g) if g else I2
    B = _mat4_mul(X, _token_matrix(BlockDiag(right_rot, I2), a, b))
    x23 = B[1][2] // a
    assert (B[3][1] // b) % d == 0 and ((B[3][0] // b) - g * x23) % d == 0
    B[3][0] = b * g * x23
    B[3][1] = 0
    GS: Mat2 = (g, 0, B[1][0], B[1][1])
    GT: Mat2 = (1, 0, B[3][2], 1)
    split = twist_conjugate_tokens("e21", x23) + [BlockDiag(GS, GT)]
    assert _word_matrix(split, a, b) == B
    right = split + [BlockDiag(right_rot, I2).inverse()]

    word: list[Token] = []
    for tokens in applied:  # total left factor inverts in application order
        word.extend(tok.inverse() for tok in reversed(tokens))
    word.extend(right)
    word = [tok for tok in word if not _is_identity_token(tok, params)]
    return GeneratorWord(params, tuple(word))
