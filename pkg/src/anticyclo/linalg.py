"""Matrix algebra over Z/p^N: characteristic polynomials, zeta-th powers
of matrices congruent to the identity mod p, and the intertwiner equation
M^zeta · D = D · M.

Z/p^N has zero divisors, so the characteristic polynomial is computed
division-free (Berkowitz) and inverses go through Cayley-Hamilton with a
unit constant term; Gaussian elimination is never used at precision.

The headline decision procedure is ``intertwiner_solve``: whether an
*invertible* D intertwines M with its zeta-th power.  When one exists
and the 1-eigenspace of M vanishes at precision, the dimension of M is a
multiple of the order of zeta (``rank_divisibility_check``).
"""

from __future__ import annotations

import itertools
from random import Random
from typing import NamedTuple, Optional, Sequence

from .errors import NotInvertibleError, PrecisionError, UndeterminedError
from .padic import PadicExponent, PadicInt, binom, pow_one_unit
from .snf import int_det, kernel_mod

#: Mod-p kernels of dimension up to this are searched exhaustively for an
#: invertible element; beyond it the solver samples and may return
#: "undetermined" instead of certifying "none".
EXHAUSTIVE_KERNEL_DIM = 8


class PadicMatrix:
    """Square matrix with entries in Z/p^N, stored as canonical residues."""

    def __init__(self, p: int, precision: int, rows: Sequence[Sequence[int]]):
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise ValueError("matrix must be square and non-empty")
        self.p = p
        self.precision = precision
        self.modulus = p**precision
        self.dim = r
        self.rows = tuple(
            tuple(int(x) % self.modulus for x in row) for row in rows
        )
        # Constructing one entry validates (p, precision) once.
        PadicInt(p, precision, self.rows[0][0])

    @classmethod
    def identity(cls, p: int, precision: int, dim: int) -> "PadicMatrix":
        return cls(p, precision, [[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def block_diag(cls, blocks: Sequence["PadicMatrix"]) -> "PadicMatrix":
        if not blocks:
            raise ValueError("need at least one block")
        p, N = blocks[0].p, blocks[0].precision
        dim = sum(b.dim for b in blocks)
        rows = [[0] * dim for _ in range(dim)]
        offset = 0
        for b in blocks:
            if (b.p, b.precision) != (p, N):
                raise ValueError("mixed p-adic parameters across blocks")
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[offset + i][offset + j] = b.rows[i][j]
            offset += b.dim
        return cls(p, N, rows)

    def _require_compatible(self, other: "PadicMatrix") -> None:
        if (self.p, self.precision, self.dim) != (other.p, other.precision, other.dim):
            raise ValueError("incompatible matrices (p, precision, or dimension differ)")

    def entry(self, i: int, j: int) -> PadicInt:
        return PadicInt(self.p, self.precision, self.rows[i][j])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PadicMatrix)
            and (self.p, self.precision, self.rows) == (other.p, other.precision, other.rows)
        )

    def __hash__(self):
        return hash((self.p, self.precision, self.rows))

    def __add__(self, other: "PadicMatrix") -> "PadicMatrix":
        self._require_compatible(other)
        return PadicMatrix(
            self.p,
            self.precision,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "PadicMatrix") -> "PadicMatrix":
        self._require_compatible(other)
        return PadicMatrix(
            self.p,
            self.precision,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __matmul__(self, other: "PadicMatrix") -> "PadicMatrix":
        self._require_compatible(other)
        r = self.dim
        cols = list(zip(*other.rows))
        return PadicMatrix(
            self.p,
            self.precision,
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows],
        )

    def scale(self, c: int) -> "PadicMatrix":
        return PadicMatrix(self.p, self.precision, [[c * x for x in row] for row in self.rows])

    def is_one_mod_p(self) -> bool:
        return all(
            (x - (1 if i == j else 0)) % self.p == 0
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def det(self) -> PadicInt:
        c0 = charpoly(self).coeffs[0]
        sign = -1 if self.dim % 2 else 1
        return PadicInt(self.p, self.precision, sign * c0)

    def is_invertible(self) -> bool:
        # Exact over Z/p^N: invertible iff the mod-p reduction is.
        return self.det().is_unit()

    def inverse(self) -> "PadicMatrix":
        """Inverse via Cayley-Hamilton; needs a unit determinant."""
        c = charpoly(self).coeffs
        if c[0] % self.p == 0:
            raise NotInvertibleError("matrix is not invertible at this precision")
        r = self.dim
        ident = PadicMatrix.identity(self.p, self.precision, r)
        acc = ident.scale(0)
        power = ident
        for i in range(1, r + 1):
            acc = acc + power.scale(c[i])
            if i < r:
                power = power @ self
        neg_c0_inv = -pow(c[0], -1, self.modulus)
        return acc.scale(neg_c0_inv)

    def __pow__(self, e: int) -> "PadicMatrix":
        if not isinstance(e, int):
            raise TypeError("use mat_pow_zeta for p-adic exponents")
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        result = PadicMatrix.identity(self.p, self.precision, self.dim)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"PadicMatrix({self.dim}x{self.dim} mod {self.p}^{self.precision}: {list(map(list, self.rows))})"


class CharPoly:
    """Monic characteristic polynomial with coefficients in Z/p^N.

    Coefficients are stored ascending: coeffs[i] multiplies T^i and
    coeffs[degree] == 1.
    """

    def __init__(self, p: int, precision: int, coeffs: Sequence[int]):
        self.p = p
        self.precision = precision
        self.modulus = p**precision
        self.coeffs = tuple(int(c) % self.modulus for c in coeffs)
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> PadicInt:
        return PadicInt(self.p, self.precision, self.coeffs[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CharPoly)
            and (self.p, self.precision, self.coeffs) == (other.p, other.precision, other.coeffs)
        )

    def __hash__(self):
        return hash((self.p, self.precision, self.coeffs))

    def evaluate(self, M: PadicMatrix) -> PadicMatrix:
        if (M.p, M.precision, M.dim) != (self.p, self.precision, self.degree):
            raise ValueError("matrix does not match this characteristic polynomial")
        acc = PadicMatrix.identity(self.p, self.precision, M.dim).scale(0)
        for c in reversed(self.coeffs):
            acc = acc @ M + PadicMatrix.identity(self.p, self.precision, M.dim).scale(c)
        return acc

    def trailing_zero_count(self) -> int:
        """Number of leading T-powers dividing the polynomial at precision."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.degree  # unreachable for a monic polynomial, kept for safety

    def __repr__(self) -> str:
        terms = [
            f"{c}*T^{i}"
            for i in range(self.degree, -1, -1)
            if (c := self.coeffs[i]) != 0
        ]
        return f"CharPoly({' + '.join(terms) or '0'} mod {self.p}^{self.precision})"


def charpoly(M: PadicMatrix) -> CharPoly:
    """Characteristic polynomial of M via the Berkowitz recursion.

    Division-free, hence sound over Z/p^N.  Cost O(r^4), irrelevant at
    the dimensions used here.
    """
    m = M.modulus
    A = M.rows
    n = M.dim
    coeffs = [1]  # leading-first, for the empty principal minor
    for k in range(1, n + 1):
        a = A[k - 1][k - 1]
        R = A[k - 1][: k - 1]
        C = [A[i][k - 1] for i in range(k - 1)]
        sub = [row[: k - 1] for row in A[: k - 1]]
        q = [1, (-a) % m]
        w = list(C)
        for i in range(2, k + 1):
            if i > 2:
                w = [sum(sub[x][y] * w[y] for y in range(k - 1)) % m for x in range(k - 1)]
            q.append((-sum(rv * wv for rv, wv in zip(R, w))) % m)
        new = []
        for i in range(k + 1):
            acc = 0
            for j, cj in enumerate(coeffs):
                if 0 <= i - j < len(q):
                    acc += q[i - j] * cj
            new.append(acc % m)
        coeffs = new
    return CharPoly(M.p, M.precision, coeffs[::-1])


def mat_pow_zeta(M: PadicMatrix, zeta: PadicExponent) -> PadicMatrix:
    """M^zeta for M ≡ I mod p, by the truncated binomial series.

    M^zeta = sum_{k<N} C(zeta,k) (M-I)^k, exact mod p^N because every
    entry of (M-I)^k has valuation at least k.  For plain integer zeta
    this agrees with repeated multiplication (and inversion).
    """
    if not M.is_one_mod_p():
        raise ValueError("not a pro-p automorphism: matrix must be ≡ I mod p")
    if isinstance(zeta, PadicInt) and (zeta.p, zeta.precision) != (M.p, M.precision):
        raise ValueError("exponent and matrix have mixed p-adic parameters")
    shift = M - PadicMatrix.identity(M.p, M.precision, M.dim)
    acc = PadicMatrix.identity(M.p, M.precision, M.dim).scale(0)
    power = PadicMatrix.identity(M.p, M.precision, M.dim)
    for k in range(M.precision):
        c = binom(zeta, k, p=M.p, precision=M.precision)
        acc = acc + power.scale(c.residue)
        if k + 1 < M.precision:
            power = power @ shift
    return acc


def zeta_order(zeta: PadicExponent, p: int | None = None) -> int:
    """Order of zeta inside the (p-1)-torsion of the units.

    Plain integers are only honest roots of unity when they are ±1;
    anything else must come in as a Teichmuller-lifted PadicInt.
    """
    if isinstance(zeta, PadicInt):
        if p is not None and zeta.p != p:
            raise ValueError(f"exponent lives at p = {zeta.p}, not p = {p}")
        if pow(zeta.residue, zeta.p - 1, zeta.modulus) != 1:
            raise ValueError("exponent is not a (p-1)-st root of unity at this precision")
        z = zeta.residue % zeta.p
        d = 1
        acc = z
        while acc != 1:
            acc = acc * z % zeta.p
            d += 1
        return d
    if zeta == 1:
        return 1
    if zeta == -1:
        return 2
    raise ValueError("integer exponents other than ±1 are not roots of unity; use a Teichmuller lift")


class IntertwinerResult(NamedTuple):
    status: str  # "witness" | "none" | "undetermined"
    witness: Optional[PadicMatrix] = None


def _det_mod_p(rows, p):
    n = len(rows)
    M = [[x % p for x in row] for row in rows]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for i in range(c + 1, n):
            f = M[i][c] * inv % p
            if f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[c])]
    return det % p


def _unvec(v, r):
    # column-major: v[j*r + i] is entry (i, j)
    return [[v[j * r + i] for j in range(r)] for i in range(r)]


def _kernel_space(M: PadicMatrix, B: PadicMatrix):
    """Mod-p visible part of {D : B·D ≡ D·M mod p^N}, with full lifts.

    Returns a list of (mod_p_vector, full_vector) pairs forming a basis
    of the kernel's reduction mod p; each full vector is an honest kernel
    element at precision reducing to its partner.
    """
    r = M.dim
    m = M.modulus
    K = [[0] * (r * r) for _ in range(r * r)]
    for j in range(r):
        for i in range(r):
            row = j * r + i
            for k in range(r):
                K[row][j * r + k] = (K[row][j * r + k] + B.rows[i][k]) % m
                K[row][k * r + i] = (K[row][k * r + i] - M.rows[k][j]) % m
    unit_gens = [vec for vec, mult in kernel_mod(K, M.p, M.precision) if mult == 1]
    p = M.p
    basis = []
    for full in unit_gens:
        vec = [x % p for x in full]
        cur = list(full)
        for bvec, bfull in basis:
            piv = next(i for i, x in enumerate(bvec) if x)
            if vec[piv]:
                c = vec[piv] * pow(bvec[piv], -1, p) % p
                vec = [(a - c * b) % p for a, b in zip(vec, bvec)]
                cur = [(a - c * b) % m for a, b in zip(cur, bfull)]
        if any(vec):
            basis.append((vec, cur))
    return basis


def intertwiner_solve(
    M: PadicMatrix,
    zeta: PadicExponent,
    *,
    sample_trials: int = 512,
    seed: int = 0,
) -> IntertwinerResult:
    """Find an invertible D with M^zeta · D ≡ D · M mod p^N, if any.

    The solution set is the kernel of D -> M^zeta·D - D·M on r²-space
    over Z/p^N, computed by Smith normal form.  An invertible solution
    exists iff the kernel's reduction mod p contains an invertible
    matrix; that reduction is searched exhaustively when its dimension is
    at most EXHAUSTIVE_KERNEL_DIM, otherwise sampled (seeded), returning
    "undetermined" when sampling cannot certify either answer.
    """
    B = mat_pow_zeta(M, zeta)
    r = M.dim
    p = M.p
    basis = _kernel_space(M, B)
    dim = len(basis)
    if dim == 0:
        return IntertwinerResult("none")

    def lift_and_verify(combo):
        m = M.modulus
        full = [0] * (r * r)
        for c, (_, bfull) in zip(combo, basis):
            if c:
                full = [(a + c * b) % m for a, b in zip(full, bfull)]
        D = PadicMatrix(p, M.precision, _unvec(full, r))
        assert B @ D == D @ M, "kernel lift failed to intertwine"
        return D

    if dim <= EXHAUSTIVE_KERNEL_DIM:
        for combo in itertools.product(range(p), repeat=dim):
            if not any(combo):
                continue
            cand = [
                sum(c * bvec[i] for c, (bvec, _) in zip(combo, basis)) % p
                for i in range(r * r)
            ]
            if _det_mod_p(_unvec(cand, r), p):
                return IntertwinerResult("witness", lift_and_verify(combo))
        return IntertwinerResult("none")

    rng = Random(seed)
    for _ in range(sample_trials):
        combo = tuple(rng.randrange(p) for _ in range(dim))
        if not any(combo):
            continue
        cand = [
            sum(c * bvec[i] for c, (bvec, _) in zip(combo, basis)) % p
            for i in range(r * r)
        ]
        if _det_mod_p(_unvec(cand, r), p):
            return IntertwinerResult("witness", lift_and_verify(combo))
    return IntertwinerResult("undetermined")


def orbit_block_construct(
    p: int,
    precision: int,
    d: int,
    s: int,
    zeta: PadicExponent,
    seeds: Sequence[int] | None = None,
) -> tuple[PadicMatrix, PadicMatrix]:
    """Build (M, D) realizing s full zeta-orbits of principal-unit eigenvalues.

    M is diagonal of size d·s with eigenvalues eta_i^(zeta^j); D is the
    block cyclic shift pairing each eigenvalue with its zeta-th power, so
    M^zeta · D = D · M holds exactly at precision and D is invertible.
    """
    if d < 1 or (p - 1) % d != 0:
        raise ValueError(f"incompatible d: {d} does not divide p - 1 = {p - 1}")
    if zeta_order(zeta, p) != d:
        raise ValueError(f"incompatible d: exponent does not have order {d}")
    if s < 1:
        raise ValueError("need at least one orbit")
    if seeds is None:
        seeds = [1 + p * (i + 1) for i in range(s)]
    if len(seeds) != s:
        raise ValueError("need one eigenvalue seed per orbit")
    blocks_m = []
    blocks_d = []
    for seed in seeds:
        eta = PadicInt(p, precision, int(seed))
        if eta.residue % p != 1 or eta.residue == 1:
            raise ValueError("eigenvalue seeds must be principal units ≠ 1")
        lams = [pow_one_unit(eta, zeta**j) for j in range(d)]
        blocks_m.append(
            PadicMatrix(p, precision, [[lams[i].residue if i == j else 0 for j in range(d)] for i in range(d)])
        )
        blocks_d.append(
            PadicMatrix(p, precision, [[1 if j == (i + 1) % d else 0 for j in range(d)] for i in range(d)])
        )
    M = PadicMatrix.block_diag(blocks_m)
    D = PadicMatrix.block_diag(blocks_d)
    assert mat_pow_zeta(M, zeta) @ D == D @ M, "orbit construction failed to intertwine"
    return M, D


def rank_divisibility_check(M: PadicMatrix, zeta: PadicExponent, d: int) -> str:
    """Given an intertwiner exists and the 1-eigenspace dies at precision,
    assert dim(M) ≡ 0 mod d.

    Returns "consistent" or "violation" ("violation" would mean a bug or
    a precision artifact, never a true mathematical state).  The
    hypothesis that M - I is injective must be certifiable: det(M - I)
    ≡ 0 mod p^N raises PrecisionError.
    """
    if zeta_order(zeta, M.p) != d:
        raise ValueError(f"exponent does not have order {d}")
    shift = M - PadicMatrix.identity(M.p, M.precision, M.dim)
    if int_det([list(row) for row in shift.rows]) % M.modulus == 0:
        raise PrecisionError(
            "raise precision: det(M - I) ≡ 0 mod p^N, the trivial-fixed-part "
            "hypothesis cannot be certified"
        )
    result = intertwiner_solve(M, zeta)
    if result.status == "undetermined":
        raise UndeterminedError("intertwiner search was inconclusive; shrink the kernel or reseed")
    if result.status == "none":
        return "consistent"  # vacuous: no automorphism realizes the exponent
    return "consistent" if M.dim % d == 0 else "violation"


def random_unipotent_matrix(p: int, precision: int, dim: int, rng: Random) -> PadicMatrix:
    """Random M ≡ I mod p with det(M - I) nonzero at precision.

    Rejection-samples the p·(uniform) shift until the determinant of the
    shift survives mod p^N; deterministic given the Random instance.
    Every entry of M - I has valuation >= 1, so det(M - I) has valuation
    >= dim and the requirement is only satisfiable when N > dim.
    """
    if precision <= dim:
        raise PrecisionError(
            f"raise precision: det(M - I) always vanishes mod p^{precision} "
            f"for {dim}x{dim} matrices ≡ I mod p"
        )
    modulus = p**precision
    while True:
        rows = [
            [
                (1 if i == j else 0) + p * rng.randrange(p ** (precision - 1))
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        shift = [[rows[i][j] - (1 if i == j else 0) for j in range(dim)] for i in range(dim)]
        if int_det(shift) % modulus != 0:
            return PadicMatrix(p, precision, rows)
