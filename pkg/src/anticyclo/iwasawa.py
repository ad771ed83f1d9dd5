"""Growth invariants of elementary Lambda-modules and parity audits of
matrix models of the Galois action on a tower.

Layer sizes: for E = ⊕ Λ/(p^mu_i) ⊕ ⊕ Λ/(g_j) the quotient by
omega_n = (1+T)^(p^n) - 1 has p-exponent sum(mu_i·p^n) plus the p-adic
valuation of the resultant of g_j and omega_n; the latter is computed as
an exact integer determinant (multiplication by omega_n on Z[T]/(g)), so
no precision is lost before the final valuation.

Parity audits: a GammaModel packages the action matrix of a topological
generator on a free rank-r quotient, an intertwining matrix for an
order-d torsion exponent, and the certified size of its generalized
1-eigenblock.  When the model's invariants hold, r minus the T-multiplicity
of the characteristic polynomial of (generator - 1) is a multiple of d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence, Union

from .cohomology import FinitePModule
from .errors import ModelInvariantError, PrecisionError, UndeterminedError
from .linalg import (
    PadicMatrix,
    charpoly,
    intertwiner_solve,
    mat_pow_zeta,
    orbit_block_construct,
    zeta_order,
)
from .padic import PadicExponent, is_odd_prime, teichmuller
from .snf import int_det, smith_normal_form


# ----------------------------------------------------------------------
# integer polynomials (ascending coefficient lists)
# ----------------------------------------------------------------------

def _poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_mod_monic(a, g):
    """Remainder of a modulo the monic polynomial g."""
    a = list(a)
    dg = len(g) - 1
    for i in range(len(a) - 1, dg - 1, -1):
        c = a[i]
        if c:
            for j in range(dg + 1):
                a[i - dg + j] -= c * g[j]
    return _poly_trim(a[:dg] or [0])


def _poly_pow_mod(base, e, g):
    result = [1]
    cur = _poly_mod_monic(base, g)
    while e:
        if e & 1:
            result = _poly_mod_monic(_poly_mul(result, cur), g)
        cur = _poly_mod_monic(_poly_mul(cur, cur), g)
        e >>= 1
    return result


def omega_n(p: int, n: int) -> list[int]:
    """(1 + T)^(p^n) - 1, the level-n kernel polynomial (ascending coeffs)."""
    if n < 0:
        raise ValueError("layer index must be non-negative")
    q = p**n
    return [comb(q, k) if k else 0 for k in range(q + 1)]


# ----------------------------------------------------------------------
# elementary Lambda-modules and their layer growth
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ElementaryLambdaModule:
    """⊕ Λ/(p^mu_i) ⊕ ⊕ Λ/(g_j) with each g_j distinguished.

    poly_parts holds ascending integer coefficient tuples; distinguished
    means monic of degree >= 1 with all lower coefficients divisible by p.
    """

    p: int
    mu_parts: tuple[int, ...] = ()
    poly_parts: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        object.__setattr__(self, "mu_parts", tuple(int(m) for m in self.mu_parts))
        object.__setattr__(
            self, "poly_parts", tuple(tuple(int(c) for c in g) for g in self.poly_parts)
        )
        for m in self.mu_parts:
            if m < 1:
                raise ValueError("mu-part exponents must be positive")
        for g in self.poly_parts:
            if len(g) < 2 or g[-1] != 1:
                raise ValueError(f"{list(g)} is not monic of degree >= 1")
            if any(c % self.p for c in g[:-1]):
                raise ValueError(f"{list(g)} is not distinguished: lower coefficients must be ≡ 0 mod {self.p}")


def invariants_of(module: ElementaryLambdaModule) -> tuple[int, int]:
    """(lambda, mu) read off the structure: total degree and total p-exponent."""
    lam = sum(len(g) - 1 for g in module.poly_parts)
    mu = sum(module.mu_parts)
    return lam, mu


def _poly_quotient_exponent(g, p: int, n: int) -> int:
    """p-exponent of Λ/(g, omega_n): v_p of det(mult-by-omega_n on Z[T]/(g))."""
    deg = len(g) - 1
    w = _poly_pow_mod([1, 1], p**n, g)
    w = _poly_trim([w[0] - 1] + list(w[1:]))
    cols = []
    cur = list(w) + [0] * (deg - len(w))
    for i in range(deg):
        if i:
            shifted = [0] + cur[: deg - 1]
            spill = cur[deg - 1]
            cur = [a - spill * b for a, b in zip(shifted, g[:deg])]
        cols.append(list(cur))
    det = int_det([[cols[j][i] for j in range(deg)] for i in range(deg)])
    if det == 0:
        raise ValueError(f"quotient not finite at level {n}: {list(g)} shares a root with omega_{n}")
    det = abs(det)
    v = 0
    while det % p == 0:
        det //= p
        v += 1
    return v


def layer_size_exponent(module: ElementaryLambdaModule, n: int) -> int:
    """e_n with |E/omega_n·E| = p^(e_n); additive over the factors."""
    if n < 0:
        raise ValueError("layer index must be non-negative")
    e = sum(m * module.p**n for m in module.mu_parts)
    for g in module.poly_parts:
        e += _poly_quotient_exponent(g, module.p, n)
    return e


@dataclass(frozen=True)
class IwasawaInvariants:
    lam: int
    mu: int
    nu: int
    stable_from: int


def fit_invariants(exponents: Sequence[int], p: int) -> IwasawaInvariants:
    """Recover (lambda, mu, nu, n0) from a tail of e_n = lambda·n + mu·p^n + nu.

    mu comes from the last second difference measured against p^n, lambda
    from the last first difference with the mu-term removed, nu as the
    anchored residual; stable_from is the first index from which the
    formula matches the data all the way to the end.
    """
    e = [int(x) for x in exponents]
    L = len(e)
    if L < 4:
        raise ValueError("need at least 4 layer exponents to fit")
    d = [e[i + 1] - e[i] for i in range(L - 1)]
    dd = d[-1] - d[-2]
    denom = p ** (L - 3) * (p - 1) ** 2
    if dd % denom:
        raise ValueError("not eventually of Iwasawa shape: second differences do not match any mu")
    mu = dd // denom
    lam = d[-1] - mu * p ** (L - 2) * (p - 1)
    nu = e[-1] - lam * (L - 1) - mu * p ** (L - 1)
    if mu < 0 or lam < 0:
        raise ValueError("not eventually of Iwasawa shape: fitted invariants are negative")

    def formula(n):
        return lam * n + mu * p**n + nu

    if any(formula(n) != e[n] for n in (L - 3, L - 2, L - 1)):
        raise ValueError("not eventually of Iwasawa shape: tail does not fit")
    stable = L - 3
    while stable > 0 and formula(stable - 1) == e[stable - 1]:
        stable -= 1
    return IwasawaInvariants(lam, mu, nu, stable)


# ----------------------------------------------------------------------
# matrix models of the tower action
# ----------------------------------------------------------------------

@dataclass
class GammaModel:
    """Action data on a free rank-r quotient at precision.

    M is the matrix of the topological generator; D, when present,
    intertwines M^zeta with M and is invertible; t_block is the certified
    size of the identity block built into M (its generalized eigenvalue-1
    part), None when nothing was certified at construction.
    """

    M: PadicMatrix
    D: Optional[PadicMatrix]
    zeta: PadicExponent
    d: int
    t_block: Optional[int] = None


def validate_gamma_model(model: GammaModel) -> None:
    """Check the declared invariants; raises ModelInvariantError."""
    M = model.M
    if zeta_order(model.zeta, M.p) != model.d:
        raise ModelInvariantError(f"model invariant violated: exponent does not have order {model.d}")
    if not M.is_one_mod_p():
        raise ModelInvariantError("model invariant violated: generator matrix is not ≡ I mod p")
    if model.t_block is not None and not 0 <= model.t_block <= M.dim:
        raise ModelInvariantError("model invariant violated: certified block size out of range")
    if model.D is not None:
        if (model.D.p, model.D.precision, model.D.dim) != (M.p, M.precision, M.dim):
            raise ModelInvariantError("model invariant violated: D incompatible with M")
        if not model.D.is_invertible():
            raise ModelInvariantError("model invariant violated: D is not invertible")
        if mat_pow_zeta(M, model.zeta) @ model.D != model.D @ M:
            raise ModelInvariantError("model invariant violated: D does not intertwine M^zeta with M")


def default_zeta(p: int, precision: int, d: int) -> PadicExponent:
    """A canonical exponent of exact order d: -1 for d = 2, else a
    Teichmuller lift of the smallest residue of order d."""
    if d == 1:
        return 1
    if d == 2:
        return -1
    if (p - 1) % d != 0:
        raise ValueError(f"no exponent of order {d} exists for p = {p}")
    for a in range(2, p):
        acc, order = a, 1
        while acc != 1:
            acc = acc * a % p
            order += 1
        if order == d:
            return teichmuller(a, p, precision)
    raise ValueError(f"no residue of order {d} mod {p}")  # unreachable for d | p-1


def build_gamma_model(
    p: int,
    precision: int,
    d: int,
    orbit_count: int,
    t_block: int = 0,
    zeta: PadicExponent | None = None,
    seeds: Sequence[int] | None = None,
) -> GammaModel:
    """Assemble a model with orbit_count full eigenvalue orbits plus an
    identity block of size t_block; dimension is d·orbit_count + t_block."""
    if orbit_count < 0 or t_block < 0 or orbit_count + t_block == 0:
        raise ValueError("need a non-empty model")
    if zeta is None:
        zeta = default_zeta(p, precision, d)
    blocks_m = []
    blocks_d = []
    if orbit_count:
        M_orb, D_orb = orbit_block_construct(p, precision, d, orbit_count, zeta, seeds)
        blocks_m.append(M_orb)
        blocks_d.append(D_orb)
    if t_block:
        ident = PadicMatrix.identity(p, precision, t_block)
        blocks_m.append(ident)
        blocks_d.append(ident)
    M = PadicMatrix.block_diag(blocks_m)
    D = PadicMatrix.block_diag(blocks_d)
    model = GammaModel(M, D, zeta, d, t_block=t_block)
    validate_gamma_model(model)
    return model


def _acyclic_support(shift_rows, indices) -> bool:
    """No directed cycle (including loops) among the nonzero entries of the
    principal submatrix on `indices`; then its charpoly is exactly T^k."""
    edges = {
        i: [j for j in indices if j != i and shift_rows[j][i] != 0] for i in indices
    }
    if any(shift_rows[i][i] != 0 for i in indices):
        return False
    seen = {}

    def visit(node):
        seen[node] = 1
        for nxt in edges[node]:
            state = seen.get(nxt)
            if state == 1:
                return False
            if state is None and not visit(nxt):
                return False
        seen[node] = 2
        return True

    return all(visit(i) for i in indices if i not in seen)


def t_multiplicity(M: PadicMatrix, certified_t_block: Optional[int] = None) -> int:
    """Multiplicity of T in the characteristic polynomial of (M - I).

    Trailing coefficients that vanish mod p^N are only trusted when
    either the caller certifies the constructed block size, or a
    block-triangular split with an acyclic T-part and a complement of
    nonzero determinant certifies them structurally; otherwise the
    vanishing is indistinguishable from a precision artifact and a
    PrecisionError asks for a larger N.
    """
    ident = PadicMatrix.identity(M.p, M.precision, M.dim)
    shift = M - ident
    cp = charpoly(shift)
    s_obs = cp.trailing_zero_count()
    if certified_t_block is not None:
        if s_obs < certified_t_block:
            raise ModelInvariantError(
                f"model invariant violated: certified T-block of size {certified_t_block} "
                f"but coefficient {s_obs} is nonzero at precision"
            )
        if s_obs > certified_t_block:
            raise PrecisionError(
                f"indistinguishable from zero at precision N={M.precision} - raise N: "
                f"{s_obs} trailing coefficients vanish but only {certified_t_block} are certified"
            )
        return s_obs
    if s_obs == 0:
        return 0
    rows = shift.rows
    r = M.dim
    for subset in itertools.combinations(range(r), s_obs):
        inside = set(subset)
        rest = [i for i in range(r) if i not in inside]
        upper = all(rows[i][j] == 0 for i in rest for j in subset)
        lower = all(rows[i][j] == 0 for i in subset for j in rest)
        if not (upper or lower):
            continue
        if not _acyclic_support(rows, subset):
            continue
        comp = [[rows[i][j] for j in rest] for i in rest]
        if int_det(comp) % M.modulus != 0:
            return s_obs
    raise PrecisionError(
        f"indistinguishable from zero at precision N={M.precision} - raise N: "
        f"{s_obs} trailing coefficients vanish without structural certification"
    )


def parity_audit(model: GammaModel) -> str:
    """Check r ≡ s mod d on a validated model; the expected verdict is
    always "consistent", and a "violation" reports a bug, never math."""
    validate_gamma_model(model)
    M = model.M
    if model.D is None:
        found = intertwiner_solve(M, model.zeta)
        if found.status == "undetermined":
            raise UndeterminedError("cannot establish the intertwining hypothesis for this model")
        if found.status == "none":
            raise ModelInvariantError(
                "model invariant violated: no invertible intertwiner exists, "
                "the model does not realize the exponent"
            )
    s = t_multiplicity(M, model.t_block)
    return "consistent" if (M.dim - s) % model.d == 0 else "violation"


# ----------------------------------------------------------------------
# coinvariants
# ----------------------------------------------------------------------

def coinvariants(
    module: Union[FinitePModule, GammaModel], action: str = "tau"
) -> FinitePModule:
    """X/(action - 1)X as an invariant-factor list.

    For a FinitePModule the named action is used.  For a GammaModel the
    generator matrix acts on (Z/p^N)^r; the quotient is only reported
    when it is certifiably finite at precision (no factor hits p^N).
    """
    if isinstance(module, GammaModel):
        M = module.M
        r = M.dim
        stacked = [
            [M.modulus if i == j else 0 for j in range(r)]
            + [M.rows[i][j] - (1 if i == j else 0) for j in range(r)]
            for i in range(r)
        ]
        S, _, _ = smith_normal_form(stacked)
        invs = sorted((S[i][i] for i in range(r) if S[i][i] > 1), reverse=True)
        if any(q >= M.modulus for q in invs):
            raise PrecisionError(
                "raise precision: coinvariants are not certifiably finite at this N"
            )
        return FinitePModule(M.p, tuple(invs))
    k = len(module.invariant_factors)
    if k == 0:
        return FinitePModule(module.p, ())
    T = module.action(action)
    stacked = [
        [module.invariant_factors[j] if i == j else 0 for j in range(k)]
        + [T[i][j] - (1 if i == j else 0) for j in range(k)]
        for i in range(k)
    ]
    S, _, _ = smith_normal_form(stacked)
    invs = sorted((S[i][i] for i in range(k) if S[i][i] > 1), reverse=True)
    return FinitePModule(module.p, tuple(invs))
