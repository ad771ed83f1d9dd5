"""Tate cohomology of cyclic actions on finite abelian p-groups.

A module is a list of invariant factors (p-powers) plus named integer
matrices acting on the generators.  Fixed points, norm images, the
degree 0 and -1 Tate groups, and minus-parts of involutions are all
subquotients of Z^k between the relation lattice and Z^k, so everything
reduces to integer Smith normal form.  No number-field data appears
anywhere: class groups enter as plain invariant-factor lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import NamedTuple, Optional

from .metacyclic import GeneratorImages, MetacyclicGroup
from .padic import is_odd_prime
from .snf import (
    lattice_basis,
    mat_mul,
    quotient_invariants,
    smith_normal_form,
)


def _p_power_exponent(q: int, p: int) -> int:
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ValueError(f"invariant factor is not a power of {p}")
    return e


@dataclass(frozen=True)
class FinitePModule:
    """Finite abelian p-group ⊕ Z/q_i with named endomorphism actions.

    invariant_factors: p-powers in descending order (empty = trivial group).
    actions: name -> k×k integer matrix; column j lists the coordinates of
    the image of generator j.  Every action matrix must be compatible with
    the factors, and any declared order is verified at construction;
    an action named "J" is required to be an involution.
    """

    p: int
    invariant_factors: tuple[int, ...]
    actions: dict = field(default_factory=dict)
    orders: dict = field(default_factory=dict)

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        factors = tuple(int(q) for q in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for q in factors:
            if q < self.p:
                raise ValueError(f"invariant factor {q} is not a nontrivial power of {self.p}")
            _p_power_exponent(q, self.p)
        if any(factors[i] < factors[i + 1] for i in range(len(factors) - 1)):
            raise ValueError("invariant factors must be in descending order")
        k = len(factors)
        normalized = {}
        for name, matrix in self.actions.items():
            rows = [list(map(int, row)) for row in matrix]
            if len(rows) != k or any(len(r) != k for r in rows):
                raise ValueError(f"action {name!r} must be a {k}x{k} matrix")
            for i in range(k):
                for j in range(k):
                    need = factors[i] // gcd(factors[i], factors[j])
                    if rows[i][j] % need != 0:
                        raise ValueError(
                            f"action {name!r} is not well defined: entry ({i},{j}) "
                            f"must be divisible by {need}"
                        )
                rows[i] = [x % factors[i] for x in rows[i]]
            normalized[name] = tuple(tuple(r) for r in rows)
        object.__setattr__(self, "actions", normalized)
        declared = dict(self.orders)
        if "J" in normalized and "J" not in declared:
            declared["J"] = 2
        for name, m in declared.items():
            if name not in normalized:
                raise ValueError(f"declared order for unknown action {name!r}")
            if m < 1:
                raise ValueError("declared orders must be positive")
            if not self._is_identity(self._matrix_power(normalized[name], m)):
                raise ValueError(f"action {name!r} does not have order dividing {m}")
        object.__setattr__(self, "orders", declared)

    # -- small matrix helpers working mod the invariant factors ----------

    def _reduce(self, rows):
        return [
            [x % q for x in row] for row, q in zip(rows, self.invariant_factors)
        ]

    def _matrix_power(self, matrix, m):
        k = len(self.invariant_factors)
        acc = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        base = [list(r) for r in matrix]
        while m:
            if m & 1:
                acc = self._reduce(mat_mul(acc, base))
            base = self._reduce(mat_mul(base, base))
            m >>= 1
        return acc

    def _is_identity(self, rows):
        k = len(self.invariant_factors)
        return all(
            (rows[i][j] - (1 if i == j else 0)) % self.invariant_factors[i] == 0
            for i in range(k)
            for j in range(k)
        )

    def action(self, name: str):
        if name not in self.actions:
            raise ValueError(f"no action named {name!r} on this module")
        return [list(r) for r in self.actions[name]]

    def size(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial_action(self, name: str) -> bool:
        return self._is_identity(self.action(name))

    def elements(self):
        """All elements as coordinate tuples (test-scale modules only)."""
        from itertools import product as iproduct

        return list(iproduct(*(range(q) for q in self.invariant_factors)))

    def apply(self, name_or_matrix, x):
        rows = self.action(name_or_matrix) if isinstance(name_or_matrix, str) else name_or_matrix
        return tuple(
            sum(rows[i][j] * x[j] for j in range(len(x))) % q
            for i, q in enumerate(self.invariant_factors)
        )


def _relation_columns(module: FinitePModule):
    k = len(module.invariant_factors)
    return [
        [module.invariant_factors[j] if i == j else 0 for j in range(k)]
        for i in range(k)
    ]


def _int_kernel_columns(A):
    """Basis of the integer kernel of A, as a cols×(nullity) matrix."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    S, _, V = smith_normal_form(A)
    rank = sum(1 for i in range(min(rows, cols)) if S[i][i] != 0)
    return [[V[r][i] for i in range(rank, cols)] for r in range(cols)]


def _preimage_lattice(module: FinitePModule, F):
    """Basis of {x in Z^k : F·x lies in the relation lattice}.

    Solving F·x = Q·y as an integer kernel of [F | Q] and projecting onto
    the x-coordinates spans exactly the preimage; the relation columns are
    appended so the generator set is visibly full rank.
    """
    k = len(module.invariant_factors)
    Q = _relation_columns(module)
    stacked = [F[i] + Q[i] for i in range(k)]  # k x 2k, columns [F | Q]
    ker = _int_kernel_columns(stacked)
    gens = [ker[r] + Q[r] for r in range(k)]
    return lattice_basis(gens)


def _image_lattice(module: FinitePModule, F):
    """Basis of F·Z^k + relation lattice."""
    k = len(module.invariant_factors)
    Q = _relation_columns(module)
    return lattice_basis([F[r] + Q[r] for r in range(k)])


def _structure(module: FinitePModule, X, Y) -> tuple[int, ...]:
    invs = quotient_invariants(X, Y)
    for q in invs:
        _p_power_exponent(q, module.p)
    return invs


def _shift_matrix(module: FinitePModule, name: str):
    T = module.action(name)
    k = len(T)
    return [[T[i][j] - (1 if i == j else 0) for j in range(k)] for i in range(k)]


def _norm_matrix(module: FinitePModule, name: str, m: int):
    T = module.action(name)
    k = len(T)
    acc = [[0] * k for _ in range(k)]
    power = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for _ in range(m):
        acc = module._reduce([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, power)])
        power = module._reduce(mat_mul(T, power))
    return acc


def _require_order(module: FinitePModule, name: str, m: int):
    if not module._is_identity(module._matrix_power(module.action(name), m)):
        raise ValueError(f"action {name!r} does not satisfy {name}^{m} = identity")


def fixed_points(module: FinitePModule, action: str = "tau") -> FinitePModule:
    """Kernel of (action - 1), as a bare structure (no actions carried)."""
    if not module.invariant_factors:
        return FinitePModule(module.p, ())
    X = _preimage_lattice(module, _shift_matrix(module, action))
    L = lattice_basis(_relation_columns(module))
    return FinitePModule(module.p, _structure(module, X, L))


def norm_image(module: FinitePModule, action: str = "tau", m: int | None = None) -> FinitePModule:
    """Image of 1 + T + ... + T^(m-1) for an action T with T^m = identity."""
    if not module.invariant_factors:
        return FinitePModule(module.p, ())
    if m is None:
        m = module.orders.get(action)
        if m is None:
            raise ValueError(f"order of {action!r} neither declared nor given")
    _require_order(module, action, m)
    Y = _image_lattice(module, _norm_matrix(module, action, m))
    L = lattice_basis(_relation_columns(module))
    return FinitePModule(module.p, _structure(module, Y, L))


def tate_h0(module: FinitePModule, action: str = "tau", m: int | None = None) -> FinitePModule:
    """Degree-0 Tate cohomology: fixed points modulo norms."""
    if not module.invariant_factors:
        return FinitePModule(module.p, ())
    if m is None:
        m = module.orders.get(action)
        if m is None:
            raise ValueError(f"order of {action!r} neither declared nor given")
    _require_order(module, action, m)
    fix = _preimage_lattice(module, _shift_matrix(module, action))
    norms = _image_lattice(module, _norm_matrix(module, action, m))
    return FinitePModule(module.p, _structure(module, fix, norms))


def tate_hm1(module: FinitePModule, action: str = "tau", m: int | None = None) -> FinitePModule:
    """Degree-(-1) Tate cohomology: norm kernel modulo the augmentation image."""
    if not module.invariant_factors:
        return FinitePModule(module.p, ())
    if m is None:
        m = module.orders.get(action)
        if m is None:
            raise ValueError(f"order of {action!r} neither declared nor given")
    _require_order(module, action, m)
    norm_kernel = _preimage_lattice(module, _norm_matrix(module, action, m))
    aug_image = _image_lattice(module, _shift_matrix(module, action))
    return FinitePModule(module.p, _structure(module, norm_kernel, aug_image))


def minus_part(module: FinitePModule, action: str = "J") -> FinitePModule:
    """Image of the idempotent (1 - J)/2 (p odd, so 2 is invertible).

    The result carries J = -identity, so taking the minus part twice is
    the identity on structures.
    """
    if not module.invariant_factors:
        return FinitePModule(module.p, ())
    J = module.action(action)
    if not module._is_identity(module._matrix_power(J, 2)):
        raise ValueError(f"action {action!r} is not an involution")
    k = len(module.invariant_factors)
    inv2 = pow(2, -1, module.invariant_factors[0])
    E = module._reduce(
        [
            [((1 if i == j else 0) - J[i][j]) * inv2 for j in range(k)]
            for i in range(k)
        ]
    )
    image = _image_lattice(module, E)
    L = lattice_basis(_relation_columns(module))
    invs = _structure(module, image, L)
    kk = len(invs)
    minus_action = {"J": [[-1 if i == j else 0 for j in range(kk)] for i in range(kk)]} if kk else {}
    return FinitePModule(module.p, invs, actions=minus_action)


def herbrand_check(module: FinitePModule, action: str = "tau", m: int | None = None) -> bool:
    """|H^0| == |H^-1|, true for every finite module; a failure is an SNF bug."""
    return tate_h0(module, action, m).size() == tate_hm1(module, action, m).size()


class ObstructionResult(NamedTuple):
    holds: bool
    witness: Optional[GeneratorImages] = None


def theorem2_cyclic_obstruction(module: FinitePModule, action: str = "tau") -> ObstructionResult:
    """Can an automorphism of A1 ⋊ ⟨tau⟩ send tau to y·tau^-1?

    For cyclic A1 with a nontrivial order-p action the answer is provably
    no; this delegates to the exhaustive generator-image search and
    reports the verdict, with a witness if the impossible ever happened.
    """
    if len(module.invariant_factors) != 1:
        raise ValueError("hypothesis requires cyclic A1 (exactly one invariant factor)")
    q = module.invariant_factors[0]
    e = _p_power_exponent(q, module.p)
    if e < 2:
        raise ValueError("cyclic A1 must have order at least p^2 to carry a nontrivial action")
    t = module.action(action)[0][0]
    if t % q == 1 % q:
        raise ValueError(f"action {action!r} must be nontrivial")
    if pow(t, module.p, q) != 1:
        raise ValueError(f"action {action!r} must have order p = {module.p}")
    group = MetacyclicGroup(module.p, e - 1)
    witness = group.find_inverting_automorphism()
    return ObstructionResult(witness is None, witness)
