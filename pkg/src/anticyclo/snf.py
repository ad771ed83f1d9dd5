"""Exact integer matrix normal forms and lattice bookkeeping.

Smith normal form with unimodular transforms is the workhorse for every
kernel, image, and subquotient computation on finite abelian groups in
this package.  All arithmetic is exact (Python integers); nothing here
knows about p-adic precision.
"""

from __future__ import annotations

from math import gcd


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def int_det(A) -> int:
    """Determinant of an integer matrix, fraction-free (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A):
    """Return (S, U, V) with S = U·A·V diagonal, U and V unimodular.

    Diagonal entries are non-negative and satisfy the divisibility chain
    S[0][0] | S[1][1] | ...  Pivots are chosen by minimal absolute value,
    which keeps intermediate entries small for the matrices seen here.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(map(int, row)) for row in A]
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(rows):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(cols):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def add_row(src, dst, c):
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in range(rows):
            M[r][dst] += c * M[r][src]
        for r in range(cols):
            V[r][dst] += c * V[r][src]

    def negate_row(i):
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < best):
                    best = abs(M[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            if M[t][t] < 0:
                negate_row(t)
            for i in range(t + 1, rows):
                if M[i][t] != 0:
                    add_row(t, i, -(M[i][t] // M[t][t]))
            for j in range(t + 1, cols):
                if M[t][j] != 0:
                    add_col(t, j, -(M[t][j] // M[t][t]))
            # Floor-division remainders lie in [0, pivot); any survivor is a
            # strictly smaller pivot candidate, so this loop terminates.
            swapped = False
            for i in range(t + 1, rows):
                if M[i][t] != 0:
                    swap_rows(t, i)
                    swapped = True
                    break
            if not swapped:
                for j in range(t + 1, cols):
                    if M[t][j] != 0:
                        swap_cols(t, j)
                        swapped = True
                        break
            if not swapped:
                break
        # Enforce the divisibility chain before moving on.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if M[i][j] % M[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    return M, U, V


def lattice_basis(gens):
    """Triangular basis of the full-rank lattice spanned by the columns of gens.

    gens is k×m with m >= k; raises if the columns do not span a rank-k
    lattice.  The result is k×k lower-triangular with positive diagonal.
    """
    k = len(gens)
    cols = [[gens[r][j] for r in range(k)] for j in range(len(gens[0]))]
    basis = []
    for r in range(k):
        while True:
            live = [c for c in cols if c[r] != 0]
            if not live:
                raise ValueError("generators do not span a full-rank lattice")
            if len(live) == 1:
                break
            a = min(live, key=lambda c: abs(c[r]))
            if a[r] < 0:
                for i in range(k):
                    a[i] = -a[i]
            for b in live:
                if b is a:
                    continue
                q = b[r] // a[r]
                if q:
                    for i in range(k):
                        b[i] -= q * a[i]
        pivot = next(c for c in cols if c[r] != 0)
        if pivot[r] < 0:
            for i in range(k):
                pivot[i] = -pivot[i]
        basis.append(pivot)
        cols.remove(pivot)
    return [[basis[j][i] for j in range(k)] for i in range(k)]


def solve_columns(X, Y):
    """Solve X·C = Y over the integers, X square nonsingular.

    Raises ValueError when no integral solution exists (i.e. the columns
    of Y are not in the lattice spanned by the columns of X).
    """
    S, U, V = smith_normal_form(X)
    W = mat_mul(U, Y)
    for i in range(len(X)):
        d = S[i][i]
        if d == 0:
            raise ValueError("matrix is singular")
        for j in range(len(W[i])):
            if W[i][j] % d != 0:
                raise ValueError("no integral solution")
            W[i][j] //= d
    return mat_mul(V, W)


def quotient_invariants(X, Y):
    """Invariant factors of lattice-quotient X/Y, descending, 1s dropped.

    X and Y are k×k bases of full-rank lattices with Y ⊆ X.
    """
    C = solve_columns(X, Y)
    S, _, _ = smith_normal_form(C)
    ds = sorted((abs(S[i][i]) for i in range(len(C))), reverse=True)
    return tuple(d for d in ds if d > 1)


def smith_normal_form_mod_prime_power(A, p: int, precision: int):
    """Diagonalize A over the local ring Z/p^N: returns (diag, V).

    diag[i] is p^(v_i) with non-decreasing v_i (0 entries mean the image
    vanishes in that direction) and V is invertible mod p^N with
    U·A·V ≡ diag for a suitable invertible U (not tracked).  Over a local
    ring the minimal-valuation entry divides everything in sight, so one
    elimination pass per pivot suffices and entries stay reduced mod p^N;
    this avoids the coefficient blowup of integer SNF.
    """
    m = p**precision
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[x % m for x in row] for row in A]
    V = identity_matrix(cols)

    def valuation(x):
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    t = 0
    while t < min(rows, cols):
        best = None
        best_v = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j]:
                    v = valuation(M[i][j])
                    if best_v is None or v < best_v:
                        best_v = v
                        best = (i, j)
            if best_v == 0:
                break
        if best is None:
            break
        bi, bj = best
        M[t], M[bi] = M[bi], M[t]
        if bj != t:
            for r in range(rows):
                M[r][t], M[r][bj] = M[r][bj], M[r][t]
            for r in range(cols):
                V[r][t], V[r][bj] = V[r][bj], V[r][t]
        scale = pow(M[t][t] // p**best_v, -1, m)
        M[t] = [x * scale % m for x in M[t]]  # pivot becomes exactly p^v
        for i in range(rows):
            if i != t and M[i][t]:
                q = M[i][t] // p**best_v
                M[i] = [(a - q * b) % m for a, b in zip(M[i], M[t])]
        for j in range(cols):
            if j != t and M[t][j]:
                q = M[t][j] // p**best_v
                for r in range(rows):
                    M[r][j] = (M[r][j] - q * M[r][t]) % m
                for r in range(cols):
                    V[r][j] = (V[r][j] - q * V[r][t]) % m
        t += 1
    diag = [M[i][i] if i < rows and i < cols else 0 for i in range(cols)]
    return diag, V


def kernel_mod(A, p: int, precision: int):
    """Generators of {x in (Z/p^N)^n : A·x ≡ 0 mod p^N}.

    Returns a list of (vector, multiplier) pairs: each generator is
    multiplier · (an invertible-image column) reduced mod p^N, and the
    pairs with multiplier 1 are exactly the ones visible mod p.  The
    generated subgroup is the full kernel.
    """
    m = p**precision
    n = len(A[0]) if A else 0
    diag, V = smith_normal_form_mod_prime_power(A, p, precision)
    gens = []
    for i in range(n):
        mult = m // gcd(diag[i], m)
        if mult == m:
            continue  # generator would be 0 mod p^N
        vec = [V[r][i] * mult % m for r in range(n)]
        gens.append((vec, mult))
    return gens
