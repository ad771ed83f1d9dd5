import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anticyclo.snf import (
    int_det,
    kernel_mod,
    lattice_basis,
    mat_mul,
    quotient_invariants,
    smith_normal_form,
    smith_normal_form_mod_prime_power,
    solve_columns,
)


@st.composite
def int_matrices(draw):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    return [
        [draw(st.integers(-40, 40)) for _ in range(cols)] for _ in range(rows)
    ]


@given(int_matrices())
@settings(max_examples=200)
def test_smith_normal_form_properties(A):
    S, U, V = smith_normal_form(A)
    assert mat_mul(mat_mul(U, A), V) == S
    assert abs(int_det(U)) == 1
    assert abs(int_det(V)) == 1
    rows, cols = len(A), len(A[0])
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert S[i][j] == 0
    diag = [S[i][i] for i in range(min(rows, cols))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0


def test_int_det_matches_permutation_expansion():
    from itertools import permutations

    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 4)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        expected = 0
        for perm in permutations(range(n)):
            sign = 1
            seen = [False] * n
            for s in range(n):
                if seen[s]:
                    continue
                ln, j = 0, s
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    ln += 1
                if ln % 2 == 0:
                    sign = -sign
            prod = sign
            for i in range(n):
                prod *= A[i][perm[i]]
            expected += prod
        assert int_det(A) == expected


def test_quotient_invariants_basic():
    ident = [[1, 0], [0, 1]]
    assert quotient_invariants(ident, [[9, 0], [0, 3]]) == (9, 3)
    assert quotient_invariants(ident, ident) == ()
    # index computation survives a change of basis of the sublattice
    assert quotient_invariants(ident, [[9, 9], [0, 3]]) == (9, 3)


def test_solve_columns_and_errors():
    X = [[2, 0], [0, 3]]
    Y = [[4, 2], [3, 0]]
    C = solve_columns(X, Y)
    assert mat_mul(X, C) == Y
    with pytest.raises(ValueError, match="no integral solution"):
        solve_columns(X, [[1, 0], [0, 1]])
    with pytest.raises(ValueError, match="singular"):
        solve_columns([[1, 1], [1, 1]], ident := [[1, 0], [0, 1]])


def test_lattice_basis_spans_the_same_lattice():
    rng = random.Random(3)
    for _ in range(100):
        k = rng.randint(1, 3)
        m = rng.randint(k, k + 3)
        while True:
            G = [[rng.randint(-8, 8) for _ in range(m)] for _ in range(k)]
            square = [row[:k] for row in G]
            if int_det(square) != 0:
                break
        B = lattice_basis(G)
        # every generator is an integer combination of the basis…
        solve_columns(B, G)
        # …and the basis columns are combinations of the generators: indices agree
        assert abs(int_det(B)) > 0


def test_local_ring_snf_agrees_with_integer_snf():
    from math import gcd

    rng = random.Random(23)
    for _ in range(60):
        p, precision = rng.choice([(3, 3), (5, 2)])
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        A = [[rng.randrange(p**precision) for _ in range(cols)] for _ in range(rows)]
        diag, V = smith_normal_form_mod_prime_power(A, p, precision)
        S, _, _ = smith_normal_form(A)
        expected = [gcd(S[i][i] if i < rows else 0, p**precision) % p**precision
                    for i in range(cols)]
        got = [d % p**precision for d in diag]
        assert sorted(got) == sorted(expected)
        assert int_det(V) % p != 0  # V invertible over the local ring


def test_kernel_mod_generates_the_kernel():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 3)
        m = 27
        A = [[rng.randrange(m) for _ in range(n)] for _ in range(n)]
        gens = kernel_mod(A, 3, 3)
        # brute-force kernel for comparison
        from itertools import product

        kernel = {
            v
            for v in product(range(m), repeat=n)
            if all(sum(A[i][j] * v[j] for j in range(n)) % m == 0 for i in range(n))
        }
        span = {tuple([0] * n)}
        frontier = [tuple([0] * n)]
        while frontier:
            new = []
            for x in frontier:
                for g, _ in gens:
                    y = tuple((a + b) % m for a, b in zip(x, g))
                    if y not in span:
                        span.add(y)
                        new.append(y)
            frontier = new
        assert span == kernel
