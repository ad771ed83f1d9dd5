import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from anticyclo.errors import NotInvertibleError
from anticyclo.padic import PadicInt, binom, inv, pow_one_unit, teichmuller, val


def test_valuation_examples():
    assert val(PadicInt(3, 3, 18)) == 2
    assert val(PadicInt(3, 3, 5)) == 0
    assert val(PadicInt(3, 3, 0)) == math.inf


def test_inverse_examples():
    assert inv(PadicInt(3, 3, 2)).residue == 14
    assert inv(PadicInt(3, 3, 1)).residue == 1
    with pytest.raises(NotInvertibleError, match="not invertible at this precision"):
        inv(PadicInt(3, 3, 3))


def test_inverse_exhaustive_small():
    for precision in (1, 2, 3):
        modulus = 3**precision
        for r in range(modulus):
            x = PadicInt(3, precision, r)
            if r % 3 == 0:
                with pytest.raises(NotInvertibleError):
                    inv(x)
            else:
                assert (inv(x) * x).residue == 1


def test_construction_normalizes_and_validates():
    assert PadicInt(3, 2, -1).residue == 8
    assert PadicInt(5, 1, 12).residue == 2
    with pytest.raises(ValueError):
        PadicInt(4, 2, 1)
    with pytest.raises(ValueError):
        PadicInt(2, 2, 1)
    with pytest.raises(ValueError):
        PadicInt(3, 0, 1)


def test_mixed_parameters_are_hard_errors():
    with pytest.raises(ValueError, match="mixed p-adic parameters"):
        PadicInt(3, 2, 1) + PadicInt(3, 3, 1)
    with pytest.raises(ValueError, match="mixed p-adic parameters"):
        PadicInt(3, 2, 1) * PadicInt(5, 2, 1)


small_odd_primes = st.sampled_from([3, 5, 7])


@st.composite
def padic_triples(draw):
    p = draw(small_odd_primes)
    precision = draw(st.integers(1, 4))
    modulus = p**precision
    residues = draw(st.tuples(*(st.integers(0, modulus - 1) for _ in range(3))))
    return [PadicInt(p, precision, r) for r in residues]


@given(padic_triples())
def test_ring_laws(xs):
    x, y, z = xs
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x


def test_teichmuller_examples():
    assert teichmuller(1, 5, 2).residue == 1
    assert teichmuller(2, 3, 3).residue == 26  # -1 lifts itself
    assert teichmuller(2, 5, 2).residue == 7
    with pytest.raises(ValueError):
        teichmuller(10, 5, 2)


def test_teichmuller_brute_force_oracle():
    # unique residue mod 25 with x^4 = 1 and x = 2 mod 5
    hits = [x for x in range(25) if pow(x, 4, 25) == 1 and x % 5 == 2]
    assert hits == [teichmuller(2, 5, 2).residue]


def test_teichmuller_is_torsion_and_congruent():
    for p in (3, 5, 7):
        for precision in range(1, 5):
            modulus = p**precision
            for a in range(1, p):
                z = teichmuller(a, p, precision)
                assert pow(z.residue, p - 1, modulus) == 1
                assert z.residue % p == a


def test_one_unit_power_examples():
    assert pow_one_unit(PadicInt(3, 2, 4), 2).residue == 7  # 1 + 2*3 mod 9
    assert pow_one_unit(PadicInt(3, 3, 4), 0).residue == 1
    zeta = teichmuller(2, 5, 2)
    assert pow_one_unit(PadicInt(5, 2, 6), zeta).residue == pow(6, 7, 25)


def test_one_unit_power_rejects_bad_base():
    with pytest.raises(ValueError, match="principal unit"):
        pow_one_unit(PadicInt(3, 3, 2), teichmuller(2, 3, 3))


def test_one_unit_power_matches_repeated_multiplication():
    rng = random.Random(5)
    for _ in range(500):
        p = rng.choice([3, 5, 7])
        precision = rng.randint(1, 5)
        modulus = p**precision
        u = PadicInt(p, precision, 1 + p * rng.randrange(p ** (precision - 1)))
        e = rng.randrange(-20, 60)
        assert pow_one_unit(u, e).residue == pow(u.residue, e, modulus)


def test_principal_unit_congruence_sweep():
    # (1+p^u)^r = 1 + r·p^u mod p^(u+1) for r in 0..p^2, u in {1,2}, p in {3,5}
    for p in (3, 5):
        for u in (1, 2):
            base = PadicInt(p, u + 1, 1 + p**u)
            for r in range(p**2 + 1):
                assert pow_one_unit(base, r).residue == (1 + r * p**u) % p ** (u + 1)


def test_binomial_examples():
    assert binom(-1, 3, p=5, precision=2).residue == (-1) % 25
    assert binom(-1, 3, p=3, precision=4).residue == (-1) % 81
    assert binom(123, 0, p=3, precision=3).residue == 1
    zeta = teichmuller(2, 5, 2)
    assert binom(zeta, 2).residue == 21  # 7*6/2


def test_binomial_against_exact_integers():
    from math import comb

    for e in range(0, 30):
        for k in range(0, 8):
            assert binom(e, k, p=3, precision=4).residue == comb(e, k) % 81


def test_integer_power_dunder_matches_builtin():
    x = PadicInt(3, 3, 5)
    assert (x**4).residue == pow(5, 4, 27)
    assert (x**-1).residue == pow(5, -1, 27)
    with pytest.raises(NotInvertibleError):
        PadicInt(3, 3, 6) ** -1
