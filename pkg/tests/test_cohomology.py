import random
from math import gcd

import pytest

from anticyclo.cohomology import (
    FinitePModule,
    fixed_points,
    herbrand_check,
    minus_part,
    norm_image,
    tate_h0,
    tate_hm1,
    theorem2_cyclic_obstruction,
)

from conftest import all_elements, apply_rows, quotient_structure


def test_construction_validation():
    with pytest.raises(ValueError, match="descending"):
        FinitePModule(3, (3, 9))
    with pytest.raises(ValueError, match="power"):
        FinitePModule(3, (10,))
    with pytest.raises(ValueError, match="well defined"):
        # Z/9 -> Z/9 + Z/3 sending the Z/3 generator to a generator of Z/9
        FinitePModule(3, (9, 3), actions={"tau": [[1, 1], [0, 1]]})
    # the transposed direction is fine: Z/9 generator may hit the Z/3 part
    FinitePModule(3, (9, 3), actions={"tau": [[1, 0], [1, 1]]})
    with pytest.raises(ValueError, match="order"):
        FinitePModule(3, (9,), actions={"tau": [[4]]}, orders={"tau": 2})
    with pytest.raises(ValueError, match="involution|order"):
        FinitePModule(3, (9,), actions={"J": [[4]]})


def test_fixed_points_examples():
    trivial = FinitePModule(3, (3,), actions={"tau": [[1]]}, orders={"tau": 3})
    assert fixed_points(trivial, "tau").invariant_factors == (3,)
    mult4 = FinitePModule(3, (9,), actions={"tau": [[4]]}, orders={"tau": 3})
    assert fixed_points(mult4, "tau").invariant_factors == (3,)
    diag = FinitePModule(3, (9, 9), actions={"tau": [[4, 0], [0, 4]]}, orders={"tau": 3})
    assert fixed_points(diag, "tau").invariant_factors == (3, 3)


def test_norm_image_examples():
    trivial = FinitePModule(3, (3,), actions={"tau": [[1]]}, orders={"tau": 3})
    assert norm_image(trivial, "tau", 3).invariant_factors == ()
    mult4 = FinitePModule(3, (9,), actions={"tau": [[4]]}, orders={"tau": 3})
    assert norm_image(mult4, "tau", 3).invariant_factors == (3,)
    big = FinitePModule(3, (27,), actions={"tau": [[1]]}, orders={"tau": 3})
    assert norm_image(big, "tau", 3).invariant_factors == (9,)


def test_tate_groups_worked_example():
    # Z/9 with tau = multiplication by 4, cyclic group of order 3:
    # fixed points {0,3,6} equal the norm image, and ker N = (tau-1)M.
    M = FinitePModule(3, (9,), actions={"tau": [[4]]}, orders={"tau": 3})
    assert tate_h0(M, "tau", 3).invariant_factors == ()
    assert tate_hm1(M, "tau", 3).invariant_factors == ()
    trivial = FinitePModule(3, (3,), actions={"tau": [[1]]}, orders={"tau": 3})
    assert tate_h0(trivial, "tau", 3).invariant_factors == (3,)
    assert tate_hm1(trivial, "tau", 3).invariant_factors == (3,)
    empty = FinitePModule(3, (), actions={}, orders={})
    assert tate_h0(empty, "tau", 3).invariant_factors == ()


def test_minus_part_examples_and_idempotence():
    assert minus_part(FinitePModule(3, (9,), actions={"J": [[-1]]})).invariant_factors == (9,)
    assert minus_part(FinitePModule(3, (9,), actions={"J": [[1]]})).invariant_factors == ()
    mixed = FinitePModule(3, (9, 3), actions={"J": [[1, 0], [0, -1]]})
    part = minus_part(mixed)
    assert part.invariant_factors == (3,)
    assert minus_part(part).invariant_factors == (3,)


def _random_module_with_cyclic_action(rng):
    """Random finite module of order <= 3^6 with a random finite-order action."""
    p = 3
    while True:
        k = rng.randint(1, 3)
        exps = sorted((rng.randint(1, 3) for _ in range(k)), reverse=True)
        if sum(exps) > 6:
            continue
        factors = tuple(p**e for e in exps)
        rows = []
        for i in range(k):
            row = []
            for j in range(k):
                need = factors[i] // gcd(factors[i], factors[j])
                row.append(need * rng.randrange(0, max(1, factors[i] // need)))
            rows.append(row)
        try:
            module = FinitePModule(p, factors, actions={"tau": rows})
        except ValueError:
            continue
        # keep only invertible actions of small finite order
        power = rows
        for order in range(1, 200):
            if module._is_identity(power):
                return (
                    FinitePModule(p, factors, actions={"tau": rows}, orders={"tau": order}),
                    order,
                )
            power = module._reduce(
                [
                    [sum(power[i][l] * rows[l][j] for l in range(k)) for j in range(k)]
                    for i in range(k)
                ]
            )


def _oracle_tate_structures(module, order):
    factors = module.invariant_factors
    p = module.p
    rows = [list(r) for r in module.actions["tau"]]
    els = all_elements(factors)
    zero = tuple([0] * len(factors))

    def add(x, y):
        return tuple((a + b) % q for a, b, q in zip(x, y, factors))

    def tau(x):
        return apply_rows(rows, x, factors)

    def norm(x):
        acc = zero
        cur = x
        for _ in range(order):
            acc = add(acc, cur)
            cur = tau(cur)
        return acc

    fixed = [x for x in els if tau(x) == x]
    norms = {norm(x) for x in els}
    kernel = [x for x in els if norm(x) == zero]
    shifts = {add(tau(x), tuple((-a) % q for a, q in zip(x, factors))) for x in els}
    h0 = quotient_structure(fixed, norms, factors, p)
    hm1 = quotient_structure(kernel, shifts, factors, p)
    return fixed, shifts, h0, hm1


def test_tate_groups_match_enumeration_oracle():
    rng = random.Random(77)
    for _ in range(60):
        module, order = _random_module_with_cyclic_action(rng)
        fixed, shifts, h0, hm1 = _oracle_tate_structures(module, order)
        assert tate_h0(module, "tau", order).invariant_factors == h0
        assert tate_hm1(module, "tau", order).invariant_factors == hm1
        assert fixed_points(module, "tau").size() == len(fixed)
        # rank-nullity over the finite module
        assert len(fixed) * len(shifts) == module.size()
        assert herbrand_check(module, "tau", order)


def test_minus_part_sizes_multiply():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(1, 3)
        exps = sorted((rng.randint(1, 3) for _ in range(k)), reverse=True)
        factors = tuple(3**e for e in exps)
        signs = [rng.choice([1, -1]) for _ in range(k)]
        J = [[signs[i] if i == j else 0 for j in range(k)] for i in range(k)]
        module = FinitePModule(3, factors, actions={"J": J})
        minus = minus_part(module)
        plus_size = module.size() // minus.size()
        expected_minus = 1
        for q, s in zip(factors, signs):
            if s == -1:
                expected_minus *= q
        assert minus.size() == expected_minus
        assert plus_size * minus.size() == module.size()


def test_trivial_action_fixes_everything():
    module = FinitePModule(3, (27, 3), actions={"tau": [[1, 0], [0, 1]]}, orders={"tau": 3})
    assert fixed_points(module, "tau").size() == module.size()


def test_cyclic_obstruction_decision():
    for p, e, t in [(3, 2, 4), (5, 2, 6), (3, 3, 10)]:
        module = FinitePModule(p, (p**e,), actions={"tau": [[t]]}, orders={"tau": p})
        result = theorem2_cyclic_obstruction(module)
        assert result.holds
        assert result.witness is None


def test_cyclic_obstruction_validation():
    with pytest.raises(ValueError, match="cyclic A1"):
        theorem2_cyclic_obstruction(
            FinitePModule(3, (9, 3), actions={"tau": [[4, 0], [0, 1]]})
        )
    with pytest.raises(ValueError, match="nontrivial"):
        theorem2_cyclic_obstruction(
            FinitePModule(3, (9,), actions={"tau": [[1]]}, orders={"tau": 3})
        )
    with pytest.raises(ValueError, match="at least p"):
        theorem2_cyclic_obstruction(
            FinitePModule(3, (3,), actions={"tau": [[1]]})
        )
