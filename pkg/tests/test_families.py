"""Combinatorial helpers, classical lattice families, and their
closed-form series."""

import math
import random
from fractions import Fraction

import pytest

from latzeta.errors import (
    NotAPrimePower,
    PartNotDivisible,
    SingularInput,
    SizeLimitExceeded,
)
from latzeta.families import (
    big_omega,
    boolean_lattice,
    boolean_zeta_closed,
    chain,
    chain_zeta_closed,
    d_divisible_count,
    d_divisible_j_count,
    d_divisible_partition_lattice,
    d_divisible_partitions,
    divisibility_lattice,
    divisibility_zeta_closed,
    divisors,
    factorize,
    field,
    gaussian_binomial,
    gaussian_binomial_poly,
    integer_partitions,
    number_mobius,
    partition_lattice,
    partition_zeta_closed,
    q_to_one_limit_check,
    set_partitions,
    shape_count,
    stirling2,
    stirling_boolean_value,
    subspace_lattice,
    subspace_zeta_closed,
)
from latzeta.zeta import zeta_series

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


# ----------------------------------------------------------------------
# counting helpers


def test_stirling2_values():
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert stirling2(0, 0) == 1
    assert stirling2(3, 0) == 0
    assert stirling2(2, 3) == 0


def test_stirling2_recurrence():
    rng = random.Random(4001)
    for _ in range(50):
        n = rng.randrange(1, 12)
        k = rng.randrange(1, n + 1)
        assert stirling2(n, k) == k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def test_stirling2_row_sums_are_bell():
    for n in range(len(BELL)):
        assert sum(stirling2(n, k) for k in range(n + 1)) == BELL[n]


def test_integer_partitions():
    for n in range(1, len(PARTITION_COUNTS)):
        parts = list(integer_partitions(n))
        assert len(parts) == PARTITION_COUNTS[n]
        for shape in parts:
            assert sum(shape) == n
            assert list(shape) == sorted(shape, reverse=True)
        assert len(set(parts)) == len(parts)


def test_shape_count():
    assert shape_count((2, 1)) == 3
    assert shape_count((2, 2)) == 3
    assert shape_count((3, 1, 1)) == 10
    for n in range(1, 9):
        assert (
            sum(shape_count(s) for s in integer_partitions(n)) == BELL[n]
        )


def test_set_partitions():
    for n in range(2, 8):
        parts = set_partitions(n)
        assert len(parts) == BELL[n]
        assert len(set(parts)) == len(parts)
        for p in parts:
            seen = sorted(x for block in p for x in block)
            assert seen == list(range(n))


def test_factorize():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(2) == [(2, 1)]
    rng = random.Random(4002)
    for _ in range(40):
        n = rng.randrange(2, 10**6)
        fact = factorize(n)
        assert math.prod(p**e for p, e in fact) == n
        assert all(factorize(p) == [(p, 1)] for p, _ in fact)


def test_number_mobius():
    assert [number_mobius(k) for k in range(1, 11)] == [
        1, -1, -1, 0, -1, 1, -1, 0, 0, 1,
    ]
    # sum over divisors vanishes for n > 1
    rng = random.Random(4003)
    for _ in range(30):
        n = rng.randrange(2, 5000)
        assert sum(number_mobius(d) for d in divisors(n)) == 0


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    rng = random.Random(4004)
    for _ in range(30):
        n = rng.randrange(1, 20000)
        ds = divisors(n)
        assert ds == sorted(ds)
        assert all(n % d == 0 for d in ds)
        assert len(ds) == math.prod(e + 1 for _, e in factorize(n)) if n > 1 else 1


def test_big_omega():
    assert big_omega(360) == 6
    assert big_omega(2) == 1


# ----------------------------------------------------------------------
# finite fields


def test_prime_field():
    gf = field(5)
    assert gf.add[3][4] == 2 and gf.mul[3][4] == 2


@pytest.mark.parametrize("q", [4, 8, 9])
def test_extension_field_axioms(q):
    gf = field(q)
    elements = range(q)
    for a in elements:
        assert gf.add[a][0] == a and gf.mul[a][1] == a and gf.mul[a][0] == 0
        # every nonzero element is invertible
        if a:
            assert 1 in {gf.mul[a][b] for b in elements}
    rng = random.Random(4005)
    for _ in range(200):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert gf.add[a][b] == gf.add[b][a]
        assert gf.mul[a][b] == gf.mul[b][a]
        assert gf.mul[a][gf.mul[b][c]] == gf.mul[gf.mul[a][b]][c]
        assert gf.mul[a][gf.add[b][c]] == gf.add[gf.mul[a][b]][gf.mul[a][c]]


def test_field_errors():
    with pytest.raises(NotAPrimePower):
        field(6)
    with pytest.raises(NotAPrimePower):
        field(1)
    with pytest.raises(SizeLimitExceeded):
        field(16)  # prime power, but no table shipped


# ----------------------------------------------------------------------
# lattice families


def test_boolean_lattice_structure():
    lat = boolean_lattice(4)
    assert lat.n == 16
    assert len(lat.atoms()) == 4
    # element ids are subset masks and the order is containment
    rng = random.Random(4006)
    for _ in range(50):
        a, b = rng.randrange(16), rng.randrange(16)
        assert lat.leq(a, b) == (a & b == a)
        assert lat.join(a, b) == a | b
        assert lat.meet(a, b) == a & b
    with pytest.raises(ValueError):
        boolean_lattice(0)
    with pytest.raises(SizeLimitExceeded):
        boolean_lattice(17)


def test_chain_bounds():
    assert chain(2).n == 2
    with pytest.raises(ValueError):
        chain(1)


def test_divisibility_lattice_structure():
    lat = divisibility_lattice(12)
    divs = divisors(12)
    assert lat.n == 6
    for i, a in enumerate(divs):
        for j, b in enumerate(divs):
            assert lat.leq(i, j) == (b % a == 0)
            assert divs[lat.join(i, j)] == math.lcm(a, b)
            assert divs[lat.meet(i, j)] == math.gcd(a, b)
    with pytest.raises(ValueError):
        divisibility_lattice(1)


def test_subspace_lattice_counts():
    # Galois numbers: total subspace count of GF(q)^n
    assert subspace_lattice(2, 2).n == 5
    assert subspace_lattice(3, 2).n == 6
    assert subspace_lattice(4, 2).n == 7
    assert subspace_lattice(2, 3).n == 16
    with pytest.raises(SizeLimitExceeded):
        subspace_lattice(2, 10)


def test_subspace_lattice_is_graded_by_dimension():
    lat = subspace_lattice(3, 2)
    assert sorted(lat.height(x) for x in range(lat.n)) == [0, 1, 1, 1, 1, 2]
    assert lat.is_atomistic()


def test_partition_lattice_structure():
    lat = partition_lattice(4)
    assert lat.n == BELL[4]
    parts = set_partitions(4)
    assert lat.height(lat.top) == 3
    # refinement: finer below coarser
    i_fine = parts.index(tuple((x,) for x in range(4)))
    assert i_fine == lat.bottom
    with pytest.raises(ValueError):
        partition_lattice(1)
    with pytest.raises(SizeLimitExceeded):
        partition_lattice(9)


def test_d_divisible_partitions():
    assert d_divisible_count(2, 2) == 4
    assert d_divisible_count(2, 3) == 31
    assert len(d_divisible_partitions(2, 3)) == 31
    for p in d_divisible_partitions(2, 3):
        assert all(len(b) % 2 == 0 for b in p)


def test_d_divisible_lattice_structure():
    lat = d_divisible_partition_lattice(2, 2)
    # bottom + three perfect matchings + the single block of 4
    assert lat.n == 5
    assert len(lat.atoms()) == 3
    with pytest.raises(SizeLimitExceeded):
        d_divisible_partition_lattice(2, 7)
    with pytest.raises(ValueError):
        d_divisible_partition_lattice(1, 3)


def test_d_divisible_j_count():
    assert d_divisible_j_count(2, (6,)) == 15
    assert d_divisible_j_count(2, (4, 2)) == 3
    assert d_divisible_j_count(2, (2, 2)) == 1
    assert d_divisible_j_count(3, (6, 3)) == 10
    with pytest.raises(PartNotDivisible):
        d_divisible_j_count(2, (3,))


def test_d_divisible_j_count_matches_lattice():
    # |J| of the whole lattice is the atom count of the one-block shape
    for d, n in ((2, 2), (2, 3), (3, 2)):
        lat = d_divisible_partition_lattice(d, n)
        assert len(lat.join_irreducibles()) == d_divisible_j_count(d, (d * n,))
        assert lat.is_atomistic()


# ----------------------------------------------------------------------
# Gaussian binomials


def test_gaussian_binomial_poly():
    assert gaussian_binomial_poly(4, 2) == [1, 1, 2, 1, 1]
    assert gaussian_binomial_poly(3, 1) == [1, 1, 1]
    assert gaussian_binomial_poly(3, 5) == [0]
    # symmetry and the q = 1 specialisation
    rng = random.Random(4007)
    for _ in range(40):
        n = rng.randrange(0, 10)
        k = rng.randrange(0, n + 1)
        assert gaussian_binomial_poly(n, k) == gaussian_binomial_poly(n, n - k)
        assert gaussian_binomial(n, k, 1) == math.comb(n, k)


def test_gaussian_binomial_counts_subspaces():
    # number of lines (1-dim subspaces) of GF(q)^2 is q + 1
    for q in (2, 3, 4):
        assert gaussian_binomial(2, 1, q) == q + 1
        lat = subspace_lattice(q, 2)
        assert len(lat.atoms()) == q + 1


# ----------------------------------------------------------------------
# closed forms


def test_chain_zeta_closed():
    for k in range(2, 7):
        assert chain_zeta_closed(k) == zeta_series(chain(k)).series
    with pytest.raises(ValueError):
        chain_zeta_closed(1)


def test_boolean_zeta_closed_small():
    for r in range(1, 5):
        assert boolean_zeta_closed(r) == zeta_series(boolean_lattice(r)).series


def test_divisibility_zeta_closed_small():
    for n in (4, 6, 12, 30):
        assert (
            divisibility_zeta_closed(n)
            == zeta_series(divisibility_lattice(n)).series
        )


def test_subspace_zeta_closed_small():
    for q, n in ((2, 2), (3, 2), (2, 3)):
        assert (
            subspace_zeta_closed(q, n) == zeta_series(subspace_lattice(q, n)).series
        )


def test_partition_zeta_closed_small():
    for n in (3, 4):
        assert partition_zeta_closed(n) == zeta_series(partition_lattice(n)).series


def test_stirling_boolean_value():
    for r in range(1, 5):
        series = boolean_zeta_closed(r)
        for s in range(1, 9):
            assert series.evaluate_exact(s) == stirling_boolean_value(r, s)
    # spot value: surjections from a 4-set onto a 2-set
    assert stirling_boolean_value(2, 4) == Fraction(14, 16)


def test_q_to_one_limit():
    h = Fraction(1, 10**6)
    check = q_to_one_limit_check(2, 2, h)
    assert check.subspace_value != check.boolean_value
    assert check.difference < 1e-3
    with pytest.raises(SingularInput):
        q_to_one_limit_check(2, 2, 0)
