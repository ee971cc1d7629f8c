"""Named lattice families and their closed-form series.

Everything here is exact: closed forms are emitted as term maps over
rational bases and are meant to be compared term-by-term against the
generic engine output on materialised lattices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dirichlet import DirichletSeries
from .errors import (
    NotAPrimePower,
    PartNotDivisible,
    SingularInput,
    SizeLimitExceeded,
)
from .lattice import Lattice

# ----------------------------------------------------------------------
# combinatorial helpers


@lru_cache(maxsize=None)
def stirling2(n, k):
    """Stirling number of the second kind S(n, k)."""
    if n == k:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def integer_partitions(n, max_part=None):
    """All partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def shape_count(shape):
    """Number of set partitions of sum(shape) points with block sizes
    given by ``shape``."""
    n = sum(shape)
    count = math.factorial(n)
    for part in shape:
        count //= math.factorial(part)
    mult = {}
    for part in shape:
        mult[part] = mult.get(part, 0) + 1
    for m in mult.values():
        count //= math.factorial(m)
    return count


def set_partitions(n):
    """All set partitions of {0..n-1} in restricted-growth order.

    Each partition is a tuple of blocks; blocks are tuples of ascending
    ids, listed by their smallest member.
    """
    out = []

    def rec(i, blocks):
        if i == n:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return out


def factorize(n):
    """Sorted list of (prime, multiplicity) pairs."""
    if n < 1:
        raise ValueError("factorization needs a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def big_omega(n):
    """Number of prime factors counted with multiplicity."""
    return sum(e for _, e in factorize(n))


def number_mobius(n):
    """Classical Moebius function of a positive integer."""
    fact = factorize(n)
    if any(e > 1 for _, e in fact):
        return 0
    return -1 if len(fact) % 2 else 1


def divisors(n):
    fact = factorize(n)
    out = [1]
    for p, e in fact:
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


# ----------------------------------------------------------------------
# small finite fields


_IRREDUCIBLE = {
    # q: (p, coefficients of a monic irreducible poly, low degree first,
    # constant .. x^(k-1); x^k is implied)
    4: (2, (1, 1)),
    8: (2, (1, 1, 0)),
    9: (3, (1, 0)),
}


class FieldTable:
    """Addition/multiplication tables for GF(q), q prime or in {4, 8, 9}."""

    def __init__(self, q):
        fact = factorize(q) if q > 1 else []
        if len(fact) != 1:
            raise NotAPrimePower(f"{q} is not a prime power")
        p, e = fact[0]
        if e == 1:
            self.q = q
            self.add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
            self.mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
            return
        if q not in _IRREDUCIBLE:
            raise SizeLimitExceeded(f"no field table available for GF({q})")
        p, poly = _IRREDUCIBLE[q]
        k = len(poly)
        self.q = q

        def digits(a):
            out = []
            for _ in range(k):
                out.append(a % p)
                a //= p
            return out

        def undigits(ds):
            a = 0
            for d in reversed(ds):
                a = a * p + d
            return a

        def poly_mul(a, b):
            da, db = digits(a), digits(b)
            prod = [0] * (2 * k - 1)
            for i, ai in enumerate(da):
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
            # reduce x^k -> -poly
            for i in range(2 * k - 2, k - 1, -1):
                c = prod[i]
                if c:
                    prod[i] = 0
                    for j, pj in enumerate(poly):
                        prod[i - k + j] = (prod[i - k + j] - c * pj) % p
            return undigits(prod[:k])

        self.add = tuple(
            tuple(
                undigits([(x + y) % p for x, y in zip(digits(a), digits(b))])
                for b in range(q)
            )
            for a in range(q)
        )
        self.mul = tuple(tuple(poly_mul(a, b) for b in range(q)) for a in range(q))


@lru_cache(maxsize=None)
def field(q):
    return FieldTable(q)


# ----------------------------------------------------------------------
# lattice constructions


def boolean_lattice(r, *, max_rank=16):
    """Subset lattice of an r-set; 2**r elements."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    if r > max_rank:
        raise SizeLimitExceeded(f"rank {r} exceeds the budget of {max_rank}")
    pairs = []
    for mask in range(1 << r):
        for i in range(r):
            if not (mask >> i) & 1:
                pairs.append((mask, mask | (1 << i)))
    return Lattice.from_covers(1 << r, pairs)


def chain(k):
    """Total order on k >= 2 elements."""
    if k < 2:
        raise ValueError("a chain needs at least 2 elements")
    return Lattice.from_covers(k, [(i, i + 1) for i in range(k - 1)])


def divisibility_lattice(n):
    """Divisors of n ordered by divisibility; element i is divisors(n)[i]."""
    if n < 2:
        raise ValueError("need n >= 2 for a non-degenerate divisor lattice")
    divs = divisors(n)
    index = {d: i for i, d in enumerate(divs)}
    pairs = [
        (index[a], index[b])
        for a, b in itertools.combinations(divs, 2)
        if b % a == 0
    ]
    return Lattice.from_covers(len(divs), pairs)


def subspace_lattice(q, n, *, max_vectors=512):
    """Lattice of subspaces of GF(q)^n ordered by inclusion."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    gf = field(q)
    if q**n > max_vectors:
        raise SizeLimitExceeded(f"{q ** n} vectors exceed the budget of {max_vectors}")
    vectors = list(itertools.product(range(q), repeat=n))
    vec_id = {v: i for i, v in enumerate(vectors)}

    def vadd(u, v):
        return tuple(gf.add[a][b] for a, b in zip(u, v))

    def vscale(c, v):
        return tuple(gf.mul[c][a] for a in v)

    zero = vectors[0]

    def span(gens):
        out = {zero}
        for g in gens:
            if g in out:
                continue
            out = {vadd(w, vscale(c, g)) for w in out for c in range(q)}
        return frozenset(out)

    zero_space = frozenset({zero})
    atoms = {span([v]) for v in vectors[1:]}
    known = {zero_space} | atoms
    frontier = list(atoms)
    while frontier:
        new = []
        for sub in frontier:
            for a in atoms:
                if a <= sub:
                    continue
                joined = span(sub | a)
                if joined not in known:
                    known.add(joined)
                    new.append(joined)
        frontier = new

    def sort_key(sub):
        return (len(sub), tuple(sorted(vec_id[v] for v in sub)))

    subs = sorted(known, key=sort_key)
    pairs = [
        (i, j)
        for i, j in itertools.combinations(range(len(subs)), 2)
        if subs[i] < subs[j]
    ]
    return Lattice.from_covers(len(subs), pairs)


def partition_lattice(n, *, max_n=8):
    """Set partitions of an n-set ordered by refinement.

    Element i is ``set_partitions(n)[i]``; finer partitions sit lower.
    """
    if n < 2:
        raise ValueError("need n >= 2 for a non-degenerate partition lattice")
    if n > max_n:
        raise SizeLimitExceeded(f"partition lattice budget is n <= {max_n}")
    parts = set_partitions(n)
    index = {p: i for i, p in enumerate(parts)}
    pairs = []
    for i, p in enumerate(parts):
        blocks = [list(b) for b in p]
        for a, b in itertools.combinations(range(len(blocks)), 2):
            merged = sorted(
                [blocks[x] for x in range(len(blocks)) if x not in (a, b)]
                + [sorted(blocks[a] + blocks[b])]
            )
            coarser = tuple(tuple(x) for x in merged)
            pairs.append((i, index[coarser]))
    return Lattice.from_covers(len(parts), pairs)


def d_divisible_partitions(d, n):
    """Set partitions of {0..dn-1} with every block size divisible by d,
    in first-element recursive order."""
    ground = list(range(d * n))
    out = []

    def rec(remaining, blocks):
        if not remaining:
            out.append(tuple(tuple(b) for b in blocks))
            return
        first = remaining[0]
        rest = remaining[1:]
        for size in range(d, len(remaining) + 1, d):
            for extra in itertools.combinations(rest, size - 1):
                block = (first,) + extra
                left = [x for x in rest if x not in extra]
                blocks.append(block)
                rec(left, blocks)
                blocks.pop()

    rec(ground, [])
    return out


def d_divisible_count(d, n):
    """Number of d-divisible partitions of a dn-set, by shape counting."""
    total = 0
    for shape in integer_partitions(n):
        total += shape_count(tuple(d * p for p in shape))
    return total


def d_divisible_partition_lattice(d, n, *, max_ground=12, max_elements=20_000):
    """d-divisible partitions of a dn-set under refinement, plus an
    artificial bottom below the all-blocks-of-size-d partitions."""
    if d < 2:
        raise ValueError("need d >= 2")
    if n < 1:
        raise ValueError("need n >= 1")
    if d * n > max_ground:
        raise SizeLimitExceeded(f"ground set of {d * n} exceeds budget {max_ground}")
    count = d_divisible_count(d, n) + 1
    if count > max_elements:
        raise SizeLimitExceeded(f"{count} elements exceed the budget {max_elements}")
    parts = d_divisible_partitions(d, n)
    index = {p: i + 1 for i, p in enumerate(parts)}  # 0 is the bottom
    pairs = []
    for p, i in index.items():
        blocks = [list(b) for b in p]
        if len(blocks) == n:  # finest layer: atoms over the new bottom
            pairs.append((0, i))
        for a, b in itertools.combinations(range(len(blocks)), 2):
            merged = sorted(
                [blocks[x] for x in range(len(blocks)) if x not in (a, b)]
                + [sorted(blocks[a] + blocks[b])]
            )
            coarser = tuple(tuple(x) for x in merged)
            pairs.append((i, index[coarser]))
    return Lattice.from_covers(len(parts) + 1, pairs)


@lru_cache(maxsize=None)
def _d_block_count(d, part):
    """Number of d-divisible partitions of a (d*part)-set into size-d
    blocks ... i.e. |J| of one merged block of size d*part."""
    m = d * part
    return math.factorial(m) // (math.factorial(d) ** part * math.factorial(part))


def d_divisible_j_count(d, shape):
    """|J_P| for a d-divisible partition with block sizes ``shape``.

    Each block of size d*p contributes (dp)!/((d!)^p p!) atom partitions
    below it; blocks are independent, so the counts multiply.
    """
    total = 1
    for size in shape:
        if size % d:
            raise PartNotDivisible(f"block size {size} is not divisible by {d}")
        total *= _d_block_count(d, size // d)
    return total


# ----------------------------------------------------------------------
# closed-form series


def boolean_zeta_closed(r):
    """P(B_r, s) = ((-1)^r / r^s) * sum_{k=1..r} (-1)^k C(r,k) k^s."""
    terms = {}
    for k in range(1, r + 1):
        coeff = (-1) ** (r + k) * math.comb(r, k)
        terms[Fraction(r, k)] = terms.get(Fraction(r, k), 0) + coeff
    return DirichletSeries(terms)


def chain_zeta_closed(k):
    """Closed form for a k-element chain.

    Every non-bottom element is join-irreducible, only the top and the
    coatom carry nonzero Moebius numbers, so the series is
    1 - 1/((k-1)/(k-2))^s (and the constant 1 for the 2-chain, whose
    single irreducible is the top itself).
    """
    if k < 2:
        raise ValueError("need a chain of at least 2 elements")
    if k == 2:
        return DirichletSeries({Fraction(1): 1})
    return DirichletSeries({Fraction(1): 1, Fraction(k - 1, k - 2): -1})


def divisibility_zeta_closed(n):
    """Closed form for the divisor lattice of n.

    With w = big_omega(n) and r the number of distinct primes:
    ((-1)^w / w^s) * sum_k (-1)^k C(r, w-k) k^s, the k = 0 term (the
    unit divisor, possible when w = r) being dropped.
    """
    w = big_omega(n)
    r = len(factorize(n))
    terms = {}
    for k in range(max(w - r, 1), w + 1):
        coeff = (-1) ** (w + k) * math.comb(r, w - k)
        if coeff:
            q = Fraction(w, k)
            terms[q] = terms.get(q, 0) + coeff
    return DirichletSeries(terms)


def gaussian_binomial_poly(n, k):
    """Coefficient list (ascending) of the Gaussian binomial as a
    polynomial in q, via the q-Pascal recurrence."""
    if k < 0 or k > n:
        return [0]

    @lru_cache(maxsize=None)
    def rec(nn, kk):
        if kk == 0 or kk == nn:
            return (1,)
        left = rec(nn - 1, kk - 1)
        right = rec(nn - 1, kk)
        out = [0] * max(len(left), len(right) + kk)
        for i, c in enumerate(left):
            out[i] += c
        for i, c in enumerate(right):
            out[i + kk] += c
        return tuple(out)

    return list(rec(n, k))


def gaussian_binomial(n, k, q):
    """Gaussian binomial coefficient evaluated at an integer or rational
    q; q = 1 falls back to the polynomial (giving C(n, k))."""
    poly = gaussian_binomial_poly(n, k)
    if q == 1:
        return sum(poly)
    q = Fraction(q)
    value = sum(c * q**i for i, c in enumerate(poly))
    return int(value) if value.denominator == 1 else value


def subspace_zeta_closed(q, n):
    """P(S(GF(q)^n), s) with bases (q^n - 1)/(q^k - 1) and coefficients
    (-1)^(n-k) [n choose k]_q q^C(n-k, 2)."""
    terms = {}
    for k in range(1, n + 1):
        coeff = (-1) ** (n - k) * gaussian_binomial(n, k, q) * q ** math.comb(
            n - k, 2
        )
        base = Fraction(q**n - 1, q**k - 1)
        terms[base] = terms.get(base, 0) + coeff
    return DirichletSeries(terms)


def partition_zeta_closed(n):
    """P(Pi_n, s) aggregated over block-size shapes: a shape with k
    blocks contributes count(shape) * (-1)^(k-1) (k-1)! at base
    C(n,2) / sum_i C(shape_i, 2)."""
    total = math.comb(n, 2)
    terms = {}
    for shape in integer_partitions(n):
        j = sum(math.comb(p, 2) for p in shape)
        if j == 0:
            continue  # the all-singletons shape is the bottom
        k = len(shape)
        coeff = shape_count(shape) * (-1) ** (k - 1) * math.factorial(k - 1)
        q = Fraction(total, j)
        terms[q] = terms.get(q, 0) + coeff
    return DirichletSeries(terms)


def stirling_boolean_value(r, s):
    """r! S(s, r) / r^s, the closed evaluation of P(B_r, s)."""
    return Fraction(math.factorial(r) * stirling2(s, r), r**s)


@dataclass(frozen=True)
class LimitCheck:
    """Numeric comparison of the subspace series near q = 1 with the
    Boolean series value."""

    n: int
    s: int
    h: Fraction
    subspace_value: Fraction
    boolean_value: Fraction

    @property
    def difference(self):
        return float(abs(self.subspace_value - self.boolean_value))


def q_to_one_limit_check(n, s, h):
    """Evaluate the subspace closed form at q = 1 + h (exact rational
    arithmetic) and compare with P(B_n, s).  h = 0 is singular."""
    h = Fraction(h)
    if h == 0:
        raise SingularInput("the closed form divides by q - 1 at q = 1")
    q = 1 + h
    value = Fraction(0)
    for k in range(1, n + 1):
        gauss = sum(
            c * q**i for i, c in enumerate(gaussian_binomial_poly(n, k))
        )
        coeff = (-1) ** (n - k) * gauss * q ** math.comb(n - k, 2)
        base = (q**n - 1) / (q**k - 1)
        value += coeff * base ** (-s)
    boolean = boolean_zeta_closed(n).evaluate_exact(s)
    return LimitCheck(n=n, s=s, h=h, subspace_value=value, boolean_value=boolean)
