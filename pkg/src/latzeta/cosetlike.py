"""Coset-likeness classification and the divisibility arithmetic behind it.

A lattice is *strongly coset-like* when |J_x| divides |J| for every
element x above the bottom, and *weakly coset-like* when its zeta
series is ordinary (every base with a nonzero coefficient is an
integer).  Strong implies weak: integer divisor ratios give integer
bases.

Beyond the per-lattice classifiers this module carries the shape-level
fast checks for the partition and d-divisible partition lattices, the
prime-witness machinery that decides the large-parameter divisibility
questions those checks reduce to, and the two small fixture lattices
whose series are weakly but not strongly coset-like.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import MismatchDetected, UnknownFixture
from .families import d_divisible_j_count, integer_partitions
from .lattice import Lattice
from .zeta import zeta_series

__all__ = [
    "Classification",
    "ShapeStrongSummary",
    "WitnessPrime",
    "classify",
    "coatom_criterion",
    "partition_strong_check",
    "ddiv_strong_check",
    "central_binomial_check",
    "odd_case_check",
    "nagura_prime",
    "nagura_scan",
    "mainthm_witness",
    "mainthm_threshold",
    "p0prime_divisibility",
    "load_fixture",
    "FIXTURE_NAMES",
]


# ----------------------------------------------------------------------
# per-lattice classification


@dataclass(frozen=True)
class Classification:
    """Strong/weak verdict with the witnesses that decided it."""

    strong: bool
    weak: bool
    strong_failures: tuple  # (element, |J_x|, |J|) with |J_x| not dividing |J|
    non_integer_bases: tuple  # non-integer bases carrying a nonzero coefficient

    def to_doc(self):
        return {
            "strong": self.strong,
            "weak": self.weak,
            "strong_failures": [
                {"element": x, "j_below": jx, "j_total": j}
                for x, jx, j in self.strong_failures
            ],
            "non_integer_bases": [
                f"{q.numerator}/{q.denominator}" for q in self.non_integer_bases
            ],
        }


def classify(lattice):
    """Classify a lattice as strongly/weakly coset-like.

    Strong is decided element-wise on the divisor ratios; weak is read
    off the (cancelled) series: nonzero coefficients on non-integer
    bases are exactly what makes it non-ordinary.
    """
    report = zeta_series(lattice)
    j_total = report.j_count
    failures = []
    for x in range(lattice.n):
        if x == lattice.bottom:
            continue
        jx = lattice.count_below_irreducibles(x)
        if j_total % jx:
            failures.append((x, jx, j_total))
    non_integer = tuple(
        q for q, _ in report.series.terms() if q.denominator != 1
    )
    return Classification(
        strong=not failures,
        weak=not non_integer,
        strong_failures=tuple(failures),
        non_integer_bases=non_integer,
    )


def coatom_criterion(lattice):
    """Witness element for the maximal-|J_x| divisibility test.

    Returns an element x maximizing |J_x| over the proper elements
    (neither bottom nor top) such that |J_x| does not divide |J|, or
    None when the maximal count divides |J| (or there are no proper
    elements).  When a witness exists the lattice cannot be weakly
    coset-like, so this is a cheap certificate that avoids the Moebius
    pass entirely.
    """
    j_total = len(lattice.join_irreducibles())
    best = None
    best_count = -1
    for x in range(lattice.n):
        if x == lattice.bottom or x == lattice.top:
            continue
        count = lattice.count_below_irreducibles(x)
        if count > best_count:
            best, best_count = x, count
    if best is None or j_total % best_count == 0:
        return None
    return best


# ----------------------------------------------------------------------
# shape-level strong checks


@dataclass(frozen=True)
class ShapeStrongSummary:
    """Result of a strong check carried out on block-size shapes."""

    strong: bool
    j_total: int
    failures: tuple  # (shape, |J_P|) with |J_P| not dividing j_total

    def to_doc(self):
        return {
            "strong": self.strong,
            "j_total": self.j_total,
            "failures": [
                {"shape": list(shape), "j_below": jp} for shape, jp in self.failures
            ],
        }


def partition_strong_check(n):
    """Shape-level strong test for the set-partition lattice on n points.

    |J_P| depends only on the multiset of block sizes (pairs inside
    blocks), so divisibility can be settled per integer partition of n
    without materializing any set partitions.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    j_total = math.comb(n, 2)
    failures = []
    for shape in integer_partitions(n):
        jp = sum(math.comb(p, 2) for p in shape)
        if jp and j_total % jp:
            failures.append((tuple(shape), jp))
    return ShapeStrongSummary(
        strong=not failures, j_total=j_total, failures=tuple(failures)
    )


def ddiv_strong_check(d, n):
    """Shape-level strong test for the d-divisible partition lattice on d*n points.

    Elements above the bottom have block sizes d*p_1, ..., d*p_k with
    (p_i) an integer partition of n, and |J_P| multiplies over blocks,
    so again one divisibility test per shape decides the verdict.
    """
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    j_total = d_divisible_j_count(d, (d * n,))
    failures = []
    for shape in integer_partitions(n):
        blocks = tuple(d * p for p in shape)
        jp = d_divisible_j_count(d, blocks)
        if j_total % jp:
            failures.append((blocks, jp))
    return ShapeStrongSummary(
        strong=not failures, j_total=j_total, failures=tuple(failures)
    )


# ----------------------------------------------------------------------
# primality and prime multiplicities

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    """Deterministic Miller-Rabin, valid far beyond any size used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_upto(limit):
    """Ascending primes below ``limit`` by a byte sieve."""
    if limit < 3:
        return []
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit, p)))
    return [i for i in range(limit) if sieve[i]]


def _legendre(n, p):
    """Multiplicity of the prime p in n!."""
    total = 0
    while n:
        n //= p
        total += n
    return total


def _binom_multiplicity(n, k, p):
    """Multiplicity of the prime p in C(n, k)."""
    return _legendre(n, p) - _legendre(k, p) - _legendre(n - k, p)


def _primes_in(lo, hi):
    """Primes p with lo < p < hi (exclusive rational bounds), ascending."""
    p = math.floor(lo) + 1
    while p < hi:
        if p > lo and _is_prime(p):
            yield p
        p += 1


# ----------------------------------------------------------------------
# central-binomial divisibility

DEFAULT_EXACT_THRESHOLD = 10_000


def central_binomial_check(m, *, threshold=DEFAULT_EXACT_THRESHOLD):
    """True when C(2m, m) does not divide C(4m, 2m).

    Small instances (top argument at most ``threshold``) are settled by
    exact big-integer arithmetic.  Larger ones use a witness prime p in
    [5m/3, 2m): such a p divides C(2m, m) exactly once but C(4m, 2m)
    not at all, which is verified (not assumed) by comparing Legendre
    multiplicities.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if 4 * m <= threshold:
        return math.comb(4 * m, 2 * m) % math.comb(2 * m, m) != 0
    for p in _primes_in(Fraction(5 * m, 3) - 1, 2 * m):
        if 3 * p < 5 * m:  # enforce the closed lower end 5m/3 <= p
            continue
        if _binom_multiplicity(2 * m, m, p) > _binom_multiplicity(4 * m, 2 * m, p):
            return True
    # No witness found (does not happen for m >= 15); decide exactly.
    return math.comb(4 * m, 2 * m) % math.comb(2 * m, m) != 0


def odd_case_check(m, *, threshold=DEFAULT_EXACT_THRESHOLD):
    """True when (2m+1) C(2m, m) does not divide (4m+1) C(4m, 2m).

    The same witness prime works: p in [5m/3, 2m) lies strictly between
    (4m+1)/3 and (4m+1)/2, so it divides neither 2m+1 nor 4m+1, and the
    multiplicity comparison carries over from the even case.
    """
    if m < 3:
        raise ValueError("need m >= 3")
    if 4 * m <= threshold:
        left = (2 * m + 1) * math.comb(2 * m, m)
        right = (4 * m + 1) * math.comb(4 * m, 2 * m)
        return right % left != 0
    for p in _primes_in(Fraction(5 * m, 3) - 1, 2 * m):
        if 3 * p < 5 * m:
            continue
        v_left = _mult_in(2 * m + 1, p) + _binom_multiplicity(2 * m, m, p)
        v_right = _mult_in(4 * m + 1, p) + _binom_multiplicity(4 * m, 2 * m, p)
        if v_left > v_right:
            return True
    left = (2 * m + 1) * math.comb(2 * m, m)
    right = (4 * m + 1) * math.comb(4 * m, 2 * m)
    return right % left != 0


def _mult_in(n, p):
    total = 0
    while n % p == 0:
        n //= p
        total += 1
    return total


# ----------------------------------------------------------------------
# primes in (n, 6n/5)


def nagura_prime(n):
    """Smallest prime p with n < p < 6n/5, or None when there is none.

    The interval is guaranteed non-empty for n >= 25; below that the
    caller gets None for the handful of n (such as 24) whose interval
    contains no prime.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    p = n + 1
    while 5 * p < 6 * n:
        if _is_prime(p):
            return p
        p += 1
    return None


def nagura_scan(lo, hi):
    """All n in [lo, hi] whose interval (n, 6n/5) contains no prime.

    One shared sieve plus a forward pointer makes the full scan to 10^6
    take seconds; the expected result for lo >= 25 is an empty list.
    """
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    primes = _primes_upto(6 * hi // 5 + 2)
    failures = []
    idx = 0
    for n in range(lo, hi + 1):
        while idx < len(primes) and primes[idx] <= n:
            idx += 1
        if idx >= len(primes) or 5 * primes[idx] >= 6 * n:
            failures.append(n)
    return failures


# ----------------------------------------------------------------------
# witness primes for the d-divisible divisibility question


@dataclass(frozen=True)
class WitnessPrime:
    """A prime certifying C(2m, m) does not divide C(2dm, dm).

    ``interval`` is the half-margin window (2dm/(2delta+1/2), dm/delta)
    from the analytic argument; ``extended_interval`` widens it to the
    exact floor condition (2dm/(2delta+1), dm/delta).  Any prime in the
    extended window with p^2 > 2dm certifies the non-divisibility; the
    multiplicities are still compared explicitly rather than trusted.
    """

    d: int
    m: int
    delta: int
    interval: tuple  # (Fraction, Fraction), open
    extended_interval: tuple  # (Fraction, Fraction), open
    prime: int | None
    in_interval: bool  # prime lies in the half-margin window
    square_ok: bool  # p^2 > 2dm
    multiplicity_ok: bool  # mult_p C(2m,m) > mult_p C(2dm,dm)
    odd_product_ok: bool  # p divides none of 2dm+1 .. 2dm+d-1

    @property
    def confirmed(self):
        return self.prime is not None and self.square_ok and self.multiplicity_ok

    def to_doc(self):
        lo, hi = self.interval
        elo, ehi = self.extended_interval
        return {
            "d": self.d,
            "m": self.m,
            "delta": self.delta,
            "interval": [str(lo), str(hi)],
            "extended_interval": [str(elo), str(ehi)],
            "prime": self.prime,
            "in_interval": self.in_interval,
            "square_ok": self.square_ok,
            "multiplicity_ok": self.multiplicity_ok,
            "odd_product_ok": self.odd_product_ok,
            "confirmed": self.confirmed,
        }


def _delta(d):
    return d // 2 if d % 2 == 0 else (d + 1) // 2


def mainthm_witness(d, m):
    """Search for a witness prime certifying C(2m,m) does not divide C(2dm,dm).

    With delta = d/2 (d even) or (d+1)/2 (d odd), any prime in the open
    window (2dm/(2delta+1), dm/delta) has multiplicity delta in (dm)!
    and 2*delta in (2dm)!, hence multiplicity zero in C(2dm, dm) once
    p^2 > 2dm, while it divides C(2m, m) exactly once.  Primes in the
    narrower half-margin window are preferred for reporting; the
    extended window is searched because the narrow one is empty for
    some (d, m) even when perfectly good witnesses exist.  The odd
    companion condition (p divides none of 2dm+1 .. 2dm+d-1) is
    evaluated and recorded but does not gate confirmation.
    """
    if d < 3 or m < 1:
        raise ValueError("need d >= 3 and m >= 1")
    delta = _delta(d)
    dm = d * m
    narrow = (Fraction(4 * dm, 4 * delta + 1), Fraction(dm, delta))
    extended = (Fraction(2 * dm, 2 * delta + 1), Fraction(dm, delta))

    def build(p):
        if p is None:
            return WitnessPrime(
                d, m, delta, narrow, extended, None, False, False, False, False
            )
        square_ok = p * p > 2 * dm
        mult_ok = _binom_multiplicity(2 * m, m, p) > _binom_multiplicity(
            2 * dm, dm, p
        )
        odd_ok = all((2 * dm + s) % p for s in range(1, d))
        return WitnessPrime(
            d, m, delta, narrow, extended, p,
            narrow[0] < p < narrow[1], square_ok, mult_ok, odd_ok,
        )

    narrow_primes = list(_primes_in(narrow[0], narrow[1]))
    outside = [
        p for p in _primes_in(extended[0], extended[1]) if p not in narrow_primes
    ]
    fallback = None
    best_partial = None
    for p in narrow_primes + outside:
        cand = build(p)
        if fallback is None:
            fallback = cand
        if cand.confirmed:
            if cand.odd_product_ok:
                return cand
            if best_partial is None:
                best_partial = cand
    if best_partial is not None:
        return best_partial
    return fallback if fallback is not None else build(None)


def mainthm_threshold(d, m_max=500):
    """Least m0 such that mainthm_witness(d, m) confirms for every m in
    [m0, m_max], or None when even m_max itself is unconfirmed."""
    m0 = None
    for m in range(m_max, 0, -1):
        if mainthm_witness(d, m).confirmed:
            m0 = m
        else:
            break
    return m0


def p0prime_divisibility(d, n):
    """Whether (d-1)! divides (dn-1)(dn-2)...(dn-d+1).

    The right side is a product of d-1 consecutive integers, so this
    holds for every d >= 2, n >= 2; the function computes it anyway so
    the claim can be property-tested rather than trusted.
    """
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    product = 1
    for s in range(1, d):
        product *= d * n - s
    return product % math.factorial(d - 1) == 0


# ----------------------------------------------------------------------
# fixture lattices

# Minimal weakly-but-not-strongly coset-like examples.  Element 0 is
# the bottom and the highest id is the top; the interesting feature of
# both is a join-irreducible chain of length 3 under an element x with
# |J_x| = 3, producing the non-integer ratio 8/3.
_FIXTURES = {
    "ten_point": (
        10,
        [
            (0, 1), (0, 2), (0, 3),
            (2, 4), (4, 5), (5, 6),
            (3, 7), (3, 8),
            (1, 9), (6, 9), (7, 9), (8, 9),
        ],
        {Fraction(1): 1, Fraction(2): -1, Fraction(4): -2},
    ),
    "eleven_point": (
        11,
        [
            (0, 1), (0, 2),
            (1, 3), (3, 4), (3, 5), (3, 6), (2, 6),
            (6, 7), (6, 8), (6, 9),
            (4, 10), (5, 10), (7, 10), (8, 10), (9, 10),
        ],
        {Fraction(1): 1, Fraction(2): -3, Fraction(4): 2},
    ),
}

FIXTURE_NAMES = tuple(sorted(_FIXTURES))


def load_fixture(name):
    """Build a named fixture lattice, validating its signature on load.

    Both fixtures are checked against their expected series, |J| = 8,
    and the presence of an element with |J_x| = 3 (the source of the
    ratio 8/3); a failure here would mean the cover data was corrupted.
    """
    if name not in _FIXTURES:
        raise UnknownFixture(
            f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}"
        )
    n, covers, expected_terms = _FIXTURES[name]
    lattice = Lattice.from_covers(n, covers)
    report = zeta_series(lattice)
    counts = {
        lattice.count_below_irreducibles(x)
        for x in range(lattice.n)
        if x != lattice.bottom
    }
    if (
        report.series.term_map() != expected_terms
        or report.j_count != 8
        or 3 not in counts
    ):
        raise MismatchDetected(
            f"fixture {name} failed its load-time signature check",
            context={"series": report.series.to_doc(), "j_count": report.j_count},
        )
    return lattice
