"""Probabilistic zeta function of a finite lattice.

For a lattice L with join-irreducible set J and J_x = {j in J : j <= x},
the series is

    P(L, s) = sum over x > bottom of  mu(x, top) / [J : J_x]^s,

with the exact rational index [J : J_x] = |J| / |J_x|.  At a positive
integer s this equals the probability that s elements drawn uniformly
and independently from J have join equal to the top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .dirichlet import DirichletSeries
from .errors import BottomTarget, BudgetExceeded, DegenerateGeneration, MismatchDetected
from .lattice import Lattice

#: Default cap on |J_x|**s for the direct tuple-enumeration oracle.
DEFAULT_TUPLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class ZetaReport:
    """Series of a lattice together with the per-element evidence."""

    lattice: Lattice
    series: DirichletSeries
    j_count: int
    j_below: tuple          # |J_x| per element (0 at the bottom slot)
    mobius_top: tuple       # mu(x, top) per element
    local_sums: dict        # base -> sum of mu over elements at that base
    ordinary: bool
    strongly_coset_like: bool

    def to_doc(self):
        return {
            "n": self.lattice.n,
            "j_count": self.j_count,
            "j_below": list(self.j_below),
            "mobius_top": [str(v) for v in self.mobius_top],
            "local_sums": [
                {"q": f"{q.numerator}/{q.denominator}", "s": str(c)}
                for q, c in sorted(self.local_sums.items())
            ],
            "series": self.series.to_doc(),
            "ordinary": self.ordinary,
            "strongly_coset_like": self.strongly_coset_like,
        }


def zeta_series(lattice):
    """Full engine pass: Moebius numbers, local sums, series, flags."""
    n = lattice.n
    bottom = lattice.bottom
    j_count = len(lattice.join_irreducibles())
    mu = lattice.mobius_to_top()
    sums = {}
    j_below = [0] * n
    strongly = True
    for x in range(n):
        if x == bottom:
            continue
        jb = lattice.count_below_irreducibles(x)
        j_below[x] = jb
        q = Fraction(j_count, jb)
        if q.denominator != 1:
            strongly = False
        sums[q] = sums.get(q, 0) + mu[x]
    series = DirichletSeries(sums)
    return ZetaReport(
        lattice=lattice,
        series=series,
        j_count=j_count,
        j_below=tuple(j_below),
        mobius_top=tuple(mu),
        local_sums=sums,
        ordinary=series.is_ordinary(),
        strongly_coset_like=strongly,
    )


def local_sums(lattice):
    """Map base -> sum of mu(x, top) over x realising that base.

    Bases whose sum vanishes are retained; the series drops them."""
    return dict(zeta_series(lattice).local_sums)


def zeta_series_atom_based(lattice):
    """The same series computed from atoms instead of join-irreducibles.

    Raises ``DegenerateGeneration`` when the atoms do not join to the
    top, in which case no tuple of atoms generates the lattice.
    """
    atoms = lattice.atoms()
    if lattice.join_set(atoms) != lattice.top:
        raise DegenerateGeneration("the join of all atoms is not the top")
    amask = 0
    for a in atoms:
        amask |= 1 << a
    mu = lattice.mobius_to_top()
    sums = {}
    for x in range(lattice.n):
        if x == lattice.bottom:
            continue
        ax = (lattice.down[x] & amask).bit_count()
        q = Fraction(len(atoms), ax)
        sums[q] = sums.get(q, 0) + mu[x]
    return DirichletSeries(sums)


# ----------------------------------------------------------------------
# brute-force oracles


def brute_force_probability(
    lattice, x, s, *, method="auto", budget=DEFAULT_TUPLE_BUDGET
):
    """Probability that s uniform draws from J_x join to exactly x.

    Two independent paths are available: ``direct`` enumerates all
    |J_x|**s tuples (subject to ``budget``), ``mobius`` counts through
    inclusion-exclusion over the interval (bottom, x].  ``auto`` picks
    ``direct`` when it fits the budget.

    At s = 0 the single empty tuple joins to the bottom, so the
    probability is 0 for every x above it.
    """
    if x == lattice.bottom:
        raise BottomTarget("generation probability is defined for x above bottom")
    if s < 0:
        raise ValueError("tuple length must be non-negative")
    if s == 0:
        return Fraction(0)
    jx = lattice.below_irreducibles(x)
    size = len(jx) ** s
    if method == "auto":
        method = "direct" if size <= budget else "mobius"
    if method == "direct":
        if size > budget:
            raise BudgetExceeded(f"{size} tuples exceed the budget of {budget}")
        join = lattice.join
        hits = 0
        for tup in itertools.product(jx, repeat=s):
            acc = tup[0]
            for e in tup[1:]:
                acc = join(acc, e)
            if acc == x:
                hits += 1
        return Fraction(hits, size)
    if method == "mobius":
        mu = lattice.mobius_vector(x)
        members = lattice.down[x]
        count = 0
        for y in range(lattice.n):
            if y == lattice.bottom or not (members >> y) & 1:
                continue
            count += mu[y] * lattice.count_below_irreducibles(y) ** s
        return Fraction(count, size)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class OracleCheck:
    """Per-exponent agreement between the series and the oracles."""

    s_values: dict  # s -> exact series value (verified)
    methods: tuple  # oracle paths that were exercised

    @property
    def ok(self):
        return True  # a mismatch raises instead of returning


def verify_series_against_oracle(
    lattice, s_max, *, budget=DEFAULT_TUPLE_BUDGET, methods=("direct", "mobius")
):
    """Check evaluate_exact(P(L, .), s) against the oracles for
    1 <= s <= s_max; raises ``MismatchDetected`` with both values."""
    series = zeta_series(lattice).series
    top = lattice.top
    checked = {}
    used = []
    for method in methods:
        size_ok = True
        for s in range(1, s_max + 1):
            if method == "direct":
                size = len(lattice.below_irreducibles(top)) ** s
                if size > budget:
                    size_ok = False
                    continue
            want = series.evaluate_exact(s)
            got = brute_force_probability(
                lattice, top, s, method=method, budget=budget
            )
            if want != got:
                raise MismatchDetected(
                    f"series value {want} != {method} oracle value {got} at s={s}",
                    context={
                        "s": s,
                        "series": str(want),
                        "oracle": str(got),
                        "method": method,
                    },
                )
            checked[s] = want
        if size_ok or method != "direct":
            used.append(method)
    return OracleCheck(s_values=checked, methods=tuple(used))
