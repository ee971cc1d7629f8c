"""Finite bounded lattices as explicit order tables.

Conventions used throughout:

- Elements are dense integer ids ``0 .. n-1``.  The labelling carries no
  meaning; ``canonical_form`` is the only notion of identity across
  relabellings.
- The order is stored as bitmasks: ``up[x]`` has bit ``y`` set iff
  ``x <= y``, and ``down[y]`` has bit ``x`` set iff ``x <= y``.
- Construction validates everything eagerly: acyclicity of the covers,
  existence of a unique bottom and top, and existence of a unique least
  upper bound and greatest lower bound for every pair.  A ``Lattice``
  that exists is a lattice.
- Join/meet tables are materialised for orders up to ``TABLE_THRESHOLD``
  elements; above that the same principal-filter lookup used during
  validation answers ``join``/``meet`` on demand, which bounds memory.

Instances are immutable apart from internal memo caches (Moebius vectors
and the canonical key), which are filled at most once per value; handing
a constructed lattice to several threads is safe.
"""

from __future__ import annotations

from array import array

from .errors import (
    BottomHasNoIrreducibles,
    CyclicCovers,
    DegenerateLattice,
    NoBoundedStructure,
    NotALattice,
    NotComparable,
    SizeLimitExceeded,
)

#: Above this many elements join/meet tables are not stored.
TABLE_THRESHOLD = 5000

#: Default ceiling for product constructions.
DEFAULT_MAX_ELEMENTS = 50_000


def _iter_bits(mask):
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transpose_masks(n, rows):
    """Transpose a list of n-bit rows (up-masks <-> down-masks)."""
    cols = [0] * n
    for i, row in enumerate(rows):
        bit = 1 << i
        for j in _iter_bits(row):
            cols[j] |= bit
    return cols


def _covers_from_up(n, up, down):
    """Transitive reduction of the order given by up/down masks."""
    covers = []
    for a in range(n):
        strict = up[a] & ~(1 << a)
        for b in _iter_bits(strict):
            if not (strict & down[b] & ~(1 << b)):
                covers.append((a, b))
    return covers


class Lattice:
    """A finite bounded lattice over elements ``0 .. n-1``."""

    __slots__ = (
        "n",
        "up",
        "down",
        "covers",
        "bottom",
        "top",
        "_covers_up",
        "_covers_down",
        "_heights",
        "_depths",
        "_filter_index",
        "_ideal_index",
        "_join_rows",
        "_meet_rows",
        "_desc_height",
        "_irreducibles",
        "_irr_mask",
        "_mobius_cache",
        "_canonical_key",
    )

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use Lattice.from_covers(...) to build a lattice")

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def from_covers(cls, n, covers, *, table_threshold=TABLE_THRESHOLD):
        """Build and validate a lattice from a below/above relation.

        ``covers`` is any iterable of pairs ``(a, b)`` meaning ``a < b``;
        it does not have to be reduced, the transitive reduction is
        re-derived.  Raises ``CyclicCovers``, ``NoBoundedStructure``,
        ``DegenerateLattice`` or ``NotALattice`` as appropriate.
        """
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"element count must be a positive integer, got {n!r}")
        if n == 1:
            raise DegenerateLattice("the one-element order has bottom == top")

        succ = [set() for _ in range(n)]  # a -> {b : a < b given}
        pred = [set() for _ in range(n)]
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"cover ({a}, {b}) out of range for n={n}")
            if a == b:
                raise CyclicCovers(f"self-loop at element {a}")
            succ[a].add(b)
            pred[b].add(a)

        # Reverse-topological sweep: finalise an element once all of its
        # successors are done, accumulating principal filters.
        up = [1 << x for x in range(n)]
        remaining = [len(succ[x]) for x in range(n)]
        stack = [x for x in range(n) if remaining[x] == 0]
        seen = 0
        while stack:
            x = stack.pop()
            seen += 1
            ux = up[x]
            for p in pred[x]:
                up[p] |= ux
                remaining[p] -= 1
                if remaining[p] == 0:
                    stack.append(p)
        if seen != n:
            raise CyclicCovers("cover relation contains a directed cycle")

        down = _transpose_masks(n, up)
        full = (1 << n) - 1
        bottom = top = -1
        for x in range(n):
            if up[x] == full:
                bottom = x
            if down[x] == full:
                top = x
        if bottom < 0 or top < 0:
            raise NoBoundedStructure("order has no unique minimum or maximum")

        self = object.__new__(cls)
        self.n = n
        self.up = tuple(up)
        self.down = tuple(down)
        self.bottom = bottom
        self.top = top

        reduced = _covers_from_up(n, up, down)
        reduced.sort()
        self.covers = tuple(reduced)
        covers_up = [[] for _ in range(n)]
        covers_down = [[] for _ in range(n)]
        for a, b in reduced:
            covers_up[a].append(b)
            covers_down[b].append(a)
        self._covers_up = tuple(tuple(v) for v in covers_up)
        self._covers_down = tuple(tuple(v) for v in covers_down)

        # Longest-path heights/depths; ordering by down-set size is a
        # linear extension, so lower covers are always finalised first.
        order = sorted(range(n), key=lambda x: down[x].bit_count())
        heights = [0] * n
        for x in order:
            if covers_down[x]:
                heights[x] = 1 + max(heights[c] for c in covers_down[x])
        depths = [0] * n
        for x in reversed(order):
            if covers_up[x]:
                depths[x] = 1 + max(depths[c] for c in covers_up[x])
        self._heights = tuple(heights)
        self._depths = tuple(depths)
        self._desc_height = tuple(sorted(range(n), key=lambda x: -heights[x]))

        self._filter_index = {up[x]: x for x in range(n)}
        self._ideal_index = {down[x]: x for x in range(n)}
        self._validate_and_tabulate(eager=n <= table_threshold)

        irr = tuple(
            x for x in range(n) if x != bottom and len(self._covers_down[x]) == 1
        )
        self._irreducibles = irr
        mask = 0
        for x in irr:
            mask |= 1 << x
        self._irr_mask = mask

        self._mobius_cache = {}
        self._canonical_key = None
        return self

    def _validate_and_tabulate(self, *, eager):
        n = self.n
        up, down = self.up, self.down
        if eager:
            kind = "H" if n <= 0xFFFF else "l"
            itemsize = 2 if kind == "H" else array(kind).itemsize
            join_rows = [array(kind, bytes(itemsize * n)) for _ in range(n)]
            meet_rows = [array(kind, bytes(itemsize * n)) for _ in range(n)]
        else:
            join_rows = meet_rows = None
        fget = self._filter_index.get
        iget = self._ideal_index.get
        for x in range(n):
            ux, dx = up[x], down[x]
            jrow = join_rows[x] if eager else None
            mrow = meet_rows[x] if eager else None
            for y in range(x, n):
                j = fget(ux & up[y])
                if j is None:
                    raise NotALattice(
                        f"elements {x} and {y} have no least upper bound"
                    )
                m = iget(dx & down[y])
                if m is None:
                    raise NotALattice(
                        f"elements {x} and {y} have no greatest lower bound"
                    )
                if eager:
                    jrow[y] = j
                    join_rows[y][x] = j
                    mrow[y] = m
                    meet_rows[y][x] = m
        self._join_rows = join_rows
        self._meet_rows = meet_rows

    # ------------------------------------------------------------------
    # order predicates and operations

    def leq(self, x, y):
        return (self.up[x] >> y) & 1 == 1

    def join(self, x, y):
        if self._join_rows is not None:
            return self._join_rows[x][y]
        return self._filter_index[self.up[x] & self.up[y]]

    def meet(self, x, y):
        if self._meet_rows is not None:
            return self._meet_rows[x][y]
        return self._ideal_index[self.down[x] & self.down[y]]

    def join_set(self, xs):
        """Join of an iterable of elements; the empty join is bottom."""
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def meet_set(self, xs):
        acc = self.top
        for x in xs:
            acc = self.meet(acc, x)
        return acc

    def height(self, x):
        return self._heights[x]

    def atoms(self):
        return self._covers_up[self.bottom]

    def coatoms(self):
        return self._covers_down[self.top]

    def upper_covers(self, x):
        return self._covers_up[x]

    def lower_covers(self, x):
        return self._covers_down[x]

    # ------------------------------------------------------------------
    # join-irreducibles

    def join_irreducibles(self):
        """Elements with exactly one lower cover (excludes bottom)."""
        return self._irreducibles

    def is_atomistic(self):
        return self._irreducibles == self.atoms()

    def below_irreducibles(self, x):
        """The join-irreducibles at or below ``x`` (x must not be bottom)."""
        if x == self.bottom:
            raise BottomHasNoIrreducibles(
                "the bottom element has no join-irreducibles below it"
            )
        return tuple(_iter_bits(self.down[x] & self._irr_mask))

    def count_below_irreducibles(self, x):
        if x == self.bottom:
            raise BottomHasNoIrreducibles(
                "the bottom element has no join-irreducibles below it"
            )
        return (self.down[x] & self._irr_mask).bit_count()

    # ------------------------------------------------------------------
    # Moebius function

    def mobius_vector(self, target):
        """Tuple ``v`` with ``v[x] = mu(x, target)`` for ``x <= target``.

        Entries for elements not below ``target`` are ``None``.  Computed
        once per target by the defining recursion and memoised.
        """
        cached = self._mobius_cache.get(target)
        if cached is not None:
            return cached
        members = self.down[target]
        vals = [None] * self.n
        vals[target] = 1
        up = self.up
        for y in self._desc_height:
            bit = 1 << y
            if not (members & bit) or y == target:
                continue
            acc = 0
            m = up[y] & members & ~bit
            while m:
                low = m & -m
                acc += vals[low.bit_length() - 1]
                m ^= low
            vals[y] = -acc
        result = tuple(vals)
        self._mobius_cache[target] = result
        return result

    def mobius(self, x, y):
        """mu(x, y) for x <= y; raises ``NotComparable`` otherwise."""
        if not self.leq(x, y):
            raise NotComparable(f"element {x} is not below element {y}")
        return self.mobius_vector(y)[x]

    def mobius_to_top(self):
        return self.mobius_vector(self.top)

    # ------------------------------------------------------------------
    # canonical form

    def canonical_form(self):
        """Hex key identifying this lattice up to isomorphism.

        The key encodes the strict upper triangle of the order matrix in
        a canonical labelling (see ``canonical_key_from_up``); two
        lattices are isomorphic iff their keys are equal.
        """
        if self._canonical_key is None:
            self._canonical_key = canonical_key_from_up(self.n, self.up)
        return self._canonical_key

    # ------------------------------------------------------------------
    # misc

    def __repr__(self):
        return f"<Lattice n={self.n} covers={len(self.covers)}>"

    def to_lat(self, comment=None):
        return render_lat(self, comment=comment)

    @classmethod
    def from_lat(cls, text):
        n, covers = parse_lat(text)
        return cls.from_covers(n, covers)


# ----------------------------------------------------------------------
# canonical labelling


def _refine_partition(n, cells, covers_up, covers_down):
    """Refine a partition to stability under iterated cover colouring.

    Each round recolours an element by (its cell, the multiset of cells
    of its upper covers, the multiset of cells of its lower covers) and
    splits cells accordingly.  Splitting keeps sub-cells in key order
    inside the parent cell's slot, so the dominant component of the
    seed ordering (rank) keeps dominating the global cell order.
    """
    cell_of = [0] * n
    for idx, members in enumerate(cells):
        for x in members:
            cell_of[x] = idx
    while True:
        keys = [
            (
                cell_of[x],
                tuple(sorted(cell_of[y] for y in covers_up[x])),
                tuple(sorted(cell_of[y] for y in covers_down[x])),
            )
            for x in range(n)
        ]
        new_cells = []
        changed = False
        for members in cells:
            members = sorted(members, key=lambda x: keys[x])
            start = 0
            for i in range(1, len(members) + 1):
                if i == len(members) or keys[members[i]] != keys[members[start]]:
                    new_cells.append(members[start:i])
                    if i - start != len(members):
                        changed = True
                    start = i
        cells = new_cells
        if not changed:
            return cells
        for idx, members in enumerate(cells):
            for x in members:
                cell_of[x] = idx


def canonical_key_from_up(n, up):
    """Canonical hex key of the order given by up-masks.

    Individualisation-refinement search: elements are coloured by
    (rank, upper-cover degree, lower-cover degree) and the colouring is
    refined by iterated cover multisets.  While some colour class has
    more than one member, the search branches on which member of the
    first such class comes first, re-refining after each choice; twins
    (identical strict up- and down-sets) are interchangeable by an
    automorphism, so one branch per twin class suffices.  Every fully
    discrete partition orders the elements by a linear extension (rank
    dominates the colouring, and equal-rank elements are incomparable),
    so the strict upper triangle of the order matrix in that ordering
    captures the whole order.  The key is the minimum over leaves of
    that triangle, read column by column (column ``j`` lists the bits
    ``label_i <= label_j`` for ``i < j``) and hex-encoded.
    """
    if n == 1:
        return _columns_to_hex(1, [0])
    down = _transpose_masks(n, up)
    covers = _covers_from_up(n, up, down)
    covers_up = [[] for _ in range(n)]
    covers_down = [[] for _ in range(n)]
    for a, b in covers:
        covers_up[a].append(b)
        covers_down[b].append(a)
    heights = [0] * n
    for x in sorted(range(n), key=lambda v: down[v].bit_count()):
        if covers_down[x]:
            heights[x] = 1 + max(heights[c] for c in covers_down[x])
    init = [(heights[x], len(covers_up[x]), len(covers_down[x])) for x in range(n)]

    order = sorted(range(n), key=lambda x: init[x])
    seed = []
    start = 0
    for i in range(1, n + 1):
        if i == n or init[order[i]] != init[order[start]]:
            seed.append(order[start:i])
            start = i
    base = _refine_partition(n, seed, covers_up, covers_down)

    twin = [(up[x] & ~(1 << x), down[x] & ~(1 << x)) for x in range(n)]
    best = None

    def leaf(cells):
        nonlocal best
        perm = [x for members in cells for x in members]
        cols = [0] * n
        for p in range(1, n):
            x = perm[p]
            col = 0
            for e in perm[:p]:
                col = (col << 1) | ((up[e] >> x) & 1)
            cols[p] = col
        if best is None or cols < best:
            best = cols

    def rec(cells):
        for idx, members in enumerate(cells):
            if len(members) > 1:
                break
        else:
            leaf(cells)
            return
        seen_twins = set()
        for v in members:
            key = twin[v]
            if key in seen_twins:
                continue
            seen_twins.add(key)
            rest = [w for w in members if w != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1 :]
            rec(_refine_partition(n, child, covers_up, covers_down))

    rec(base)
    return _columns_to_hex(n, best)


def _columns_to_hex(n, cols):
    acc = 0
    total = 0
    for p in range(1, n):
        acc = (acc << p) | cols[p]
        total += p
    pad = (-total) % 8
    acc <<= pad
    nbytes = (total + pad) // 8
    return acc.to_bytes(max(nbytes, 1), "big").hex()


def decode_canonical_key(key, n):
    """Rebuild a lattice from a canonical key and its element count."""
    total = n * (n - 1) // 2
    acc = int.from_bytes(bytes.fromhex(key), "big")
    acc >>= (-total) % 8
    cols = [0] * n
    for p in range(n - 1, 0, -1):
        cols[p] = acc & ((1 << p) - 1)
        acc >>= p
    pairs = []
    for j in range(1, n):
        col = cols[j]
        for i in range(j):
            if (col >> (j - 1 - i)) & 1:
                pairs.append((i, j))
    return Lattice.from_covers(n, pairs)


def canonical_form(lattice):
    return lattice.canonical_form()


def is_isomorphic(a, b):
    """Test lattice isomorphism by comparing canonical keys."""
    if a.n != b.n or len(a.covers) != len(b.covers):
        return False
    return a.canonical_form() == b.canonical_form()


# ----------------------------------------------------------------------
# products and modifications


def cartesian_product(a, b, *, max_elements=DEFAULT_MAX_ELEMENTS):
    """Componentwise-order product of two lattices."""
    n = a.n * b.n
    if n > max_elements:
        raise SizeLimitExceeded(f"product would have {n} > {max_elements} elements")

    def eid(x, y):
        return x * b.n + y

    pairs = []
    for x, xx in a.covers:
        for y in range(b.n):
            pairs.append((eid(x, y), eid(xx, y)))
    for y, yy in b.covers:
        for x in range(a.n):
            pairs.append((eid(x, y), eid(x, yy)))
    return Lattice.from_covers(n, pairs)


def lower_reduced_product(a, b, *, max_elements=DEFAULT_MAX_ELEMENTS):
    """Product of ``a`` and ``b`` with both bottoms removed and a fresh
    bottom adjoined below the resulting minimal pairs."""
    xs = [x for x in range(a.n) if x != a.bottom]
    ys = [y for y in range(b.n) if y != b.bottom]
    n = len(xs) * len(ys) + 1
    if n > max_elements:
        raise SizeLimitExceeded(f"product would have {n} > {max_elements} elements")
    index = {}
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            index[x, y] = 1 + i * len(ys) + j
    pairs = []
    for x, xx in a.covers:
        if x == a.bottom:
            continue
        for y in ys:
            pairs.append((index[x, y], index[xx, y]))
    for y, yy in b.covers:
        if y == b.bottom:
            continue
        for x in xs:
            pairs.append((index[x, y], index[x, yy]))
    for x in a.atoms():
        for y in b.atoms():
            pairs.append((0, index[x, y]))
    return Lattice.from_covers(n, pairs)


def adjoin_atoms(lattice, k):
    """Adjoin ``k`` new atoms, each covering bottom and covered by top."""
    if k < 0:
        raise ValueError("cannot adjoin a negative number of atoms")
    if k == 0:
        return lattice
    n = lattice.n + k
    pairs = list(lattice.covers)
    for i in range(k):
        new = lattice.n + i
        pairs.append((lattice.bottom, new))
        pairs.append((new, lattice.top))
    return Lattice.from_covers(n, pairs)


# ----------------------------------------------------------------------
# ".lat" text format


def parse_lat(text):
    """Parse the line-oriented lattice format.

    ``n <count>`` declares the element count, ``c <a> <b>`` declares a
    cover ``a < b``, ``#`` starts a comment.  Returns ``(n, covers)``.
    """
    n = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "n" and len(fields) == 2:
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate element count")
            n = int(fields[1])
        elif fields[0] == "c" and len(fields) == 3:
            if n is None:
                raise ValueError(f"line {lineno}: cover before element count")
            covers.append((int(fields[1]), int(fields[2])))
        else:
            raise ValueError(f"line {lineno}: unrecognised directive {line!r}")
    if n is None:
        raise ValueError("missing element count line 'n <count>'")
    return n, covers


def render_lat(lattice, comment=None):
    lines = []
    if comment:
        for part in str(comment).splitlines():
            lines.append(f"# {part}")
    lines.append(f"n {lattice.n}")
    for a, b in lattice.covers:
        lines.append(f"c {a} {b}")
    return "\n".join(lines) + "\n"
