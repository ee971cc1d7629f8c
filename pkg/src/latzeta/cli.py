"""Command-line front end.

Thin adapters only: every computation lives in the library modules.
Targets name lattices (``partition:5``, ``fixture:ten_point``,
``file:path.lat``, ``group:cyclic:6`` for a coset lattice), group specs
name groups (``cyclic:6``, ``sym:3``, ``dihedral:4``,
``prod:cyclic:4,cyclic:3``).  Machine output (``--format json``) is
byte-stable: sorted keys, no timing, exact rationals as strings.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import families, groups, search
from .cosetlike import (
    FIXTURE_NAMES,
    classify,
    coatom_criterion,
    ddiv_strong_check,
    load_fixture,
)
from .errors import LatZetaError, MismatchDetected, UsageError
from .lattice import Lattice
from .zeta import (
    DEFAULT_TUPLE_BUDGET,
    verify_series_against_oracle,
    zeta_series,
)

__all__ = ["run", "main", "build_parser"]


# ----------------------------------------------------------------------
# target and group-spec parsing


def _int_args(raw, count, what):
    parts = raw.split(",")
    if len(parts) != count:
        raise UsageError(f"{what} takes {count} integer argument(s), got {raw!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"{what} arguments must be integers, got {raw!r}") from None


def parse_group(spec):
    """Build a finite group from a spec like ``cyclic:6`` or
    ``prod:cyclic:2,cyclic:3`` (left-folded direct product)."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise UsageError(f"group spec {spec!r} needs a ':'")
    if kind == "prod":
        factors = [parse_group(p) for p in rest.split(",")]
        if len(factors) < 2:
            raise UsageError("prod: needs at least two factors")
        product = factors[0]
        for factor in factors[1:]:
            product = groups.direct_product(product, factor)
        return product
    if kind == "cyclic":
        return groups.cyclic(_int_args(rest, 1, "cyclic")[0])
    if kind == "sym":
        return groups.symmetric(_int_args(rest, 1, "sym")[0])
    if kind == "dihedral":
        return groups.dihedral(_int_args(rest, 1, "dihedral")[0])
    raise UsageError(
        f"unknown group kind {kind!r} (expected cyclic, sym, dihedral, prod)"
    )


def parse_lattice_target(spec, *, max_elements=None):
    """Build a lattice from a target spec; see module docstring."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise UsageError(f"target {spec!r} needs a ':'")
    if kind == "boolean":
        lattice = families.boolean_lattice(_int_args(rest, 1, "boolean")[0])
    elif kind == "chain":
        lattice = families.chain(_int_args(rest, 1, "chain")[0])
    elif kind == "divisor":
        lattice = families.divisibility_lattice(_int_args(rest, 1, "divisor")[0])
    elif kind == "subspace":
        q, n = _int_args(rest, 2, "subspace")
        lattice = families.subspace_lattice(q, n)
    elif kind == "partition":
        lattice = families.partition_lattice(_int_args(rest, 1, "partition")[0])
    elif kind == "ddiv":
        d, n = _int_args(rest, 2, "ddiv")
        lattice = families.d_divisible_partition_lattice(d, n)
    elif kind == "fixture":
        lattice = load_fixture(rest)
    elif kind == "group":
        lattice = groups.coset_lattice(parse_group(rest)).lattice
    elif kind == "file":
        try:
            with open(rest, encoding="ascii") as handle:
                text = handle.read()
        except OSError as exc:
            raise UsageError(f"cannot read {rest!r}: {exc}") from None
        lattice = Lattice.from_lat(text)
    else:
        raise UsageError(f"unknown target kind {kind!r}")
    if max_elements is not None and lattice.n > max_elements:
        raise UsageError(
            f"target has {lattice.n} elements, over the --max-elements cap "
            f"{max_elements}"
        )
    return lattice


# ----------------------------------------------------------------------
# output


def _emit(doc, args, human_lines):
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        text = "\n".join(human_lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _frac(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ----------------------------------------------------------------------
# subcommand handlers: each returns (doc, human_lines, exit_code)


def _cmd_zeta(args):
    lattice = parse_lattice_target(args.target, max_elements=args.max_elements)
    report = zeta_series(lattice)
    doc = {"command": "zeta", "target": args.target, **report.to_doc()}
    lines = [
        f"P(L, s) = {report.series.pretty()}",
        f"elements: {lattice.n}   join-irreducibles: {report.j_count}",
        f"ordinary: {report.ordinary}   strongly coset-like: "
        f"{report.strongly_coset_like}",
    ]
    return doc, lines, 0


def _cmd_classify(args):
    lattice = parse_lattice_target(args.target, max_elements=args.max_elements)
    verdict = classify(lattice)
    witness = coatom_criterion(lattice)
    doc = {
        "command": "classify",
        "target": args.target,
        **verdict.to_doc(),
        "coatom_witness": witness,
    }
    lines = [
        f"strong: {verdict.strong}   weak: {verdict.weak}",
    ]
    if verdict.strong_failures:
        x, jx, j = verdict.strong_failures[0]
        lines.append(
            f"strong fails at element {x}: |J_x| = {jx} does not divide |J| = {j}"
            + (f" (+{len(verdict.strong_failures) - 1} more)"
               if len(verdict.strong_failures) > 1 else "")
        )
    if verdict.non_integer_bases:
        lines.append(
            "non-integer bases: "
            + ", ".join(_frac(q) for q in verdict.non_integer_bases)
        )
    lines.append(f"coatom-criterion witness: {witness}")
    return doc, lines, 0


def _cmd_mobius(args):
    lattice = parse_lattice_target(args.target, max_elements=args.max_elements)
    mu = lattice.mobius_to_top()
    doc = {
        "command": "mobius",
        "target": args.target,
        "n": lattice.n,
        "top": lattice.top,
        "mobius_top": [int(v) for v in mu],
    }
    lines = [f"mu(x, top) on {lattice.n} elements (top = {lattice.top}):"]
    lines += [f"  {x}: {mu[x]}" for x in range(lattice.n)]
    return doc, lines, 0


def _cmd_group(args):
    group = parse_group(args.group)
    series = groups.group_zeta(group)
    doc = {
        "command": "group",
        "group": args.group,
        "order": group.n,
        "series": series.to_doc(),
    }
    lines = [f"|G| = {group.n}", f"P(G, s) = {series.pretty()}"]
    if args.brown:
        check = groups.verify_brown_identity(group, s_max=args.smax)
        doc["brown"] = {"ok": check.ok, "s_max": check.s_max}
        lines.append(f"brown identity: OK (s=0..{check.s_max})")
    if args.coprime:
        other = parse_group(args.coprime)
        check = groups.verify_coprime_product(group, other)
        doc["coprime"] = {
            "other": args.coprime,
            "ok": True,
            "lattices_isomorphic": check.lattices_isomorphic,
        }
        lines.append(
            f"coprime product with {args.coprime}: series OK, "
            f"lattices isomorphic: {check.lattices_isomorphic}"
        )
    return doc, lines, 0


def _closed_form_for(spec):
    kind, _, rest = spec.partition(":")
    if kind == "boolean":
        return families.boolean_zeta_closed(_int_args(rest, 1, "boolean")[0])
    if kind == "chain":
        return families.chain_zeta_closed(_int_args(rest, 1, "chain")[0])
    if kind == "divisor":
        return families.divisibility_zeta_closed(_int_args(rest, 1, "divisor")[0])
    if kind == "subspace":
        q, n = _int_args(rest, 2, "subspace")
        return families.subspace_zeta_closed(q, n)
    if kind == "partition":
        return families.partition_zeta_closed(_int_args(rest, 1, "partition")[0])
    return None


def _cmd_family(args):
    closed = _closed_form_for(args.family)
    kind = args.family.partition(":")[0]
    doc = {"command": "family", "family": args.family}
    lines = []
    if closed is not None:
        doc["series"] = closed.to_doc()
        lines.append(f"P(L, s) = {closed.pretty()}")
    if kind == "ddiv":
        d, n = _int_args(args.family.partition(":")[2], 2, "ddiv")
        summary = ddiv_strong_check(d, n)
        doc["shape_strong_check"] = summary.to_doc()
        lines.append(
            f"shape-level strong check (d={d}, n={n}): {summary.strong}"
        )
    elif closed is None:
        raise UsageError(f"no closed form for family {args.family!r}")
    if args.closed_form_check:
        if closed is None:
            raise UsageError(
                f"--closed-form-check unsupported for {args.family!r}"
            )
        lattice = parse_lattice_target(args.family, max_elements=args.max_elements)
        engine = zeta_series(lattice).series
        if engine != closed:
            raise MismatchDetected(
                f"closed form for {args.family} disagrees with the engine",
                context={"closed": closed.to_doc(), "engine": engine.to_doc()},
            )
        doc["closed_form_check"] = "ok"
        lines.append("closed form matches the engine series")
    return doc, lines, 0


def _cmd_search(args):
    store = search.CatalogStore(args.catalog) if args.catalog else None
    summaries = []
    found = {}
    for n in range(2, args.max_n + 1):
        entries = search.level_entries(n, store=store, jobs=args.jobs)
        summaries.append({
            "n": n,
            "total": len(entries),
            "strong": sum(e.strong for e in entries),
            "weak": sum(e.weak for e in entries),
            "atomistic": sum(e.atomistic for e in entries),
            "weak_not_strong": sum(e.weak and not e.strong for e in entries),
        })
        found[n] = [
            e for e in entries
            if e.weak and not e.strong
            and (e.atomistic or not args.atomistic_only)
        ]
    doc = {
        "command": "search",
        "max_n": args.max_n,
        "atomistic_only": args.atomistic_only,
        "levels": summaries,
        "weak_not_strong": {
            str(n): [e.key for e in entries] for n, entries in found.items()
        },
    }
    lines = ["n  total  strong  weak  atomistic  weak-not-strong"]
    for s in summaries:
        lines.append(
            f"{s['n']:<2} {s['total']:>6} {s['strong']:>7} {s['weak']:>5} "
            f"{s['atomistic']:>9} {s['weak_not_strong']:>15}"
        )
    hits = sum(len(v) for v in found.values())
    lines.append(f"weak-not-strong classes found: {hits}")
    return doc, lines, 0


def _cmd_fixture(args):
    lattice = load_fixture(args.name)
    report = zeta_series(lattice)
    lat_text = lattice.to_lat(comment=f"fixture {args.name}")
    doc = {
        "command": "fixture",
        "name": args.name,
        "lat": lat_text,
        **report.to_doc(),
    }
    lines = [lat_text.rstrip("\n"), f"# P(L, s) = {report.series.pretty()}"]
    return doc, lines, 0


# ----------------------------------------------------------------------
# verification suites


def _suite_brown(args):
    roster = [
        ("cyclic:2", groups.cyclic(2)),
        ("cyclic:3", groups.cyclic(3)),
        ("cyclic:4", groups.cyclic(4)),
        ("cyclic:6", groups.cyclic(6)),
        ("cyclic:8", groups.cyclic(8)),
        ("cyclic:12", groups.cyclic(12)),
        ("sym:3", groups.symmetric(3)),
        ("dihedral:4", groups.dihedral(4)),
    ]
    for name, group in roster:
        groups.verify_brown_identity(group, s_max=args.smax)
        yield f"brown {name}", True
    sizes = {
        "cyclic:6": groups.coset_lattice(groups.cyclic(6)).lattice.n,
        "sym:3": groups.coset_lattice(groups.symmetric(3)).lattice.n,
    }
    yield "coset sizes 13/19", sizes == {"cyclic:6": 13, "sym:3": 19}


def _suite_closed_forms(args):
    targets = (
        ["boolean:%d" % r for r in range(1, 6)]
        + ["divisor:%d" % n for n in (4, 8, 12, 30, 360)]
        + ["subspace:2,2", "subspace:2,3", "subspace:3,2", "subspace:4,2"]
        + ["partition:%d" % n for n in (3, 4, 5, 6)]
    )
    for spec in targets:
        closed = _closed_form_for(spec)
        engine = zeta_series(parse_lattice_target(spec)).series
        yield f"closed {spec}", engine == closed


def _suite_oracle(args):
    for n in range(2, 8):
        for lattice in search.enumerate_lattices(n):
            verify_series_against_oracle(
                lattice, min(args.smax, 3), budget=args.budget_tuples
            )
        yield f"oracle n={n}", True


def _suite_products(args):
    from .lattice import lower_reduced_product

    left = [
        ("boolean:2", families.boolean_lattice(2)),
        ("boolean:3", families.boolean_lattice(3)),
        ("partition:4", families.partition_lattice(4)),
        ("group:cyclic:2", groups.coset_lattice(groups.cyclic(2)).lattice),
    ]
    right = [
        ("chain:3", families.chain(3)),
        ("boolean:2", families.boolean_lattice(2)),
        ("fixture:ten_point", load_fixture("ten_point")),
    ]
    for lname, L in left:
        for rname, K in right:
            product = lower_reduced_product(L, K)
            ok = (
                zeta_series(product).series
                == zeta_series(L).series * zeta_series(K).series
            )
            yield f"star {lname} x {rname}", ok
    for a, b in ((2, 3), (4, 3)):
        check = groups.verify_coprime_product(groups.cyclic(a), groups.cyclic(b))
        yield f"coprime cyclic:{a} x cyclic:{b}", check.lattices_isomorphic


def _suite_limits(args):
    h = Fraction(1, 10**6)
    for n in (2, 3):
        for s in range(1, 5):
            check = families.q_to_one_limit_check(n, s, h)
            yield f"limit n={n} s={s}", check.difference < 1e-3


def _suite_stirling(args):
    for r in range(1, 6):
        series = families.boolean_zeta_closed(r)
        ok = all(
            series.evaluate_exact(s) == families.stirling_boolean_value(r, s)
            for s in range(1, 10)
        )
        yield f"stirling r={r}", ok


def _suite_fixtures(args):
    for name in FIXTURE_NAMES:
        lattice = load_fixture(name)
        verdict = classify(lattice)
        ratios = {
            Fraction(8, lattice.count_below_irreducibles(x))
            for x in range(lattice.n)
            if x != lattice.bottom
        }
        yield f"fixture {name}", (
            verdict.weak and not verdict.strong and Fraction(8, 3) in ratios
        )


_SUITES = {
    "brown": _suite_brown,
    "closed-forms": _suite_closed_forms,
    "oracle": _suite_oracle,
    "products": _suite_products,
    "limits": _suite_limits,
    "stirling": _suite_stirling,
    "fixtures": _suite_fixtures,
}


def _cmd_verify(args):
    if args.suite == "all":
        names = sorted(_SUITES)
    elif args.suite in _SUITES:
        names = [args.suite]
    else:
        raise UsageError(
            f"unknown suite {args.suite!r}; available: "
            + ", ".join(sorted(_SUITES) + ["all"])
        )
    checks = []
    for name in names:
        for check_name, ok in _SUITES[name](args):
            checks.append({"name": check_name, "ok": bool(ok)})
    all_ok = all(c["ok"] for c in checks)
    doc = {
        "command": "verify",
        "suite": args.suite,
        "checks": checks,
        "ok": all_ok,
    }
    lines = [
        f"{'OK ' if c['ok'] else 'FAIL'} {c['name']}" for c in checks
    ] + [f"suite {args.suite}: {'OK' if all_ok else 'FAILED'}"]
    return doc, lines, 0 if all_ok else 1


# ----------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--smax", type=int, default=5,
                        help="largest exponent for verification sweeps")
    common.add_argument("--budget-tuples", type=int, default=DEFAULT_TUPLE_BUDGET,
                        help="cap on enumerated tuples in oracle checks")
    common.add_argument("--max-elements", type=int, default=None,
                        help="refuse lattices larger than this")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for search")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="latzeta",
        description="Probabilistic zeta functions of finite lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[common],
                       help="series and report for a lattice target")
    p.add_argument("target")
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("classify", parents=[common],
                       help="strong/weak coset-likeness of a target")
    p.add_argument("target")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("mobius", parents=[common],
                       help="Moebius numbers mu(x, top) of a target")
    p.add_argument("target")
    p.set_defaults(handler=_cmd_mobius)

    p = sub.add_parser("group", parents=[common],
                       help="group zeta series and identities")
    p.add_argument("group")
    p.add_argument("--brown", action="store_true",
                   help="verify the coset-lattice shift identity")
    p.add_argument("--coprime", default=None, metavar="GROUP",
                   help="verify the coprime product law against this group")
    p.set_defaults(handler=_cmd_group)

    p = sub.add_parser("family", parents=[common],
                       help="closed-form series for a lattice family")
    p.add_argument("family")
    p.add_argument("--closed-form-check", action="store_true",
                   help="compare the closed form with the generic engine")
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("search", parents=[common],
                       help="enumerate and classify small lattices")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--atomistic-only", action="store_true")
    p.add_argument("--catalog", default=None, metavar="PATH",
                   help="persist/resume the catalog at this path")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("verify", parents=[common],
                       help="run a named verification suite")
    p.add_argument("--suite", required=True,
                   help=", ".join(sorted(_SUITES) + ["all"]))
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("fixture", parents=[common],
                       help="emit a fixture lattice in .lat form")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.set_defaults(handler=_cmd_fixture)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        doc, lines, code = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MismatchDetected as exc:
        doc = {"error": "MismatchDetected", "message": str(exc),
               "context": exc.context}
        _emit(doc, args, [f"MISMATCH: {exc}"])
        return 1
    except LatZetaError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc)}
        _emit(doc, args, [f"error ({type(exc).__name__}): {exc}"])
        return 1
    _emit(doc, args, lines)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
