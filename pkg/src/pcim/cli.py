"""Command-line front end.

Exit status: 0 on success, 2 when the map (or an argument) is invalid, 3 when
a budget ran out; partial artifacts are still written in that case.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import gallery
from .atoms import DepthBudgetExceeded, atoms_svg, expand_atoms, write_atoms_csv
from .decomposition import Budget, cross_validate, decompose, spectral_svg, write_report_json
from .maps import MapError, MapSpec, boundary_data, check_D_in_Xtilde, dump_map, load_map
from .orbit import detect_eventual_periodicity, iterate, itinerary, write_orbit_csv
from .rational import RationalFormatError, approx, format_rational, parse_rational
from .recurrence import ClassGraph, DetectionConfig
from .symbolic import WordTooShort, complexity, complexity_svg, write_complexity_csv

OUT_ENV = "PCIM_OUT"
FORMATS = ("csv", "json", "svg", "dot")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _eps_list(text: str) -> tuple[Fraction, ...]:
    try:
        vals = tuple(parse_rational(t) for t in text.split(","))
    except RationalFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return vals


def _formats(text: str) -> frozenset[str]:
    vals = frozenset(t.strip() for t in text.split(",") if t.strip())
    bad = vals - set(FORMATS)
    if bad:
        raise argparse.ArgumentTypeError(f"unknown format(s): {', '.join(sorted(bad))}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pcim", description="Exact analysis of piecewise contracting interval maps."
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, needs_map: bool = True) -> None:
        if needs_map:
            sp.add_argument("map", type=Path, help="map description (JSON)")
        sp.add_argument("--out", type=Path, default=None, help=f"output directory (default ${OUT_ENV} or .)")
        sp.add_argument("--formats", type=_formats, default=frozenset(FORMATS), help="subset of csv,json,svg,dot")

    sp = sub.add_parser("validate", help="check a map and the one-sided limits")
    common(sp)
    sp.add_argument("--horizon", type=_positive, default=1000)

    sp = sub.add_parser("orbit", help="exact orbit and periodicity certificate")
    common(sp)
    sp.add_argument("--start", default="d0", help="p/q or a one-sided limit label such as d1+")
    sp.add_argument("--horizon", type=_positive, default=1000)

    sp = sub.add_parser("atoms", help="atoms and Lambda_n per generation")
    common(sp)
    sp.add_argument("--depth", type=_positive, default=8)

    sp = sub.add_parser("complexity", help="word complexity of an itinerary")
    common(sp)
    sp.add_argument("--start", default="d0")
    sp.add_argument("--horizon", type=_positive, default=10**4)
    sp.add_argument("--n-max", type=_positive, default=30)

    sp = sub.add_parser("classes", help="lr-recurrence classes and their order")
    common(sp)
    sp.add_argument("--horizon", type=_positive, default=10**4)
    sp.add_argument("--eps", type=_eps_list, default=None, help="comma-separated decreasing p/q values")

    sp = sub.add_parser("decompose", help="full decomposition report")
    common(sp)
    sp.add_argument("--horizon", type=_positive, default=10**4)
    sp.add_argument("--depth", type=_positive, default=12)
    sp.add_argument("--eps", type=_eps_list, default=None)

    sp = sub.add_parser("cross-validate", help="check grid orbit tails against the decomposition")
    common(sp)
    sp.add_argument("--horizon", type=_positive, default=10**4)
    sp.add_argument("--depth", type=_positive, default=12)
    sp.add_argument("--eps", type=_eps_list, default=None)
    sp.add_argument("--grid", type=_positive, default=101)
    sp.add_argument("--tail", type=_positive, default=200)
    sp.add_argument("--burn-in", type=_nonnegative, default=None)

    sp = sub.add_parser("gallery", help="write the bundled example maps")
    common(sp, needs_map=False)
    return p


def _out_dir(arg: Path | None) -> Path:
    out = arg or Path(os.environ.get(OUT_ENV, "."))
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise UsageError(f"output directory {out} is not writable")
    return out


def _start(spec: MapSpec, text: str) -> tuple[str, Fraction]:
    if text.startswith("d"):
        labels = dict(boundary_data(spec).labeled())
        if text not in labels:
            raise UsageError(f"unknown one-sided limit {text!r}; choose from {', '.join(labels)}")
        return text, labels[text]
    return text, parse_rational(text)


def _detection(spec: MapSpec, args: argparse.Namespace) -> DetectionConfig | None:
    if getattr(args, "eps", None) is None:
        return None
    return DetectionConfig(args.horizon, args.eps, burn_in=args.horizon // 10)


def _say(*parts: object) -> None:
    print(*parts)


def cmd_validate(spec: MapSpec, args, out: Path, stem: str) -> int:
    bd = boundary_data(spec)
    chk = check_D_in_Xtilde(spec, args.horizon)
    _say(f"pieces N = {spec.n_pieces}, lambda = {format_rational(spec.lam)}")
    _say(f"Delta = {{{', '.join(format_rational(c) for c in spec.delta)}}}")
    for s in chk.statuses:
        extra = f" at step {s.hit_step}" if s.hit_step else ""
        _say(f"  {s.label:>5} = {format_rational(s.value):>12}  {s.status}{extra}")
    flags = spec.with_flags(D_in_Xtilde=chk.flag).flags
    _say("flags:", json.dumps(flags.to_dict(), sort_keys=True))
    if "json" in args.formats:
        doc = {
            "map": spec.to_dict(),
            "hypothesis_flags": flags.to_dict(),
            "#D": len(bd),
            "one_sided_limits": [
                {"label": s.label, "value": format_rational(s.value), "status": s.status, "hit_step": s.hit_step}
                for s in chk.statuses
            ],
            "horizon": args.horizon,
        }
        (out / f"{stem}.validate.json").write_text(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_orbit(spec: MapSpec, args, out: Path, stem: str) -> int:
    label, x = _start(spec, args.start)
    sample = iterate(spec, x, args.horizon)
    if "csv" in args.formats:
        write_orbit_csv(sample, out / f"{stem}.orbit.csv")
    if sample.hit_delta_at is not None:
        _say(f"orbit of {label} reaches Delta at step {sample.hit_delta_at}")
        return EXIT_OK
    found = detect_eventual_periodicity(spec, x, args.horizon)
    if found is None:
        _say(f"no periodic capture of {label} within {args.horizon} steps")
        return EXIT_BUDGET
    t, cert = found
    _say(f"{label}: captured at step {t} by a period-{cert.period} orbit, word {''.join(map(str, cert.word))}")
    _say(f"  point {format_rational(cert.point)} (~{approx(cert.point)}), separation ~{approx(cert.separation)}")
    if "json" in args.formats:
        doc = {
            "start": label,
            "value": format_rational(x),
            "preperiod": t,
            "word": list(cert.word),
            "period": cert.period,
            "point": format_rational(cert.point),
            "separation": format_rational(cert.separation),
            "orbit": [format_rational(p) for p in cert.orbit],
        }
        (out / f"{stem}.orbit.json").write_text(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_atoms(spec: MapSpec, args, out: Path, stem: str) -> int:
    status = EXIT_OK
    try:
        tree = expand_atoms(spec, args.depth)
    except DepthBudgetExceeded as exc:
        print(f"pcim: {exc}", file=sys.stderr)
        tree = exc.partial
        status = EXIT_BUDGET
    if tree.depth == 0:
        return status
    if "csv" in args.formats:
        write_atoms_csv(tree, out / f"{stem}.atoms.csv")
    if "svg" in args.formats:
        atoms_svg(tree, spec.endpoints[0], spec.endpoints[-1]).save(out / f"{stem}.atoms.svg")
    for n, gen in enumerate(tree.generations, start=1):
        _say(f"generation {n}: {len(gen)} atoms, {len(tree.covers[n - 1])} intervals, max diameter {format_rational(tree.max_diameter(n))}")
    return status


def cmd_complexity(spec: MapSpec, args, out: Path, stem: str) -> int:
    label, x = _start(spec, args.start)
    word, hit = itinerary(spec, x, args.horizon)
    if hit is not None:
        print(f"pcim: orbit of {label} reaches Delta at step {hit}; using the itinerary before it", file=sys.stderr)
    prof = complexity(word, args.n_max)
    if "csv" in args.formats:
        write_complexity_csv(prof, out / f"{stem}.complexity.csv")
    if "svg" in args.formats:
        complexity_svg(prof, sturmian_line=spec.n_pieces == 2).save(out / f"{stem}.complexity.svg")
    _say(f"{label}: p(1..{args.n_max}) = {' '.join(map(str, prof.values))}")
    _say(f"classification: {prof.classification}")
    return EXIT_OK


def cmd_classes(spec: MapSpec, args, out: Path, stem: str) -> int:
    budget = Budget(horizon=args.horizon, detection=_detection(spec, args))
    rep = decompose(spec, budget)
    for f in rep.fragments:
        if f.lr is not None and not f.lr.certified_periodic:
            status = ", ".join(f"c{v.index}:{v.status}" for v in f.lr.visits)
            _say(f"{f.label}: {status}")
    graph = rep.graph or ClassGraph.from_relation((), (), n_boundaries=spec.n_pieces)
    for msg in graph.inconsistencies:
        print(f"pcim: evidence inconsistency: {msg}", file=sys.stderr)
    if "dot" in args.formats:
        (out / f"{stem}.classes.dot").write_text(graph.to_dot())
    if "csv" in args.formats:
        graph.write_relation_csv(out / f"{stem}.relation.csv", spec.n_pieces)
    fmt = lambda g: "[" + ",".join(f"c{i}" for i in g) + "]"
    _say(f"classes: {' '.join(fmt(g) for g in graph.nodes) or '(none)'}")
    _say(f"minimal: {' '.join(fmt(g) for g in graph.minimal) or '(none)'}")
    return EXIT_BUDGET if rep.undetermined else EXIT_OK


def cmd_decompose(spec: MapSpec, args, out: Path, stem: str) -> int:
    budget = Budget(horizon=args.horizon, depth=args.depth, detection=_detection(spec, args))
    rep = decompose(spec, budget)
    if "json" in args.formats:
        write_report_json(rep, out / f"{stem}.report.json")
    if "svg" in args.formats:
        spectral_svg(rep).save(out / f"{stem}.spectral.svg")
    _say(f"N1 = {rep.N1}, N2 = {rep.N2}, undetermined = {rep.undetermined_count}")
    for a in rep.bound_audit:
        _say(f"  {a.name:<20} {a.lhs} vs {a.rhs}: {a.status}")
    return EXIT_BUDGET if rep.undetermined else EXIT_OK


def cmd_cross_validate(spec: MapSpec, args, out: Path, stem: str) -> int:
    budget = Budget(horizon=args.horizon, depth=args.depth, detection=_detection(spec, args))
    rep = decompose(spec, budget)
    cv = cross_validate(spec, rep, args.grid, args.tail, burn_in=args.burn_in)
    _say(f"covered {cv.covered}/{cv.checked} start points ({cv.fraction:.2%}); "
         f"{cv.skipped_on_delta} starts on Delta, {cv.hit_delta} orbits reach Delta")
    if cv.worst_distance is not None:
        _say(f"worst tail distance ~{approx(cv.worst_distance)} (start {format_rational(cv.worst_start)})")
    if "json" in args.formats:
        doc = {
            "grid": cv.grid,
            "tail": cv.tail,
            "burn_in": cv.burn_in,
            "starts": cv.n_starts,
            "skipped_on_delta": cv.skipped_on_delta,
            "hit_delta": cv.hit_delta,
            "checked": cv.checked,
            "covered": cv.covered,
            "worst_distance": format_rational(cv.worst_distance) if cv.worst_distance is not None else None,
            "worst_start": format_rational(cv.worst_start) if cv.worst_start is not None else None,
            "uncovered": [format_rational(x) for x in cv.uncovered],
            "report_undetermined": list(rep.undetermined),
        }
        (out / f"{stem}.crossval.json").write_text(json.dumps(doc, indent=2) + "\n")
    return EXIT_BUDGET if rep.undetermined else EXIT_OK


def cmd_gallery(args, out: Path) -> int:
    for name, make in gallery.GALLERY.items():
        path = out / f"{name}.json"
        dump_map(make(), path)
        _say(path)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "orbit": cmd_orbit,
    "atoms": cmd_atoms,
    "complexity": cmd_complexity,
    "classes": cmd_classes,
    "decompose": cmd_decompose,
    "cross-validate": cmd_cross_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = _out_dir(args.out)
        if args.command == "gallery":
            return cmd_gallery(args, out)
        spec = load_map(args.map)
        return COMMANDS[args.command](spec, args, out, args.map.stem)
    except (MapError, RationalFormatError, UsageError, WordTooShort) as exc:
        print(f"pcim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as exc:
        print(f"pcim: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        # e.g. a start point outside X or on Delta
        print(f"pcim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
