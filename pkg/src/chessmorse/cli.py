"""chessmorse command line.

Exit status: 0 on success, 2 on bad input (one-line diagnostic on stderr),
3 when a verification fails.
"""

from __future__ import annotations

import argparse
import shlex
import sys
from pathlib import Path

from . import homology
from .bier import BierError, bier_sphere, decoding_table, render_triple
from .bottleneck import (
    ClutterError,
    blocker,
    bottleneck_via_morse,
    maxmin_bruteforce,
    minmax_bruteforce,
    parse_clutter,
    parse_weights,
)
from .chessboard import (
    GridSpec,
    MultiplicityProfile,
    multiple_chessboard,
    parse_caps,
    standard_chessboard,
    star_condition,
    transpose_complex,
    transpose_grid,
)
from .complex_core import (
    FacetFormatError,
    InstanceTooLarge,
    SimplicialComplex,
    alexander_dual,
    f_vector,
    format_facets,
    full_simplex,
    parse_facets,
    render,
    set_face_cap,
    skeleton,
    vertices,
)
from .homology import betti, homological_connectivity
from .morse import (
    CertificateNotApplicable,
    MatchingError,
    bier_dmf,
    connectivity_certificate,
    critical_cells,
    critical_counts,
    is_acyclic,
    morse_inequality_holds,
    multiple_chessboard_dmf,
    validate,
)
from .report import Report, digest

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report: Report, message: str):
        super().__init__(message)
        self.report = report


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path!r}: {e.strerror}") from None


def _load(path: str) -> tuple[SimplicialComplex, str]:
    text = _read(path)
    return parse_facets(text), digest(text)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _grid(args) -> tuple[GridSpec, MultiplicityProfile]:
    m, n = args.grid
    if m < 1 or n < 1:
        raise InputError(f"grid dimensions must be positive, got {m} {n}")
    g = GridSpec(m, n)
    k = parse_caps(args.row_caps, n, "row caps") if args.row_caps else (1,) * n
    l = parse_caps(args.col_caps, m, "column caps") if args.col_caps else (1,) * m
    return g, MultiplicityProfile(k, l)


def _figure(args, name: str) -> Path | None:
    if not args.plot_dir:
        return None
    return Path(args.plot_dir) / name


# -- subcommands --------------------------------------------------------------

def cmd_build(args) -> Report | None:
    if args.grid:
        g, mp = _grid(args)
        if args.transpose:
            gt, mpt = transpose_grid(g, mp)
            K = transpose_complex(multiple_chessboard(gt, mpt), gt)
        elif args.row_caps or args.col_caps:
            K = multiple_chessboard(g, mp)
        else:
            K = standard_chessboard(g)
    elif args.simplex is not None:
        if args.simplex < 0:
            raise InputError(f"bad simplex size {args.simplex}")
        K = full_simplex(args.simplex)
    else:
        raise InputError("build needs --grid or --simplex")
    if args.skeleton is not None:
        K = skeleton(K, args.skeleton)
    _emit(format_facets(K), args.out)
    return None


def cmd_dual(args) -> Report | None:
    K, _ = _load(args.complex)
    _emit(format_facets(alexander_dual(K)), args.out)
    return None


def cmd_bier(args) -> Report:
    K, h = _load(args.input)
    B = bier_sphere(K)
    text = format_facets(B)
    if args.out:
        Path(args.out).write_text(text)
    rep = Report(args.echo, h)
    rep.section("facets", text.rstrip("\n"))
    rep.table("decoding", ["face", "(A1, A2; B)"], [list(r) for r in decoding_table(B)])
    rep.put("ground_size", B.ground_size)
    rep.put("f_vector", f_vector(B))
    rep.put("facets", len(B.facets()))
    return rep


def cmd_morse(args) -> Report:
    h = None
    traces = None
    cond = None
    if args.dmf == "bier":
        if not args.complex:
            raise InputError("--dmf bier needs --complex")
        K, h = _load(args.complex)
        dvf = bier_dmf(K, allow_trivial_dual=args.allow_trivial_dual)
        show = lambda f: render_triple(K.ground_size, f)
    else:
        if not args.grid:
            raise InputError("--dmf multichess needs --grid")
        g, mp = _grid(args)
        K = multiple_chessboard(g, mp)
        if args.complex:
            given, h = _load(args.complex)
            if given != K:
                raise InputError(f"{args.complex!r} is not the multiple chessboard complex of this grid")
        cond = star_condition(mp, g)
        dvf, traces = multiple_chessboard_dmf(g, mp, K)
        labels = K.labels
        show = lambda f: render(f, labels)
    X = dvf.complex
    problems = validate(dvf)
    ac = is_acyclic(dvf)
    crit = critical_cells(dvf)
    bet = betti(X, "Z")
    try:
        cert = str(connectivity_certificate(dvf))
    except CertificateNotApplicable as e:
        cert = f"n/a ({e})"
    conn = homological_connectivity(X)

    rep = Report(args.echo, h)
    rows = []
    for f in crit:
        row = [f.bit_count() - 1, show(f)]
        if traces is not None:
            t = traces[f]
            row += [t.outcome, t.step, ",".join(map(str, t.pointers)) or "-", t.reuse]
        rows.append(row)
    header = ["dim", "cell"] + (["outcome", "step", "pointers", "T"] if traces is not None else [])
    rep.table("critical cells", header, rows)
    if problems:
        rep.section("violations", problems)
    if not ac:
        rep.section("closed gradient path", str(ac.closed_path))
    if args.emit_matching:
        lines = []
        for a, b in dvf.pairs:
            lines.append(" ".join(str(v + 1) for v in vertices(a)) + " -> "
                         + " ".join(str(v + 1) for v in vertices(b)))
        rep.section("matching", lines)
    counts = critical_counts(dvf)
    rep.put("dmf", args.dmf)
    rep.put("faces", len(X.faces) - 1)
    rep.put("pairs", len(dvf.pairs))
    rep.put("valid", not problems)
    rep.put("acyclic", bool(ac))
    rep.put("critical", ",".join(f"{d}:{c}" for d, c in counts.items()))
    rep.put("betti", bet)
    rep.put("morse_inequality", morse_inequality_holds(dvf, bet.betti))
    rep.put("certificate", cert)
    rep.put("homological_connectivity", conn)
    if cond is not None:
        rep.put("star_condition", f"{cond.lhs} >= {cond.rhs}: {cond.holds}")
    fig = _figure(args, "morse_critical.png")
    if fig is not None:
        from .plotting import critical_vs_betti
        critical_vs_betti(counts, bet.betti, fig)
        rep.put("figure", fig)
    if problems or not ac:
        raise VerificationFailed(rep, "matching is not a valid acyclic matching")
    return rep


def cmd_homology(args) -> Report:
    K, h = _load(args.complex)
    coeff = "Z2" if args.z2 else "Z"
    prof = betti(K, coeff)
    rep = Report(args.echo, h)
    rows = []
    for d, b in enumerate(prof.betti):
        tors = prof.torsion.get(d, ())
        rows.append([d, b, prof.reduced_at(d), ",".join(map(str, tors)) or "-"])
    rep.table(f"homology over {coeff}", ["degree", "betti", "reduced", "torsion"], rows)
    rep.put("coefficients", coeff)
    rep.put("f_vector", f_vector(K))
    rep.put("b", prof)
    rep.put("euler_characteristic", prof.euler_characteristic() if not K.is_void else 0)
    if not K.is_void:
        rep.put("homological_connectivity", homological_connectivity(K))
    fig = _figure(args, "betti.png")
    if fig is not None:
        from .plotting import betti_bars
        betti_bars(prof.betti, fig)
        rep.put("figure", fig)
    return rep


def cmd_bottleneck(args) -> Report:
    n = args.ground
    if n < 1:
        raise InputError(f"bad ground size {n}")
    R = parse_clutter(n, args.clutter)
    f = parse_weights(args.weights)
    if len(f) != n:
        raise InputError(f"need {n} weights, got {len(f)} in {args.weights!r}")
    S = blocker(R)
    a = minmax_bruteforce(R, f)
    b = maxmin_bruteforce(S, f)
    rep = Report(args.echo, digest(f"{n}|{args.clutter}|{args.weights}"))
    rep.section("blocker", [_clutter_str(S)])
    rep.put("a", a.value)
    rep.put("a_witness", render(a.witness))
    rep.put("b", b.value)
    rep.put("b_witness", render(b.witness))
    value, elem = a.value, a.element
    failed = a.value != b.value
    if not args.oracle_only:
        mb = bottleneck_via_morse(R, f)
        rep.put("i", mb.element + 1)
        rep.put("morse_value", mb.value)
        rep.put("critical_cell", mb.cell)
        failed = failed or mb.value != a.value
        elem = mb.element
    else:
        rep.put("i", a.element + 1)
    rep.put("agree", not failed)
    fig = _figure(args, "bottleneck.png")
    if fig is not None:
        from .plotting import bottleneck_weights
        bottleneck_weights(f, elem, value, fig)
        rep.put("figure", fig)
    if failed:
        raise VerificationFailed(rep, "bottleneck values disagree")
    return rep


def _clutter_str(C) -> str:
    return "; ".join(" ".join(str(v + 1) for v in vertices(x)) for x in C.members)


def cmd_verify(args) -> Report:
    from .verify import run_suite
    results = run_suite(args.suite, seed=args.seed,
                        progress=(lambda r: print(r.line(), file=sys.stderr, flush=True)) if args.progress else None)
    rep = Report(args.echo)
    rep.section("criteria", [r.line() for r in results])
    for r in results:
        rep.put(f"criterion_{r.number}", "pass" if r.ok else "fail")
    rep.put("boundary_checks", homology.STATS.boundary_checks)
    fig = _figure(args, "suite.png")
    if fig is not None:
        from .plotting import suite_summary
        suite_summary(results, fig)
        rep.put("figure", fig)
    if not all(r.ok for r in results):
        raise VerificationFailed(rep, "acceptance criteria failed")
    return rep


# -- parser --------------------------------------------------------------------

def _grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", nargs=2, type=int, metavar=("M", "N"),
                   help="M columns, N rows")
    p.add_argument("--row-caps", help="k_1,...,k_N (default all 1)")
    p.add_argument("--col-caps", help="l_1,...,l_M (default all 1)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chessmorse", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized verification")
    ap.add_argument("--cap", type=int, help="maximum number of faces to enumerate")
    ap.add_argument("--plot-dir", help="write PNG figures here")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a complex as a facet list")
    _grid_flags(p)
    p.add_argument("--transpose", action="store_true",
                   help="build on the transposed grid and map back")
    p.add_argument("--simplex", type=int, metavar="N", help="full simplex on N vertices")
    p.add_argument("--skeleton", type=int, metavar="K")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("dual", help="Alexander dual")
    p.add_argument("--complex", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("bier", help="Bier sphere with its decoding table")
    p.add_argument("--input", required=True)
    p.add_argument("--out", help="also write the facet list here")
    p.set_defaults(func=cmd_bier)

    p = sub.add_parser("morse", help="run a discrete Morse matching")
    p.add_argument("--complex")
    p.add_argument("--dmf", choices=("bier", "multichess"), required=True)
    _grid_flags(p)
    p.add_argument("--emit-matching", action="store_true")
    p.add_argument("--allow-trivial-dual", action="store_true",
                   help="accept K whose dual is {∅}")
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    p.add_argument("--complex", required=True)
    p.add_argument("--z2", action="store_true", help="GF(2) coefficients")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("bottleneck", help="bottleneck extrema of a clutter")
    p.add_argument("--ground", type=int, required=True)
    p.add_argument("--clutter", required=True, help='members, e.g. "1 2;1 3"')
    p.add_argument("--weights", required=True, help='e.g. "3.5,1,2"')
    p.add_argument("--oracle-only", action="store_true")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", choices=("paper", "smoke"), default="paper")
    p.add_argument("--progress", action="store_true", help="print each result to stderr as it finishes")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    args.echo = "chessmorse " + shlex.join(argv)
    if args.cap is not None and args.cap < 1:
        print(f"error: bad --cap {args.cap}", file=sys.stderr)
        return EXIT_INPUT
    old_cap = set_face_cap(args.cap) if args.cap is not None else None
    try:
        rep = args.func(args)
    except VerificationFailed as e:
        sys.stdout.write(e.report.render())
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (InputError, FacetFormatError, ClutterError, BierError, MatchingError,
            InstanceTooLarge, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if old_cap is not None:
            set_face_cap(old_cap)
    if rep is not None:
        sys.stdout.write(rep.render())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
