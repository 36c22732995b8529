"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 a verified identity or bound failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Callable

from . import bounds as bnd
from .checks import run_checks
from .complex_core import (
    ComplexPair,
    FAMILIES,
    generate,
    random_complex,
    random_discrete_boundary,
    random_subcomplex,
)
from .errors import BudgetExceeded, DomainError, InvariantViolation
from .homology import relative_homology
from .io import dumps, load_pair, pair_to_dict, complex_to_dict
from .spanning import (
    DEFAULT_BUDGET,
    enumerate_trees,
    verify_matrix_tree_i,
    verify_matrix_tree_ii,
)
from .spectra import laplacian, spectrum

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class Violation(Exception):
    """Raised by a command to request exit code 2 after printing."""


def fmt(x: Any) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        # roundoff around an exact zero is shown as 0
        return "0" if abs(x) < 1e-12 else "{:.12g}".format(x)
    return str(x)


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class Output:
    def __init__(self, args: argparse.Namespace):
        self.json = getattr(args, "json", False)
        self.quiet = getattr(args, "quiet", False)
        self.lines: list[str] = []
        self.data: dict[str, Any] = {}

    def line(self, text: str, essential: bool = True) -> None:
        if essential or not self.quiet:
            self.lines.append(text)

    def flush(self) -> None:
        if self.json:
            sys.stdout.write(json.dumps(_jsonable(self.data), sort_keys=True) + "\n")
        elif self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _k(args: argparse.Namespace, pair: ComplexPair) -> int:
    k = args.k
    if k < 0 or k > max(pair.dim, 0):
        raise DomainError(f"k={k} outside 0..{max(pair.dim, 0)}")
    return k


def _budget(args: argparse.Namespace) -> int:
    b = getattr(args, "budget", None) or DEFAULT_BUDGET
    if b <= 0:
        raise DomainError("budget must be positive")
    return b


def cmd_gen(args: argparse.Namespace, out: Output) -> None:
    if args.family == "random":
        rng = random.Random(getattr(args, "seed", None) or 0)
        X = random_complex(args.vertices, args.density, rng, args.max_dim)
        if args.discrete_boundary is not None:
            A = random_discrete_boundary(X, args.discrete_boundary, args.subcomplex_density, rng)
            text = dumps(pair_to_dict(ComplexPair(X, A)))
        elif args.subcomplex_density is not None and args.subcomplex_density > 0:
            A = random_subcomplex(X, args.subcomplex_density, rng)
            text = dumps(pair_to_dict(ComplexPair(X, A)))
        else:
            text = dumps(complex_to_dict(X))
    else:
        X = generate(args.family, *args.params)
        text = dumps(complex_to_dict(X))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.json = False
        out.lines.append(text.rstrip("\n"))


def cmd_check(args: argparse.Namespace, out: Output) -> None:
    pair = load_pair(args.pair)
    results = run_checks(pair, corrupt=args.inject_fault)
    for r in results:
        out.line(f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f": {r.message}" if r.message else ""),
                 essential=not r.passed)
    out.data = {"checks": {r.name: r.passed for r in results}, "passed": all(r.passed for r in results)}
    if not all(r.passed for r in results):
        raise Violation
    out.line("all checks passed")


def cmd_spectrum(args: argparse.Namespace, out: Output) -> None:
    pair = load_pair(args.pair)
    k = _k(args, pair)
    part = laplacian(pair, k, args.part)
    rep = spectrum(part)
    shown = [0.0 if abs(x) < rep.tau_zero else x for x in rep.eigenvalues]
    out.line("eigenvalues: " + " ".join(fmt(x) for x in shown))
    out.line(f"rank: {rep.exact_rank}")
    out.line(f"pseudo_det: {rep.pseudo_det}")
    out.data = {"k": k, "part": part.kind, "eigenvalues": shown,
                "rank": rep.exact_rank, "pseudo_det": rep.pseudo_det,
                "zero_multiplicity": rep.zero_multiplicity}
    if args.exact:
        out.line("charpoly: " + " ".join(str(c) for c in rep.charpoly))
        out.data["charpoly"] = list(rep.charpoly)
    if args.dump_matrix:
        out.line(part.matrix.to_text().rstrip("\n"))
        out.data["matrix"] = part.matrix.to_text()


def cmd_gap(args: argparse.Namespace, out: Output) -> None:
    pair = load_pair(args.pair)
    k = _k(args, pair)
    gap = spectrum(laplacian(pair, k, "full")).smallest
    out.line(f"mu_{k} = {fmt(gap)}")
    out.data = {"k": k, "gap": gap}


def cmd_homology(args: argparse.Namespace, out: Output) -> None:
    pair = load_pair(args.pair)
    if args.all:
        ks = list(range(0, max(pair.dim, 0) + 1))
    elif args.k is not None:
        ks = [_k(args, pair)]
    else:
        raise DomainError("homology needs -k K or --all")
    groups = {}
    for k in ks:
        h = relative_homology(pair, k)
        out.line(f"H_{k}(X,A) = {h}")
        groups[str(k)] = {"betti": h.betti, "torsion": list(h.torsion_factors),
                          "torsion_order": h.torsion_order}
    out.data = {"homology": groups}


def cmd_trees(args: argparse.Namespace, out: Output) -> None:
    pair = load_pair(args.pair)
    k = _k(args, pair)
    budget = _budget(args)
    if args.verify_i:
        r = verify_matrix_tree_i(pair, k, budget, args.paranoid)
        out.line(f"LHS={r.lhs} RHS={fmt(r.rhs)} {r.status.upper()}")
        out.data = {"k": k, "lhs": r.lhs, "rhs": r.rhs, "tree_sum": r.tree_sum,
                    "forest_sum_num": r.forest_sum_num, "forest_sum_den": r.forest_sum_den,
                    "n_trees": r.n_trees, "n_forests": r.n_forests, "status": r.status}
        if r.status == "violated":
            raise Violation
    elif args.verify_ii:
        r2 = verify_matrix_tree_ii(pair, k, budget=budget)
        out.line(f"TREES={r2.tree_sum} DET={r2.det_ud} FOREST_TORSION={r2.forest_torsion} "
                 f"X_TORSION={r2.torsion_X} {r2.status.upper()}")
        out.data = {"k": k, "tree_sum": r2.tree_sum, "det": r2.det_ud,
                    "forest_torsion": r2.forest_torsion, "torsion_X": r2.torsion_X, "status": r2.status}
        if r2.status == "violated":
            raise Violation
    else:
        trees = enumerate_trees(pair, k, budget, args.paranoid)
        if args.enumerate:
            for t in trees:
                out.line(" ".join(",".join(map(str, f)) for f in t.faces) + f" weight={t.weight}")
        weighted = sum(t.weight for t in trees)
        out.line(f"trees={len(trees)} weighted={weighted}")
        out.data = {"k": k, "count": len(trees), "weighted": weighted,
                    "trees": [[list(f) for f in t.faces] for t in trees] if args.enumerate else None}


BOUNDS: dict[str, Callable[[ComplexPair, int], bnd.BoundReport]] = {
    "missing-face": bnd.missing_face_bound,
    "connectivity": bnd.connectivity_bound,
    "interval": lambda pair, k: bnd.boundary_interval(pair.complex),
    "comparison": bnd.comparison_bound,
    "flag": bnd.flag_vanishing_bound,
}
# numeric selectors accepted by --theorem
BOUND_ALIASES = {"4.2": "missing-face", "4.3": "connectivity", "4.4": "interval", "4.5": "comparison"}


def _bound_line(r: bnd.BoundReport) -> str:
    text = f"{r.name}: bound={fmt(r.bound_value)}"
    if r.upper_value is not None:
        text += f" upper={fmt(r.upper_value)}"
    text += f" gap={fmt(r.measured_gap)} {r.status}"
    if r.equality:
        text += " equality"
    if r.certificate:
        text += f" certificate H_{r.k}(X,A;R)=0"
    return text


def cmd_bounds(args: argparse.Namespace, out: Output) -> None:
    pair = load_pair(args.pair)
    k = _k(args, pair)
    choice = args.theorem or args.bound
    choice = BOUND_ALIASES.get(choice, choice)
    names = list(BOUNDS) if choice == "all" else [choice]
    reports = {}
    violated = False
    for name in names:
        try:
            r = BOUNDS[name](pair, k)
        except DomainError as exc:
            if len(names) == 1:
                raise
            out.line(f"{name}: not applicable ({exc})", essential=False)
            continue
        out.line(_bound_line(r))
        reports[name] = {"name": r.name, "bound": r.bound_value, "upper": r.upper_value,
                         "gap": r.measured_gap, "holds": r.holds, "equality": r.equality,
                         "certificate": r.certificate, "status": r.status}
        violated = violated or r.violated
    out.data = {"k": k, "bounds": reports}
    if violated:
        raise Violation


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random instances")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"enumeration budget (default {DEFAULT_BUDGET})")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only essential lines")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="relap", parents=[common],
                                     description="Relative Laplacians of simplicial complex pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a complex or pair file")
    g.add_argument("family", choices=sorted(FAMILIES) + ["random"])
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("-o", "--output")
    g.add_argument("--vertices", type=int, default=6)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--max-dim", type=int, default=None)
    g.add_argument("--subcomplex-density", type=float, default=None)
    g.add_argument("--discrete-boundary", type=int, default=None, metavar="K")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="run the invariant suite")
    c.add_argument("pair")
    c.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("spectrum", parents=[common], help="Laplacian spectrum")
    s.add_argument("pair")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--part", choices=["ud", "du", "full"], default="full")
    s.add_argument("--exact", action="store_true", help="print characteristic polynomial")
    s.add_argument("--dump-matrix", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    gp = sub.add_parser("gap", parents=[common], help="spectral gap")
    gp.add_argument("pair")
    gp.add_argument("-k", type=int, required=True)
    gp.set_defaults(func=cmd_gap)

    h = sub.add_parser("homology", parents=[common], help="relative homology")
    h.add_argument("pair")
    h.add_argument("-k", type=int)
    h.add_argument("--all", action="store_true")
    h.set_defaults(func=cmd_homology)

    t = sub.add_parser("trees", parents=[common], help="relative spanning trees")
    t.add_argument("pair")
    t.add_argument("-k", type=int, required=True)
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--enumerate", action="store_true")
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--verify-i", action="store_true")
    mode.add_argument("--verify-ii", action="store_true")
    t.add_argument("--paranoid", action="store_true", help="cross-check every candidate homologically")
    t.set_defaults(func=cmd_trees)

    b = sub.add_parser("bounds", parents=[common], help="spectral gap lower bounds")
    b.add_argument("pair")
    b.add_argument("-k", type=int, required=True)
    which = b.add_mutually_exclusive_group()
    which.add_argument("--bound", choices=list(BOUNDS) + ["all"], default="all")
    which.add_argument("--theorem", choices=list(BOUND_ALIASES) + list(BOUNDS) + ["all"], default=None,
                       help=argparse.SUPPRESS)
    b.set_defaults(func=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        args.func(args, out)
    except Violation:
        out.flush()
        return EXIT_VIOLATION
    except InvariantViolation as exc:
        out.flush()
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (DomainError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
