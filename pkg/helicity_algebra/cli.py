"""
Command-line entry point
Subcommands: derive, decompose, rep, check, field, wave
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from importlib import resources
from typing import Any, Callable, Dict, List, Optional, Sequence

from .config import Settings
from .decomposition import DIRECT_SUM, UNION, conjugate_layout, decompose, epsilon_label, spinspace_layout
from .errors import HelicityAlgebraError
from .fields import em_from_potential, max_norm, maxwell_residuals
from .matrices import SIGMAS, gamma_basis, gamma_rep, pauli_rep
from .registry import default_registry
from .serialization import load_multivector, multivector_to_json, read_grid, write_grid
from .symbolic import maxwell_groups, nabla_groups, weyl_split_formulas
from .waves import convergence_table

log = logging.getLogger("helicity_algebra")

TARGETS = ("nabla-a", "nabla-f", "weyl-split")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# {{{ derive

def _groups(target: str):
    return nabla_groups() if target == "nabla-a" else maxwell_groups()


def derivation_text(target: str) -> str:
    """Text printout of a derivation; byte-identical to the shipped snapshot"""
    if target == "weyl-split":
        return "\n".join(
            f"psi{j} = (i/2)({top.render()}, {bottom.render()})"
            for j, (top, bottom) in enumerate(weyl_split_formulas(), start=1)
        )
    return "\n".join(f"{g.blade} [{g.label}]: {g.expression.render()}" for g in _groups(target))


def derivation_json(target: str) -> Dict[str, Any]:
    if target == "weyl-split":
        return {
            "target": target,
            "factor": "i/2",
            "spinors": [
                {"index": j, "components": [top.to_json(), bottom.to_json()]}
                for j, (top, bottom) in enumerate(weyl_split_formulas(), start=1)
            ],
        }
    return {
        "target": target,
        "groups": [
            {"blade": g.blade, "label": g.label, "terms": g.expression.to_json()} for g in _groups(target)
        ],
    }


def snapshot(target: str) -> str:
    """Checked-in derivation text for `target`"""
    name = target.replace("-", "_") + ".txt"
    return (resources.files("helicity_algebra") / "snapshots" / name).read_text(encoding="utf-8")


def cmd_derive(args: argparse.Namespace) -> int:
    if args.format == "json":
        print(json.dumps(derivation_json(args.target), indent=2))
    else:
        print(derivation_text(args.target))
    return EXIT_OK

# }}}


def cmd_decompose(args: argparse.Namespace) -> int:
    report = decompose(args.n)
    pair = report.pair
    behavior = "swap" if report.swap else "fix"
    layouts = []
    if args.layout:
        layout = spinspace_layout(args.rank, args.layout)
        layouts = [layout, conjugate_layout(layout)]
    if args.format == "json":
        out: Dict[str, Any] = {
            "n": report.n,
            "epsilon": epsilon_label(report.n),
            "lambda_plus": multivector_to_json(pair.lambda_plus),
            "lambda_minus": multivector_to_json(pair.lambda_minus),
            "laws": report.laws,
            "conjugation": behavior,
        }
        if layouts:
            out["layout"] = layouts[0].render()
            out["conjugate_layout"] = layouts[1].render()
        print(json.dumps(out, indent=2))
    else:
        print(f"C{report.n}: epsilon = {epsilon_label(report.n)}")
        print(f"lambda_plus = {pair.lambda_plus}")
        print(f"lambda_minus = {pair.lambda_minus}")
        for name, ok in report.laws.items():
            print(f"{name}: {'ok' if ok else 'FAILED'}")
        print(f"pseudo-conjugation: {behavior}")
        for title, layout in zip(("layout", "conjugate"), layouts):
            print(f"{title}:")
            print(layout.render())
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_rep(args: argparse.Namespace) -> int:
    if args.element:
        x = load_multivector(args.element)
        matrix = pauli_rep(x) if args.basis == "pauli" else gamma_rep(x)
        out: Dict[str, Any] = {"basis": args.basis, "matrix": matrix.to_json()}
    elif args.basis == "pauli":
        out = {
            "basis": "pauli",
            "generators": [{"name": f"sigma{i}", "matrix": s.to_json()} for i, s in enumerate(SIGMAS, start=1)],
        }
    else:
        basis = gamma_basis()
        named = [(f"gamma{mu}", basis.gamma(mu)) for mu in range(4)] + [("gamma5", basis.gamma5)]
        out = {"basis": "gamma", "generators": [{"name": n, "matrix": m.to_json()} for n, m in named]}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    settings = Settings.load(seed=args.seed)
    report = default_registry().run(args.suite, settings=settings)
    print(json.dumps(report.to_json(), indent=2))
    return EXIT_OK if report.ok else EXIT_FAILED


# {{{ field

def _em_summary(grid) -> Dict[str, Any]:
    return {
        "max": {name: max_norm(grid[name]) for name in ("E1", "E2", "E3", "H1", "H2", "H3")},
        "residual": {"lorentz": max_norm(grid["L"])},
    }


def cmd_field(args: argparse.Namespace) -> int:
    grid = read_grid(args.input)
    if args.task == "em":
        result = em_from_potential(grid, physical=args.physical)
        summary = _em_summary(result)
    else:
        residuals = maxwell_residuals(grid)
        summary = {"residual": residuals.norms()}
        components = {"divE": residuals.div_e, "divH": residuals.div_h}
        for i in range(3):
            components[f"curlH{i + 1}"] = residuals.ampere[i]
            components[f"curlE{i + 1}"] = residuals.faraday[i]
        result = grid.with_components(components)
    out = {"task": args.task, "h": list(grid.spacing), **summary}
    if args.out:
        write_grid(result, args.out)
        out["out"] = str(args.out)
    print(json.dumps(out, indent=2))
    return EXIT_OK

# }}}


# {{{ wave

def parse_vector(text: str) -> List[Fraction]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated components, got {text!r}")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid wavevector {text!r}") from None


def parse_helicity(text: str) -> int:
    value = {"+": 1, "+1": 1, "1": 1, "plus": 1, "-": -1, "-1": -1, "minus": -1}.get(text.strip().lower())
    if value is None:
        raise argparse.ArgumentTypeError(f"helicity must be + or -, got {text!r}")
    return value


def cmd_wave(args: argparse.Namespace) -> int:
    table = convergence_table(
        args.k, args.helicity, h=args.h, refine=args.refine, points=args.points, periodic=not args.patch
    )
    if args.format == "json":
        print(json.dumps(table.to_json(), indent=2))
    else:
        print(table.render())
    return EXIT_OK

# }}}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helicity-algebra",
        description="Clifford-algebra derivations, helicity decompositions and field residual checks",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="Print a symbolic expansion")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("decompose", help="Central idempotents of an odd complex algebra")
    p.add_argument("--n", type=int, required=True, help="Odd number of generators (at most 9)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--layout", choices=(UNION, DIRECT_SUM), default=None, help="Also print a spinspace layout")
    p.add_argument("--rank", type=int, choices=(2, 4), default=2)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("rep", help="Matrix images in the Pauli or gamma basis")
    p.add_argument("--basis", choices=("pauli", "gamma"), required=True)
    p.add_argument("--element", default=None, help="Multivector JSON, inline or a file path")
    p.set_defaults(handler=cmd_rep)

    p = sub.add_parser("check", help="Run invariant suites")
    p.add_argument("--suite", choices=("all", "algebra", "rep", "field"), default="all")
    p.add_argument("--seed", type=int, default=None, help="Base seed (default: $HELICITY_ALGEBRA_SEED or 20011)")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("field", help="Residuals of a sampled grid")
    p.add_argument("--input", required=True, help="Grid header JSON")
    p.add_argument("--task", choices=("em", "maxwell"), required=True)
    p.add_argument("--out", default=None, help="Write the derived grid here")
    p.add_argument("--physical", action="store_true", help="em: return E = -(d0 A + grad A0)")
    p.set_defaults(handler=cmd_field)

    p = sub.add_parser("wave", help="Convergence table for an analytic plane wave")
    p.add_argument("--k", type=parse_vector, required=True, help="Wavevector x,y,z (rationals allowed)")
    p.add_argument("--helicity", type=parse_helicity, default=1)
    p.add_argument("--h", type=float, default=None,
                   help="Coarsest spacing, in wavelengths when periodic (1/16) or absolute with --patch (0.05)")
    p.add_argument("--refine", type=int, default=3, help="Number of refinement levels")
    p.add_argument("--patch", action="store_true", help="Non-periodic patches with one-sided edge stencils")
    p.add_argument("--points", type=int, default=7, help="Samples per axis on each patch")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_wave)
    return parser


def configure_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.DEBUG if verbose else logging.WARNING)
    log.propagate = False


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except HelicityAlgebraError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
