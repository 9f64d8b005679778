"""Command-line front end.

Exit codes: 0 success, 1 property-suite failure, 2 input error,
3 resource guard.
"""

import argparse
import json
import sys
import time
from math import factorial

from . import families, stateio, suites
from .errors import GuardError, StateError
from .mixed import Ensemble
from .permanent import gram_from_factors, marcus_bounds_check
from .separability import DEFAULT_REL_TOL, classify, verify_result2
from .state import ProductState, tensor_product
from .symmetry import is_antisymmetric, is_permutation_invariant, symmetrize, translation_analyze

REPORT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _pairs(vec):
    return [[float(z.real), float(z.imag)] for z in vec]


def _input_descriptor(path, state):
    kind = "product" if isinstance(state, ProductState) else "pure"
    return {"file": str(path), "kind": kind, "dims": list(state.dims), "n": len(state.dims)}


def symmetry_findings(psi):
    if not psi.is_homogeneous() or psi.n < 2:
        return None
    t = translation_analyze(psi)
    return {
        "permutation_invariant": is_permutation_invariant(psi),
        "antisymmetric": is_antisymmetric(psi),
        "translation": {"is_eigenstate": t.is_eigenstate, "theta": t.theta, "residual": t.residual},
    }


def classification_fields(c):
    return {
        "verdict": c.verdict.value,
        "witness": c.witness.label() if c.witness is not None else None,
        "ranks": [{"cut": e.cut.label(), "rank": e.rank} for e in c.evidence],
        "factors": [_pairs(f) for f in c.factors.factors] if c.factors is not None else None,
    }


def permanent_fields(phi):
    if not phi.is_homogeneous():
        return None
    g = gram_from_factors(phi)
    r = marcus_bounds_check(g)
    return {
        "gram": [_pairs(row) for row in g.entries],
        "perm": r.perm,
        "n_factorial": factorial(phi.n),
        "lower_ok": r.lower_ok,
        "upper_ok": r.upper_ok,
    }


def cmd_classify(args):
    state = stateio.load(args.file)
    if isinstance(state, Ensemble):
        raise StateError("classify expects a pure or product state file")
    psi = tensor_product(state) if isinstance(state, ProductState) else state
    psi.require_normalized()
    c = classify(psi, args.tol)
    report = {
        "input": _input_descriptor(args.file, state),
        "symmetry": symmetry_findings(psi),
        "classification": classification_fields(c),
        "permanent": permanent_fields(state) if isinstance(state, ProductState) else None,
    }
    return report, EXIT_OK


def cmd_generate(args):
    state = families.generate(args.family, args.n, args.d, args.k, args.seed)
    text = stateio.dumps(state)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return {"family": args.family, "n": args.n, "d": args.d, "k": args.k, "output": args.output}, EXIT_OK
    sys.stdout.write(text)
    return None, EXIT_OK


def cmd_symmetrize(args):
    phi = stateio.load(args.file)
    if not isinstance(phi, ProductState):
        raise StateError("symmetrize expects a product state file")
    sym = symmetrize(phi)
    check = verify_result2(phi, args.tol)
    normalized = sym.state.normalized()
    report = {
        "input": _input_descriptor(args.file, phi),
        "norm_squared": sym.norm_squared,
        "permanent": permanent_fields(phi),
        "result2": {
            "holds": check.holds,
            "nonzero": check.nonzero,
            "factors_identical": check.factors_identical,
        },
        "classification": classification_fields(check.verdict),
    }
    if args.output:
        stateio.dump(normalized, args.output)
        report["output"] = args.output
    else:
        report["state"] = stateio.to_document(normalized)
    return report, EXIT_OK


def cmd_verify(args):
    results = suites.run(args.suite, args.trials, args.seed)
    summary = {
        name: [p.as_dict() for p in props] for name, props in results.items()
    }
    passed = all(p.passed for props in results.values() for p in props)
    report = {"suite": args.suite, "trials": args.trials, "passed": passed, "suites": summary}
    return report, EXIT_OK if passed else EXIT_FAIL


def _format_text(report, indent=0):
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_format_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(pad + "  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def _common_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=float, default=default(DEFAULT_REL_TOL),
                        help="relative Schmidt-rank tolerance (default 1e-10)")
    parser.add_argument("--seed", type=int, default=default(0), help="random seed (default 0)")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default=default("json"))
    fmt.add_argument("--text", dest="format", action="store_const", const="text", default=default("json"))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symsep",
        description="Exchange symmetry, permanents and global entanglement of multipartite states.",
    )
    _common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a pure or product state file")
    _common_flags(p, suppress=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="write a state file for a named family")
    _common_flags(p, suppress=True)
    p.add_argument("family", choices=families.FAMILIES)
    p.add_argument("--n", type=int, required=True, help="number of parties")
    p.add_argument("--d", type=int, default=2, help="local dimension (default 2)")
    p.add_argument("--k", type=int, default=None, help="Dicke excitations / translation phase index")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("symmetrize", help="symmetrize a product state file")
    _common_flags(p, suppress=True)
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None, help="write the normalized symmetrized state here")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("verify", help="run the randomized property suites")
    _common_flags(p, suppress=True)
    p.add_argument("--suite", choices=suites.SUITES + ("all",), default="all")
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=cmd_verify)
    return parser


def render(report, fmt):
    if fmt == "text":
        return "\n".join(_format_text(report)) + "\n"
    return json.dumps(report, indent=2) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.trials < 1:
        parser.error("--trials must be positive")
    if args.seed < 0:
        parser.error("--seed must be non-negative")
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except GuardError as exc:
        print(f"symsep: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (StateError, ValueError) as exc:
        print(f"symsep: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report is not None:
        full = {"report_version": REPORT_VERSION, "command": args.command, "seed": args.seed, "tol": args.tol}
        full.update(report)
        full["timing"] = {"elapsed_s": time.perf_counter() - start}
        sys.stdout.write(render(full, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
