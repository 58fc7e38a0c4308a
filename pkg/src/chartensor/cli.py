"""Command line driver: check, build, reduce-torsion, realize.

Exit codes: 0 pass, 1 a condition fails, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import torsion
from .builder import BuildError, build_bracket, check_jacobi, derived_series, killing_inertia
from .conditions import run_certificate
from .io import InstanceError, InstanceFile, dumps, resolve_instance, serialize_instance
from .realizer import RealizationConfig, UnsupportedRealization, curvature_fd_check, inner_torsion_fd_check

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _generators(inst: InstanceFile, enabled: bool):
    if not enabled:
        return None
    if inst.group_generators is None:
        raise UsageError("--generators given but the instance has no group_generators")
    return inst.generators()


def _certify(inst: InstanceFile, generators: bool):
    return run_certificate(inst.subalgebra(), inst.triple(), _generators(inst, generators))


def _torsion_free(inst: InstanceFile):
    if inst.T.is_zero():
        return inst.triple(), []
    return torsion.remove_torsion(inst.triple(), inst.subalgebra()), [
        "built from the torsion-free reduction lambda - T(X,.)/2", torsion.FACTOR_NOTE]


def cmd_check(inst: InstanceFile, args) -> tuple[int, dict, str]:
    rep = _certify(inst, args.generators)
    lines = [f"instance: {inst.name or '(unnamed)'}", f"verdict: {rep.verdict}"]
    for c in rep.checks:
        lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}")
        if c.witness is not None:
            lines.append(f"        witness: {c.witness}")
    lines += [f"  note: {n}" for n in rep.notes]
    return (EXIT_PASS if rep.passed else EXIT_FAIL), rep.to_json(), "\n".join(lines)


def cmd_build(inst: InstanceFile, args) -> tuple[int, dict, str]:
    rep = _certify(inst, args.generators)
    if not rep.passed:
        doc = {"error": "certificate failed; nothing built", "certificate": rep.to_json()}
        return EXIT_FAIL, doc, "certificate failed: " + ", ".join(c.name for c in rep.failed())
    t, notes = _torsion_free(inst)
    try:
        A = build_bracket(inst.subalgebra(), t.R, t.lam)
    except BuildError as exc:
        doc = {"error": str(exc), "condition": exc.condition, "witness": exc.witness}
        return EXIT_FAIL, doc, f"build failed: {exc}"
    jac = check_jacobi(A)
    doc = A.to_json()
    doc["killing_inertia"] = list(killing_inertia(A)) if jac.passed else None
    doc["derived_series"] = derived_series(A)
    doc["jacobi"] = "pass" if jac.passed else "fail"
    if not jac.passed:
        doc["jacobi_witness"] = jac.witness
    if notes:
        doc["notes"] = notes
    labels = A.labels
    lines = [f"dim {A.dim}, basis {' '.join(labels)}"]
    for a in range(A.dim):
        for b in range(a + 1, A.dim):
            v = A.constants[a][b]
            terms = [f"{x}*{labels[c]}" for c, x in enumerate(v) if x]
            lines.append(f"  [{labels[a]}, {labels[b]}] = {' + '.join(terms) if terms else '0'}")
    lines.append(f"jacobi: {doc['jacobi']}")
    lines.append(f"killing inertia (+,-,0): {doc['killing_inertia']}")
    lines.append(f"derived series: {doc['derived_series']}")
    return (EXIT_PASS if jac.passed else EXIT_FAIL), doc, "\n".join(lines)


def cmd_reduce(inst: InstanceFile, args) -> tuple[int, dict, str]:
    try:
        reduced = torsion.remove_torsion(inst.triple(), inst.subalgebra())
    except torsion.TorsionPreconditionError as exc:
        doc = {"error": str(exc), "witness": exc.witness}
        return EXIT_FAIL, doc, f"torsion not invariant: {exc}"
    s0 = torsion.half_torsion(inst.T)
    corr = torsion.curvature_correction(reduced.lam, s0)
    out = inst.with_triple(reduced)
    out.metadata["reduction"] = {
        "lambda_shift": [m.to_json() for m in s0.components],
        "curvature_correction": [{"i": i, "j": j, "matrix": m.to_json()}
                                 for (i, j), m in corr.items() if not m.is_zero()],
        "note": torsion.FACTOR_NOTE,
    }
    doc = serialize_instance(out)
    text = f"reduced instance ({'torsion removed' if not inst.T.is_zero() else 'already torsion-free'})\n" + dumps(doc)
    return EXIT_PASS, doc, text.rstrip("\n")


def cmd_realize(inst: InstanceFile, args) -> tuple[int, dict, str]:
    rep = _certify(inst, args.generators)
    if not rep.passed:
        doc = {"error": "certificate failed; nothing realized", "certificate": rep.to_json()}
        return EXIT_FAIL, doc, "certificate failed: " + ", ".join(c.name for c in rep.failed())
    t, notes = _torsion_free(inst)
    h = inst.subalgebra()
    A = build_bracket(h, t.R, t.lam)
    cfg = RealizationConfig(fd_step=args.fd_step, tolerance=args.tol, seed=args.seed)
    try:
        curv = curvature_fd_check(A, t.lam, t.R, cfg)
        inner = inner_torsion_fd_check(A, t.lam, h, cfg)
    except UnsupportedRealization as exc:
        doc = {"status": "unsupported", "reason": str(exc), "center_dim": exc.center_dim}
        return EXIT_PASS, doc, str(exc)
    passed = curv.passed and inner.passed
    doc = {"status": "pass" if passed else "fail", "seed": args.seed, "tolerance": args.tol,
           "curvature": curv.to_json(), "inner_torsion": inner.to_json()}
    if notes:
        doc["notes"] = notes
    lines = [f"status: {doc['status']}"]
    for r in (curv, inner):
        lines.append(f"  {r.name}: max deviation {r.max_deviation:.3e} ({'PASS' if r.passed else 'FAIL'})")
        for p in r.points:
            lines.append(f"    point {p.index}: {p.deviation:.3e} <= {p.bound:.1e} {'ok' if p.passed else 'EXCEEDED'}")
    return (EXIT_PASS if passed else EXIT_FAIL), doc, "\n".join(lines)


COMMANDS = {"check": cmd_check, "build": cmd_build, "reduce-torsion": cmd_reduce, "realize": cmd_realize}


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chartensor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("path", nargs="?", help="instance file or bundled corpus name")
        s.add_argument("-i", "--input", help="instance file or bundled corpus name")
        s.add_argument("-o", "--output", help="write the report here instead of stdout")
        s.add_argument("--format", choices=("json", "text"), default="json")
        s.add_argument("--generators", action="store_true",
                       help="also check invariance under the file's group_generators")
        if name == "realize":
            s.add_argument("--fd-step", type=_positive, default=1e-4)
            s.add_argument("--tol", type=_positive, default=1e-6)
            s.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    ref = args.input or args.path
    if ref is None:
        print("error: an instance is required (positional or --input)", file=sys.stderr)
        return EXIT_INPUT
    if args.input and args.path and args.input != args.path:
        print("error: give the instance either positionally or with --input, not both", file=sys.stderr)
        return EXIT_INPUT
    try:
        inst = resolve_instance(ref)
        code, doc, text = COMMANDS[args.command](inst, args)
    except (InstanceError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = dumps(doc) if args.format == "json" else text + "\n"
    if args.output:
        with open(args.output, "w") as f:
            f.write(payload)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
