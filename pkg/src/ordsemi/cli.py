"""Command-line front end.

Exit codes: 0 all checks pass, 1 mathematical violation or threshold
exceeded, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields

from . import axioms, continuity, counterexample, embedding
from .core import Interval, OrderedSemigroup, TolerancePolicy, builtin, catalog
from .errors import AxiomViolation, ExprSyntaxError, SemigroupError
from .opdsl import ExprOp

PROBE_THRESHOLD = 1e-6
EMBED_THRESHOLD = 1e-6

_TOL_KEYS = {f.name: f.type for f in fields(TolerancePolicy)}


class InputError(Exception):
    pass


def parse_definition(text: str, origin: str = "<definition>") -> OrderedSemigroup:
    """Parse the ``key = value`` definition format (name, interval, op, tolerances)."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise InputError(f"{origin}:{lineno}: expected 'key = value'")
        if key not in {"name", "interval", "op", "reference"} | set(_TOL_KEYS):
            raise InputError(f"{origin}:{lineno}: unknown key {key!r}")
        if key in values:
            raise InputError(f"{origin}:{lineno}: duplicate key {key!r}")
        values[key] = value
    missing = {"name", "interval", "op"} - set(values)
    if missing:
        raise InputError(f"{origin}: missing {', '.join(sorted(missing))}")
    if not values["name"].isidentifier():
        raise InputError(f"{origin}: name must be an identifier, got {values['name']!r}")
    try:
        interval = Interval.parse(values["interval"])
    except ValueError as exc:
        raise InputError(f"{origin}: interval: {exc}") from None
    try:
        op = ExprOp.from_source(values["op"])
    except ExprSyntaxError as exc:
        raise InputError(f"{origin}: op: {exc}") from None
    try:
        tol = TolerancePolicy(**{k: (int if k == "max_bisect_iters" else float)(values[k])
                                 for k in _TOL_KEYS if k in values})
        reference = float(values["reference"]) if "reference" in values else None
    except ValueError as exc:
        raise InputError(f"{origin}: {exc}") from None
    return OrderedSemigroup(values["name"], interval, op, tol, reference=reference, dsl=values["op"])


def load(target: str) -> OrderedSemigroup:
    if os.path.isfile(target):
        try:
            with open(target, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {target}: {exc}") from None
        return parse_definition(text, target)
    try:
        return builtin(target)
    except KeyError:
        raise InputError(f"{target!r} is neither a definition file nor a built-in semigroup") from None


def _seed_header(cmd: str, sg: OrderedSemigroup, args) -> None:
    print(f"# {cmd} {sg.name} interval={sg.interval} samples={args.samples} seed={args.seed}")


def cmd_list(args) -> int:
    for sg in catalog():
        print(f"{sg.name}\t{sg.interval}\t{sg.dsl}\treference={sg.reference!r}")
    return 0


def _verify(sg, args) -> list:
    return axioms.check_axioms(sg, args.samples, args.seed) + axioms.check_root_existence(sg, args.samples, args.seed)


def cmd_verify(args) -> int:
    sg = load(args.target)
    _seed_header("verify", sg, args)
    violations = _verify(sg, args)
    sys.stdout.write(axioms.report(violations))
    print(f"violations: {len(violations)}")
    return 1 if violations else 0


def cmd_embed(args) -> int:
    sg = load(args.target)
    if args.grid < 1:
        raise InputError("--grid must be >= 1")
    reference = args.reference
    if reference != "auto":
        try:
            reference = float(reference)
        except ValueError:
            raise InputError(f"--reference must be a number or 'auto', got {reference!r}") from None
    _seed_header("embed", sg, args)
    try:
        f = embedding.build_embedding(sg, reference, samples=args.samples, seed=args.seed)
    except AxiomViolation as exc:
        sys.stdout.write(axioms.report(exc.violations))
        print(f"violations: {len(exc.violations)}")
        return 1
    grid = sg.interval.grid(args.grid)
    fx = {x: f(x) for x in grid}
    worst = 0.0
    for x in grid:
        for y in grid:
            z = sg.checked(x, y)
            worst = max(worst, abs(f(z) - fx[x] - fx[y]))
    print(f"target: {f.target}")
    print(f"reference: {f.reference!r}")
    print(f"max additivity error over {len(grid) ** 2} grid pairs: {worst!r}")
    print("surjectivity onto the target: untested")
    csv = f.to_csv(grid)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv)
        print(f"wrote {len(grid)} rows to {args.out}")
    else:
        sys.stdout.write(csv)
    return 0 if worst <= EMBED_THRESHOLD else 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"probe {args.kind} needs {', '.join('--' + m.replace('_', '-') for m in missing)}")


def cmd_probe(args) -> int:
    sg = load(args.target)
    _seed_header("probe", sg, args)
    if not args.skip_verify:
        violations = _verify(sg, args)
        if violations:
            sys.stdout.write(axioms.report(violations))
            print(f"violations: {len(violations)}")
            return 1
    try:
        if args.kind == "approx-unit":
            _need(args, "a", "x")
            rep = continuity.probe_approx_unit(sg, args.a, args.x, args.n)
            print("\n".join(rep.lines()))
            value = rep.max_tail_gap
        elif args.kind == "translation":
            _need(args, "a", "x0")
            side = continuity.Side(args.side)
            value = continuity.probe_translation_continuity(sg, args.a, args.x0, side, args.steps, args.right)
            which = "right" if args.right else "left"
            print(f"PROBE {sg.name}:translation({which},a={args.a!r},x0={args.x0!r},side={side.value}) "
                  f"steps={args.steps} max_jump={value!r}")
        else:
            _need(args, "x1", "x2")
            value = continuity.probe_joint_continuity(sg, args.x1, args.x2, args.steps)
            print(f"PROBE {sg.name}:joint(x1={args.x1!r},x2={args.x2!r}) steps={args.steps} max_jump={value!r}")
    except (ValueError, SemigroupError) as exc:
        if isinstance(exc, ValueError) and not isinstance(exc, SemigroupError):
            raise InputError(str(exc)) from None
        raise
    ok = value <= PROBE_THRESHOLD
    print(f"threshold={PROBE_THRESHOLD!r} {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_counterexample(args) -> int:
    variant = counterexample.LexVariant(args.variant)
    rep = counterexample.demonstrate_discontinuity(variant, n_max=args.n)
    print("\n".join(rep.lines()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordsemi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def seeded(sp):
        sp.add_argument("--samples", type=int, default=1000)
        sp.add_argument("--seed", type=int, default=42)

    sp = sub.add_parser("list", help="print the built-in catalog")
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("verify", help="falsification check of the axioms and square roots")
    sp.add_argument("target", help="definition file or built-in name")
    seeded(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("embed", help="build the additive embedding and export it as CSV")
    sp.add_argument("target")
    sp.add_argument("--reference", default="auto")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--out")
    seeded(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("probe", help="continuity diagnostics")
    sp.add_argument("target")
    sp.add_argument("kind", choices=["approx-unit", "translation", "joint"])
    sp.add_argument("--a", type=float)
    sp.add_argument("--x", type=float)
    sp.add_argument("--n", type=int, default=30)
    sp.add_argument("--x0", type=float)
    sp.add_argument("--side", choices=["above", "below"], default="above")
    sp.add_argument("--right", action="store_true", help="probe the right translation x -> x o a")
    sp.add_argument("--x1", type=float)
    sp.add_argument("--x2", type=float)
    sp.add_argument("--steps", type=int, default=40)
    sp.add_argument("--skip-verify", action="store_true")
    seeded(sp)
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("counterexample", help="exact lexicographic counterexample")
    sp.add_argument("variant", nargs="?", default="full", choices=[v.value for v in counterexample.LexVariant])
    sp.add_argument("--n", type=int, default=20)
    sp.set_defaults(func=cmd_counterexample)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemigroupError as exc:
        print(f"failure: {exc}")
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
