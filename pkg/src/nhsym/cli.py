"""Command-line front end.

Three subcommands:

``check``
    Verify a model's declared symmetry operators, one supplied operator
    (``--op``), or run operator discovery for a relation (``--discover``).
``sweep``
    Run a named figure protocol, verify its declared spectrum
    reflections at every step, and write trajectory CSV plus event JSON.
``ep``
    Locate an exceptional point of a one-parameter family in a bracket.

Exit codes: 0 success, 1 scientific negative (relation failed, empty
discovery, no exceptional point), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import clifford, model as model_mod, spectra, symmetry

PRESETS = ("dirac4a", "dirac4b", "rt-wheel", "pyramid-nochiral",
           "pyramid-chiral", "flake", "chain")
FIG_TAGS = ("1b", "2b", "2c", "4c", "4d", "5b")


def _complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhsym",
        description="symmetry checks, discovery, and spectra for "
                    "non-Hermitian tight-binding models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="verify or discover symmetry operators")
    src = pc.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESETS, help="bundled model")
    src.add_argument("--file", help="model file to load")
    pc.add_argument("--g1", type=_complex, default=1 + 0j)
    pc.add_argument("--g2", type=_complex, default=0.5 + 0j)
    pc.add_argument("--g3", type=_complex, default=0.8 + 0j)
    pc.add_argument("--beta", type=_complex, default=0.75 + 0j)
    pc.add_argument("--g", type=float, default=1.0, help="flake coupling")
    pc.add_argument("--tau", type=float, default=0.0, help="flake gain/loss")
    pc.add_argument("--delta", type=float, default=0.0, help="chain detuning")
    pc.add_argument("--op", help="operator: generator expression or file")
    pc.add_argument("--kind", choices=symmetry.KINDS,
                    default=symmetry.LINEAR_ANTICOMMUTE,
                    help="relation kind for an expression --op")
    pc.add_argument("--discover",
                    choices=sorted(("chiral", "pseudo_chiral", "nhph",
                                    "bosonic")),
                    help="find all operators of this relation")
    pc.add_argument("--tol", type=float, default=None,
                    help="pass threshold (default 1e-10; discovery 1e-9)")

    ps = sub.add_parser("sweep", help="run a figure protocol")
    ps.add_argument("--fig", choices=FIG_TAGS, required=True)
    ps.add_argument("--steps", type=int, default=400)
    ps.add_argument("--out", default=".", help="output directory")
    ps.add_argument("--tol", type=float, default=spectra.CLASSIFY_TOL,
                    help="spectrum classification tolerance")

    pe = sub.add_parser("ep", help="locate an exceptional point")
    fam = pe.add_mutually_exclusive_group(required=True)
    fam.add_argument("--family", choices=("jordan2",),
                     help="built-in matrix family")
    fam.add_argument("--fig", choices=FIG_TAGS,
                     help="use a figure protocol's family")
    pe.add_argument("--bracket", type=float, nargs=2, required=True,
                    metavar=("LO", "HI"))
    pe.add_argument("--target", type=_complex, default=0j,
                    help="coalescence point in the eigenvalue plane")
    pe.add_argument("--tol", type=float, default=1e-3,
                    help="spread below which the point counts as found")
    return parser


def _resolve_model(args) -> model_mod.Model:
    if args.file is not None:
        return model_mod.load_model(args.file)
    name = args.preset
    if name == "dirac4a":
        return model_mod.dirac4("a", args.g1, args.g2)
    if name == "dirac4b":
        return model_mod.dirac4("b", args.g1, args.g2)
    if name == "rt-wheel":
        return model_mod.rt_wheel(args.beta, args.g1, args.g2)
    if name == "pyramid-nochiral":
        return model_mod.pyramid("nochiral", args.g1, args.g2, args.g3)
    if name == "pyramid-chiral":
        return model_mod.pyramid("chiral", args.g1, args.g2, args.g3)
    if name == "flake":
        return model_mod.honeycomb_flake(args.g, args.tau)
    if name == "chain":
        return model_mod.mirror_chain(args.delta)
    raise ValueError(f"unknown preset {name!r}")


def _load_operator(source: str, kind: str, n_sites: int) -> symmetry.SymOp:
    if os.path.exists(source):
        return symmetry.load_op(source)
    if n_sites != 4:
        raise ValueError(
            f"operator expression needs a 4-site model (have {n_sites} sites); "
            "pass an operator file instead"
        )
    return symmetry.SymOp(clifford.expr_to_matrix(source), kind, label=source)


def cmd_check(args) -> int:
    m = _resolve_model(args)
    H = model_mod.to_matrix(m)

    if args.discover is not None:
        tol = 1e-9 if args.tol is None else args.tol
        if m.n_sites == 4:
            basis = clifford.basis16()
            labels = clifford.basis16_labels()
        else:
            basis = labels = None
        ops = symmetry.discover(H, args.discover, basis=basis, labels=labels,
                                tol=tol)
        print(f"{m.name}: {args.discover} solution space dimension {len(ops)}")
        for i, op in enumerate(ops):
            shown = op.label if op.label else f"operator {i}"
            print(f"  {shown}  residual {symmetry.check(H, op):.3e}")
        return 0 if ops else 1

    tol = symmetry.PASS_TOL if args.tol is None else args.tol
    if args.op is not None:
        op = _load_operator(args.op, args.kind, m.n_sites)
        r = symmetry.check(H, op)
        ok = r <= tol
        shown = op.label if op.label else args.op
        print(f"{m.name}: {op.kind} {shown}  residual {r:.3e}  "
              f"{'pass' if ok else 'FAIL'}")
        return 0 if ok else 1

    if not m.symmetry_hints:
        print(f"{m.name}: no declared symmetries; use --op or --discover",
              file=sys.stderr)
        return 2
    failures = 0
    for hint in m.symmetry_hints:
        op = symmetry.named_operator(m, hint)
        r = symmetry.check(H, op)
        ok = r <= tol
        failures += 0 if ok else 1
        print(f"  {hint:<44} residual {r:.3e}  {'pass' if ok else 'FAIL'}")
    total = len(m.symmetry_hints)
    print(f"{m.name}: {total - failures}/{total} declared operators pass "
          f"(tol {tol:g})")
    return 0 if failures == 0 else 1


def cmd_sweep(args) -> int:
    proto = spectra.protocol(args.fig)
    result = spectra.sweep(proto.matrix_at, proto.lo, proto.hi,
                           n_steps=args.steps, param_name=proto.param_name)
    worst = {axis: 0.0 for axis in proto.symmetric}
    for step in result.steps:
        cls = spectra.classify_spectrum(step.eigenvalues, tol=args.tol)
        defects = {"origin": cls.origin, "real": cls.real_axis,
                   "imag": cls.imag_axis}
        for axis in proto.symmetric:
            worst[axis] = max(worst[axis], defects[axis])
    print(f"sweep {proto.tag}: {args.steps} steps of {proto.param_name} "
          f"in [{proto.lo:g}, {proto.hi:g}]")
    bad = 0
    for axis in proto.symmetric:
        ok = worst[axis] <= args.tol
        bad += 0 if ok else 1
        print(f"  {axis} spectrum symmetry: max defect {worst[axis]:.3e}  "
              f"{'ok' if ok else 'VIOLATED'}")
    counts = {}
    for ev in result.events:
        counts[ev.kind] = counts.get(ev.kind, 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    print(f"  events: {len(result.events)}" + (f" ({summary})" if counts else ""))
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"{proto.tag}_trajectories.csv")
    spectra.to_csv(result, csv_path)
    events_path = os.path.join(args.out, f"{proto.tag}_events.json")
    payload = [{"step": ev.step, "param": ev.param, "kind": ev.kind}
               for ev in result.events]
    with open(events_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(f"  wrote {csv_path}")
    print(f"  wrote {events_path}")
    return 0 if bad == 0 else 1


def cmd_ep(args) -> int:
    if args.family == "jordan2":
        family = spectra.jordan2
        name = "jordan2"
    else:
        proto = spectra.protocol(args.fig)
        family = proto.matrix_at
        name = f"fig {proto.tag} ({proto.param_name})"
    report = spectra.ep_locate(family, args.bracket, target=args.target,
                               found_tol=args.tol)
    if not report.found:
        print(f"{name}: no exceptional point in "
              f"[{args.bracket[0]:g}, {args.bracket[1]:g}] "
              f"(best spread {report.spread:.3e} at {report.parameter:.12g})")
        return 1
    print(f"{name}: exceptional point at parameter {report.parameter:.12g}")
    print(f"  eigenvalue {report.value.real:.12g}{report.value.imag:+.12g}i, "
          f"algebraic {report.algebraic}, geometric {report.geometric}, "
          f"order {report.order}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_ep(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
