"""Command-line interface: ``derive``, ``laws``, ``enumerate`` and ``demo``.

Exit statuses: 0 on success, 1 when a check fails, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from .core import parse_el
from .dsl import Decl, compile_functor, derive_rule_json, derive_rule_text, parse_decl, show_term
from .errors import DeclError, ElSyntaxError, FibindError, ShapeError, SoundnessError
from .functors import BoundConfig
from .induction import genind, ind_direct, terms_up_to
from .laws import LawConfig, run_laws
from .registry import DEMOS, rebuild

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _read_decl(path: str) -> Decl:
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror or e}") from None
    try:
        return parse_decl(source)
    except DeclError as e:
        raise _UsageError(f"{path}:{e}") from None


def cmd_derive(args, out) -> int:
    d = _read_decl(args.file)
    if args.json:
        out.write(json.dumps(derive_rule_json(d), indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(derive_rule_text(d))
    return EXIT_OK


def cmd_laws(args, out) -> int:
    fibs = ["fam", "sub"] if args.fibration == "both" else [args.fibration]
    try:
        cfg = LawConfig(max_base_size=args.max_size, max_fiber_size=args.max_fiber,
                        max_code_depth=args.depth, seq_len_bound=args.seq_bound, fibration=fibs[0])
    except ValueError as e:
        raise _UsageError(str(e)) from None
    start = time.perf_counter()
    report = run_laws(cfg, fibs)
    elapsed = time.perf_counter() - start
    if args.json:
        data = report.to_dict()
        data["seconds"] = round(elapsed, 2)
        out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(report.to_text())
        out.write(f"elapsed: {elapsed:.1f} s\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_enumerate(args, out) -> int:
    d = _read_decl(args.file)
    if args.depth < 0 or args.seq_bound < 0:
        raise _UsageError("--depth and --seq-bound must be nonnegative")
    code = compile_functor(d)
    for t in terms_up_to(code, args.depth, BoundConfig(args.seq_bound)):
        out.write(show_term(d, t) + "\n")
    return EXIT_OK


def cmd_demo(args, out) -> int:
    if args.list or args.name is None:
        for name, demo in DEMOS.items():
            out.write(f"{name}  ({demo.datatype.name})\n")
        return EXIT_OK
    demo = DEMOS.get(args.name)
    if demo is None:
        raise _UsageError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    try:
        t = rebuild(demo.code, parse_el(args.term or demo.default_term))
    except (ElSyntaxError, ShapeError) as e:
        raise _UsageError(f"bad --term: {e}") from None
    step = demo.step_algebra()
    if args.datatype:
        out.write(derive_rule_text(demo.datatype))
    out.write(f"term:  {show_term(demo.datatype, t)}\n")
    out.write(f"value: {t}\n")
    try:
        result = genind(demo.code, step, t)
    except SoundnessError as e:
        out.write(f"soundness: FAILED ({e})\n")
        return EXIT_FAILED
    out.write(f"proof: {result.proof}\n")
    out.write("soundness: ok (the carrier component of the fold is the input term)\n")
    direct = ind_direct(demo.code, step, t)
    same = direct.proof == result.proof
    out.write(f"direct recursion: {'agrees' if same else 'DIFFERS: ' + str(direct.proof)}\n")
    return EXIT_OK if same else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fibind", description="Generic fibrational induction over finite sets.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    d = sub.add_parser("derive", help="print the induction rule of a datatype declaration")
    d.add_argument("file")
    d.add_argument("--json", action="store_true", help="machine-readable output")
    d.set_defaults(run=cmd_derive)

    defaults = LawConfig()
    lw = sub.add_parser("laws", help="run the exhaustive law suite")
    lw.add_argument("--fibration", choices=("fam", "sub", "both"), default="both")
    lw.add_argument("--max-size", type=int, default=defaults.max_base_size, help="largest base set")
    lw.add_argument("--max-fiber", type=int, default=defaults.max_fiber_size, help="largest fiber (families)")
    lw.add_argument("--seq-bound", type=int, default=defaults.seq_len_bound, help="truncation length of List")
    lw.add_argument("--depth", type=int, default=defaults.max_code_depth, help="largest functor code depth")
    lw.add_argument("--json", action="store_true")
    lw.set_defaults(run=cmd_laws)

    e = sub.add_parser("enumerate", help="list the canonical terms up to a nesting depth")
    e.add_argument("file")
    e.add_argument("--depth", type=int, required=True)
    e.add_argument("--seq-bound", type=int, default=defaults.seq_len_bound)
    e.set_defaults(run=cmd_enumerate)

    dm = sub.add_parser("demo", help="run a registered induction demo")
    dm.add_argument("name", nargs="?")
    dm.add_argument("--term", help="rendered term, e.g. 'mu(inr(mu(inl(()))))'")
    dm.add_argument("--datatype", action="store_true", help="also print the derived rule")
    dm.add_argument("--list", action="store_true", help="list the demos")
    dm.set_defaults(run=cmd_demo)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return args.run(args, out)
    except _UsageError as e:
        err.write(f"fibind: error: {e}\n")
        return EXIT_USAGE
    except FibindError as e:
        err.write(f"fibind: {type(e).__name__}: {e}\n")
        return EXIT_FAILED


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
