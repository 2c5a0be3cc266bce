"""Command line entry point: ``qlo-verify <subcommand> [options]``.

Exit codes: 0 when no enabled check failed, 1 on a check failure, 2 on a
usage, config or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import ParseError, parse_element
from .indicator import find_fesspe
from .monomials import split_args
from .qlo import UnsupportedCapability, make_instance, parse_instance
from .spectrum import BallTooLarge, census
from .suite import CHECKS, NEEDS_FESSPE, ConfigError, RunConfig, RunReport, run
from .truncation import Truncation, truncate

QLO_CHECKS = [c for c, stage in CHECKS.items() if stage == "qlo"]
LEMMAS = ["lub-products"] + [c for c, stage in CHECKS.items() if stage == "lemma"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON run configuration")
    p.add_argument("--instance", metavar="KIND[:N]",
                   help="free_monoid:2, free_abelian:2, divisibility or half_line:4")
    p.add_argument("--fesspe", metavar="LIST", action="append",
                   help="comma-separated FESSPE candidate, e.g. 'a,b' or '(1,0),(0,1)'; repeatable")
    p.add_argument("--radius", type=int, metavar="N")
    p.add_argument("--seed", type=int, metavar="N")
    p.add_argument("--out", metavar="PATH", help="also write the report here")
    p.add_argument("--format", choices=["text", "structured"], default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlo-verify",
                                     description="Exact finite-level checks for Toeplitz algebras "
                                                 "of quasi-lattice ordered groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("run", help="run every enabled check of a configuration"))
    _common(sub.add_parser("check-qlo", help="order axioms, joins, labels and lub maps"))
    p = sub.add_parser("find-fesspe", help="search for a finite exhaustive set in a ball")
    _common(p)
    p.add_argument("--max-size", type=int, default=3, metavar="K")
    p = sub.add_parser("verify-lemmas", help="lemma-level identities")
    _common(p)
    p.add_argument("--lemma", choices=LEMMAS, action="append", metavar="NAME",
                   help=f"one of {', '.join(LEMMAS)}; repeatable (default: all)")
    p = sub.add_parser("grade", help="degree decomposition and expectation of an element")
    _common(p)
    p.add_argument("expr")
    p = sub.add_parser("spectrum", help="census of the Nica spectrum on a ball")
    _common(p)
    p = sub.add_parser("dump-matrix", help="exact matrix of an element on a hereditary ball")
    _common(p)
    p.add_argument("expr")
    return parser


def _config(args, checks=None) -> RunConfig:
    d: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        except OSError as exc:
            raise ConfigError(f"{args.config}: {exc.strerror}") from None
        if not isinstance(d, dict):
            raise ConfigError("config must be an object")
    if args.instance:
        try:
            d["instance"] = parse_instance(args.instance).config()
        except ValueError as exc:
            raise ConfigError(f"--instance: {exc}") from None
    d.setdefault("instance", {"kind": "free_monoid", "rank": 2})
    if args.fesspe:
        d["fesspe"] = [[a.strip() for _, a in split_args(F)] for F in args.fesspe]
    elif "fesspe" not in d:
        d["fesspe"] = _default_fesspe(d["instance"])
    if args.radius is not None:
        d["radius"] = args.radius
    if args.seed is not None:
        d["seed"] = args.seed
    if args.out:
        d["out"] = args.out
    if checks is not None:
        d["checks"] = checks
    return RunConfig.from_dict(d)


def _default_fesspe(record) -> list:
    """The generators, when the instance has finitely many."""
    try:
        inst = make_instance(record)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    gens = getattr(inst, "generators", None)
    return [[inst.format(g) for g in gens()]] if gens else []


def _emit(args, text: str, cfg: RunConfig | None = None) -> None:
    sys.stdout.write(text)
    out = args.out or (cfg.out if cfg is not None else None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_run(args, cfg: RunConfig, report: RunReport) -> int:
    _emit(args, report.render(args.format, args.timing), cfg)
    return EXIT_FAIL if report.failed else EXIT_OK


def _single(args, cfg, rep) -> int:
    report = RunReport(cfg_echo(cfg), [rep])
    return _emit_run(args, cfg, report)


def cfg_echo(cfg: RunConfig) -> dict:
    return {"instance": cfg.inst.config(), "radius": cfg.radius}


def cmd_run(args) -> int:
    cfg = _config(args)
    return _emit_run(args, cfg, run(cfg))


def cmd_check_qlo(args) -> int:
    cfg = _config(args, QLO_CHECKS)
    return _emit_run(args, cfg, run(cfg))


def cmd_verify_lemmas(args) -> int:
    lemmas = args.lemma or LEMMAS
    needs = ["fesspe"] if NEEDS_FESSPE & set(lemmas) else []
    cfg = _config(args, needs + lemmas)
    return _emit_run(args, cfg, run(cfg))


def cmd_find_fesspe(args) -> int:
    cfg = _config(args, [])
    if args.max_size < 1:
        raise UsageError("--max-size must be at least 1")
    return _single(args, cfg, find_fesspe(cfg.inst, args.max_size, cfg.radius))


def cmd_spectrum(args) -> int:
    cfg = _config(args, [])
    if not cfg.inst.supports_complete_enumeration:
        raise UnsupportedCapability(f"{cfg.inst.describe()} balls are not complete down-sets")
    return _single(args, cfg, census(cfg.inst, cfg.radius))


def cmd_grade(args) -> int:
    cfg = _config(args, [])
    inst = cfg.inst
    x = parse_element(inst, args.expr)
    parts = sorted(x.grade().items(), key=lambda kv: inst.format_label(kv[0]))
    phi = x.expectation()
    if args.format == "structured":
        text = json.dumps({"element": str(x),
                           "components": [{"label": inst.format_label(g), "element": str(c)} for g, c in parts],
                           "expectation": str(phi)}, indent=2) + "\n"
    else:
        lines = [f"element: {x}", f"components: {len(parts)}"]
        lines += [f"  degree {inst.format_label(g)}: {c}" for g, c in parts]
        lines.append(f"expectation: {phi}")
        text = "\n".join(lines) + "\n"
    _emit(args, text, cfg)
    return EXIT_OK


def cmd_dump_matrix(args) -> int:
    cfg = _config(args, [])
    inst = cfg.inst
    x = parse_element(inst, args.expr)
    S = Truncation(inst, inst.enumerate_ball(cfg.radius))
    M = truncate(x, S)
    basis = [inst.format(t) for t in S.elements]
    escapes = [basis[j] for j in sorted(M.escapes)]
    if args.format == "structured":
        text = json.dumps({"element": str(x), "basis": basis,
                           "rows": [[str(v) for v in row] for row in M.dense()],
                           "escaping_columns": escapes}, indent=2) + "\n"
    else:
        text = f"element: {x}\nbasis: {' '.join(basis)}\n{M.dump()}\n"
        if escapes:
            text += f"escaping columns (image leaves the ball): {' '.join(escapes)}\n"
    _emit(args, text, cfg)
    return EXIT_OK


COMMANDS = {
    "run": cmd_run, "check-qlo": cmd_check_qlo, "find-fesspe": cmd_find_fesspe,
    "verify-lemmas": cmd_verify_lemmas, "grade": cmd_grade, "spectrum": cmd_spectrum,
    "dump-matrix": cmd_dump_matrix,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (ConfigError, UsageError, BallTooLarge, UnsupportedCapability) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
