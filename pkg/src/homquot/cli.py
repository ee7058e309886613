"""Command-line interface.

Every command prints machine-readable JSON on stdout and a one-line summary on
stderr.  Exit codes: 0 success, 1 a failed property or a false verdict the
command asserts, 2 usage, input or mode errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from .envelope import (
    hom_annihilator_dense,
    inner_envelope,
    invariant_subalgebra_a0,
    is_left_quotient_algebra,
    is_multiplicatively_semiprime,
    multiplication_algebra,
)
from .errors import HomQuotError, ParseError, PreconditionFailed, UnsupportedMode
from .exalg import Field, GF, Limits, QQ
from .homlie import HomLieAlgebra, annihilator
from .exalg import Subspace
from .harness import run_suite, select_checks, write_report
from .maxq import build_maximal_quotients
from .props import is_nondegenerate, is_prime, is_semiprime, minimum_essential_ideal
from .quotients import (
    Extension,
    is_ideally_absorbed,
    is_quotient_algebra,
    is_weak_quotient_algebra,
    quotient_derived,
    self_extension,
)
from .verdict import Mode, resolve_mode, to_jsonable


class UsageError(Exception):
    pass


def parse_field(text: str) -> Field:
    t = text.strip().lower().replace("(", "").replace(")", "")
    if t in ("q", "qq", "rational", "rationals"):
        return QQ
    if t.startswith("gf") and t[2:].isdigit():
        return GF(int(t[2:]))
    raise UsageError(f"unknown field {text!r} (use gfP or Q)")


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def load_algebra(path) -> HomLieAlgebra:
    obj = _read_json(path)
    if isinstance(obj, dict) and "ambient" in obj:
        return Extension.from_json(obj).inner
    return HomLieAlgebra.from_json(obj)


def load_extension(path) -> Extension:
    obj = _read_json(path)
    if isinstance(obj, dict) and "ambient" in obj:
        return Extension.from_json(obj)
    return self_extension(HomLieAlgebra.from_json(obj))


def _limits(args) -> Limits:
    return Limits(max_enum=args.max_enum, max_lattice=args.max_lattice)


def _emit(obj, summary: str, out=None):
    text = json.dumps(obj, sort_keys=True, indent=1)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n")
    print(text)
    print(summary, file=sys.stderr)


def cmd_check(args) -> int:
    L = load_algebra(args.path)
    rep = L.check_axioms()
    obj = rep.to_json(L.field)
    obj["hom_ok"] = rep.hom_ok
    _emit(obj, f"hom axioms {'pass' if rep.hom_ok else 'FAIL'}; classical Jacobi "
               f"{'holds' if rep.classical_jacobi.is_true else 'fails'}")
    return 0 if rep.hom_ok else 1


def cmd_analyze(args) -> int:
    L = load_algebra(args.path)
    limits = _limits(args)
    mode = resolve_mode(L.field, args.mode)
    L.require_verified()
    f = L.field
    out = {
        "nondegenerate": is_nondegenerate(L, mode, limits).to_json(f),
        "semiprime": is_semiprime(L, mode, limits).to_json(f),
        "prime": is_prime(L, mode, limits).to_json(f),
        "annihilator": to_jsonable(annihilator(L, Subspace.full(f, L.dim)), f),
    }
    if f.is_finite:
        try:
            out["minimum_essential_ideal"] = to_jsonable(minimum_essential_ideal(L, limits), f)
        except HomQuotError as exc:
            out["minimum_essential_ideal"] = {"unavailable": str(exc)}
    vals = ", ".join(f"{k}={out[k]['value']}" for k in ("nondegenerate", "semiprime", "prime"))
    _emit(out, f"{vals}; dim Ann(L) = {out['annihilator']['dim']}")
    return 0


def cmd_quotients(args) -> int:
    E = load_extension(args.path)
    limits = _limits(args)
    mode = resolve_mode(E.field, args.mode)
    f = E.field
    weak = is_weak_quotient_algebra(E, mode, limits)
    quot = is_quotient_algebra(E, mode, limits)
    absorbed = is_ideally_absorbed(E, mode, limits)
    derived = quotient_derived(E, limits)
    out = {"weak": weak.to_json(f), "quotient": quot.to_json(f), "ideally_absorbed": absorbed.to_json(f),
           "derived": derived.to_json(f)}
    problems = []
    if not quot.is_unknown and not absorbed.is_unknown and quot.value != absorbed.value:
        problems.append("quotient and ideally-absorbed verdicts differ")
    if not quot.is_unknown and not derived.is_unknown and quot.value != derived.value:
        problems.append("quotient and uniform-denominator verdicts differ")
    if quot.is_true and weak.is_false:
        problems.append("an algebra of quotients is not a weak algebra of quotients")
    out["agreement"] = not problems
    out["problems"] = problems
    _emit(out, f"weak={weak.value.value} quotient={quot.value.value} absorbed={absorbed.value.value}; "
               f"agreement {'holds' if not problems else 'FAILS'}")
    return 1 if problems else 0


def cmd_maxq(args) -> int:
    L = load_algebra(args.path)
    try:
        M = build_maximal_quotients(L, _limits(args))
    except PreconditionFailed as exc:
        _emit({"error": str(exc)}, f"maximal quotients unavailable: {exc}")
        return 1
    out = M.to_json()
    out["phi_injective"] = M.phi_injective()
    out["phi_bijective"] = M.phi_injective() and M.dim == L.dim
    _emit(out, f"carrier dimension {M.dim}; phi bijective: {out['phi_bijective']}", args.out)
    return 0


def cmd_envelope(args) -> int:
    E = load_extension(args.path)
    limits = _limits(args)
    mode = resolve_mode(E.field, args.mode)
    f = E.field
    AL = inner_envelope(E, "L")
    AQ = inner_envelope(E, "Q")
    A0 = invariant_subalgebra_a0(E)
    MQ = multiplication_algebra(E.ambient)
    dense = hom_annihilator_dense(E, check=False)
    out = {
        "dims": {"A_Q(L)": AL.dim, "A(Q)": AQ.dim, "A_0": A0.dim, "M(Q)": MQ.dim},
        "A_Q(L)": AL.to_json(),
        "A_0": A0.to_json(),
        "dense": dense.dense.to_json(f),
        "left_quotient_A(Q)_over_A_0": is_left_quotient_algebra(A0, AQ, mode, limits).to_json(f),
        "multiplicatively_semiprime_Q": is_multiplicatively_semiprime(E.ambient, mode, limits).to_json(f),
        "multiplicatively_semiprime_L": is_multiplicatively_semiprime(E.inner, mode, limits).to_json(f),
    }
    d = out["dims"]
    _emit(out, f"dim A_Q(L)={d['A_Q(L)']} A_0={d['A_0']} A(Q)={d['A(Q)']} M(Q)={d['M(Q)']}; "
               f"dense={dense.dense.value.value}", args.out)
    return 0


def cmd_harness(args) -> int:
    rows = corpus_mod.load_corpus(args.corpus)
    report = run_suite(rows, select_checks(args.checks), jobs=args.jobs, limits=_limits(args))
    out_dir = Path(args.out) if args.out else Path("report")
    write_report(report, out_dir, plot=not args.no_plot)
    totals = {s: sum(c.counts[s] for c in report.checks) for s in ("pass", "fail", "na", "unknown")}
    print(report.dumps(), end="")
    print(f"{len(rows)} instances, {len(report.checks)} checks: " +
          ", ".join(f"{k} {v}" for k, v in totals.items()) + f"; report in {out_dir}", file=sys.stderr)
    return 1 if report.fail_count else 0


def cmd_gen(args) -> int:
    out = Path(args.out)
    if args.default:
        rows = corpus_mod.build_default_corpus()
        corpus_mod.write_corpus(rows, out)
        names = [name for name, _, _ in rows]
    else:
        if not args.strategy:
            raise UsageError("gen needs --strategy or --default")
        spec = corpus_mod.GeneratorSpec(args.strategy, parse_field(args.field), args.dim, args.seed, args.count,
                                        args.pattern)
        names = corpus_mod.write_algebras(spec, out)
    _emit({"written": names, "directory": str(out)}, f"{len(names)} instances written to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", default="auto", choices=[m.value for m in Mode])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-lattice", type=int, default=4096)
    common.add_argument("--max-enum", type=int, default=200_000)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="homquot", description="Algebras of quotients of Hom-Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="verify the Hom-Lie axioms")
    s.add_argument("path")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("analyze", parents=[common], help="nondegenerate / semiprime / prime verdicts")
    s.add_argument("path")
    s.set_defaults(fn=cmd_analyze)

    s = sub.add_parser("quotients", parents=[common], help="quotient predicates of an extension")
    s.add_argument("path")
    s.set_defaults(fn=cmd_quotients)

    s = sub.add_parser("maxq", parents=[common], help="maximal algebra of quotients")
    s.add_argument("path")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_maxq)

    s = sub.add_parser("envelope", parents=[common], help="associative envelopes and density")
    s.add_argument("path")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_envelope)

    s = sub.add_parser("harness", parents=[common], help="run the property checks over a corpus")
    s.add_argument("corpus")
    s.add_argument("--checks", default="all")
    s.add_argument("--out", help="report directory (default ./report)")
    s.add_argument("--no-plot", action="store_true")
    s.set_defaults(fn=cmd_harness)

    s = sub.add_parser("gen", parents=[common], help="generate algebras into a corpus directory")
    s.add_argument("--strategy", choices=corpus_mod.STRATEGIES)
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--field", default="gf2")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--pattern", choices=["ex2_5", "semisimple"])
    s.add_argument("--default", action="store_true", help="write the shipped default corpus")
    s.add_argument("--out", default="corpus")
    s.set_defaults(fn=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.fn(args)
    except (UsageError, ParseError, UnsupportedMode, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except PreconditionFailed as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
