"""Command-line front end (``qsl``).

Exit status: 0 on success, 1 when a verification fails, 2 on bad input or
an exceeded cap.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Any, Sequence

from . import degeneracy as dg
from .errors import QSLError
from .exactalg import DEFAULT_TRIALS
from .flagcomb import (BlockPermMatrix, Permutation, SubsetFlag, block_of_tau_r, mults_from_block,
                       perm_to_subset_flag, ranks_from_tau, schubert_dim, tau_max, tau_r)
from .oracle import (CAP_GROUP, CAP_POINTS, DEFAULT_FIELDS, VerificationReport, degeneration_poset,
                     reports_to_tsv, verify_dim_crosscheck, verify_ideal_chain, verify_orbits, verify_zelevinsky)
from .quivercomb import (DimVector, MultArray, RankArray, check_valid, enumerate_rank_arrays, mults_to_ranks,
                         quiver_dim, ranks_to_mults)
from .zelevinsky import FAMILIES, cauchy_binet_certificate, generators, i1_in_i0_certificate, i2_in_i1_certificate

SCENARIOS = ("zelevinsky", "ideals", "certificates", "degeneracy", "stability", "all")


class UsageError(Exception):
    pass


# -- argument parsing ------------------------------------------------------

def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _json_arg(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc.msg} at position {exc.pos}")


def _need_dim(args) -> DimVector:
    if args.n is None:
        raise UsageError("--n is required")
    return DimVector(args.n)


def _ranks(args, dim: DimVector) -> RankArray:
    r = RankArray.from_json(_json_arg(args.ranks, "--ranks"), dim)
    if r.dim != dim:
        raise UsageError(f"--ranks is for n=({r.dim}) but --n is ({dim})")
    return check_valid(r)


def _fields(args) -> tuple[int, ...]:
    return tuple(args.q) if args.q else DEFAULT_FIELDS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_int_list, help="dimension vector, e.g. 1,2,1")
    common.add_argument("--ranks", help="rank array as JSON, e.g. '{\"1,2\":1,\"2,3\":0,\"1,3\":0}'")
    common.add_argument("--mults", help="multiplicities as JSON, keys \"i,j\" with i < j <= h+1")
    common.add_argument("--tau", help="subset-flag as JSON list of lists")
    common.add_argument("--block", help="block permutation matrix as JSON list of lists")
    common.add_argument("--perm", type=_int_list, help="permutation in one-line notation, e.g. 2,1,3")
    common.add_argument("--q", type=_int_list, help="field size(s), default 2,3")
    common.add_argument("--m", type=int, help="degeneracy shape parameter")
    common.add_argument("--format", choices=("json", "tsv", "dot"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cap-points", type=int, default=CAP_POINTS)
    common.add_argument("--cap-group", type=int, default=CAP_GROUP)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="randomized identity checks")
    common.add_argument("--timings", action="store_true", help="include wall times (output no longer reproducible)")

    parser = argparse.ArgumentParser(prog="qsl", description="Quiver loci, Schubert cells and brute-force checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("convert", parents=[common], help="rank array <-> multiplicities <-> tau_r <-> block matrix")
    sub.add_parser("tau", parents=[common], help="tau_max, and tau_r when --ranks is given")
    sub.add_parser("dim", parents=[common], help="orbit-closure and Schubert dimensions side by side")
    sub.add_parser("orbits", parents=[common], help="orbit classification over F_q")
    v = sub.add_parser("verify", parents=[common], help="run verification scenarios")
    v.add_argument("scenario", choices=SCENARIOS)
    sub.add_parser("poset", parents=[common], help="degeneration order as DOT or JSON")
    g = sub.add_parser("generators", parents=[common], help="list a generator family")
    g.add_argument("--family", choices=FAMILIES, required=True)
    return parser


# -- subcommands -------------------------------------------------------------

def _describe(r: RankArray) -> dict:
    tau = tau_r(r)
    return {"n": list(r.dim.n), "r": r.to_json()["r"], "m": ranks_to_mults(r).to_json()["m"],
            "tau": tau.to_json()["tau"], "tau_str": str(tau), "block": block_of_tau_r(r).to_json()}


def cmd_convert(args) -> tuple[int, Any]:
    dim = _need_dim(args)
    given = [name for name in ("ranks", "mults", "tau", "block") if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("convert takes exactly one of --ranks, --mults, --tau, --block")
    if args.ranks is not None:
        r = _ranks(args, dim)
    elif args.mults is not None:
        r = mults_to_ranks(MultArray.from_json(_json_arg(args.mults, "--mults"), dim))
    elif args.tau is not None:
        r = ranks_from_tau(SubsetFlag(dim, tuple(tuple(t) for t in _json_arg(args.tau, "--tau"))))
    else:
        r = mults_to_ranks(mults_from_block(BlockPermMatrix(dim, tuple(map(tuple, _json_arg(args.block, "--block"))))))
    return 0, _describe(r)


def cmd_tau(args) -> tuple[int, Any]:
    dim = _need_dim(args)
    tm = tau_max(dim)
    out = {"n": list(dim.n), "tau_max": tm.to_json()["tau"], "tau_max_str": str(tm)}
    if args.ranks is not None:
        t = tau_r(_ranks(args, dim))
        out.update({"tau_r": t.to_json()["tau"], "tau_r_str": str(t)})
    return 0, out


def cmd_dim(args) -> tuple[int, Any]:
    dim = _need_dim(args)
    arrays = [_ranks(args, dim)] if args.ranks is not None else enumerate_rank_arrays(dim)
    rows = [{"r": r.to_json()["r"], "quiver_dim": quiver_dim(r), "schubert_dim": schubert_dim(tau_r(r)),
             "tau": str(tau_r(r))} for r in arrays]
    status = 0 if all(x["quiver_dim"] == x["schubert_dim"] for x in rows) else 1
    return status, {"n": list(dim.n), "space_dim": dim.space_dim(), "arrays": rows}


def _certificate_report(r: RankArray) -> VerificationReport:
    report = VerificationReport("certificates", {"n": list(r.dim.n), "r": r.to_json()["r"]})
    for cert in (i2_in_i1_certificate(r), i1_in_i0_certificate(r)):
        for item in cert.checked:
            report.record(True)
        for item in cert.failures:
            report.record(False, {"certificate": cert.name, "item": str(item)})
    return report


def _rank_scenarios(args, kinds: Sequence[str]) -> list[VerificationReport]:
    dim = _need_dim(args)
    arrays = [_ranks(args, dim)] if args.ranks is not None else enumerate_rank_arrays(dim)
    out = []
    for r in arrays:
        if "certificates" in kinds:
            out.append(_certificate_report(r))
        for q in _fields(args):
            if "zelevinsky" in kinds:
                out.append(verify_zelevinsky(dim, r, q, args.cap_points))
            if "ideals" in kinds:
                out.append(verify_ideal_chain(dim, r, q, args.cap_points))
    return out


def _perms(args, m: int) -> list[Permutation]:
    if args.perm is not None:
        w = Permutation(args.perm)
        if len(w) != m + 1:
            raise UsageError(f"--perm has degree {len(w)} but --m {m} needs degree {m + 1}")
        return [w]
    return [Permutation(p) for p in itertools.permutations(range(1, m + 2))]


def _degeneracy_scenarios(args) -> list[VerificationReport]:
    ms = [args.m] if args.m is not None else [1, 2, 3]
    out = [dg.verify_codimension(m) for m in ms]
    if args.m in (None, 1):
        out += [dg.superfluous_check(1, q) for q in _fields(args)]
    if args.m in (None, 2):
        out.append(dg.superfluous_check(2, 2, samples=10**4, seed=0))
    for q in _fields(args):
        for w in _perms(args, 1) if args.m in (None, 1) else []:
            rep = dg.flag_pair_agreement(w, 1, q, "derived")
            literal = dg.flag_pair_agreement(w, 1, q, "literal")
            rep.details["literal_agreements"] = literal.agreements
            rep.details["literal_disagreements"] = literal.failures
            out.append(rep)
    return out


def _stability_scenarios(args) -> list[VerificationReport]:
    m = args.m if args.m is not None else 1
    return [dg.stability_check(w, m, q) for q in _fields(args) for w in _perms(args, m)]


def cmd_verify(args) -> tuple[int, Any]:
    kind = args.scenario
    reports: list[VerificationReport] = []
    if kind in ("zelevinsky", "ideals", "certificates"):
        reports = _rank_scenarios(args, [kind])
    elif kind == "degeneracy":
        reports = _degeneracy_scenarios(args)
    elif kind == "stability":
        reports = _stability_scenarios(args)
    else:
        dim = _need_dim(args)
        reports = [verify_orbits(dim, q, args.cap_points, args.cap_group) for q in _fields(args)]
        reports.append(verify_dim_crosscheck(dim))
        reports += _rank_scenarios(args, ["certificates", "zelevinsky", "ideals"])
        if args.m is not None:
            reports += _degeneracy_scenarios(args) + _stability_scenarios(args)
    if kind in ("certificates", "all") and args.trials > 0:
        cb = cauchy_binet_certificate(5, 5, 5, 3, trials=args.trials)
        rep = VerificationReport("cauchy_binet", {"k": 5, "m": 5, "l": 5, "size": 3, "trials": args.trials})
        rep.record(cb.passed, [str(f) for f in cb.failures[:1]])
        reports.append(rep)
    status = 0 if all(r.passed for r in reports) else 1
    return status, reports


def cmd_orbits(args) -> tuple[int, Any]:
    dim = _need_dim(args)
    reports = [verify_orbits(dim, q, args.cap_points, args.cap_group) for q in _fields(args)]
    return (0 if all(r.passed for r in reports) else 1), reports


def cmd_poset(args) -> tuple[int, Any]:
    return 0, degeneration_poset(_need_dim(args))


def cmd_generators(args) -> tuple[int, Any]:
    dim = _need_dim(args)
    if args.family == "I_tau":
        if args.tau is not None:
            tau = SubsetFlag(dim, tuple(tuple(t) for t in _json_arg(args.tau, "--tau")))
        elif args.perm is not None:
            tau = perm_to_subset_flag(Permutation(args.perm), dim)
        elif args.ranks is not None:
            tau = tau_r(_ranks(args, dim))
        else:
            raise UsageError("I_tau needs --tau, --perm or --ranks")
        gens = generators("I_tau", dim, tau=tau)
    else:
        if args.ranks is None:
            raise UsageError(f"{args.family} needs --ranks")
        gens = generators(args.family, dim, _ranks(args, dim))
    return 0, [g.to_json() for g in gens]


COMMANDS = {"convert": cmd_convert, "tau": cmd_tau, "dim": cmd_dim, "orbits": cmd_orbits, "verify": cmd_verify,
            "poset": cmd_poset, "generators": cmd_generators}


# -- output ------------------------------------------------------------------

def _tsv_of(obj: Any) -> str:
    if isinstance(obj, dict) and "arrays" in obj:
        lines = ["r\tquiver_dim\tschubert_dim\ttau"]
        for row in obj["arrays"]:
            ranks = ",".join(f"{k}={v}" for k, v in row["r"].items())
            lines.append(f"{ranks}\t{row['quiver_dim']}\t{row['schubert_dim']}\t{row['tau']}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        keys = list(obj[0])
        lines = ["\t".join(keys)] + ["\t".join(json.dumps(row[k]) for k in keys) for row in obj]
        return "\n".join(lines) + "\n"
    if isinstance(obj, dict):
        return "".join(f"{k}\t{json.dumps(v, ensure_ascii=False)}\n" for k, v in obj.items())
    raise UsageError("this output has no TSV form")


def render(obj: Any, fmt: str, timings: bool) -> str:
    if hasattr(obj, "to_dot"):
        if fmt == "dot":
            return obj.to_dot()
        if fmt == "json":
            obj = obj.to_json()
        else:
            raise UsageError("poset output is available as dot or json")
    elif fmt == "dot":
        raise UsageError("--format dot only applies to poset")
    if isinstance(obj, list) and obj and isinstance(obj[0], VerificationReport):
        if fmt == "tsv":
            return reports_to_tsv(obj, timings)
        obj = {"passed": all(r.passed for r in obj), "reports": [r.to_json(timings) for r in obj]}
    if fmt == "tsv":
        return _tsv_of(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, result = COMMANDS[args.command](args)
        text = render(result, args.format, args.timings)
    except (UsageError, QSLError, ValueError, TypeError, KeyError) as exc:
        msg = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        print(f"qsl: error: {msg}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
