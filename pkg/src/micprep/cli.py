"""Command-line front end.

Every subcommand reads one JSON document (``--input`` or stdin) and writes
one JSON document to stdout.  Exit codes: 0 success, 1 negative domain
verdict (NotRepresentable, Refuted, Violation, ...), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import conic, family, midpoint, natset, semigroup
from .qsqrt2 import ScalarQ2, fraction_to_json

log = logging.getLogger("micprep")

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_point(values) -> list:
    out = []
    for v in values:
        if isinstance(v, dict):
            out.append(ScalarQ2.from_json(v))
        elif isinstance(v, bool):
            raise UsageError("booleans are not coordinates")
        elif isinstance(v, str):
            out.append(Fraction(v))
        else:
            out.append(v)
    return out


def _jsonify(obj):
    if isinstance(obj, Fraction):
        return fraction_to_json(obj)
    if isinstance(obj, ScalarQ2):
        return obj.to_json()
    if isinstance(obj, (list, tuple)):
        return [_jsonify(o) for o in obj]
    if isinstance(obj, float):
        return obj
    return obj


# --- natset ----------------------------------------------------------------


def _natset_oracle(args, doc):
    if args.oracle == "evens":
        return lambda n: n % 2 == 0
    if args.oracle == "odds":
        return lambda n: n % 2 == 1
    if args.oracle == "primes":
        return midpoint.is_prime
    s = natset.parse_set(doc)
    return s.__contains__


def cmd_natset(args, doc):
    if args.action == "scan":
        res = natset.oracle_periodicity_scan(_natset_oracle(args, doc), args.window, args.max_period)
        if isinstance(res, natset.NoPeriodFound):
            return NEGATIVE, res.to_json()
        return OK, {"result": "Periodic", "set": res.to_json()}
    s = natset.parse_set(doc)
    if args.action == "normalize":
        return OK, s.to_json()
    if args.action == "decide-milp":
        verdict = natset.decide_rational_milp(s)
        code = NEGATIVE if verdict.kind == verdict.NOT_REPRESENTABLE else OK
        return code, verdict.to_json()
    finite, aps = natset.decide_rational_micp(s)
    return OK, natset.parts_to_json(finite, aps)


# --- semigroup -------------------------------------------------------------


def cmd_semigroup(args, doc):
    if args.action == "member":
        return OK, {"member": semigroup.intcone_member(doc.get("generators", []), int(doc["n"]))}
    if args.action == "gaps":
        return OK, semigroup.gaps_and_conductor(doc["generators"]).to_json()
    if args.action == "to-eps":
        return OK, semigroup.milp_nat_to_eps(semigroup.MilpNatRep.from_json(doc)).to_json()
    res = semigroup.eps_to_milp_nat(natset.parse_set(doc))
    if isinstance(res, natset.MilpRepVerdict):
        return NEGATIVE, res.to_json()
    return OK, res.to_json()


# --- conic -----------------------------------------------------------------


def _milprep_oracle(spec: dict):
    if spec.get("kind") == "natset":
        s = natset.parse_set(spec["set"])
        return lambda p: len(p) == 1 and p[0].denominator == 1 and p[0] >= 0 and p[0].numerator in s
    return midpoint.oracle_from_json(spec).contains


def cmd_conic(args, doc):
    a = args.action
    if a == "hull":
        t = conic.LinConicSet.from_json(doc["set"])
        return OK, conic.conic_hull(t, _read_point(doc["witness"])).to_json()
    if a == "build-union":
        pieces = tuple(conic.LinConicSet.from_json(p["set"]) for p in doc["pieces"])
        witnesses = tuple(tuple(_read_point(p["witness"])) for p in doc["pieces"])
        spec = conic.BoundedUnionSpec(int(doc["nx"]), pieces, witnesses)
        return OK, conic.build_bounded_union(spec).to_json()
    if a == "build-nat":
        f = conic.build_nat_union_formulation(doc.get("a0", []), doc.get("bases", []), int(doc["step"]))
        return OK, f.to_json()
    if a == "eval":
        if "formulation" in doc:
            obj = conic.MicpFormulation.from_json(doc["formulation"])
        else:
            obj = conic.LinConicSet.from_json(doc["set"])
        report = conic.eval_point(obj, _read_point(doc["point"]), args.tolerance)
        return (OK if report.feasible else NEGATIVE), report.to_json()
    if a == "decompose":
        res = conic.decompose_point(doc["vertices"], doc["rays"], doc["lambdas"], doc["gammas"])
        return OK, res.to_json()
    if a == "milprep-check":
        report = conic.milprep_window_check(
            _milprep_oracle(doc["oracle"]),
            doc["pieces"],
            doc["rays"],
            conic.Window.from_json(doc["window"]),
            doc.get("max_multiplier"),
        )
        return (OK if report.matches else NEGATIVE), report.to_json()
    f = conic.MicpFormulation.from_json(doc)
    return OK, conic.emit_conic_text(f)


# --- midpoint --------------------------------------------------------------


def cmd_midpoint(args, doc):
    if args.action == "verify":
        cert = midpoint.verify_certificate(midpoint.MidpointCertificate.from_json(doc))
        return (OK if cert.status == midpoint.VERIFIED else NEGATIVE), cert.to_json()
    if args.action == "search":
        oracle = midpoint.oracle_from_json(doc["oracle"])
        stream = midpoint.named_stream(doc.get("stream", "naturals"), args.seed)
        target = args.target if args.target is not None else int(doc.get("target", 8))
        try:
            cert = midpoint.search_certificate(oracle, stream, target, args.budget)
        except midpoint.BudgetExhausted as exc:
            return NEGATIVE, {"result": "BudgetExhausted", "tests": exc.tests, "best": exc.best.to_json()}
        return OK, cert.to_json()
    try:
        i, j = midpoint.same_parity_pair(doc["vectors"])
    except midpoint.NoPairGuaranteed as exc:
        return NEGATIVE, {"result": "NoPairGuaranteed", "message": str(exc)}
    vi, vj = doc["vectors"][i], doc["vectors"][j]
    return OK, {"pair": [i, j], "midpoint": [(a + b) // 2 for a, b in zip(vi, vj)]}


# --- family ----------------------------------------------------------------


def cmd_family(args, doc):
    a = args.action
    if a == "convex-check":
        res = family.check_convex_family(family.IntervalFamily.from_json(doc["family"]), doc["lambdas"])
        return (OK if res.ok else NEGATIVE), res.to_json()
    if a == "closed-check":
        fam = family.IntervalFamily.from_json(doc["family"])
        samples = [family.ConvergentSample.from_json(s) for s in doc["samples"]]
        res = family.check_closed_sampled(fam, samples)
        return (OK if res.ok else NEGATIVE), res.to_json()
    if a == "recession":
        r = family.integer_recession_direction(family.RationalPolyhedron.from_json(doc))
        return OK, {"direction": None if r is None else list(r)}
    s = family.BeattyGapSet(Fraction(str(doc["epsilon"])))
    if "x" in doc:
        return OK, {"member": family.beatty_member(s, int(doc["x"]))}
    k = family.ap_escape_scan(s, int(doc["a"]), int(doc["b"]), int(doc.get("k_max", 2000)))
    if k is None:
        return NEGATIVE, {"result": "NotFound", "k_max": int(doc.get("k_max", 2000))}
    return OK, {"result": "Escape", "k": k, "value": int(doc["a"]) * k + int(doc["b"])}


COMMANDS = {
    "natset": (cmd_natset, ["normalize", "decide-milp", "decide-micp", "scan"]),
    "semigroup": (cmd_semigroup, ["member", "gaps", "to-eps", "from-eps"]),
    "conic": (cmd_conic, ["hull", "build-union", "build-nat", "eval", "decompose", "milprep-check", "emit"]),
    "midpoint": (cmd_midpoint, ["verify", "search", "parity"]),
    "family": (cmd_family, ["convex-check", "closed-check", "recession", "beatty"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="micprep", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log to stderr at DEBUG level")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for name, (_, actions) in COMMANDS.items():
        gp = groups.add_parser(name)
        sub = gp.add_subparsers(dest="action", required=True, parser_class=_Parser)
        for action in actions:
            ap = sub.add_parser(action)
            ap.add_argument("-i", "--input", help="JSON input file (default: stdin)")
            ap.add_argument("-o", "--output", help="output file (default: stdout)")
            ap.add_argument("--tolerance", type=float, default=conic.DEFAULT_TOLERANCE)
            ap.add_argument("--seed", type=int, default=None)
            ap.add_argument("--budget", type=int, default=10**6)
            ap.add_argument("--target", type=int, default=None)
            ap.add_argument("--window", type=int, default=1000)
            ap.add_argument("--max-period", type=int, default=50)
            ap.add_argument("--oracle", choices=["evens", "odds", "primes"], default=None)
    return parser


def _emit(payload, output: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(_jsonify(payload), sort_keys=True) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)}, None)
        return USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    handler, _ = COMMANDS[args.group]
    needs_input = not (args.group == "natset" and args.action == "scan" and args.oracle)
    try:
        doc = {}
        if needs_input:
            if args.input:
                with open(args.input) as fh:
                    doc = json.load(fh)
            else:
                doc = json.load(sys.stdin)
        code, payload = handler(args, doc)
    except (UsageError, json.JSONDecodeError, KeyError, TypeError, ValueError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None)
        return USAGE
    _emit(payload, args.output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
