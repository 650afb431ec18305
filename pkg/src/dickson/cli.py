"""Command-line front end.

    dickson verify --q-min 3 --q-max 1009 --format json
    dickson sets --q 29 --set A2++
    dickson eval --q 29 --family D --k 5 --x 10
    dickson poly --family D --k 7
    dickson cycles --q 29 --k 5 --set A2--
    dickson products --q 29 --set B2++ --sigma 2
    dickson identities --k-max 64

Exit codes: 0 success, 1 some verdict failed, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .ffield import Fe, FieldCtx, FieldError, field_of_order
from .numtheory import prime_powers_between
from .polyfam import (
    FAMILIES,
    check_DkDl,
    check_schur_identities,
    check_T_recursion,
    eval_via_functional,
    family,
    family_fq,
)
from .polyfam import eval as horner
from .subsets import (
    N_ID,
    S_ID,
    Z_ID,
    Subset,
    SubsetId,
    card_formula,
    elem_sym,
    image_and_cycles,
    materialize,
    set_product,
    shifted_products,
)
from .verdict import FAIL, Verdict
from .verify import CHECK_NAMES, KRange, verify_all

OUTPUT_DIR_ENV = "DICKSON_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- set specs ------------------------------------------------------------------------

_SIGN = {"+": 1, "-": -1}
_AB = re.compile(r"^([AB])(-?\d+)([+-])([+-])$")
_TJL = re.compile(r"^T(-?\d+),(-?\d+)([+-])([+-])$")
_TJL_SHORT = re.compile(r"^T(\d)(\d)([+-])([+-])$")
_DELTA = re.compile(r"^(MU|DELTA|DELTA_?STAR)[\s:]*(\d+)$")


def parse_set(F: FieldCtx, spec: str) -> SubsetId:
    """Parse a set spec such as ``A2++``, ``B2--``, ``T40--``, ``T1``, ``DELTA 7``.

    Integer parameters are read as integers and mapped into F_q.
    """
    s = spec.strip().upper()
    if s in ("S", "N", "Z"):
        return {"S": S_ID, "N": N_ID, "Z": Z_ID}[s]
    if s in ("T0", "T1"):
        return SubsetId.T01(int(s[1]))
    m = _AB.match(s)
    if m:
        tag, lam, e1, e2 = m.groups()
        return SubsetId(tag, lam=F.const(int(lam)), e1=_SIGN[e1], e2=_SIGN[e2])
    m = _TJL.match(s) or _TJL_SHORT.match(s)
    if m:
        j, l, e1, e2 = m.groups()  # noqa: E741
        return SubsetId.TJL(F.const(int(j)), F.const(int(l)), _SIGN[e1], _SIGN[e2])
    m = _DELTA.match(s)
    if m:
        tag = m.group(1).replace("DELTASTAR", "DELTA_STAR")
        return SubsetId(tag, d=int(m.group(2)))
    raise UsageError(f"cannot parse set spec {spec!r}")


def _field(q: int) -> FieldCtx:
    try:
        return field_of_order(q)
    except (FieldError, ValueError) as e:
        raise UsageError(str(e)) from None


def _element(F: FieldCtx, x: int) -> int:
    """Encodings 0..q-1 as given; negative integers through the prime subfield."""
    if x < 0:
        return F.const(x)
    if x >= F.q:
        raise UsageError(f"x must be an encoding in [0, {F.q})")
    return x


def _materialize(F: FieldCtx, spec: str) -> Subset:
    sid = parse_set(F, spec)
    try:
        return materialize(F, sid)
    except (FieldError, ValueError) as e:
        raise UsageError(str(e)) from None


# -- reports --------------------------------------------------------------------------


@dataclass
class RunConfig:
    q_min: int = 2
    q_max: int = 64
    parity: str = "both"
    k_mode: str = "auto"
    bound: int = 0
    samples: int = 64
    seed: int = 0
    checks: list[str] = field(default_factory=list)
    timings: bool = False

    def krange(self) -> KRange:
        return KRange(mode=self.k_mode, bound=self.bound, sample_count=self.samples, seed=self.seed)

    def q_list(self) -> list[int]:
        qs = prime_powers_between(self.q_min, self.q_max)
        if self.parity == "odd":
            return [q for q in qs if q % 2]
        if self.parity == "even":
            return [q for q in qs if q % 2 == 0]
        return qs


def verdict_record(v: Verdict) -> dict[str, Any]:
    rec: dict[str, Any] = {"check": v.check_name, "q": v.q, "status": v.status, "instances": v.instances_checked}
    if v.counterexample is not None:
        rec["counterexample"] = v.counterexample
    rec["note"] = v.note
    rec["millis"] = v.millis
    return rec


def verdict_from_record(rec: dict[str, Any]) -> Verdict:
    return Verdict(
        check_name=rec["check"],
        q=rec["q"],
        status=rec["status"],
        instances_checked=rec["instances"],
        counterexample=rec.get("counterexample"),
        note=rec["note"],
        millis=rec["millis"],
    )


def report_json(cfg: RunConfig, verdicts: Sequence[Verdict]) -> str:
    doc = {"run": asdict(cfg), "verdicts": [verdict_record(v) for v in verdicts]}
    return json.dumps(doc, indent=2) + "\n"


def parse_report_json(text: str) -> tuple[dict[str, Any], list[Verdict]]:
    doc = json.loads(text)
    return doc["run"], [verdict_from_record(r) for r in doc["verdicts"]]


CSV_FIELDS = ["check", "q", "status", "instances", "counterexample", "note", "millis"]


def report_csv(verdicts: Sequence[Verdict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for v in verdicts:
        rec = verdict_record(v)
        rec["counterexample"] = json.dumps(rec.get("counterexample"), sort_keys=True) if v.counterexample else ""
        rec["millis"] = "" if v.millis is None else f"{v.millis:.3f}"
        w.writerow(rec)
    return buf.getvalue()


def report_text(verdicts: Sequence[Verdict]) -> str:
    lines = [f"{'q':>6}  {'check':<30} {'status':<8} {'instances':>10}  note"]
    for v in verdicts:
        note = v.note
        if v.counterexample is not None:
            note = f"counterexample {json.dumps(v.counterexample, sort_keys=True)}" + (f"; {note}" if note else "")
        ms = "" if v.millis is None else f" [{v.millis:.0f} ms]"
        lines.append(f"{v.q:>6}  {v.check_name:<30} {v.status:<8} {v.instances_checked:>10}  {note}{ms}".rstrip())
    counts: dict[str, int] = {}
    for v in verdicts:
        counts[v.status] = counts.get(v.status, 0) + 1
    lines.append("summary: " + (", ".join(f"{k}={counts[k]}" for k in sorted(counts)) or "no verdicts"))
    return "\n".join(lines) + "\n"


def _output_path(path: str | None, fmt: str) -> str | None:
    if path:
        return path
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base:
        return os.path.join(base, f"report.{'txt' if fmt == 'text' else fmt}")
    return None


# -- commands ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.q_min > args.q_max:
        raise UsageError("--q-min must not exceed --q-max")
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    checks = [c for part in (args.checks or []) for c in part.split(",") if c]
    unknown = [c for c in checks if c not in CHECK_NAMES]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECK_NAMES)}")
    cfg = RunConfig(
        q_min=args.q_min,
        q_max=args.q_max,
        parity=args.parity,
        k_mode=args.k_mode,
        bound=args.bound,
        samples=args.samples,
        seed=args.seed,
        checks=sorted(set(checks)),
        timings=args.timings,
    )
    try:
        kr = cfg.krange()
    except ValueError as e:
        raise UsageError(str(e)) from None
    verdicts = verify_all(cfg.q_list(), kr, cfg.checks or None, workers=args.workers, timings=cfg.timings)
    if args.format == "json":
        text = report_json(cfg, verdicts)
    elif args.format == "csv":
        text = report_csv(verdicts)
    else:
        text = report_text(verdicts)
    path = _output_path(args.output, args.format)
    if path:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        fails = sum(v.status == FAIL for v in verdicts)
        print(f"wrote {len(verdicts)} verdicts to {path} ({fails} failed)", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if any(v.status == FAIL for v in verdicts) else EXIT_OK


def cmd_sets(args) -> int:
    F = _field(args.q)
    S = _materialize(F, args.set)
    print(" ".join(str(a) for a in S.encs))
    line = f"size {len(S)}"
    try:
        want = card_formula(F, S.id)
    except (ValueError, FieldError):
        want = None
    if want is not None:
        line += f"; formula {want} ({'agrees' if want == len(S) else 'DISAGREES'})"
    print(line)
    return EXIT_OK


def cmd_eval(args) -> int:
    F = _field(args.q)
    if args.k < 0:
        raise UsageError("k must be >= 0")
    a = Fe(F, _element(F, args.x))
    if args.family == "D":
        val = eval_via_functional(F, args.k, a)
    else:
        if args.k > 100_000:
            raise UsageError("k too large for coefficient evaluation of this family")
        val = horner(family_fq(F, args.family, args.k), F, a)
    print(val.value)
    return EXIT_OK


def cmd_poly(args) -> int:
    if args.k < 0:
        raise UsageError("k must be >= 0")
    if args.q:
        coeffs = family_fq(_field(args.q), args.family, args.k).coeffs.tolist()[::-1]
        print(" ".join(str(c) for c in coeffs) if coeffs else "0")
    else:
        print(" ".join(str(c) for c in family(args.family, args.k).descending()))
    return EXIT_OK


def format_cycles(cycles) -> str:
    return "".join("(" + " ".join(str(a) for a in cyc) + ")" for cyc in cycles)


def cmd_cycles(args) -> int:
    F = _field(args.q)
    if args.k < 1:
        raise UsageError("k must be >= 1")
    S = _materialize(F, args.set)
    if S.ext:
        raise UsageError("cycle reports need a subset of F_q")
    rep = image_and_cycles(F, args.k, S)
    if rep.is_permutation:
        print(format_cycles(rep.cycles) if rep.cycles else "(empty set)")
    else:
        print("not a permutation; image={" + ",".join(str(a) for a in rep.image) + "}")
    return EXIT_OK


def cmd_products(args) -> int:
    F = _field(args.q)
    S = _materialize(F, args.set)
    if args.sigma is not None:
        if S.ext:
            raise UsageError("sigma_j needs a subset of F_q")
        try:
            print(int(elem_sym(S, args.sigma)))
        except ValueError as e:
            raise UsageError(str(e)) from None
    elif args.shift is not None:
        if S.ext:
            raise UsageError("shifted products need a subset of F_q")
        c = _element(F, args.shift)
        print(int(shifted_products(F, S.array, [c])[0]))
    else:
        print(set_product(S).value)
    return EXIT_OK


def cmd_identities(args) -> int:
    verdicts = [check_schur_identities(args.k_max), check_T_recursion(args.k_max), check_DkDl(args.k_max)]
    for v in verdicts:
        v.millis = None
    sys.stdout.write(report_text(verdicts))
    return EXIT_FAIL if any(v.status == FAIL for v in verdicts) else EXIT_OK


# -- parser ------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 2, as argparse does, with our prefix
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dickson", description="Dickson polynomials over finite fields: inspection and verification.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the checks over a range of prime powers")
    v.add_argument("--q-min", type=int, default=2)
    v.add_argument("--q-max", type=int, default=64)
    v.add_argument("--parity", choices=["odd", "even", "both"], default="both")
    v.add_argument("--k-mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    v.add_argument("--bound", type=int, default=0, help="largest sampled k (0 means q^2-1)")
    v.add_argument("--samples", type=int, default=64, help="seeded random k per field in sampled mode")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--checks", action="append", help="comma-separated check names (repeatable)")
    v.add_argument("--format", choices=["text", "json", "csv"], default="text")
    v.add_argument("--output", help=f"report path (default: stdout, or ${OUTPUT_DIR_ENV}/report.<fmt>)")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="include per-check wall time (breaks byte-identity)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sets", help="list a subset of F_q")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--set", required=True)
    s.set_defaults(func=cmd_sets)

    e = sub.add_parser("eval", help="evaluate a polynomial family at a field element")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--family", choices=FAMILIES, default="D")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--x", type=int, required=True)
    e.set_defaults(func=cmd_eval)

    po = sub.add_parser("poly", help="print coefficients, highest degree first")
    po.add_argument("--family", choices=FAMILIES, default="D")
    po.add_argument("--k", type=int, required=True)
    po.add_argument("--q", type=int, help="reduce the coefficients mod p")
    po.set_defaults(func=cmd_poly)

    c = sub.add_parser("cycles", help="cycle decomposition of D_k on a subset")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--set", required=True)
    c.set_defaults(func=cmd_cycles)

    pr = sub.add_parser("products", help="product over a subset, shifted product or sigma_j")
    pr.add_argument("--q", type=int, required=True)
    pr.add_argument("--set", required=True)
    grp = pr.add_mutually_exclusive_group()
    grp.add_argument("--shift", type=int, help="print prod (c - a) for this c")
    grp.add_argument("--sigma", type=int, help="print the j-th elementary symmetric function")
    pr.set_defaults(func=cmd_products)

    i = sub.add_parser("identities", help="integer-polynomial identity battery")
    i.add_argument("--k-max", type=int, default=64)
    i.set_defaults(func=cmd_identities)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"dickson: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"dickson: I/O error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:  # noqa: BLE001
        print(f"dickson: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
