"""Command-line front end.

Exit status is 0 when every item passes, 1 on a verification mismatch or an
internal assertion failure, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import acceptance, families, permanent, reduction
from . import closedforms as cf
from .exact import scalar_str
from .families import FamilyError, FamilyId
from .matrix import charpoly, det_bareiss


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    items: list[dict] = field(default_factory=list)
    passed: bool = True
    wall_time: float = 0.0


def parse_n(text: str) -> list[int]:
    """``"15"`` or an inclusive range ``"1..40"``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            ns = list(range(lo, hi + 1))
        else:
            ns = [int(text)]
    except ValueError:
        raise UsageError(f"bad --n value {text!r}") from None
    if not ns or ns[0] < 1:
        raise UsageError(f"--n must describe positive sizes, got {text!r}")
    return ns


def thread_budget(flag: int | None) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"THREADS must be an integer, got {env!r}") from None
    return 1


def _family(text: str) -> FamilyId:
    try:
        return FamilyId.parse(text)
    except FamilyError as exc:
        raise UsageError(str(exc)) from None


def _map(fn, ns, threads):
    if threads <= 1 or len(ns) == 1:
        return [fn(n) for n in ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, ns))


# --- subcommands ------------------------------------------------------------------------


def cmd_det(args, threads) -> list[dict]:
    fam = _family(args.family)
    if args.method != "bareiss" and fam.tag not in ("A1", "A2", "B", "ABSDIFF"):
        raise UsageError(f"no closed form for {fam}; use --method bareiss")

    def one(n):
        try:
            m = families.gen(fam, n)
        except FamilyError as exc:
            raise UsageError(str(exc)) from None
        item = {"family": str(fam), "n": n}
        if args.method in ("closed", "both"):
            item["closed"] = scalar_str(cf.det_closed(fam, n))
        if args.method in ("bareiss", "both"):
            item["computed"] = scalar_str(det_bareiss(m))
        if args.method == "both":
            item["match"] = item["closed"] == item["computed"]
        if args.dump:
            item["matrix"] = m.to_json()
        return item

    return _map(one, parse_n(args.n), threads)


def cmd_charpoly(args, threads) -> list[dict]:
    fam = _family(args.family)

    def one(n):
        m = families.gen(fam, n)
        item = {"family": str(fam), "n": n}
        closed = None
        if args.method in ("closed", "both") and fam.tag in ("A1", "A2") and n >= 3:
            closed = cf.charpoly_closed(fam, n)
        elif args.method == "closed":
            raise UsageError("closed characteristic polynomials exist only for a1/a2 with n >= 3")
        if args.method in ("closed", "both"):
            item["closed"] = closed.to_json() if closed else None
        if args.method in ("computed", "both"):
            item["computed"] = charpoly(m).to_json()
        if args.method == "both":
            item["match"] = None if closed is None else item["closed"] == item["computed"]
        if args.dump:
            item["matrix"] = m.to_json()
        return item

    return _map(one, parse_n(args.n), threads)


def cmd_spectrum(args, threads) -> list[dict]:
    fam = _family(args.family)
    if fam.tag not in ("A1", "A2"):
        raise UsageError("spectra are available for a1 and a2 only")
    ns = parse_n(args.n)
    if ns[0] < 3:
        raise UsageError("spectra need n >= 3")

    def one(n):
        item = cf.verify_spectrum(fam, n).to_json()
        lemma = cf.verify_a1_eigenvector(n) if fam.tag == "A1" else cf.verify_a2_eigenvector(n)
        item["lemma_ok"] = lemma.ok
        item["match"] = item["verified"] and lemma.ok
        return item

    return _map(one, ns, threads)


def cmd_permanent(args, threads) -> list[dict]:
    fam = _family(args.family)
    if args.modulus is not None and args.modulus < 2:
        raise UsageError("--modulus must be at least 2")

    def one(n):
        m = families.gen(fam, n)
        item = {"family": str(fam), "n": n}
        if args.modulus is not None:
            if m.kind != "integer":
                raise UsageError("modular permanents need an integer family")
            item["modulus"] = args.modulus
            item["ryser"] = str(permanent.per_ryser_mod(m, args.modulus, threads))
            if args.method == "both":
                item["naive"] = str(permanent.per_naive(m) % args.modulus)
        else:
            try:
                item["ryser"] = scalar_str(permanent.per_ryser(m, threads))
            except permanent.PermanentError as exc:
                raise UsageError(str(exc)) from None
            if args.method == "both":
                item["naive"] = scalar_str(permanent.per_naive(m))
        if args.method == "both":
            item["match"] = item["ryser"] == item["naive"]
        if args.dump:
            item["matrix"] = m.to_json()
        return item

    # the Ryser engine parallelizes internally; sizes run in order
    try:
        return [one(n) for n in parse_n(args.n)]
    except permanent.PermanentError as exc:
        raise UsageError(str(exc)) from None


def cmd_conjecture(args, threads) -> list[dict]:
    try:
        rep = permanent.scan_conjecture(args.id, args.pmax, threads, allow_large=args.allow_large)
    except permanent.PermanentError as exc:
        raise UsageError(str(exc)) from None
    return rep.jsonl_rows()


def cmd_hankel(args, threads) -> list[dict]:
    ns = parse_n(args.n)
    if len(ns) != 1:
        raise UsageError("hankel takes a single largest size, e.g. --n 12")
    n_max = ns[0]
    rep = cf.hankel_transform_check(n_max)
    items = [
        {"n": n, "hankel_det": str(h), "closed": str(f), "match": h == f and rep.prefix_ok}
        for n, h, f in rep.rows
    ]
    return items


def cmd_reduce_b(args, threads) -> list[dict]:
    ns = parse_n(args.n)
    if ns[0] < 3:
        raise UsageError("the reduction needs n >= 3")

    def one(n):
        tr = reduction.reduce_and_evaluate(n)
        if args.trace:
            item = tr.to_json()
        else:
            item = {
                "n": n,
                "final_case": tr.final_case,
                "final_value": None if tr.final_value is None else str(tr.final_value),
                "ok": tr.ok,
            }
            if tr.failure:
                item["failure"] = tr.failure
        item["match"] = tr.ok
        return item

    return _map(one, ns, threads)


def cmd_selftest(args, threads) -> list[dict]:
    items = []
    for crit in acceptance.CRITERIA:
        res = crit()
        print(f"criterion {res.number}: {res.elapsed:.2f}s", file=sys.stderr)
        items.append({"criterion": res.number, "name": res.name, "match": res.passed, "detail": res.detail})
    return items


COMMANDS = {
    "det": cmd_det,
    "charpoly": cmd_charpoly,
    "spectrum": cmd_spectrum,
    "permanent": cmd_permanent,
    "conjecture": cmd_conjecture,
    "hankel": cmd_hankel,
    "reduce-b": cmd_reduce_b,
    "selftest": cmd_selftest,
}


# --- output ------------------------------------------------------------------------------


def _flat(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=False)
    if value is None:
        return ""
    return value


def render(items: list[dict], fmt: str, selftest: bool = False) -> str:
    if fmt == "json":
        return "".join(json.dumps(it) + "\n" for it in items)
    if fmt == "csv":
        keys: list[str] = []
        for it in items:
            keys += [k for k in it if k not in keys]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for it in items:
            w.writerow({k: _flat(it.get(k)) for k in keys})
        return buf.getvalue()
    lines = []
    for it in items:
        if selftest:
            mark = "PASS" if it["match"] else "FAIL"
            lines.append(f"[{mark}] {it['criterion']:>2} {it['name']}: {it['detail']}")
            continue
        lines.append("  ".join(f"{k}={_flat(v)}" for k, v in it.items() if k != "matrix"))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tridet", description="Exact checks of structured determinants and permanents.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--out", metavar="FILE", help="write results to FILE instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="worker cap (overrides $THREADS)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("det", parents=[common], help="determinants: closed form, Bareiss, or both")
    s.add_argument("--family", required=True)
    s.add_argument("--n", required=True)
    s.add_argument("--method", choices=("closed", "bareiss", "both"), default="both")
    s.add_argument("--dump", action="store_true")

    s = sub.add_parser("charpoly", parents=[common], help="characteristic polynomials")
    s.add_argument("--family", required=True)
    s.add_argument("--n", required=True)
    s.add_argument("--method", choices=("closed", "computed", "both"), default="both")
    s.add_argument("--dump", action="store_true")

    s = sub.add_parser("spectrum", parents=[common], help="exact eigenstructure verification")
    s.add_argument("--family", required=True)
    s.add_argument("--n", required=True)

    s = sub.add_parser("permanent", parents=[common], help="exact or modular permanents")
    s.add_argument("--family", required=True)
    s.add_argument("--n", required=True)
    s.add_argument("--modulus", type=int)
    s.add_argument("--method", choices=("ryser", "both"), default="ryser")
    s.add_argument("--dump", action="store_true")

    s = sub.add_parser("conjecture", parents=[common], help="scan a permanent congruence over primes")
    s.add_argument("--id", required=True, help="4.1i, 4.1ii, 4.2 or 11.23 (also C41i, C41ii, C42, S1123)")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--allow-large", action="store_true", help=f"permit pmax > {permanent.DESK_PMAX}")

    s = sub.add_parser("hankel", parents=[common], help="Hankel transform of A025276 against f(n)")
    s.add_argument("--n", required=True, help="largest size checked")

    s = sub.add_parser("reduce-b", parents=[common], help="replay the reduction of det B")
    s.add_argument("--n", required=True)
    s.add_argument("--trace", action="store_true")

    sub.add_parser("selftest", parents=[common], help="run every acceptance criterion")
    return p


def _item_ok(item: dict) -> bool:
    return item.get("match", item.get("pass")) is not False


def run(argv: list[str]) -> tuple[RunReport, str, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    threads = thread_budget(args.threads)
    t0 = time.perf_counter()
    items = COMMANDS[args.command](args, threads)
    report = RunReport(list(argv), items, all(_item_ok(it) for it in items))
    report.wall_time = time.perf_counter() - t0
    text = render(items, args.output, selftest=args.command == "selftest")
    return report, text, args


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, text, args = run(argv)
    except UsageError as exc:
        print(f"tridet: error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(json.dumps({"error": "internal assertion failed", "detail": str(exc)}), file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{'PASS' if report.passed else 'FAIL'} ({len(report.items)} items, {report.wall_time:.2f}s)", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
