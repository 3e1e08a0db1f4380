"""Command-line front end.

Exit codes: 0 ok, 1 a checked claim failed, 2 usage or input error,
3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from wonderbraid.arrangement import (
    Arrangement,
    ArrangementParseError,
    braid_arrangement,
    load_arrangement,
    r_braid_arrangement,
)
from wonderbraid.building import (
    DEFAULT_NESTED_CAP,
    NestedSetCapExceeded,
    blowup_schedule,
    enumerate_nested_sets,
    maximal_building_set,
    minimal_building_set,
    nested_set_report,
)
from wonderbraid.graphs import DEFAULT_GRAPH_CAP, GraphCapExceeded, enumerate_rn_graphs
from wonderbraid.lattice import (
    SCHEMA,
    LatticeCapExceeded,
    characteristic_polynomial,
    finite_field_check,
    flat_cap_from_env,
    format_polynomial,
    good_primes,
    intersection_lattice,
)
from wonderbraid.poset import IsomorphismTimeout, PosetTooLarge
from wonderbraid.verify import DEFAULT_VERIFY_CAP, report_json, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
FORMATS = ("json", "csv", "dot", "text")

log = logging.getLogger("wonderbraid")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    source: tuple  # ("braid", n) | ("rbraid", r, n) | ("file", path) | ("rn", r, n)
    fmt: str = "json"
    geometric: bool = False
    cap_flats: int = 10**6
    cap_nested: int = DEFAULT_NESTED_CAP
    timeout: float | None = None
    prime_floor: int = 5
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        for name in ("cap_flats", "cap_nested", "threads"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        if self.timeout is not None and self.timeout <= 0:
            raise UsageError("timeout must be positive")

    def arrangement(self) -> Arrangement:
        kind = self.source[0]
        try:
            if kind == "braid":
                return braid_arrangement(self.source[1])
            if kind == "rbraid":
                return r_braid_arrangement(self.source[1], self.source[2])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if kind == "file":
            return load_arrangement(self.source[1])
        raise UsageError("no arrangement given (use --braid, --rbraid or --file)")


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R,N but got {text!r}") from None
    return a, b


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _common(parser: argparse.ArgumentParser, source: bool = True):
    if source:
        src = parser.add_mutually_exclusive_group()
        src.add_argument("--braid", type=int, metavar="N", help="braid arrangement in C^N")
        src.add_argument("--rbraid", type=_pair, metavar="R,N", help="r-braid arrangement")
        src.add_argument("--file", metavar="PATH", help="arrangement JSON file")
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    parser.add_argument("--geometric", action="store_true", help="keep only projectively nonempty flats")
    parser.add_argument("--cap-flats", type=int, default=None, help="flat cap (env WONDERBRAID_CAP_FLATS)")
    parser.add_argument("--cap-nested", type=int, default=DEFAULT_NESTED_CAP)
    parser.add_argument("--timeout", type=float, default=None, help="seconds per isomorphism search")
    parser.add_argument("--prime-floor", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wonderbraid", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", help="intersection lattice")
    _common(s)

    s = sub.add_parser("building-set", help="minimal or maximal building set")
    _common(s)
    s.add_argument("--maximal", action="store_true")
    s.add_argument("--schedule", action="store_true", help="include the blow-up order")
    s.add_argument("--nested", action="store_true", help="include the nested-set count by size")
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--list-sets", action="store_true")

    s = sub.add_parser("graphs", help="(r,n)-graphs")
    _common(s, source=False)
    s.add_argument("--rn", type=_pair, metavar="R,N", required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--dot", action="store_true", help="DOT of the graph at --index")
    s.add_argument("--index", type=int, default=None)

    s = sub.add_parser("verify", help="check the structural claims on an instance")
    _common(s)
    s.add_argument("--verify-cap", type=int, default=DEFAULT_VERIFY_CAP, help="largest predicted flat count to verify")
    s.add_argument("--timings", action="store_true", help="put per-claim elapsed time into the report")

    s = sub.add_parser("charpoly", help="characteristic polynomial with a finite-field cross-check")
    _common(s)
    s.add_argument("--check-primes", type=_int_list, default=None, metavar="Q1,Q2")
    return p


def config_from_args(args) -> RunConfig:
    if args.command == "graphs":
        source = ("rn",) + tuple(args.rn)
    elif getattr(args, "braid", None) is not None:
        source = ("braid", args.braid)
    elif getattr(args, "rbraid", None) is not None:
        source = ("rbraid",) + tuple(args.rbraid)
    elif getattr(args, "file", None) is not None:
        source = ("file", args.file)
    else:
        raise UsageError("no arrangement given (use --braid, --rbraid or --file)")
    cap = args.cap_flats if args.cap_flats is not None else flat_cap_from_env()
    return RunConfig(source, args.fmt, args.geometric, cap, args.cap_nested, args.timeout,
                     args.prime_floor, args.seed, args.threads)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands


def cmd_lattice(cfg: RunConfig, args) -> tuple[int, str]:
    a = cfg.arrangement()
    lat = intersection_lattice(a, cap=cfg.cap_flats, threads=cfg.threads)
    flats = [f for f in lat if not (cfg.geometric and f.proj_empty)]
    summary = {"flats": len(flats), "by_lin_dim": {str(k): v for k, v in lat.counts_by_dimension().items()}}
    if cfg.fmt == "json":
        doc = lat.to_json()
        if cfg.geometric:
            keep = {f.id for f in flats}
            doc["flats"] = [d for d in doc["flats"] if d["id"] in keep]
            doc["hasse"] = [h for h in doc["hasse"] if h[0] in keep and h[1] in keep]
        doc["summary"] = summary
        return EXIT_OK, _dump(doc)
    if cfg.fmt == "dot":
        return EXIT_OK, lat.to_dot()
    if cfg.fmt == "csv":
        rows = [[f.id, f.rank, f.lin_dim, int(f.proj_empty), " ".join(map(str, f.hset)),
                 "; ".join(lat.flat_json(f)["equations"])] for f in flats]
        return EXIT_OK, _csv(["id", "rank", "lin_dim", "proj_empty", "hset", "equations"], rows)
    lines = [f"{a!r}", f"flats: {len(flats)}"]
    lines += [f"  dim {k}: {v}" for k, v in summary["by_lin_dim"].items()]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_building_set(cfg: RunConfig, args) -> tuple[int, str]:
    a = cfg.arrangement()
    lat = intersection_lattice(a, cap=cfg.cap_flats, threads=cfg.threads)
    g = maximal_building_set(lat) if args.maximal else minimal_building_set(lat, threads=cfg.threads)
    shown = g.geometric_members if cfg.geometric else g.sorted_members()
    doc = {"schema": SCHEMA, "arrangement": a.to_json(), "kind": "maximal" if args.maximal else "minimal"}
    doc.update(g.to_json())
    doc["projectively_empty_members"] = [m for m in g.sorted_members() if lat[m].proj_empty]
    doc["count"] = len(shown)
    sched = None
    if args.schedule:
        sched = blowup_schedule(g)
        doc["schedule"] = sched.to_json()
    if args.nested:
        sets = enumerate_nested_sets(lat, g, args.max_size, geometric=cfg.geometric, cap=cfg.cap_nested)
        doc["nested"] = nested_set_report(sets, include_sets=args.list_sets)
    if cfg.fmt == "json":
        return EXIT_OK, _dump(doc)
    if cfg.fmt == "csv":
        pos = {x: i for i, x in enumerate(sched.order)} if sched else {}
        rows = [[m, lat[m].lin_dim, int(lat[m].proj_empty), pos.get(m, "")] for m in shown]
        return EXIT_OK, _csv(["id", "lin_dim", "proj_empty", "schedule_position"], rows)
    if cfg.fmt == "dot":
        return EXIT_OK, lat.to_dot()
    lines = [f"{a!r}", f"{doc['kind']} building set: {len(shown)} members"
             + (" (projectively nonempty)" if cfg.geometric else "")]
    for m in shown:
        lines.append(f"  {m}: dim {lat[m].proj_dim}  {lat.flat_label(lat[m])}")
    if sched:
        lines.append("blow-up order: " + " ".join(str(x) for x in sched.order))
    if args.nested:
        lines.append("nested sets by size: " + json.dumps(doc["nested"]["by_size"]))
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_graphs(cfg: RunConfig, args) -> tuple[int, str]:
    _, r, n = cfg.source
    try:
        gamma = enumerate_rn_graphs(r, n, cap=min(cfg.cap_flats, DEFAULT_GRAPH_CAP))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.dot or args.index is not None:
        if args.index is None:
            raise UsageError("--dot needs --index")
        if not 0 <= args.index < len(gamma):
            raise UsageError(f"index {args.index} out of range 0..{len(gamma) - 1}")
        g = gamma[args.index]
        if args.dot or cfg.fmt == "dot":
            return EXIT_OK, g.to_dot(f"G{args.index}")
        return EXIT_OK, _dump(g.to_json())
    if args.list:
        if cfg.fmt == "csv":
            return EXIT_OK, _csv(["index", "edges"],
                                 [[i, " ".join(f"{a}-{b}:{k}" for a, b, k in g.sorted_edges())] for i, g in enumerate(gamma)])
        if cfg.fmt == "text":
            return EXIT_OK, "".join(f"{i}: {g.sorted_edges()}\n" for i, g in enumerate(gamma))
        return EXIT_OK, _dump([g.to_json() for g in gamma])
    if cfg.fmt == "json":
        return EXIT_OK, _dump({"schema": SCHEMA, "r": r, "n": n, "count": len(gamma)})
    return EXIT_OK, f"{len(gamma)}\n"


def cmd_verify(cfg: RunConfig, args) -> tuple[int, str]:
    a = cfg.arrangement()
    cap = min(args.verify_cap, cfg.cap_flats)
    header, results = verify(a, threads=cfg.threads, cap=cap, prime_floor=cfg.prime_floor, seed=cfg.seed)
    for r in results:
        extra = f" ({r.detail['reason']})" if r.status == "skipped" else ""
        print(f"{r.status.upper():7s} {r.claim} [{header['instance']}] {r.elapsed:.3f}s{extra}", file=sys.stderr)
    doc = report_json(header, results, timings=args.timings)
    if any(r.status == "fail" for r in results):
        code = EXIT_FAIL
    elif all(r.status == "skipped" for r in results):
        code = EXIT_CAP
    else:
        code = EXIT_OK
    if cfg.fmt == "text":
        out = "".join(f"{r.status:7s} {r.claim}\n" for r in results)
    elif cfg.fmt == "csv":
        out = _csv(["claim", "instance", "status"], [[r.claim, header["instance"], r.status] for r in results])
    else:
        out = _dump(doc)
    return code, out


def cmd_charpoly(cfg: RunConfig, args) -> tuple[int, str]:
    a = cfg.arrangement()
    lat = intersection_lattice(a, cap=cfg.cap_flats, threads=cfg.threads)
    coeffs = characteristic_polynomial(lat)
    primes = args.check_primes if args.check_primes is not None else good_primes(a.r, cfg.prime_floor, 2)
    try:
        rows = finite_field_check(lat, primes)
    except ValueError as exc:
        if "cap" in str(exc):
            raise LatticeCapExceeded(str(exc)) from None
        raise UsageError(str(exc)) from None
    doc = {"schema": SCHEMA, "arrangement": a.to_json(), "coefficients": coeffs,
           "polynomial": format_polynomial(coeffs), "checks": rows}
    code = EXIT_OK if all(r["equal"] for r in rows) else EXIT_FAIL
    if cfg.fmt == "csv":
        return code, _csv(["q", "chi", "count", "equal"], [[r["q"], r["chi"], r["count"], r["equal"]] for r in rows])
    if cfg.fmt == "text":
        lines = [f"chi(t) = {doc['polynomial']}"]
        lines += [f"  q={r['q']}: chi={r['chi']} count={r['count']} {'ok' if r['equal'] else 'MISMATCH'}" for r in rows]
        return code, "\n".join(lines) + "\n"
    return code, _dump(doc)


COMMANDS = {
    "lattice": cmd_lattice,
    "building-set": cmd_building_set,
    "graphs": cmd_graphs,
    "verify": cmd_verify,
    "charpoly": cmd_charpoly,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = config_from_args(args)
        code, out = COMMANDS[args.command](cfg, args)
    except (UsageError, ArrangementParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LatticeCapExceeded, GraphCapExceeded, NestedSetCapExceeded, PosetTooLarge, IsomorphismTimeout) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
