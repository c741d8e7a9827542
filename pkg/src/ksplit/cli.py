"""Command-line interface: ``ksplit solve | oracle | bench | generate``.

Exit codes: 0 success, 2 input error, 3 precondition failure, 4 oracle
limits exceeded, 5 internal invariant violation (including failed bench
guarantees).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from ksplit import __version__
from ksplit.approx import (
    SplittableFlow,
    concurrent_quarter,
    even_k_exact,
    tu_double_flow,
    tu_half_approx,
)
from ksplit.core import (
    Cut,
    Instance,
    InstanceFormatError,
    PreconditionError,
    generate_instance,
    parse_instance,
    parse_ratio,
    ratio_str,
    serialize_instance,
)
from ksplit.cuts import CutValue, c_k1k2_graph
from ksplit.flownet import ContractViolation
from ksplit.oracle import (
    UNBOUNDED,
    OracleLimitError,
    OracleLimits,
    cut_bound,
    enumerate_cuts,
    exact_biuniform,
    exact_concurrent,
    exact_totally_uniform,
    separates,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_ORACLE_LIMIT, EXIT_INTERNAL = 0, 2, 3, 4, 5

CSV_COLUMNS = [
    "seed", "n", "m", "k1", "k2", "c_value", "tu2k_total", "tuhalf_total",
    "oracle_tu", "ratio_tu", "lambda_approx", "lambda_oracle", "ratio_conc",
]


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# serialisation


def digest(inst: Instance) -> str:
    return "sha256:" + hashlib.sha256(serialize_instance(inst)).hexdigest()


def _r(x) -> Optional[str]:
    if x is None:
        return None
    if x is UNBOUNDED:
        return "unbounded"
    return ratio_str(x)


def flow_doc(flow: SplittableFlow) -> dict[str, Any]:
    return {
        "k1": flow.k1,
        "k2": flow.k2,
        "uniformity": flow.uniformity.value,
        "total": _r(flow.total),
        "paths": [
            {"commodity": p.commodity, "vertices": list(p.vertices), "edges": list(p.edges), "value": _r(p.value)}
            for p in flow.paths
        ],
    }


def cut_doc(cut: Optional[Cut]) -> Optional[dict[str, Any]]:
    if cut is None:
        return None
    return {"members": sorted(cut.members), "boundary": list(cut.boundary), "demand": cut.demand}


def cut_value_doc(cv: CutValue) -> dict[str, Any]:
    return {
        "value": _r(cv.value),
        "witness": cut_doc(cv.witness_cut),
        "packing": {str(e): n for e, n in sorted(cv.packing.items())},
    }


def document(command: str, inst: Optional[Instance], parameters: dict, outputs: dict, timing=None) -> dict:
    return {
        "version": __version__,
        "command": command,
        "instance_digest": digest(inst) if inst is not None else None,
        "parameters": parameters,
        "outputs": outputs,
        "timing": timing,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def render_text(doc: dict) -> str:
    lines = [f"{doc['command']} ({doc['parameters'].get('mode', '')})"]

    def walk(prefix: str, obj) -> None:
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}.{k}" if prefix else k, obj[k])
        elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
            for i, item in enumerate(obj):
                walk(f"{prefix}[{i}]", item)
        else:
            lines.append(f"  {prefix} = {obj}")

    walk("", doc["outputs"])
    return "\n".join(lines)


# --------------------------------------------------------------------------
# commands


def _load(path: str) -> Instance:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(data)


def _demands(args, inst: Instance) -> tuple[Fraction, Fraction]:
    if args.d1 is not None or args.d2 is not None:
        if args.d1 is None or args.d2 is None:
            raise InputError("give both -d1 and -d2")
        try:
            return parse_ratio(args.d1), parse_ratio(args.d2)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if inst.d1 is not None:
        return inst.d1, inst.d2
    raise InputError("concurrent mode needs demands (-d1/-d2 or in the instance file)")


def cmd_solve(args) -> dict:
    inst = _load(args.input)
    params: dict[str, Any] = {"mode": args.mode}
    if args.mode == "cut":
        cv, cases = c_k1k2_graph(inst, with_cases=True)
        out = cut_value_doc(cv)
        out["cases"] = {k: _r(v) for k, v in cases.items()}
    elif args.mode == "tu2k":
        res = tu_double_flow(inst)
        out = {"x": _r(res.x), "path_value": _r(res.x / 2), "total": _r(res.flow.total), "flow": flow_doc(res.flow)}
    elif args.mode == "tuhalf":
        res = tu_half_approx(inst)
        out = {
            "c_value": _r(res.c_value),
            "path_value": _r(res.x_per_path),
            "total": _r(res.total),
            "upper_bound": _r(res.upper_bound),
            "single_commodity_reduction": res.reduced,
            "flow": flow_doc(res.flow),
        }
    elif args.mode == "evenk":
        cert = even_k_exact(inst)
        out = {
            "applicable": cert.applicable,
            "c_full": _r(cert.c_full),
            "c_half": _r(cert.c_half),
            "total": _r(cert.total),
            "flow": flow_doc(cert.flow) if cert.flow is not None else None,
        }
    else:
        d1, d2 = _demands(args, inst)
        params.update(d1=_r(d1), d2=_r(d2))
        res = concurrent_quarter(inst, d1, d2)
        out = {"lambda": _r(res.lam), "d1": _r(d1), "d2": _r(d2), "flow": flow_doc(res.flow)}
    return document("solve", inst, params, out)


def cmd_oracle(args) -> dict:
    inst = _load(args.input)
    limits = OracleLimits(args.max_paths, args.max_selections)
    params: dict[str, Any] = {"mode": args.mode, "max_paths": args.max_paths, "max_selections": args.max_selections}
    if args.mode == "tu":
        res = exact_totally_uniform(inst, limits)
        out = {"path_value": _r(res.x), "total": _r(res.total), "flow": flow_doc(res.flow)}
    elif args.mode == "bi":
        res = exact_biuniform(inst, limits)
        out = {"x": _r(res.x), "y": _r(res.y), "value": _r(res.value), "flow": flow_doc(res.flow)}
    elif args.mode == "concurrent":
        d1, d2 = _demands(args, inst)
        params.update(d1=_r(d1), d2=_r(d2), concurrent_mode=args.conc_mode)
        res = exact_concurrent(inst, d1, d2, args.conc_mode, limits)
        out = {"lambda": _r(res.lam), "flow": flow_doc(res.flow)}
    else:
        if args.cut:
            try:
                members = frozenset(int(v) for v in args.cut.split(","))
            except ValueError:
                raise InputError(f"bad --cut list {args.cut!r}") from None
            params["cut"] = sorted(members)
            d = Cut.of(inst, members)
            out = {
                "cut": cut_doc(d),
                "tu": _r(cut_bound(inst, members, "tu")) if d.demand else None,
                "bi": _r(cut_bound(inst, members, "bi"))
                if separates(members, inst.s1, inst.t1) or separates(members, inst.s2, inst.t2)
                else None,
            }
        else:
            best_tu, best_bi = None, None
            arg_tu, arg_bi = None, None
            for members, _ in enumerate_cuts(inst.graph):
                if Cut.of(inst, members).demand:
                    v = cut_bound(inst, members, "tu")
                    if best_tu is None or v < best_tu:
                        best_tu, arg_tu = v, members
                if separates(members, inst.s1, inst.t1) and separates(members, inst.s2, inst.t2):
                    v = cut_bound(inst, members, "bi")
                    if v is not UNBOUNDED and (best_bi is None or v < best_bi):
                        best_bi, arg_bi = v, members
            out = {
                "min_tu": _r(best_tu),
                "min_tu_cut": sorted(arg_tu) if arg_tu is not None else None,
                "min_bi": _r(best_bi),
                "min_bi_cut": sorted(arg_bi) if arg_bi is not None else None,
            }
    return document("oracle", inst, params, out)


def bench_one(task: tuple) -> dict:
    """Solver + oracle for one generated instance (runs in worker processes)."""
    seed, n, m, cap, k1, k2, max_paths, max_sel = task
    inst = generate_instance(n, m, cap, k1, k2, seed)
    limits = OracleLimits(max_paths, max_sel)
    row: dict[str, Any] = {c: None for c in CSV_COLUMNS}
    row.update(seed=seed, n=n, m=m, k1=k1, k2=k2)
    failures = []
    c = c_k1k2_graph(inst).value
    dbl = tu_double_flow(inst)
    half = tu_half_approx(inst)
    row.update(c_value=_r(c), tu2k_total=_r(dbl.flow.total), tuhalf_total=_r(half.total))
    try:
        opt = exact_totally_uniform(inst, limits).total
        row["oracle_tu"] = _r(opt)
        if opt > 0:
            ratio = half.total / opt
            row["ratio_tu"] = _r(ratio)
            if ratio < Fraction(1, 2) or ratio > 1:
                failures.append(f"tu ratio {ratio} outside [1/2, 1]")
        elif half.total != 0:
            failures.append("approximation positive while optimum is 0")
    except OracleLimitError as exc:
        row["oracle_tu"] = None
        row["oracle_refused"] = str(exc)
    if k1 >= 1 and k2 >= 1:
        d1, d2 = Fraction(k1), Fraction(k2)
        lam = concurrent_quarter(inst, d1, d2).lam
        row["lambda_approx"] = _r(lam)
        try:
            lam_opt = exact_concurrent(inst, d1, d2, "free", limits).lam
            row["lambda_oracle"] = _r(lam_opt)
            if lam_opt > 0:
                ratio = lam / lam_opt
                row["ratio_conc"] = _r(ratio)
                if ratio < Fraction(1, 4):
                    failures.append(f"concurrent ratio {ratio} below 1/4")
        except OracleLimitError as exc:
            row["oracle_refused"] = str(exc)
    row["failures"] = failures
    row["instance"] = serialize_instance(inst).decode()
    return row


def cmd_bench(args, emit) -> tuple[dict, int]:
    tasks = [
        (args.seed + i, args.vertices, args.edges, args.max_cap, args.k1, args.k2, args.max_paths, args.max_selections)
        for i in range(args.count)
    ]
    if args.jobs > 1 and tasks:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(bench_one, tasks))
    else:
        rows = [bench_one(t) for t in tasks]
    status = EXIT_OK
    tu_ratios, conc_ratios = [], []
    dumped = []
    for row in rows:
        inst = parse_instance(row["instance"])
        outputs = {k: row[k] for k in CSV_COLUMNS if k not in ("seed", "n", "m", "k1", "k2")}
        outputs["failures"] = row["failures"]
        if "oracle_refused" in row:
            outputs["oracle_refused"] = row["oracle_refused"]
        emit(document("bench", inst, {"seed": row["seed"], "n": row["n"], "m": row["m"], "k1": row["k1"], "k2": row["k2"]}, outputs))
        if row["ratio_tu"] is not None:
            tu_ratios.append(parse_ratio(row["ratio_tu"]))
        if row["ratio_conc"] is not None:
            conc_ratios.append(parse_ratio(row["ratio_conc"]))
        if row["failures"]:
            status = EXIT_INTERNAL
            out = Path(args.dump_dir) / f"counterexample_seed{row['seed']}.biflow"
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(row["instance"])
            dumped.append(str(out))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
            w.writeheader()
            for row in rows:
                w.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS})

    def stats(vals):
        if not vals:
            return {"count": 0, "min": None, "mean": None}
        return {"count": len(vals), "min": _r(min(vals)), "mean": _r(sum(vals, Fraction(0)) / len(vals))}

    summary = {
        "instances": len(rows),
        "ratio_tu": stats(tu_ratios),
        "ratio_conc": stats(conc_ratios),
        "violations": sum(bool(r["failures"]) for r in rows),
        "dumped": dumped,
    }
    params = {k: getattr(args, k) for k in ("count", "vertices", "edges", "max_cap", "k1", "k2", "seed")}
    return document("bench-summary", None, params, summary), status


def cmd_generate(args) -> bytes:
    inst = generate_instance(args.vertices, args.edges, args.max_cap, args.k1, args.k2, args.seed)
    return serialize_instance(inst)


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ksplit", description="Two-commodity k-splittable flow approximations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-i", "--input", required=True, help="instance file (p biflow format)")
        sp.add_argument("-o", "--output", choices=("json", "text"), default="json")
        sp.add_argument("-d1", dest="d1", help="demand of commodity 1 as a/b")
        sp.add_argument("-d2", dest="d2", help="demand of commodity 2 as a/b")
        sp.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical output)")

    s = sub.add_parser("solve", help="run an approximation pipeline")
    s.add_argument("--mode", required=True, choices=("cut", "tu2k", "tuhalf", "evenk", "concurrent"))
    common(s)

    o = sub.add_parser("oracle", help="exact brute-force values")
    o.add_argument("--mode", required=True, choices=("tu", "bi", "concurrent", "cutbound"))
    common(o)
    o.add_argument("--max-paths", type=int, default=OracleLimits.max_paths)
    o.add_argument("--max-selections", type=int, default=OracleLimits.max_selections)
    o.add_argument("--conc-mode", choices=("free", "bi", "total"), default="free")
    o.add_argument("--cut", help="comma-separated vertex set for cutbound mode")

    b = sub.add_parser("bench", help="randomised solver-vs-oracle campaign")
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--vertices", type=int, required=True)
    b.add_argument("--edges", type=int, required=True)
    b.add_argument("--max-cap", type=int, required=True)
    b.add_argument("--k1", type=int, required=True)
    b.add_argument("--k2", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--csv", default="bench_summary.csv", help="summary CSV path ('' to skip)")
    b.add_argument("--dump-dir", default=".", help="where failing instances are written")
    b.add_argument("--max-paths", type=int, default=OracleLimits.max_paths)
    b.add_argument("--max-selections", type=int, default=OracleLimits.max_selections)
    b.add_argument("--timing", action="store_true")

    g = sub.add_parser("generate", help="write a random instance")
    for name in ("vertices", "edges", "max-cap", "k1", "k2"):
        g.add_argument(f"--{name}", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", help="output file (default stdout)")
    return p


def main(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "generate":
            data = cmd_generate(args)
            if args.out:
                Path(args.out).write_bytes(data)
            else:
                stdout.write(data.decode())
            return EXIT_OK
        if args.command == "bench":
            def emit(doc):
                if args.timing:
                    doc["timing"] = {"seconds": time.perf_counter() - t0}
                stdout.write(dumps(doc) + "\n")

            summary, status = cmd_bench(args, emit)
            emit(summary)
            return status
        doc = cmd_solve(args) if args.command == "solve" else cmd_oracle(args)
        if args.timing:
            doc["timing"] = {"seconds": time.perf_counter() - t0}
        stdout.write((dumps(doc) if args.output == "json" else render_text(doc)) + "\n")
        return EXIT_OK
    except (InstanceFormatError, InputError) as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except OracleLimitError as exc:
        print(f"oracle limits exceeded: {exc}", file=stderr)
        return EXIT_ORACLE_LIMIT
    except ContractViolation as exc:
        print(f"internal invariant violated: {exc}", file=stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
