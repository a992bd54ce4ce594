"""Command-line surface: explain, enumerate, verify, export-asp, bench.

Exit codes: 0 success, 1 error, 2 timeout. JSON reports are deterministic
for identical inputs and seed, except for the measured ``elapsed_ms`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import asp, oracle
from .explain_bt import bt_tree_specific_one
from .explain_dt import dt_contrastive, dt_sufficient
from .explain_rf import rf_contrastive, rf_majority, rf_sufficient_one
from .explanations import (BT_TREE_SPECIFIC, DT_CONTRASTIVE, DT_SUFFICIENT,
                           ENUMERABLE_KINDS, RF_CONTRASTIVE, RF_MAJORITY,
                           RF_SUFFICIENT, ContrastiveImpossible, ExplanationImpossible,
                           Query, make_explanation, prepare)
from .models import ModelError, load_model, make_instance
from .timeouts import Deadline, TimeoutExceeded

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 2

_CLI_KINDS = ("sufficient", "contrastive", "majority", "tree-specific")

_KIND_TABLE = {
    ("dt", "sufficient"): DT_SUFFICIENT,
    ("dt", "contrastive"): DT_CONTRASTIVE,
    ("rf", "sufficient"): RF_SUFFICIENT,
    ("rf", "contrastive"): RF_CONTRASTIVE,
    ("rf", "majority"): RF_MAJORITY,
    ("bt", "tree-specific"): BT_TREE_SPECIFIC,
}


class CliError(Exception):
    pass


@dataclass
class Config:
    timeout_ms: int = 100_000
    oracle_bound: int = oracle.DEFAULT_BOUND
    fmt: str = "text"
    enumerate_all: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.timeout_ms <= 0:
            raise CliError("timeout-ms must be positive")


@dataclass
class RunReport:
    kind: str
    model_hash: str
    instance_hash: str
    predicted_class: int
    seed: int
    enumerate_all: bool
    explanations: list = field(default_factory=list)
    elapsed_ms: int = 0
    timed_out: bool = False
    partial: bool = False

    def to_object(self) -> dict:
        return {
            "kind": self.kind,
            "model_hash": self.model_hash,
            "instance_hash": self.instance_hash,
            "predicted_class": self.predicted_class,
            "seed": self.seed,
            "enumerate": self.enumerate_all,
            "explanations": [
                {"kind": e.kind, "literals": list(e.literals), "tests": list(e.tests)}
                for e in self.explanations
            ],
            "elapsed_ms": self.elapsed_ms,
            "timed_out": self.timed_out,
            "partial": self.partial,
        }


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_instance(path: str):
    text = _read_text(path).strip()
    try:
        values = json.loads(text)
        if isinstance(values, (int, float)) and not isinstance(values, bool):
            values = [values]
        if not isinstance(values, list):
            raise CliError(f"{path}: instance JSON must be an array")
    except json.JSONDecodeError:
        # single-row CSV fallback
        row = text.splitlines()[0] if text else ""
        try:
            values = [float(cell) for cell in row.split(",") if cell.strip() != ""]
        except ValueError as exc:
            raise CliError(f"{path}: not a JSON array or numeric CSV row") from exc
    try:
        return make_instance(values)
    except ModelError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _load_query(model_path: str, instance_path: str) -> Query:
    try:
        model = load_model(_read_text(model_path))
    except ModelError as exc:
        raise CliError(f"{model_path}: {exc}") from exc
    instance = _load_instance(instance_path)
    try:
        return prepare(model, instance)
    except ModelError as exc:
        raise CliError(str(exc)) from exc


def resolve_kind(model_kind: str, cli_kind: str) -> str:
    kind = _KIND_TABLE.get((model_kind, cli_kind))
    if kind is None:
        raise CliError(f"explanation kind '{cli_kind}' is not applicable to a "
                       f"'{model_kind}' model")
    return kind


def run_explainer(query: Query, kind: str, enumerate_all: bool, deadline) -> list:
    if enumerate_all and kind not in ENUMERABLE_KINDS:
        raise CliError(f"enumeration is not supported for {kind}; run without --enumerate")
    if kind == DT_SUFFICIENT:
        out = dt_sufficient(query, enumerate_all=enumerate_all, deadline=deadline)
    elif kind == DT_CONTRASTIVE:
        out = dt_contrastive(query, enumerate_all=enumerate_all, deadline=deadline)
    elif kind == RF_SUFFICIENT:
        out = rf_sufficient_one(query, deadline=deadline)
    elif kind == RF_CONTRASTIVE:
        out = rf_contrastive(query, enumerate_all=enumerate_all, deadline=deadline)
    elif kind == RF_MAJORITY:
        out = rf_majority(query, enumerate_all=enumerate_all, deadline=deadline)
    elif kind == BT_TREE_SPECIFIC:
        out = bt_tree_specific_one(query, deadline=deadline)
    else:
        raise CliError(f"unknown kind {kind!r}")
    return out if isinstance(out, list) else [out]


def _render_report_text(report: RunReport) -> str:
    lines = [f"kind: {report.kind}",
             f"predicted class: {report.predicted_class}",
             f"model: {report.model_hash[:12]}  instance: {report.instance_hash[:12]}"]
    if report.timed_out:
        suffix = " (partial)" if report.partial else ""
        lines.append(f"TIMED OUT after {report.elapsed_ms} ms{suffix}")
    for i, e in enumerate(report.explanations, 1):
        rendered = " AND ".join(e.tests) if e.tests else "(empty term)"
        lines.append(f"[{i}] literals {list(e.literals)}: {rendered}")
    if not report.explanations and not report.timed_out:
        lines.append("no explanations")
    lines.append(f"elapsed: {report.elapsed_ms} ms")
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _explain_report(query: Query, kind: str, config: Config) -> tuple[RunReport, int]:
    deadline = Deadline(config.timeout_ms)
    report = RunReport(kind=kind, model_hash=query.model_hash,
                       instance_hash=query.instance_hash,
                       predicted_class=query.prediction.label,
                       seed=config.seed, enumerate_all=config.enumerate_all)
    started = time.monotonic()
    code = EXIT_OK
    try:
        report.explanations = run_explainer(query, kind, config.enumerate_all, deadline)
    except TimeoutExceeded as exc:
        report.timed_out = True
        report.partial = True
        report.explanations = exc.partial
        code = EXIT_TIMEOUT
    report.elapsed_ms = int((time.monotonic() - started) * 1000)
    return report, code


def cmd_explain(args) -> int:
    config = Config(timeout_ms=args.timeout_ms, fmt=args.format,
                    enumerate_all=args.enumerate, seed=args.seed)
    query = _load_query(args.model, args.instance)
    kind = resolve_kind(query.model.kind, args.kind)
    try:
        report, code = _explain_report(query, kind, config)
    except ExplanationImpossible as exc:
        raise CliError(f"no explanation exists: {exc}") from exc
    if config.fmt == "json":
        _emit(json.dumps(report.to_object(), sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(_render_report_text(report), args.out)
    return code


def _load_explanations_file(path: str, query: Query) -> list:
    obj = json.loads(_read_text(path))
    if isinstance(obj, dict) and "explanations" in obj:
        raw = obj["explanations"]
    elif isinstance(obj, dict):
        raw = [obj]
    elif isinstance(obj, list):
        raw = obj
    else:
        raise CliError(f"{path}: cannot interpret as explanation(s)")
    out = []
    for item in raw:
        kind = item.get("kind")
        lits = item.get("literals")
        if kind is None or not isinstance(lits, list):
            raise CliError(f"{path}: each explanation needs 'kind' and 'literals'")
        known = set(query.table.literal_ids)
        if not set(lits) <= known:
            raise CliError(f"{path}: literals {sorted(set(lits) - known)} not in the model")
        out.append(make_explanation(query, kind, lits))
    return out


def cmd_verify(args) -> int:
    query = _load_query(args.model, args.instance)
    explanations = _load_explanations_file(args.explanation, query)
    results = []
    for e in explanations:
        try:
            verdict = oracle.oracle_check(query, e, bound=args.oracle_bound)
        except (oracle.OracleBoundError, ValueError) as exc:
            raise CliError(str(exc)) from exc
        results.append((e, verdict))
    if args.format == "json":
        payload = [{"kind": e.kind, "literals": list(e.literals), "valid": v.valid,
                    "minimal_or_maximal": v.minimal_or_maximal, "witness": v.witness}
                   for e, v in results]
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = []
        for e, v in results:
            status = "valid, minimal" if v.ok else ("valid, NOT minimal" if v.valid else "INVALID")
            lines.append(f"{e.kind} {list(e.literals)}: {status}"
                         + (f"  witness: {v.witness}" if v.witness else ""))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all(v.ok for _, v in results) else EXIT_ERROR


def cmd_export_asp(args) -> int:
    query = _load_query(args.model, args.instance)
    kind = resolve_kind(query.model.kind, args.kind)
    document = asp.export_document(query, kind)
    _emit(document.render(), args.out)
    return EXIT_OK


def _run_bench_row(row: dict, timeout_ms: int) -> dict:
    record = {"model": row["model"], "instance": row["instance"],
              "kind": row["kind"], "mode": row.get("mode", "one")}
    try:
        query = _load_query(row["model"], row["instance"])
        kind = resolve_kind(query.model.kind, row["kind"])
        config = Config(timeout_ms=timeout_ms, enumerate_all=record["mode"] == "all")
        report, _ = _explain_report(query, kind, config)
        record.update(status="timeout" if report.timed_out else "ok",
                      count=len(report.explanations),
                      lengths=[len(e.literals) for e in report.explanations],
                      elapsed_ms=report.elapsed_ms)
    except (CliError, ExplanationImpossible) as exc:
        record.update(status="error", error=str(exc), count=0, lengths=[], elapsed_ms=0)
    return record


def _bench_summary(records: list) -> list:
    groups = {}
    for r in records:
        groups.setdefault((r["kind"], r["mode"]), []).append(r)
    summary = []
    for (kind, mode), rows in sorted(groups.items()):
        done = [r for r in rows if r["status"] == "ok"]
        lengths = [n for r in done for n in r["lengths"]]
        counts = [r["count"] for r in done]
        summary.append({
            "kind": kind, "mode": mode, "rows": len(rows),
            "completed_pct": round(100.0 * len(done) / len(rows), 1) if rows else 0.0,
            "avg_count": round(sum(counts) / len(counts), 2) if counts else None,
            "avg_length": round(sum(lengths) / len(lengths), 2) if lengths else None,
        })
    return summary


def cmd_bench(args) -> int:
    manifest_path = Path(args.manifest)
    try:
        manifest = json.loads(_read_text(args.manifest))
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.manifest}: manifest is not valid JSON: {exc}") from exc
    rows = manifest["rows"] if isinstance(manifest, dict) else manifest
    if not isinstance(rows, list):
        raise CliError(f"{args.manifest}: manifest must be a list of rows or "
                       "an object with a 'rows' list")
    for row in rows:
        for key in ("model", "instance", "kind"):
            if key not in row:
                raise CliError(f"{args.manifest}: row missing '{key}': {row}")
        for key in ("model", "instance"):
            row[key] = str((manifest_path.parent / row[key]))

    if args.jobs > 1 and rows:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_run_bench_row, rows,
                                    [args.timeout_ms] * len(rows)))
    else:
        records = [_run_bench_row(row, args.timeout_ms) for row in rows]
    summary = _bench_summary(records)

    if args.format == "json":
        payload = {"rows": records, "summary": summary}
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [f"{'kind':<14} {'mode':<5} {'rows':>4} {'done%':>6} {'#N':>8} {'#L':>6}"]
        for s in summary:
            avg_n = "-" if s["avg_count"] is None else f"{s['avg_count']:.2f}"
            avg_l = "-" if s["avg_length"] is None else f"{s['avg_length']:.2f}"
            lines.append(f"{s['kind']:<14} {s['mode']:<5} {s['rows']:>4} "
                         f"{s['completed_pct']:>6.1f} {avg_n:>8} {avg_l:>6}")
        for r in records:
            if r["status"] != "ok":
                lines.append(f"  {r['status']}: {r['kind']}/{r['mode']} on {r['model']}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treelogic",
        description="Formally guaranteed explanations for tree models")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_kind=True):
        p.add_argument("--model", required=True, help="model-IR JSON file")
        p.add_argument("--instance", required=True,
                       help="instance file (JSON array or single-row CSV)")
        if with_kind:
            p.add_argument("--kind", required=True, choices=_CLI_KINDS)
        p.add_argument("--timeout-ms", type=int, default=100_000)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)

    p_explain = sub.add_parser("explain", help="compute one explanation (or all with --enumerate)")
    add_common(p_explain)
    p_explain.add_argument("--enumerate", action="store_true")
    p_explain.set_defaults(func=cmd_explain)

    p_enum = sub.add_parser("enumerate", help="alias for explain --enumerate")
    add_common(p_enum)
    p_enum.set_defaults(func=cmd_explain, enumerate=True)

    p_verify = sub.add_parser("verify", help="brute-force check an explanation file")
    add_common(p_verify, with_kind=False)
    p_verify.add_argument("--explanation", required=True, help="explanation JSON file")
    p_verify.add_argument("--oracle-bound", type=int, default=oracle.DEFAULT_BOUND)
    p_verify.set_defaults(func=cmd_verify)

    p_export = sub.add_parser("export-asp", help="emit ground facts and encoding as ASP text")
    add_common(p_export)
    p_export.set_defaults(func=cmd_export_asp)

    p_bench = sub.add_parser("bench", help="run a manifest of explanation tasks")
    p_bench.add_argument("--manifest", required=True)
    p_bench.add_argument("--timeout-ms", type=int, default=100_000)
    p_bench.add_argument("--format", choices=("text", "json"), default="text")
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
