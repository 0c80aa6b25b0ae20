"""Command line: ``csep prove``, ``csep check`` and ``csep bench``.

Exit status: 0 when a verdict (satisfiable or unsatisfiable) was produced or a
document checked out, 1 for an Unknown verdict or a rejected document, 2 for
usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .config import STRATEGIES, StrategyConfig
from .errors import CsepError, ParseError, SoundnessError
from .fol import InterpretationSketch
from .oracle import check_proof
from .problems import load_problem
from .proof import MODEL_FORMAT, PROOF_FORMAT, SAT, UNKNOWN, UNSAT, dump_model, dump_proof, load_model, proof_from_dict
from .prop import is_consistent, satisfies
from .prover import MODES, prove, prove_portfolio

TIME_LIMIT_ENV = "CSE_DEFAULT_TIME_LIMIT"
PROBLEM_SUFFIXES = (".cnf", ".dimacs", ".p", ".tptp")

EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _engine_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--format", choices=("dimacs", "tptp_cnf"), help="input format (default: detect)")
    p.add_argument("--max-steps", type=int, default=StrategyConfig.max_steps, help="saturation rounds")
    p.add_argument("--max-width", type=int, default=StrategyConfig.max_width, help="clauses per extension")
    p.add_argument("--max-term-depth", type=int, default=StrategyConfig.max_term_depth)
    p.add_argument("--time-limit", type=float, help=f"seconds (default: ${TIME_LIMIT_ENV} or none)")
    p.add_argument("--strategy", choices=STRATEGIES, default="default")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csep", description="Contradiction separation prover.")
    sub = parser.add_subparsers(dest="command", required=True)
    engine = _engine_options()

    p = sub.add_parser("prove", parents=[engine], help="decide a DIMACS or TPTP CNF problem")
    p.add_argument("file")
    p.add_argument("--emit-proof", metavar="PATH", help="write the refutation here")
    p.add_argument("--emit-model", metavar="PATH", help="write the model here")
    p.add_argument("--portfolio", type=_positive_int, default=1, metavar="N", help="race N configurations")
    p.add_argument("--stats", action="store_true", help="print search statistics to stderr")

    c = sub.add_parser("check", help="replay a proof (or verify a model) against a problem")
    c.add_argument("document")
    c.add_argument("problem")
    c.add_argument("--format", choices=("dimacs", "tptp_cnf"))

    b = sub.add_parser("bench", parents=[engine], help="run every problem in a directory")
    b.add_argument("directory")
    b.add_argument("--check", action="store_true", help="replay proofs and verify models")
    b.add_argument("--json", metavar="PATH", help="also write the table as JSON")
    return parser


def config_from_args(args) -> StrategyConfig:
    limit = args.time_limit
    if limit is None and os.environ.get(TIME_LIMIT_ENV):
        try:
            limit = float(os.environ[TIME_LIMIT_ENV])
        except ValueError:
            raise UsageError(f"{TIME_LIMIT_ENV} must be a number of seconds") from None
    try:
        return StrategyConfig(
            max_steps=args.max_steps,
            max_width=args.max_width,
            max_term_depth=args.max_term_depth,
            time_limit=limit,
            strategy=args.strategy,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write(path, text):
    Path(path).write_text(text)


def cmd_prove(args) -> int:
    cfg = config_from_args(args)
    problem = load_problem(args.file, args.format)
    for w in problem.warnings:
        print(f"warning: {w}", file=sys.stderr)
    try:
        if args.portfolio > 1:
            verdict = prove_portfolio(problem.clauses, cfg, args.portfolio, args.mode)
        else:
            verdict = prove(problem.clauses, cfg, args.mode)
    except SoundnessError as exc:
        print(f"internal check failed, no verdict emitted: {exc}", file=sys.stderr)
        print("SZS status Unknown")
        return EXIT_UNKNOWN
    print(f"SZS status {verdict.szs}")
    if args.emit_proof:
        if verdict.status == UNSAT:
            _write(args.emit_proof, dump_proof(verdict.proof, verdict.mode, verdict.status))
            print(f"proof: {args.emit_proof}")
        else:
            print("no proof to write", file=sys.stderr)
    if args.emit_model:
        if verdict.status == SAT:
            _write(args.emit_model, dump_model(verdict))
            print(f"model: {args.emit_model}")
        else:
            print("no model to write", file=sys.stderr)
    if verdict.reason and verdict.status == UNKNOWN:
        print(f"reason: {verdict.reason}", file=sys.stderr)
    if args.stats:
        print(json.dumps(verdict.stats, sort_keys=True), file=sys.stderr)
    return EXIT_UNKNOWN if verdict.status == UNKNOWN else EXIT_OK


def verify_model_doc(doc: dict, clauses) -> str | None:
    """None when the model document satisfies every clause, else the reason."""
    if "model" in doc:
        model = set(doc["model"])
        if not is_consistent(model):
            return "model assigns an atom both ways"
        return None if satisfies(model, clauses) else "some clause is false under the model"
    if "interpretation" in doc:
        sketch = InterpretationSketch.from_dict(doc["interpretation"])
        for c in clauses:
            if not sketch.clause_valid(c):
                return f"clause {c} is false in the interpretation"
        return None
    return "document has neither a model nor an interpretation"


def cmd_check(args) -> int:
    text = Path(args.document).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    problem = load_problem(args.problem, args.format)
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == PROOF_FORMAT:
        proof, _ = proof_from_dict(doc)
        report = check_proof(proof, problem.clauses)
        if report.ok:
            print(f"proof valid: {len(proof.steps)} steps, ends in the empty clause")
            return EXIT_OK
        print(f"proof rejected: {report.message}")
        return EXIT_UNKNOWN
    if fmt == MODEL_FORMAT:
        problem_clauses = list(problem.clauses)
        why = verify_model_doc(load_model(text), problem_clauses)
        if why is None:
            print(f"model valid: satisfies all {len(problem_clauses)} clauses")
            return EXIT_OK
        print(f"model rejected: {why}")
        return EXIT_UNKNOWN
    raise ParseError(f"unknown document format {fmt!r}")


def bench_rows(directory, cfg: StrategyConfig, mode="auto", fmt=None, check=False):
    root = Path(directory)
    if not root.is_dir():
        raise UsageError(f"{directory} is not a directory")
    for path in sorted(p for p in root.iterdir() if p.suffix.lower() in PROBLEM_SUFFIXES):
        row = {"problem": path.name}
        try:
            problem = load_problem(path, fmt)
        except ParseError as exc:
            row.update(verdict="InputError", seconds=0.0, detail=str(exc))
            yield row
            continue
        t0 = time.perf_counter()
        try:
            verdict = prove(problem.clauses, cfg, mode)
        except CsepError as exc:
            row.update(verdict="Error", seconds=round(time.perf_counter() - t0, 4), detail=str(exc))
            yield row
            continue
        row.update(
            verdict=verdict.szs,
            mode=verdict.mode,
            seconds=round(time.perf_counter() - t0, 4),
            clauses=len(problem.clauses),
            steps=len(verdict.proof.steps) if verdict.proof else 0,
        )
        if check:
            if verdict.status == UNSAT:
                row["checked"] = bool(check_proof(verdict.proof, problem.clauses))
            elif verdict.status == SAT:
                row["checked"] = verify_model_doc(load_model(dump_model(verdict)), list(problem.clauses)) is None
        yield row


def cmd_bench(args) -> int:
    cfg = config_from_args(args)
    rows = []
    header = f"{'problem':<32} {'verdict':<14} {'mode':<5} {'seconds':>9} {'steps':>6}"
    if args.check:
        header += "  checked"
    print(header)
    for row in bench_rows(args.directory, cfg, args.mode, args.format, args.check):
        rows.append(row)
        line = f"{row['problem']:<32} {row['verdict']:<14} {row.get('mode', '-'):<5} {row['seconds']:>9.4f} {row.get('steps', 0):>6}"
        if "checked" in row:
            line += f"  {'yes' if row['checked'] else 'NO'}"
        print(line, flush=True)
    counts = {}
    for row in rows:
        counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
    print("total: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())) if rows else "total: no problems found")
    if args.json:
        _write(args.json, json.dumps(rows, indent=1) + "\n")
    return EXIT_OK


COMMANDS = {"prove": cmd_prove, "check": cmd_check, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"csep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CsepError, OSError) as exc:
        print(f"csep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
