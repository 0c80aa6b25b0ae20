"""Engine dispatch and the process portfolio."""

from __future__ import annotations

import multiprocessing as mp
import queue

from .config import STRATEGIES, StrategyConfig
from .errors import ContractViolation
from .fol import saturate_fol
from .logic import ClauseSet
from .proof import UNKNOWN, Verdict
from .prop import saturate

MODES = ("auto", "prop", "fol")


def resolve_mode(s: ClauseSet, mode: str = "auto") -> str:
    if mode not in MODES:
        raise ContractViolation(f"unknown mode {mode!r}")
    if mode == "auto":
        return "prop" if s.propositional else "fol"
    if mode == "prop" and not s.propositional:
        raise ContractViolation("the problem has first-order literals; use --mode fol or auto")
    return mode


def prove(s: ClauseSet, cfg: StrategyConfig | None = None, mode: str = "auto", observer=None) -> Verdict:
    if resolve_mode(s, mode) == "prop":
        return saturate(s, cfg, observer)
    return saturate_fol(s, cfg, observer)


def portfolio_configs(cfg: StrategyConfig, n: int) -> list:
    """Worker i runs strategy i (cycling, starting from cfg's) with seed cfg.seed + i."""
    start = STRATEGIES.index(cfg.strategy)
    return [cfg.with_(strategy=STRATEGIES[(start + i) % len(STRATEGIES)], seed=cfg.seed + i) for i in range(n)]


def _worker(i, s, cfg, mode, out):
    try:
        out.put((i, prove(s, cfg, mode), None))
    except Exception as exc:  # reported to the parent, which decides
        out.put((i, None, f"{type(exc).__name__}: {exc}"))


def prove_portfolio(s: ClauseSet, cfg: StrategyConfig, n: int, mode: str = "auto") -> Verdict:
    """Run n configurations in separate processes; the first decided verdict wins.

    Falls back to the lowest-numbered worker's Unknown verdict when no worker
    decides.  Worker errors are re-raised only if every worker failed.
    """
    resolve_mode(s, mode)
    if n <= 1:
        return prove(s, cfg, mode)
    configs = portfolio_configs(cfg, n)
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    out = ctx.Queue()
    procs = [ctx.Process(target=_worker, args=(i, s, c, mode, out), daemon=True) for i, c in enumerate(configs)]
    for p in procs:
        p.start()
    undecided = {}
    errors = {}
    winner = None
    try:
        while len(undecided) + len(errors) < n:
            try:
                i, verdict, err = out.get(timeout=0.5)
            except queue.Empty:
                if not any(p.is_alive() for p in procs) and out.empty():
                    break
                continue
            if err is not None:
                errors[i] = err
            elif verdict.status != UNKNOWN:
                verdict.stats = dict(verdict.stats, portfolio_worker=i, strategy=configs[i].strategy, seed=configs[i].seed)
                winner = verdict
                break
            else:
                undecided[i] = verdict
    finally:
        for p in procs:
            if p.is_alive():
                p.terminate()
        for p in procs:
            p.join()
    if winner is not None:
        return winner
    if undecided:
        return undecided[min(undecided)]
    raise RuntimeError("all portfolio workers failed: " + "; ".join(errors[i] for i in sorted(errors)))
