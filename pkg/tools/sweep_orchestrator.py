"""
Sweep Orchestrator for torsion-order experiments.

For each field degree ell and each selected generator tau of F_{q^ell}, the
orchestrator sweeps lam over F_{q^j} (j defaults to ell), computes the
torsion orders of a(tau) and b(tau) under phi_T = tau + lam*F + F^r, and
counts the lam for which both orders have degree <= M. One work item per
tau is distributed over a process pool; results are merged in canonical
order, so output does not depend on the number of workers.
"""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from tools.base_field import get_base_field
from tools.drinfeld import (
    DrinfeldParams,
    GenericFamily,
    g_tilde,
    require_independent,
    torsion_order,
)
from tools.errors import DegenerateInputError
from tools.ffield import embed, get_field_ctx, is_generator
from tools.polyring import BiPoly, RatFunc, UPoly

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_SKIPPED = "skipped"
STATUS_DEGENERATE = "degenerate"


class TauSelectionMode(str, Enum):
    """How generators tau are chosen for each field degree."""
    ALL = "all"
    SAMPLE = "sample"


@dataclass(frozen=True)
class TauSelection:
    mode: TauSelectionMode = TauSelectionMode.ALL
    size: int = 0

    @classmethod
    def parse(cls, text: str) -> "TauSelection":
        """'all' or 'sample:k'."""
        if text == TauSelectionMode.ALL.value:
            return cls()
        mode, _, size = text.partition(":")
        if mode != TauSelectionMode.SAMPLE.value or not size.isdigit():
            raise ValueError(f"tau selection must be 'all' or 'sample:k', got {text!r}")
        return cls(TauSelectionMode.SAMPLE, int(size))


@dataclass(frozen=True)
class TauTask:
    """One unit of work: every lam for a single tau. Only plain values, so it pickles cheaply."""

    p: int
    e: int
    r: int
    ell: int
    lambda_deg: int
    tau_index: int
    a: Tuple[Tuple[int, ...], Tuple[int, ...]]
    b: Tuple[Tuple[int, ...], Tuple[int, ...]]
    m_values: Tuple[int, ...]
    timing: bool = False
    cross_check: bool = False
    cap: int = 10_000


@dataclass(frozen=True)
class LambdaResult:
    lam: Tuple[int, ...]
    deg_ord_a: int
    deg_ord_b: int
    both_le_m: Tuple[bool, ...]
    timing_ms: Optional[float] = None
    cross_check_ok: Optional[bool] = None


@dataclass(frozen=True)
class TauResult:
    ell: int
    tau_index: int
    tau: Tuple[int, ...]
    status: str
    records: Tuple[LambdaResult, ...] = ()

    def exceptional_count(self, k: int) -> int:
        """Number of lam with both orders of degree <= m_values[k]."""
        return sum(1 for rec in self.records if rec.both_le_m[k])


def _ratfunc(p: int, e: int, parts: Tuple[Tuple[int, ...], Tuple[int, ...]]) -> RatFunc:
    field = get_base_field(p, e)
    return RatFunc(UPoly(field, parts[0]), UPoly(field, parts[1]))


@lru_cache(maxsize=32)
def _generic_tilde(family: GenericFamily, m: int, cap: int) -> BiPoly:
    return g_tilde(family, m, cap)


def evaluate_tau(task: TauTask) -> TauResult:
    """Worker: torsion-order degrees of a(tau), b(tau) for every lam."""
    a = _ratfunc(task.p, task.e, task.a)
    b = _ratfunc(task.p, task.e, task.b)
    tau_ctx = get_field_ctx(task.p, task.e, task.ell)
    tau0 = tau_ctx.element(task.tau_index)
    common = get_field_ctx(task.p, task.e, math.lcm(task.ell, task.lambda_deg))
    tau = embed(tau0, common)

    a_val, b_val = a.evaluate(tau), b.evaluate(tau)
    if a_val is None or b_val is None:
        logger.debug("Skipping tau=%s: a denominator vanishes", tau0)
        return TauResult(task.ell, task.tau_index, tau0.coords, STATUS_SKIPPED)
    if a_val.is_zero or b_val.is_zero:
        # the zero point is torsion for every lam
        logger.info("tau=%s is degenerate: a(tau) or b(tau) vanishes", tau0)
        return TauResult(task.ell, task.tau_index, tau0.coords, STATUS_DEGENERATE)

    tilde_pairs = []
    if task.cross_check:
        for m in task.m_values:
            pair = [
                _generic_tilde(GenericFamily(task.r, point), m, task.cap).specialize(tau)
                for point in (a, b)
            ]
            tilde_pairs.append(pair)

    records = []
    lam_ctx = get_field_ctx(task.p, task.e, task.lambda_deg)
    for lam0 in lam_ctx.elements():
        start = time.perf_counter()
        params = DrinfeldParams(task.r, tau, embed(lam0, common))
        deg_a = torsion_order(params, a_val).degree
        deg_b = torsion_order(params, b_val).degree
        both = tuple(max(deg_a, deg_b) <= m for m in task.m_values)
        elapsed = (time.perf_counter() - start) * 1000.0 if task.timing else None

        cross = None
        if task.cross_check:
            cross = all(
                (ga.evaluate(params.lam).is_zero and gb.evaluate(params.lam).is_zero) == flag
                for (ga, gb), flag in zip(tilde_pairs, both)
            )
            if not cross:
                logger.error("Cross-check mismatch at ell=%d tau=%s lam=%s", task.ell, tau0, lam0)
        records.append(LambdaResult(lam0.coords, deg_a, deg_b, both, elapsed, cross))
    return TauResult(task.ell, task.tau_index, tau0.coords, STATUS_OK, tuple(records))


class SweepOrchestrator:
    """Builds per-tau work items, runs them on a worker pool and summarizes.

    Attributes:
        a, b: The two F_q-independent generic points
        ells: Field degrees of tau
        m_values: Thresholds M for the exceptional count
        lambda_deg: Degree j of the lam field (None: j = ell)
        threads: Worker processes (1 runs inline)
    """

    def __init__(
        self,
        r: int,
        a: RatFunc,
        b: RatFunc,
        ells: Sequence[int],
        m_values: Sequence[int],
        lambda_deg: Optional[int] = None,
        selection: TauSelection = TauSelection(),
        seed: int = 0,
        threads: int = 1,
        timing: bool = False,
        cross_check: bool = False,
        cap: int = 10_000,
    ):
        if a.field != b.field:
            raise DegenerateInputError("a and b must have coefficients in one field")
        require_independent(a, b)
        self.field = a.field
        self.r = r
        self.a = a
        self.b = b
        self.ells = sorted(set(ells))
        self.m_values = tuple(sorted(set(m_values)))
        self.lambda_deg = lambda_deg
        self.selection = selection
        self.seed = seed
        self.threads = max(threads, 1)
        self.timing = timing
        self.cross_check = cross_check
        self.cap = cap
        self.stats = {"tasks": 0, "skipped": 0, "degenerate": 0, "records": 0, "cross_check_failures": 0}

    def lambda_degree(self, ell: int) -> int:
        return self.lambda_deg or ell

    def select_taus(self, ell: int) -> List[int]:
        """Indices of the selected generators of F_{q^ell}, ascending."""
        ctx = get_field_ctx(self.field.p, self.field.e, ell)
        indices = [a.index for a in ctx.elements() if is_generator(a)]
        if self.selection.mode == TauSelectionMode.SAMPLE and self.selection.size < len(indices):
            rng = np.random.default_rng([self.seed, ell])
            picked = rng.choice(len(indices), size=self.selection.size, replace=False)
            indices = sorted(indices[i] for i in picked.tolist())
        return indices

    def build_tasks(self) -> List[TauTask]:
        a = (self.a.num.coeffs, self.a.den.coeffs)
        b = (self.b.num.coeffs, self.b.den.coeffs)
        tasks = []
        for ell in self.ells:
            for index in self.select_taus(ell):
                tasks.append(TauTask(
                    p=self.field.p,
                    e=self.field.e,
                    r=self.r,
                    ell=ell,
                    lambda_deg=self.lambda_degree(ell),
                    tau_index=index,
                    a=a,
                    b=b,
                    m_values=self.m_values,
                    timing=self.timing,
                    cross_check=self.cross_check,
                    cap=self.cap,
                ))
        return tasks

    def run(self) -> List[TauResult]:
        tasks = self.build_tasks()
        logger.info("Sweeping %d tau values with %d worker(s)", len(tasks), self.threads)
        if self.threads == 1 or len(tasks) <= 1:
            results = [evaluate_tau(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(evaluate_tau, tasks, chunksize=max(len(tasks) // (4 * self.threads), 1)))
        results.sort(key=lambda res: (res.ell, res.tau_index))
        self._update_stats(results)
        return results

    def _update_stats(self, results: Sequence[TauResult]):
        self.stats["tasks"] += len(results)
        for res in results:
            if res.status == STATUS_SKIPPED:
                self.stats["skipped"] += 1
            elif res.status == STATUS_DEGENERATE:
                self.stats["degenerate"] += 1
            self.stats["records"] += len(res.records)
            self.stats["cross_check_failures"] += sum(
                1 for rec in res.records if rec.cross_check_ok is False
            )

    def summarize(self, results: Sequence[TauResult]) -> List[Dict[str, Any]]:
        """Per (ell, M): max and min exceptional count over tau, and the per-tau counts.

        Skipped and degenerate tau are counted but do not enter max and min.
        """
        rows = [
            {"ell": res.ell, "tau": res.tau, "M": m, "exceptional": res.exceptional_count(k)}
            for res in results if res.status == STATUS_OK
            for k, m in enumerate(self.m_values)
        ]
        frame = pd.DataFrame(rows, columns=["ell", "tau", "M", "exceptional"])
        grouped = {key: sub for key, sub in frame.groupby(["ell", "M"])} if len(frame) else {}

        summary = []
        for ell in self.ells:
            taus = [res for res in results if res.ell == ell]
            skipped = sum(1 for res in taus if res.status == STATUS_SKIPPED)
            degenerate = sum(1 for res in taus if res.status == STATUS_DEGENERATE)
            for m in self.m_values:
                sub = grouped.get((ell, m))
                counts = sub["exceptional"] if sub is not None else pd.Series(dtype="int64")
                summary.append({
                    "ell": ell,
                    "M": m,
                    "lambda_field_size": self.field.q ** self.lambda_degree(ell),
                    "taus": len(taus),
                    "skipped": skipped,
                    "degenerate": degenerate,
                    "max_exceptional": int(counts.max()) if len(counts) else None,
                    "min_exceptional": int(counts.min()) if len(counts) else None,
                    "per_tau": (
                        [[list(tau), int(c)] for tau, c in zip(sub["tau"], sub["exceptional"])]
                        if sub is not None else []
                    ),
                })
        return summary

    def get_statistics(self) -> Dict[str, int]:
        return dict(self.stats)
