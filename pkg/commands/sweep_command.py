"""
Sweep Command module for the torsion-order experiment.

For every generator tau of F_{q^ell} and every lam in F_{q^j}, records the
order degrees of a(tau) and b(tau) and whether both are <= M, then
summarizes how many lam are exceptional per (ell, M).
"""
import logging
import math
from typing import List, Tuple

from config.settings import load_settings
from deps.dependencies import AlgebraDependencies
from models.models import SweepConfig, SweepRecord, SweepSummary, SweepSummaryRow
from tools.base_field import get_base_field
from tools.parsing import parse_ratfunc
from tools.sweep_orchestrator import STATUS_OK, SweepOrchestrator, TauSelection

logger = logging.getLogger(__name__)


def build_orchestrator(deps: AlgebraDependencies, config: SweepConfig) -> SweepOrchestrator:
    field = get_base_field(config.p, config.e)
    return SweepOrchestrator(
        r=config.r,
        a=parse_ratfunc(config.a, field),
        b=parse_ratfunc(config.b, field),
        ells=config.ells,
        m_values=config.m_values,
        lambda_deg=config.lambda_deg,
        selection=TauSelection.parse(config.tau_selection),
        seed=config.seed,
        threads=min(config.threads, deps.worker_count),
        timing=config.timing,
        cross_check=config.cross_check,
        cap=config.cap,
    )


def run_sweep(deps: AlgebraDependencies, config: SweepConfig) -> Tuple[List[SweepRecord], SweepSummary]:
    """Runs the sweep described by config.

    Returns:
        Tuple[List[SweepRecord], SweepSummary]: Records in canonical order
        (ell, tau, lam) and the per-(ell, M) summary.

    Raises:
        LinearDependenceError: If a and b are F_q-linearly dependent.
        ParseError: If a or b cannot be parsed.
    """
    orchestrator = build_orchestrator(deps, config)
    results = orchestrator.run()

    records = []
    for res in results:
        field_degree = math.lcm(res.ell, orchestrator.lambda_degree(res.ell))
        if res.status != STATUS_OK:
            records.append(SweepRecord(
                ell=res.ell, tau=list(res.tau), status=res.status, field_degree=field_degree,
            ))
            continue
        for rec in res.records:
            records.append(SweepRecord(
                ell=res.ell,
                tau=list(res.tau),
                status=res.status,
                field_degree=field_degree,
                lam=list(rec.lam),
                deg_ord_a=rec.deg_ord_a,
                deg_ord_b=rec.deg_ord_b,
                both_le_m=dict(zip(orchestrator.m_values, rec.both_le_m)),
                timing_ms=rec.timing_ms,
                cross_check_ok=rec.cross_check_ok,
            ))

    summary = SweepSummary(
        config=config,
        rows=[SweepSummaryRow(**row) for row in orchestrator.summarize(results)],
        statistics=orchestrator.get_statistics(),
    )
    logger.info("Sweep finished: %s", summary.statistics)
    return records, summary


if __name__ == "__main__":
    deps = AlgebraDependencies(settings=load_settings(), run_context={"command": "sweep"})
    config = SweepConfig(a="1", b="t", ells=[2, 3], m_values=[1, 2])
    records, summary = run_sweep(deps, config)
    print(summary.model_dump_json(indent=2))
