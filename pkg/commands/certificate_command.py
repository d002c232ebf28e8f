"""
Certificate Command module for specialization certificates.

Builds a certificate for a polynomial system in F_q[t][z], either read from
text or generated in-process as the pair (g~_a,M, g~_b,M), and optionally
verifies it exhaustively over F_{q^ell} for ell <= ell_max.
"""
import logging
from typing import List, Optional

from config.settings import load_settings
from deps.dependencies import AlgebraDependencies
from models.models import (
    CertificateFactorsModel,
    CertificateModel,
    CertificateReport,
    VerificationFailure,
    VerificationSummary,
)
from tools.base_field import get_base_field
from tools.drinfeld import g_tilde_pair
from tools.errors import ParseError
from tools.parsing import parse_ratfunc, parse_system
from tools.polyring import BiPoly
from tools.specialize import (
    ScanSummary,
    SpecializationCertificate,
    certificate,
    scan_certificate,
)

logger = logging.getLogger(__name__)


def certificate_model(cert: SpecializationCertificate) -> CertificateModel:
    factors = cert.factors
    return CertificateModel(
        cert=cert.cert.canonical(),
        cert_text=cert.cert.to_text(),
        factors=CertificateFactorsModel(
            delta=factors.delta.canonical(),
            content_h=factors.content_h.canonical(),
            lc_h=factors.lc_h.canonical(),
            disc_sf_h=factors.disc_h.canonical(),
        ),
        paper_cert=cert.paper_cert.canonical(),
        h=cert.h.canonical(),
        generic_count=cert.generic_count,
        D=cert.D,
        H=cert.H,
        deg_cert=cert.cert.degree,
        deg_delta=factors.delta.degree,
        paper_bound=cert.paper_bound,
        guarded_bound=cert.guarded_bound,
        path=cert.path,
        seed=cert.seed,
        seed_trail=list(cert.seed_trail),
        sample_degree=cert.sample_degree,
        paper_strict=cert.paper_strict,
        identity_checked=cert.identity_checked,
    )


def verification_model(scan: ScanSummary, ell_max: int) -> VerificationSummary:
    return VerificationSummary(
        ell_max=ell_max,
        passed=scan.passed,
        excluded=scan.excluded,
        failed=scan.failed,
        paper_counterexamples=scan.paper_counterexamples,
        per_ell=scan.per_ell,
        failures=[
            VerificationFailure(
                ell=outcome.tau.ctx.degree,
                tau=outcome.tau.canonical(),
                n_tau=outcome.n_tau,
                generic_count=outcome.generic_count,
            )
            for outcome in scan.failures
        ],
    )


def build_system(
    p: int,
    e: int,
    system: Optional[str] = None,
    a: Optional[str] = None,
    b: Optional[str] = None,
    r: int = 2,
    m: int = 1,
    cap: int = 10_000,
) -> List[BiPoly]:
    """The input system: parsed from text, or (g~_a,M, g~_b,M) when a and b are given."""
    field = get_base_field(p, e)
    if system is not None:
        polys = parse_system(system, field)
        if not polys:
            raise ParseError("empty polynomial system")
        return polys
    if a is None or b is None:
        raise ParseError("either a system or both points a and b are required")
    return g_tilde_pair(parse_ratfunc(a, field), parse_ratfunc(b, field), r, m, cap)


def run_certificate(
    deps: AlgebraDependencies,
    system: List[BiPoly],
    verify: Optional[int] = None,
    paper_strict: bool = False,
    check_identity: bool = False,
) -> CertificateReport:
    """Builds (and optionally verifies) a certificate for a system.

    Args:
        deps: Dependency container; supplies the seed and retry limit.
        system: Polynomials in F_q[t][z].
        verify: If set, scan every tau in F_{q^ell}, ell <= verify.
        paper_strict: Use delta * content(h) as the certificate.
        check_identity: Verify the ideal-membership identity symbolically.

    Returns:
        CertificateReport: Certificate and verification summary.
    """
    cert = certificate(
        system,
        seed=deps.seed,
        retry_limit=deps.settings.retry_limit,
        paper_strict=paper_strict,
        check_identity=check_identity,
    )
    verification = None
    if verify is not None:
        verification = verification_model(scan_certificate(system, cert, verify), verify)
    logger.info("Certificate path %s, deg %d (%s)", cert.path, cert.cert.degree, deps.run_context)
    return CertificateReport(
        system=[f.canonical() for f in system],
        certificate=certificate_model(cert),
        verification=verification,
    )


if __name__ == "__main__":
    settings = load_settings()
    deps = AlgebraDependencies(settings=settings, run_context={"command": "certificate"})
    report = run_certificate(deps, build_system(2, 1, "x; x+t"), verify=settings.ell_max)
    print(report.model_dump_json(indent=2))
