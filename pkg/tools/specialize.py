"""
Specialization certificates for polynomial systems over F_q[t][z].

certificate() turns a system f_1..f_s into a non-zero polynomial cert(t)
such that, whenever cert(tau) != 0, the specialized system at t = tau has
at most as many common roots as the generic system over F_q(t). verify_at()
and scan_certificate() check that promise point by point.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from tools.errors import (
    CombinationExhaustedError,
    DegenerateInputError,
    UnluckyDrawError,
)
from tools.ffield import ExtFieldElem, get_field_ctx
from tools.polyring import (
    BiPoly,
    ExtPoly,
    UPoly,
    bezout_cofactors,
    content_primitive,
    descend_to_subfield,
    distinct_root_count,
    gcd_primitive,
    lift_bipoly,
    random_combine,
    resultant_cofactors,
    resultant_x,
    squarefree_pieces,
    upoly_gcd,
)

logger = logging.getLogger(__name__)

PATH_TRIVIAL = "trivial"
PATH_UNIT = "unit"
PATH_RESULTANT = "resultant"
PATH_BEZOUT = "bezout"


def common_zero_count_generic(fs: Sequence[BiPoly]) -> Tuple[BiPoly, int]:
    """(h, N): the primitive gcd of the system and its distinct root count."""
    nonzero = [f for f in fs if not f.is_zero]
    if not nonzero:
        raise DegenerateInputError("every polynomial of the system is zero")
    h = reduce(gcd_primitive, nonzero[1:], gcd_primitive(nonzero[0], BiPoly.zero(nonzero[0].field)))
    return h, distinct_root_count(h)


def disc_sf(h: BiPoly) -> UPoly:
    """Product of Res_z(w, w') over the separable squarefree pieces w of h."""
    acc = UPoly.one(h.field)
    for w, _ in squarefree_pieces(h):
        acc = acc * resultant_x(w, w.derivative())
    return acc


@dataclass(frozen=True)
class CertificateFactors:
    delta: UPoly
    content_h: UPoly
    lc_h: UPoly
    disc_h: UPoly


@dataclass(frozen=True)
class SpecializationCertificate:
    """A certificate and everything needed to audit it.

    Attributes:
        cert: The certificate polynomial actually used for exclusions
        factors: delta, content(h), lc_z(h) and disc_sf(h)
        system: The non-zero input polynomials
        h: Primitive gcd of the system
        generic_count: N, the distinct common-root count over F_q(t)
        path: How delta was obtained (trivial, unit, resultant, bezout)
        seed_trail: Seeds of the random combinations tried
        sample_degree: k, random coefficients were drawn from F_{q^k}
        paper_strict: Whether cert omits the lc and discriminant guards
        identity_checked: Result of the symbolic identity check, if run
    """

    cert: UPoly
    factors: CertificateFactors
    system: Tuple[BiPoly, ...]
    h: BiPoly
    generic_count: int
    D: int
    H: int
    path: str
    seed: int
    seed_trail: Tuple[int, ...] = ()
    sample_degree: int = 1
    paper_strict: bool = False
    identity_checked: Optional[bool] = None

    @property
    def paper_cert(self) -> UPoly:
        """delta * content(h), without the guard factors."""
        return self.factors.delta * self.factors.content_h

    @property
    def delta_bound(self) -> int:
        return 2 * self.D * self.H

    @property
    def paper_bound(self) -> int:
        return (2 * self.D + 1) * self.H

    @property
    def guarded_bound(self) -> int:
        return (4 * self.D + 2) * self.H


def draw_degree(q: int, degree: int) -> int:
    """Least k with q^k > 2 * degree, the size of the sample set F_{q^k}."""
    k = 1
    while q ** k <= 2 * degree:
        k += 1
    return k


def _resultant_delta(
    gs: Sequence[BiPoly], seed: int, retry_limit: int, sample_degree: int, trail: List[int]
) -> UPoly:
    field = gs[0].field
    g1 = lift_bipoly(gs[0], sample_degree)
    for attempt in Retrying(
        stop=stop_after_attempt(retry_limit + 1),
        retry=retry_if_exception_type(UnluckyDrawError),
    ):
        with attempt:
            draw_seed = seed + attempt.retry_state.attempt_number - 1
            trail.append(draw_seed)
            f0 = random_combine(gs, sample_degree, draw_seed).f0
            res = resultant_x(g1, f0)
            if res.is_zero:
                logger.info("Combination with seed %d lost coprimality, redrawing", draw_seed)
                raise UnluckyDrawError(draw_seed)
    return descend_to_subfield(res, field)


def _check_identity(
    gs: Sequence[BiPoly], delta: UPoly, path: str, seed_trail: Sequence[int], sample_degree: int, bezout
) -> bool:
    field = gs[0].field
    target = BiPoly.from_upoly(delta)
    if path == PATH_TRIVIAL:
        return True
    if path == PATH_UNIT:
        return any(g == target for g in gs)
    if path == PATH_BEZOUT:
        total = reduce(lambda acc, pair: acc + pair[0] * pair[1], zip(bezout.numerators, gs), BiPoly.zero(field))
        return total == target
    g1 = lift_bipoly(gs[0], sample_degree)
    f0 = random_combine(gs, sample_degree, seed_trail[-1]).f0
    u, v, res = resultant_cofactors(g1, f0)
    return u * g1 + v * f0 == BiPoly.from_upoly(res) and descend_to_subfield(res, field) == delta


def certificate(
    fs: Sequence[BiPoly],
    seed: int = 0,
    retry_limit: int = 8,
    fallback: bool = True,
    paper_strict: bool = False,
    check_identity: bool = False,
    sample_degree: Optional[int] = None,
) -> SpecializationCertificate:
    """Specialization certificate for the common roots of fs.

    With h the primitive gcd of the system and g_i = f_i/h, delta is a
    non-zero element of (g_1, ..., g_s) cap F_q[t]: 1 for a single
    polynomial, the constant g_i when one exists, else Res_z(g_1, g_0) for a
    seeded combination g_0 of g_2..g_s with coefficients from F_{q^k},
    traced back to F_q[t]. k defaults to the least value with q^k > 2D. If
    every draw is unlucky, delta is the Bezout denominator when `fallback`
    is set.

    cert = delta * content * lc_z(h) * disc_sf(h), where content is the gcd
    of the contents of the f_i; `paper_strict` drops the last two factors.
    """
    system = tuple(f for f in fs if not f.is_zero)
    if not system:
        raise DegenerateInputError("every polynomial of the system is zero")
    field = system[0].field
    D = max(f.degree for f in system)
    H = max(f.height for f in system)

    h, count = common_zero_count_generic(system)
    gs = [f.exact_div(h) for f in system]
    trail: List[int] = []
    bezout = None
    if len(gs) <= 2:
        sample_degree = 1
    elif sample_degree is None:
        sample_degree = draw_degree(field.q, max(g.degree for g in gs))

    if len(gs) == 1:
        delta, path = UPoly.one(field), PATH_TRIVIAL
    elif any(g.degree == 0 for g in gs):
        delta, path = next(g.lc for g in gs if g.degree == 0), PATH_UNIT
    else:
        try:
            delta = _resultant_delta(gs, seed, retry_limit, sample_degree, trail)
            path = PATH_RESULTANT
        except RetryError:
            if not fallback:
                raise CombinationExhaustedError(trail)
            logger.warning("All %d combinations unlucky, using Bezout cofactors", len(trail))
            bezout = bezout_cofactors(gs, degree_bound=max(g.degree for g in gs) - 1)
            delta, path = bezout.denominator, PATH_BEZOUT

    # content of the full gcd of the system; h itself is primitive
    content_h = upoly_gcd([content_primitive(f)[0] for f in system], field)
    factors = CertificateFactors(delta, content_h, h.lc, disc_sf(h))
    cert = delta * content_h
    if not paper_strict:
        cert = cert * factors.lc_h * factors.disc_h

    identity = _check_identity(gs, delta, path, trail, sample_degree, bezout) if check_identity else None
    if delta.degree > 2 * D * H:
        logger.warning("deg delta = %d exceeds 2DH = %d", delta.degree, 2 * D * H)

    logger.info("Certificate via %s path: deg cert = %d, N = %d", path, cert.degree, count)
    return SpecializationCertificate(
        cert=cert,
        factors=factors,
        system=system,
        h=h,
        generic_count=count,
        D=D,
        H=H,
        path=path,
        seed=seed,
        seed_trail=tuple(trail),
        sample_degree=sample_degree,
        paper_strict=paper_strict,
        identity_checked=identity,
    )


STATUS_PASS = "pass"
STATUS_EXCLUDED = "excluded"
STATUS_FAIL = "fail"


@dataclass(frozen=True)
class Verification:
    """Outcome of checking a certificate at one tau.

    n_tau is None when every polynomial vanishes at tau (infinitely many
    common roots).
    """

    tau: ExtFieldElem
    status: str
    n_tau: Optional[int]
    generic_count: int
    cert_value: ExtFieldElem
    specialized_gcd: Optional[ExtPoly]
    paper_counterexample: bool


def specialized_gcd(fs: Sequence[BiPoly], tau: ExtFieldElem) -> Optional[ExtPoly]:
    """Monic gcd of the specialized system, None when every member vanishes."""
    specialized = [g for g in (f.specialize(tau) for f in fs) if not g.is_zero]
    if not specialized:
        return None
    return reduce(lambda a, b: a.gcd(b), specialized[1:], specialized[0].monic())


def verify_at(fs: Sequence[BiPoly], cert: SpecializationCertificate, tau: ExtFieldElem) -> Verification:
    common = specialized_gcd(fs, tau)
    if common is None:
        n_tau = None
    else:
        n_tau = distinct_root_count(common) if common.degree > 0 else 0
    value = cert.cert.evaluate(tau)
    exceeds = n_tau is None or n_tau > cert.generic_count
    if value.is_zero:
        status = STATUS_EXCLUDED
    else:
        status = STATUS_FAIL if exceeds else STATUS_PASS
    paper_counterexample = exceeds and not cert.paper_cert.evaluate(tau).is_zero
    if status == STATUS_FAIL:
        logger.error("Certificate fails at tau = %s: %s > %d", tau, n_tau, cert.generic_count)
    return Verification(tau, status, n_tau, cert.generic_count, value, common, paper_counterexample)


@dataclass
class ScanSummary:
    passed: int = 0
    excluded: int = 0
    failed: int = 0
    paper_counterexamples: int = 0
    per_ell: Dict[int, Dict[str, int]] = field(default_factory=dict)
    failures: List[Verification] = field(default_factory=list)

    def record(self, ell: int, outcome: Verification):
        bucket = self.per_ell.setdefault(ell, {STATUS_PASS: 0, STATUS_EXCLUDED: 0, STATUS_FAIL: 0})
        bucket[outcome.status] += 1
        if outcome.status == STATUS_PASS:
            self.passed += 1
        elif outcome.status == STATUS_EXCLUDED:
            self.excluded += 1
        else:
            self.failed += 1
            self.failures.append(outcome)
        if outcome.paper_counterexample:
            self.paper_counterexamples += 1


def scan_certificate(fs: Sequence[BiPoly], cert: SpecializationCertificate, ell_max: int) -> ScanSummary:
    """verify_at for every tau in F_{q^ell}, 1 <= ell <= ell_max."""
    field_ = cert.system[0].field
    summary = ScanSummary()
    for ell in range(1, ell_max + 1):
        ctx = get_field_ctx(field_.p, field_.e, ell)
        for tau in ctx.elements():
            summary.record(ell, verify_at(fs, cert, tau))
    logger.info(
        "Scan up to ell=%d: %d pass, %d excluded, %d fail",
        ell_max, summary.passed, summary.excluded, summary.failed,
    )
    return summary
