"""
Order Command module for single torsion-order queries.

Computes the torsion order of a point c under phi_T = tau + lam*F + F^r,
all three given as coordinate lists over F_q in F_{q^ell}.
"""
import logging

from config.settings import load_settings
from deps.dependencies import AlgebraDependencies
from models.models import OrderResult
from tools.drinfeld import DrinfeldParams, torsion_order
from tools.ffield import get_field_ctx
from tools.parsing import parse_element

logger = logging.getLogger(__name__)


def run_order(
    deps: AlgebraDependencies,
    p: int,
    e: int,
    r: int,
    ell: int,
    tau: str,
    lam: str,
    point: str,
) -> OrderResult:
    """Runs a torsion-order query.

    Args:
        deps: Dependency container (only logging context is used).
        p, e: The base field F_q, q = p^e.
        r: Rank of the module.
        ell: Degree over F_q of the field holding tau, lam and the point.
        tau, lam, point: Coordinate lists such as "[0,1]".

    Returns:
        OrderResult: The monic order and its degree.

    Raises:
        ParseError: If an element cannot be parsed.
        AlgebraError: For invalid field parameters.
    """
    ctx = get_field_ctx(p, e, ell)
    params = DrinfeldParams(r, parse_element(tau, ctx), parse_element(lam, ctx))
    c = parse_element(point, ctx)
    order = torsion_order(params, c)
    logger.info("order of %s over %s: %s (%s)", c, ctx, order.to_text("T"), deps.run_context)
    return OrderResult(
        p=p,
        e=e,
        r=r,
        ell=ell,
        tau=params.tau.canonical(),
        lam=params.lam.canonical(),
        point=c.canonical(),
        order=order.canonical(),
        order_text=order.to_text("T"),
        degree=order.degree,
    )


if __name__ == "__main__":
    deps = AlgebraDependencies(settings=load_settings(), run_context={"command": "order"})
    result = run_order(deps, 2, 1, 2, 2, "[0,1]", "[0,0]", "[1,0]")
    print(result.model_dump_json(indent=2))
