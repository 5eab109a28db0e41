"""Compare primitive-polynomial choices for the same (t, delta).

deg(g) and r do not depend on the choice; the sparsity of the factors, and with
it the XOR count and division fanout, does.
"""
import logging
from typing import List, Optional

from models.report import SweepEntry
from services.bch_code import bch_build
from services.gf2field import primitive_polynomials
from services.gf2poly import nz
from services.report import analyze

logger = logging.getLogger(__name__)


def sweep(t: int, delta: int, limit: Optional[int] = None) -> List[SweepEntry]:
    entries = []
    for prim in primitive_polynomials(t, limit=limit):
        code = bch_build(t, delta, prim)
        report = analyze(code)
        entries.append(
            SweepEntry(
                prim_poly=prim.to_exponent_string(),
                factor_weight=sum(nz(w) for w in code.factors),
                max_division_fanout=report.max_division_fanout,
                total_actual=report.total_actual,
                deg_g=code.g.degree,
                r=code.r,
            )
        )
    entries.sort(key=lambda e: (e.total_actual, e.factor_weight, e.prim_poly))
    logger.info("Swept %d primitive polynomials for t=%d delta=%d", len(entries), t, delta)
    return entries
