"""Worked-example fixtures and oracle-equivalence checks run by ``main.py selftest``."""
import logging
import random
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from config import settings
from services.bch_code import BchCode, bch_build, failing_root, minimum_weight
from services.codec import bits_to_poly
from services.crt_encoder import Backend, crt_remainder, crt_setup, encode_systematic
from services.errors import BchError
from services.gf2poly import Gf2Poly, poly_divmod
from services.lfsr_sim import build_datapath, simulate_datapath
from services.report import analyze

logger = logging.getLogger(__name__)

# (t, delta) codes exercised by the oracle checks
CODE_MATRIX: Tuple[Tuple[int, int], ...] = ((4, 7), (5, 7), (6, 11), (11, 23))
DATAPATH_MATRIX: Tuple[Tuple[int, int], ...] = ((4, 7), (5, 7), (6, 11))
# root evaluation costs delta * N field operations per word
ROOT_CHECKS = 100

EXAMPLE1_G = Gf2Poly.parse("x^10+x^8+x^5+x^4+x^2+x+1")
EXAMPLE1_FACTORS = {Gf2Poly.parse(p) for p in ("x^4+x+1", "x^4+x^3+x^2+x+1", "x^2+x+1")}
EXAMPLE1_COSETS = [(1, 2, 4, 8), (3, 6, 12, 9), (5, 10)]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


class CheckFailed(Exception):
    """Raised by a check body to report a mismatch."""


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


def check_example1() -> str:
    code = bch_build(4, 7, Gf2Poly.parse("x^4+x+1"))
    _expect((code.n, code.k, code.r) == (15, 5, 3), f"got [{code.n},{code.k}] r={code.r}")
    _expect(code.g == EXAMPLE1_G, f"g = {code.g}")
    _expect(set(code.factors) == EXAMPLE1_FACTORS, f"factors = {[str(w) for w in code.factors]}")
    _expect([c.members for c in code.cosets] == EXAMPLE1_COSETS, "coset mismatch")
    return f"g = {code.g}"


def check_example1_distance() -> str:
    weight = minimum_weight(bch_build(4, 7))
    _expect(weight >= 7, f"minimum weight {weight} < 7")
    return f"minimum weight {weight}"


def _check_long_example(t: int, delta: int, n: int, k: int, deg_g: int, r: int, xor_limit: int) -> str:
    code = bch_build(t, delta)
    _expect((code.n, code.k, code.g.degree, code.r) == (n, k, deg_g, r),
            f"got N={code.n} K={code.k} deg(g)={code.g.degree} r={code.r}")
    _expect(all(w.degree == t for w in code.factors), "factor degree differs from t")
    _expect(code.r * t == code.g.degree, "r != deg(g)/t")
    report = analyze(code)
    _expect(report.total_actual <= xor_limit, f"{report.total_actual} XORs > {xor_limit}")
    _expect(report.max_division_fanout <= t, f"fanout {report.max_division_fanout} > {t}")
    _expect(report.max_division_fanout < report.direct_division_fanout, "no fanout reduction")
    return (f"{report.total_actual} XORs <= {xor_limit}, fanout {report.max_division_fanout} "
            f"vs direct {report.direct_division_fanout}")


def check_example2() -> str:
    return _check_long_example(11, 23, 2047, 1926, 121, 11, 1595)


def check_example3() -> str:
    return _check_long_example(13, 79, 8191, 7684, 507, 39, 20865)


def _random_message(rng: random.Random, k: int) -> List[int]:
    return [rng.getrandbits(1) for _ in range(k)]


def check_crt_oracle(code: BchCode, samples: int, rng: random.Random) -> str:
    plan = crt_setup(code)
    span = 2 * code.g.degree
    for _ in range(samples):
        f = Gf2Poly(rng.getrandbits(span))
        _expect(crt_remainder(plan, f) == poly_divmod(f, code.g)[1], f"mismatch for f={f.to_hex()}")
    return f"{samples} random f"


def check_backends(code: BchCode, samples: int, rng: random.Random) -> str:
    plan = crt_setup(code)
    checked = min(samples, ROOT_CHECKS)
    for i in range(samples):
        m = _random_message(rng, code.k)
        words = [encode_systematic(code, m, backend, plan).tolist() for backend in Backend]
        _expect(words[0] == words[1] == words[2], "backends disagree")
        _expect(words[0][: code.k] == m, "systematic prefix differs from message")
        if i < checked:
            root = failing_root(code, words[0])
            _expect(root is None, f"codeword fails at alpha^{root}")
    return f"{samples} random messages, roots checked on {checked}"


def check_datapath(code: BchCode, samples: int, rng: random.Random) -> str:
    plan = crt_setup(code)
    datapath = build_datapath(plan)
    for _ in range(samples):
        m = _random_message(rng, code.k)
        shifted = bits_to_poly(m) << code.g.degree
        _expect(simulate_datapath(datapath, m) == poly_divmod(shifted, code.g)[1], "datapath mismatch")
    return f"{samples} random messages"


def _run(name: str, body: Callable[[], str]) -> CheckResult:
    started = time.perf_counter()
    try:
        detail = body()
        passed = True
    except (CheckFailed, BchError) as e:
        detail = str(e)
        passed = False
    elapsed = time.perf_counter() - started
    logger.info("%s %s (%.2fs)", "PASS" if passed else "FAIL", name, elapsed)
    return CheckResult(name=name, passed=passed, detail=detail, seconds=elapsed)


def run_selftest(samples: Optional[int] = None, seed: Optional[int] = None) -> List[CheckResult]:
    samples = settings.selftest_samples if samples is None else samples
    rng = random.Random(settings.selftest_seed if seed is None else seed)

    results = [
        _run("example 1: [15,5] generator and cosets", check_example1),
        _run("example 1: minimum distance >= 7", check_example1_distance),
        _run("example 2: [2047,1926] cost and fanout", check_example2),
        _run("example 3: [8191,7684] cost and fanout", check_example3),
    ]
    for t, delta in CODE_MATRIX:
        code = bch_build(t, delta)
        label = f"[{code.n},{code.k}]"
        results.append(_run(f"crt remainder oracle {label}", lambda c=code: check_crt_oracle(c, samples, rng)))
        results.append(_run(f"backend equivalence {label}", lambda c=code: check_backends(c, samples, rng)))
    for t, delta in DATAPATH_MATRIX:
        code = bch_build(t, delta)
        results.append(_run(f"datapath oracle [{code.n},{code.k}]", lambda c=code: check_datapath(c, samples, rng)))
    return results
