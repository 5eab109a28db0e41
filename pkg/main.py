"""Main application entry point.

    python main.py build --t 4 --delta 7
    python main.py encode --t 4 --delta 7 --backend crt --input msg.bin --output cw.bin
    python main.py verify --t 4 --delta 7 --input cw.bin
    python main.py cost --t 11 --delta 23 --format table
    python main.py selftest
    python main.py sweep --t 6 --delta 11 --limit 6
    python main.py serve
"""
import argparse
import asyncio
import json
import logging
import sys
from typing import List, Optional, TextIO

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from pydantic import ValidationError

from api.code_api import router as code_router
from config import settings
from models.cli import CliConfig
from services.bch_code import BchCode, bch_build, describe, failing_root
from services.codec import bytes_from_hex, poly_from_bytes, poly_to_bits, poly_to_bytes
from services.crt_encoder import Backend, crt_remainder_concurrent, crt_setup, encode_poly
from services.errors import BchError, LengthMismatchError
from services.gf2poly import Gf2Poly
from services.lfsr_sim import build_datapath, build_direct_divider, simulate_datapath, simulate_serial
from services.report import analyze, render_table
from services.selftest import run_selftest
from services.sweep import sweep

logger = logging.getLogger("bch_crt")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def create_app() -> FastAPI:
    """Create FastAPI application."""
    app = FastAPI(
        title="BCH CRT Encoder API",
        description="Binary BCH code construction, CRT-based systematic encoding and datapath cost analysis",
        version="1.0.0",
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    app.include_router(code_router)
    return app


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="main.py", description="Binary BCH codes with a CRT-based parallel encoder")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=settings.log_level.upper(),
        help="logging level (default from BCH_LOG_LEVEL)",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def code_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--t", type=int, required=True, help="extension degree, N = 2^t - 1")
        p.add_argument("--delta", type=int, required=True, help="designed distance")
        p.add_argument("--prim-poly", help="primitive polynomial, e.g. x^4+x+1 or 0x13")

    p = sub.add_parser("build", help="construct a code and print its descriptor")
    code_flags(p)
    p.add_argument("--format", choices=["json", "table"], default="json")

    for name, what in (("encode", "message"), ("verify", "codeword")):
        p = sub.add_parser(name, help=f"{name} a {what} file")
        code_flags(p)
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--input", help=f"raw binary {what} file, MSB-first")
        source.add_argument("--hex", help=f"{what} as a hex string")
        if name == "encode":
            p.add_argument("--backend", choices=[b.value for b in Backend], default=settings.default_backend)
            p.add_argument("--output", help="codeword file (default: hex on stdout)")
            p.add_argument("--trace", help="write a per-clock register trace to this file")
            p.add_argument("--concurrent", action="store_true", default=settings.concurrent_branches,
                           help="evaluate CRT branches concurrently")

    p = sub.add_parser("cost", help="XOR-gate and fanout report")
    code_flags(p)
    p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("selftest", help="run the worked examples and oracle checks")
    p.add_argument("--samples", type=int, help="random samples per code")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("sweep", help="compare primitive polynomials for the same code parameters")
    code_flags(p)
    p.add_argument("--limit", type=int, default=8, help="number of primitive polynomials to try")
    p.add_argument("--format", choices=["json", "table"], default="table")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default=settings.api_host)
    p.add_argument("--port", type=int, default=settings.api_port)
    return parser


def config_from_args(namespace: argparse.Namespace) -> CliConfig:
    args = {k: v for k, v in vars(namespace).items() if v is not None}
    args.pop("log_level", None)
    return CliConfig(**args)


def parse_config(argv: Optional[List[str]] = None) -> CliConfig:
    return config_from_args(build_parser().parse_args(argv))


def _error(kind: str, message: str, **extra) -> None:
    print(json.dumps({"error": kind, "message": message, **extra}), file=sys.stderr)


def _build_code(config: CliConfig) -> BchCode:
    prim = Gf2Poly.parse(config.prim_poly) if config.prim_poly else None
    return bch_build(config.t, config.delta, prim)


def _read_payload(config: CliConfig) -> bytes:
    if config.input is not None:
        return config.input.read_bytes()
    return bytes_from_hex(config.hex)


def cmd_build(config: CliConfig, out: TextIO) -> int:
    code = _build_code(config)
    if config.format == "table":
        print(f"[{code.n},{code.k}] t={code.t} delta={code.delta} r={code.r}", file=out)
        print(f"prim_poly = {code.prim_poly}", file=out)
        print(f"g = {code.g}", file=out)
        for coset, w in zip(code.cosets, code.factors):
            print(f"  C{coset.representative} {list(coset.members)} -> {w}", file=out)
    else:
        print(describe(code).model_dump_json(indent=2), file=out)
    return EXIT_OK


def _write_trace(config: CliConfig, code: BchCode, shifted: Gf2Poly, message: Gf2Poly) -> None:
    with open(config.trace, "w", encoding="utf-8") as sink:
        def emit(line: str) -> None:
            sink.write(line + "\n")

        if config.backend == Backend.LFSR_DIRECT.value:
            simulate_serial(build_direct_divider(code), poly_to_bits(shifted, code.n), emit)
        elif config.backend == Backend.CRT.value:
            simulate_datapath(build_datapath(crt_setup(code)), poly_to_bits(message, code.k), emit)
        else:
            logger.warning("naive backend has no circuits to trace; trace file left empty")


def cmd_encode(config: CliConfig, out: TextIO) -> int:
    code = _build_code(config)
    message = poly_from_bytes(_read_payload(config), code.k)
    backend = Backend(config.backend)
    shifted = message << code.g.degree
    if config.concurrent and backend is Backend.CRT:
        parity = asyncio.run(crt_remainder_concurrent(crt_setup(code), shifted))
        codeword = shifted + parity
    else:
        codeword = encode_poly(code, message, backend)
    if config.trace is not None:
        _write_trace(config, code, shifted, message)

    payload = poly_to_bytes(codeword, code.n)
    if config.output is not None:
        config.output.write_bytes(payload)
        logger.info("Wrote %d-byte codeword to %s", len(payload), config.output)
    else:
        print(payload.hex(), file=out)
    return EXIT_OK


def cmd_verify(config: CliConfig, out: TextIO) -> int:
    code = _build_code(config)
    word = poly_from_bytes(_read_payload(config), code.n)
    root = failing_root(code, poly_to_bits(word, code.n))
    if root is None:
        print("valid", file=out)
        return EXIT_OK
    print(f"invalid: c(alpha^{root}) != 0", file=out)
    _error("VerificationFailed", f"codeword is not in the code: c(alpha^{root}) != 0", root=root)
    return EXIT_FAILURE


def cmd_cost(config: CliConfig, out: TextIO) -> int:
    report = analyze(_build_code(config))
    if config.format == "table":
        print(render_table(report), file=out)
    else:
        print(report.model_dump_json(indent=2), file=out)
    return EXIT_OK


def cmd_selftest(config: CliConfig, out: TextIO) -> int:
    results = run_selftest(samples=config.samples, seed=config.seed)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail} ({result.seconds:.2f}s)", file=out)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def cmd_sweep(config: CliConfig, out: TextIO) -> int:
    entries = sweep(config.t, config.delta, limit=config.limit)
    if config.format == "json":
        print(json.dumps([e.model_dump() for e in entries], indent=2), file=out)
        return EXIT_OK
    print(f"{'primitive polynomial':<28}{'sum nz(w)':>10}{'fanout':>8}{'XORs':>8}", file=out)
    for e in entries:
        print(f"{e.prim_poly:<28}{e.factor_weight:>10}{e.max_division_fanout:>8}{e.total_actual:>8}", file=out)
    return EXIT_OK


def cmd_serve(config: CliConfig, out: TextIO) -> int:
    uvicorn.run(create_app(), host=config.host, port=config.port, log_level=settings.log_level.lower())
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "encode": cmd_encode,
    "verify": cmd_verify,
    "cost": cmd_cost,
    "selftest": cmd_selftest,
    "sweep": cmd_sweep,
    "serve": cmd_serve,
}


def run(config: CliConfig, out: Optional[TextIO] = None) -> int:
    """Execute one validated invocation and return its exit code."""
    if out is None:
        out = sys.stdout
    try:
        return COMMANDS[config.subcommand](config, out)
    except LengthMismatchError as e:
        _error(type(e).__name__, str(e))
        return EXIT_FAILURE
    except BchError as e:
        _error(type(e).__name__, str(e))
        return EXIT_USAGE
    except OSError as e:
        _error("IOError", str(e))
        return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = config_from_args(args)
    except ValidationError as e:
        _error("UsageError", str(e))
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
