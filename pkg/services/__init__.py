"""Services package."""
from .bch_code import BchCode, CyclicCode, bch_build, cyclic_code, verify_codeword
from .crt_encoder import Backend, CrtPlan, crt_remainder, crt_setup, encode_systematic
from .gf2field import Gf2mField, cyclotomic_cosets, minimal_polynomial
from .gf2poly import Gf2Poly
from .lfsr_sim import Datapath, LfsrCircuit, build_datapath, simulate_datapath
from .report import cost_report

__all__ = [
    "BchCode",
    "CyclicCode",
    "bch_build",
    "cyclic_code",
    "verify_codeword",
    "Backend",
    "CrtPlan",
    "crt_remainder",
    "crt_setup",
    "encode_systematic",
    "Gf2mField",
    "cyclotomic_cosets",
    "minimal_polynomial",
    "Gf2Poly",
    "Datapath",
    "LfsrCircuit",
    "build_datapath",
    "simulate_datapath",
    "cost_report",
]
