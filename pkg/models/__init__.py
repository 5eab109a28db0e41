"""Models package."""
from .cli import CliConfig
from .code import CodeDescriptor, CodeRequest, EncodeRequest, EncodeResponse, VerifyRequest, VerifyResponse
from .report import CodeSummary, CostReport, StepCost, SweepEntry

__all__ = [
    "CliConfig",
    "CodeDescriptor",
    "CodeRequest",
    "EncodeRequest",
    "EncodeResponse",
    "VerifyRequest",
    "VerifyResponse",
    "CodeSummary",
    "CostReport",
    "StepCost",
    "SweepEntry",
]
