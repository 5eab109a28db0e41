"""Validated command-line configuration."""
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, model_validator

Subcommand = Literal["build", "encode", "verify", "cost", "selftest", "sweep", "serve"]

_NEEDS_CODE = {"build", "encode", "verify", "cost", "sweep"}
_NEEDS_PAYLOAD = {"encode", "verify"}


class CliConfig(BaseModel):
    """One CLI invocation after flag parsing."""
    subcommand: Subcommand
    t: Optional[int] = None
    delta: Optional[int] = None
    prim_poly: Optional[str] = None
    backend: Literal["naive", "lfsr_direct", "crt"] = "crt"
    input: Optional[Path] = None
    hex: Optional[str] = None
    output: Optional[Path] = None
    format: Literal["json", "table"] = "json"
    trace: Optional[Path] = None
    concurrent: bool = False
    samples: Optional[int] = None
    seed: Optional[int] = None
    limit: Optional[int] = None
    host: Optional[str] = None
    port: Optional[int] = None

    @model_validator(mode="after")
    def check_required(self) -> "CliConfig":
        if self.subcommand in _NEEDS_CODE and (self.t is None or self.delta is None):
            raise ValueError(f"{self.subcommand} requires --t and --delta")
        if self.subcommand in _NEEDS_PAYLOAD and (self.input is None) == (self.hex is None):
            raise ValueError(f"{self.subcommand} requires exactly one of --input or --hex")
        return self
