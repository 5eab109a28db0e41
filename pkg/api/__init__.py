"""API package."""
from .code_api import router as code_router

__all__ = ["code_router"]
