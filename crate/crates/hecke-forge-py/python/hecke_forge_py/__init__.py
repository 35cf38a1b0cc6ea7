"""Python bindings for hecke-forge."""

from ._native import apply, canonical_expr, circuits, clans, normal_form, run, verify

__all__ = ["apply", "canonical_expr", "circuits", "clans", "normal_form", "run", "verify"]
