"""Sweep-kernel selection: compiled extension when built, pure Python otherwise."""

from __future__ import annotations

from . import _sweep_py

try:
    from . import _sweep as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

COMPILED_AVAILABLE = _compiled is not None
DEFAULT_ENGINE = "compiled" if COMPILED_AVAILABLE else "python"


def available_engines() -> tuple[str, ...]:
    return ("compiled", "python") if COMPILED_AVAILABLE else ("python",)


def resolve_engine(engine: str = "auto") -> str:
    """Map an engine request to the concrete kernel name."""
    if engine == "auto":
        return DEFAULT_ENGINE
    if engine == "compiled":
        if not COMPILED_AVAILABLE:
            raise RuntimeError(
                "the compiled sweep kernel is not built; reinstall with a C "
                "compiler and Cython, or use engine='python'"
            )
        return "compiled"
    if engine == "python":
        return "python"
    raise ValueError(f"unknown engine {engine!r}; expected auto, compiled or python")


def sweep_kernel(engine: str = "auto"):
    """The module providing ``run_sweeps`` for the requested engine."""
    return _compiled if resolve_engine(engine) == "compiled" else _sweep_py
