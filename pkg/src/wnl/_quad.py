"""Gauss-Legendre panel quadrature used by the numeric modules.

Everything here is deliberately boring: fixed-order Gauss-Legendre rules
composited over uniform or explicit panels, plus a doubling loop for
oscillatory integrands where the panel count is the only knob worth
turning.  Node/weight tables come from numpy and are cached per order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureBudgetError


@lru_cache(maxsize=16)
def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def panel_nodes(
    breakpoints: Sequence[float] | np.ndarray, order: int = 16
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite GL rule over consecutive panels.

    ``breakpoints`` must be increasing; each adjacent pair becomes one
    panel carrying an ``order``-point rule.
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 2 or np.any(np.diff(bp) <= 0.0):
        raise ValueError("breakpoints must be a strictly increasing 1-d sequence")
    x, w = _gl_rule(order)
    a = bp[:-1][:, None]
    b = bp[1:][:, None]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b) + half * x[None, :]).ravel()
    weights = (half * w[None, :]).ravel()
    return nodes, weights


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float] | np.ndarray,
    order: int = 16,
) -> complex:
    nodes, weights = panel_nodes(breakpoints, order)
    return complex(np.sum(weights * f(nodes)))


def integrate_uniform(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panels: int,
    order: int = 16,
) -> complex:
    return integrate_panels(f, np.linspace(a, b, panels + 1), order)


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    panels0: int,
    tol: float,
    order: int = 16,
    max_doublings: int = 12,
) -> tuple[complex, float]:
    """Composite GL with panel doubling until two refinements agree.

    Returns ``(value, err_estimate)`` where the estimate is the last
    inter-level difference.  Raises :class:`QuadratureBudgetError`, with
    the newest value attached, if the cap is reached first.
    """
    panels = max(1, panels0)
    prev = integrate_uniform(f, a, b, panels, order)
    delta = float("inf")
    for _ in range(max_doublings):
        panels *= 2
        cur = integrate_uniform(f, a, b, panels, order)
        delta = abs(cur - prev)
        if delta <= tol:
            return cur, delta
        prev = cur
    raise QuadratureBudgetError(
        f"panel doubling cap ({max_doublings}) reached at {panels} panels; "
        f"last difference {delta:.3e} > tol {tol:.3e}",
        estimate=prev,
    )
