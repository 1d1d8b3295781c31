"""Globally adaptive Gauss-Legendre quadrature for complex integrands."""

from __future__ import annotations

import heapq
from typing import Callable

import numpy as np

from .errors import QuadratureBudget

GAUSS_ORDER = 10
MAX_PANELS = 4000

_nodes, _weights = np.polynomial.legendre.leggauss(GAUSS_ORDER)


def _gauss(func, a: float, b: float) -> complex:
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    return complex(half * np.dot(_weights, func(mid + half * _nodes)))


def integrate(func: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              tol: float, max_panels: int = MAX_PANELS) -> complex:
    """Integrate vectorised ``func`` over ``[a, b]`` to absolute accuracy ``tol``.

    Each panel's error is estimated as the difference between its Gauss
    value and the sum over its two halves; the worst panel is bisected
    until the summed estimate drops below ``tol``.
    """
    if b == a:
        return 0j

    def panel(lo, hi):
        mid = 0.5 * (lo + hi)
        whole = _gauss(func, lo, hi)
        left = _gauss(func, lo, mid)
        right = _gauss(func, mid, hi)
        refined = left + right
        return abs(whole - refined), refined, lo, hi

    first = panel(a, b)
    heap = [(-first[0], 0, first[1], first[2], first[3])]
    total_err = first[0]
    count = 1
    while total_err > tol:
        if count >= max_panels:
            raise QuadratureBudget(
                f"adaptive quadrature on [{a}, {b}] hit {max_panels} panels "
                f"with error estimate {total_err:.3e} > {tol:.3e}")
        neg_err, _, _, lo, hi = heapq.heappop(heap)
        total_err += neg_err
        mid = 0.5 * (lo + hi)
        for part in (panel(lo, mid), panel(mid, hi)):
            count += 1
            heapq.heappush(heap, (-part[0], count, part[1], part[2], part[3]))
            total_err += part[0]
    return sum(item[2] for item in heap)
