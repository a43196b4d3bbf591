"""Tensor-product Gauss quadrature over centered cells, with dyadic subdivision.

Nodes live in the centered cell prod_j [-h_j, h_j].  Each axis is split into
2^depth_j equal subintervals carrying a fixed-order Gauss-Legendre rule; the
default depth is the smallest making the phase variation across a subinterval
at most a quarter period, using width_j * max_n |P_j(n)| as the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for real-domain cell integration.

    mode "auto" picks the exact sampling path at canonical scale (sigma = 0)
    with an even integer exponent, and Gauss cells otherwise; "gauss" and
    "grid" force one path.  depth None means the per-axis quarter-period rule.
    """

    order: int = 4
    depth: int | tuple[int, ...] | None = None
    mode: str = "auto"
    node_budget: int = 2 * 10**8

    def __post_init__(self):
        if self.order < 1:
            raise InvalidInputError("quadrature order must be >= 1")
        if self.mode not in ("auto", "gauss", "grid"):
            raise InvalidInputError(f"unknown quadrature mode {self.mode!r}")


def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    return np.polynomial.legendre.leggauss(order)


def quarter_period_depths(
    widths: Sequence[Fraction], max_abs_phase: Sequence[int]
) -> tuple[int, ...]:
    """Smallest dyadic depths with subcell phase variation <= 1/4 period."""
    depths = []
    for w, m in zip(widths, max_abs_phase):
        variation = float(w) * float(m)
        s = 0
        while variation * 2.0**-s > 0.25:
            s += 1
        depths.append(s)
    return tuple(depths)


def resolve_depths(
    config: QuadratureConfig,
    widths: Sequence[Fraction],
    max_abs_phase: Sequence[int],
) -> tuple[int, ...]:
    if config.depth is None:
        return quarter_period_depths(widths, max_abs_phase)
    if isinstance(config.depth, int):
        return (config.depth,) * len(widths)
    if len(config.depth) != len(widths):
        raise InvalidInputError("per-axis depth length does not match components")
    return tuple(int(s) for s in config.depth)


def tensor_offsets(
    halfwidths: Sequence[Fraction], depths: Sequence[int], order: int
) -> tuple[np.ndarray, np.ndarray]:
    """Node offsets (V, k) within the centered cell and their volume weights (V,).

    Weights sum to the cell volume prod_j 2 h_j.  Node ordering is the C-order
    tensor product of the per-axis ladders, so it is deterministic.
    """
    xi, w = gauss_rule(order)
    axis_nodes = []
    axis_weights = []
    for h, s in zip(halfwidths, depths):
        h = float(h)
        pieces = 2**s
        half = h / pieces
        nodes = []
        weights = []
        for piece in range(pieces):
            center = -h + (2 * piece + 1) * half
            nodes.extend(center + half * xi)
            weights.extend(half * w)
        axis_nodes.append(np.asarray(nodes))
        axis_weights.append(np.asarray(weights))
    grids = np.meshgrid(*axis_nodes, indexing="ij")
    offsets = np.stack([g.ravel(order="C") for g in grids], axis=1)
    wgrids = np.meshgrid(*axis_weights, indexing="ij")
    weights = np.ones(offsets.shape[0])
    for g in wgrids:
        weights = weights * g.ravel(order="C")
    return offsets, weights


def node_count(depths: Sequence[int], order: int) -> int:
    return math.prod(order * 2**s for s in depths)
