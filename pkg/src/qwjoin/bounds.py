"""Entrywise comparison of a join walk against the bare part walk.

For a pair inside the left part, the join changes each walk entry by one
additive term that is bounded by 2/m in magnitude, where m is the left
order. These sweeps measure the resulting deviation of entry magnitudes,
find when the bound is tight, and verify that the deviation vanishes
exactly on the shared time lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import nu2, reconstruct_rational
from .errors import InconsistencyError
from .graphs import WeightedGraph
from .spectral import decompose, graph_matrix, join_params
from .walk import alpha, in_T, transition_entries


@dataclass
class BoundReport:
    matrix: str
    pair: tuple[int, int]
    bound: float
    times: np.ndarray
    join_magnitudes: np.ndarray
    part_magnitudes: np.ndarray
    deviation: np.ndarray
    max_abs_deviation: float
    argmax_time: float
    equality_possible: bool | None
    equality_times: list[float]
    structured_times: list[float]


@dataclass
class MimicrySummary:
    matrix: str
    times: np.ndarray
    max_deviation: np.ndarray
    min_deviation: np.ndarray
    lattice_times: list[float]
    zero_on_lattice: bool
    details: dict = field(default_factory=dict)


def _integer_shift_pair(params, matrix: str) -> tuple[int, int] | None:
    """The two fresh-eigenvalue offsets as integers, when they are integers."""
    if matrix == "laplacian":
        return params.m, params.n
    dp = reconstruct_rational(params.lam_plus - float(params.k))
    dm = reconstruct_rational(params.lam_minus - float(params.k))
    if dp is None or dm is None or dp.denominator != 1 or dm.denominator != 1:
        return None
    return int(dp), int(dm)


def _lattice_base(params, matrix: str) -> float | None:
    """Half-period pi/g of the correction term's alignment lattice."""
    shifts = _integer_shift_pair(params, matrix)
    if shifts is None:
        return None
    g = math.gcd(abs(shifts[0]), abs(shifts[1]))
    if g == 0:
        return None
    return math.pi / g


def equality_condition(
    x: WeightedGraph, y: WeightedGraph, matrix: str = "laplacian"
) -> dict:
    """When the 2/m deviation bound is attained, and at which times.

    The bound is tight exactly when the two fresh-eigenvalue offsets share
    their dyadic valuation; the witnessing times are the odd multiples of
    pi over the offsets' gcd. A claimed witness is verified numerically.
    """
    params = join_params(x, y, matrix)
    bound = 2.0 / params.m
    shifts = _integer_shift_pair(params, matrix)
    if shifts is None:
        return {
            "bound": bound,
            "achievable": None,
            "note": "the fresh-eigenvalue offsets are not integers; no time lattice exists",
        }
    a, b = shifts
    achievable = nu2(a) == nu2(b)
    result: dict = {"bound": bound, "achievable": achievable}
    g = math.gcd(abs(a), abs(b))
    result["base_time"] = math.pi / g
    result["witness_times"] = "odd multiples of the base time"
    if achievable:
        witness = abs(alpha(params, math.pi / g, matrix))
        if abs(witness - bound) > 1e-9:
            raise InconsistencyError(
                f"the equality witness reaches {witness}, not the bound {bound}"
            )
        result["witness_value"] = float(witness)
    return result


def bound_sweep(
    x: WeightedGraph,
    y: WeightedGraph,
    u: int,
    v: int,
    matrix: str = "laplacian",
    t_max: float | None = None,
    samples: int = 4096,
) -> BoundReport:
    """Sweep the magnitude deviation of one left-block entry of the join.

    The deviation |join entry| - |part entry| is computed from the part
    decomposition and the closed-form correction, over a uniform grid
    joined with the structured lattice times. Exceeding 2/m beyond
    rounding is an InconsistencyError.
    """
    params = join_params(x, y, matrix)
    m = params.m
    if not (0 <= u < m and 0 <= v < m):
        raise ValueError("the pair must lie in the left part")
    base = _lattice_base(params, matrix)
    if t_max is None:
        t_max = 4 * math.pi if base is not None else 20.0
    grid = np.linspace(0.0, t_max, samples)
    structured: list[float] = []
    if base is not None:
        structured = [j * base for j in range(1, int(t_max / base) + 1)]
    times = np.union1d(grid, np.asarray(structured))
    decomp = decompose(graph_matrix(x, matrix))
    part = transition_entries(decomp, u, v, times)
    correction = alpha(params, times, matrix)
    if matrix == "laplacian":
        joined = np.exp(1j * params.n * times) * (part + correction)
    else:
        joined = part + correction
    deviation = np.abs(joined) - np.abs(part)
    bound = 2.0 / m
    max_abs = float(np.abs(deviation).max())
    if max_abs > bound + 1e-9:
        raise InconsistencyError(
            f"the deviation reaches {max_abs}, above the bound {bound}"
        )
    condition = equality_condition(x, y, matrix)
    mags = np.abs(correction)
    equality_times = [float(t) for t, a_ in zip(times, mags) if abs(a_ - bound) <= 1e-9]
    idx = int(np.abs(deviation).argmax())
    return BoundReport(
        matrix=matrix,
        pair=(u, v),
        bound=bound,
        times=times,
        join_magnitudes=np.abs(joined),
        part_magnitudes=np.abs(part),
        deviation=deviation,
        max_abs_deviation=max_abs,
        argmax_time=float(times[idx]),
        equality_possible=condition["achievable"],
        equality_times=equality_times,
        structured_times=structured,
    )


def mimicry_sweep(
    x: WeightedGraph,
    y: WeightedGraph,
    matrix: str = "laplacian",
    t_max: float | None = None,
    samples: int = 1024,
) -> MimicrySummary:
    """Deviation statistics for every left-block pair at once.

    Confirms that the deviation vanishes on the shared time lattice, and
    reports per-pair extremes so mimicking and anti-mimicking pairs stand
    out (zero part entries force positive deviation off the lattice,
    full-magnitude part entries force negative deviation).
    """
    params = join_params(x, y, matrix)
    m = params.m
    base = _lattice_base(params, matrix)
    if t_max is None:
        t_max = 4 * math.pi if base is not None else 20.0
    grid = np.linspace(0.0, t_max, samples)
    lattice: list[float] = []
    if base is not None:
        lattice = [j * 2 * base for j in range(1, int(t_max / (2 * base)) + 1)]
    times = np.union1d(grid, np.asarray(lattice))
    decomp = decompose(graph_matrix(x, matrix))
    projectors = np.stack(decomp.projectors)
    phases = np.exp(1j * np.outer(times, decomp.eigenvalues))
    part_block = np.einsum("tk,kuv->tuv", phases, projectors)
    correction = alpha(params, times, matrix)[:, None, None]
    if matrix == "laplacian":
        join_block = np.exp(1j * params.n * times)[:, None, None] * (part_block + correction)
    else:
        join_block = part_block + correction
    deviation = np.abs(join_block) - np.abs(part_block)
    zero_ok = True
    for t in lattice:
        if not in_T(params, t, matrix):
            raise InconsistencyError(f"a lattice time {t} fails the membership test")
        at = int(np.searchsorted(times, t))
        if np.abs(deviation[at]).max() > 1e-8:
            zero_ok = False
    if lattice and not zero_ok:
        raise InconsistencyError("the deviation does not vanish on the time lattice")
    return MimicrySummary(
        matrix=matrix,
        times=times,
        max_deviation=deviation.max(axis=0),
        min_deviation=deviation.min(axis=0),
        lattice_times=lattice,
        zero_on_lattice=zero_ok,
        details={"bound": 2.0 / m},
    )
