"""Candidate preference grids for recovery and uniqueness sweeps."""

from __future__ import annotations

from itertools import combinations

from ..aa_prefs import AAPreference, BernoulliIndex, Prior
from ..lotteries import Interval


def index_value_grid(
    interval: Interval, knot_positions: list[float], value_steps: int
) -> list[BernoulliIndex]:
    """Piecewise-linear indices with interior values on a 1/value_steps grid.

    All strictly increasing assignments of interior values from
    {1/value_steps, ..., (value_steps-1)/value_steps}, in lexicographic
    order.
    """
    if any(not interval.a < p < interval.b for p in knot_positions):
        raise ValueError("interior knots must lie strictly inside the interval")
    knots = (interval.a, *sorted(knot_positions), interval.b)
    levels = [i / value_steps for i in range(1, value_steps)]
    out = []
    for combo in combinations(levels, len(knot_positions)):
        out.append(BernoulliIndex(interval, knots, (0.0, *combo, 1.0)))
    return out


def eu_grid(
    states: int,
    interval: Interval,
    prior_steps: int,
    knot_positions: list[float],
    value_steps: int,
) -> list[AAPreference]:
    """Expected-utility candidates: prior lattice x index-value lattice.

    One state collapses the prior to the trivial one.  Order is
    deterministic: priors in lexicographic order, indices within.
    """
    indices = index_value_grid(interval, knot_positions, value_steps)
    if states == 1:
        priors = [Prior((1.0,))]
    else:
        from .._combinatorics import compositions

        priors = [
            Prior(tuple(c / prior_steps for c in counts))
            for counts in compositions(prior_steps, states)
        ]
    return [AAPreference.eu(idx, prior) for prior in priors for idx in indices]


def grid_from_config(cfg: dict, interval: Interval) -> list[AAPreference]:
    """Build a candidate grid from its JSON descriptor."""
    if "eu_grid" in cfg:
        g = cfg["eu_grid"]
        return eu_grid(
            int(g["states"]),
            interval,
            int(g.get("prior_steps", 1)),
            [float(x) for x in g["knot_positions"]],
            int(g["value_steps"]),
        )
    raise ValueError(f"unknown candidate grid descriptor {sorted(cfg)}")
