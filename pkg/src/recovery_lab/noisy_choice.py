"""Stochastic choice rules and the noisy binary-choice data generator.

Choice problems are pairs drawn independently and uniformly from the
domain; the agent picks the better option with probability above one half.
Two error models are provided: a constant flip probability, and a bounded
response whose accuracy grows with the utility gap but never leaves
(theta_min, theta_max).  Records are stored chosen-first, and record i
draws from its own counter-derived stream (seed, i) so datasets are
prefix-stable and safely parallelizable.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _jsonio
from .errors import DatasetFormatError
from .wald_env import Domain, WaldUtility, domain_from_dict


@dataclass(frozen=True)
class ConstantFlip:
    """Choose the better option with fixed probability theta > 1/2."""

    theta: float

    def __post_init__(self):
        if not 0.5 < self.theta < 1.0:
            raise ValueError("theta must lie in (1/2, 1)")

    @property
    def floor(self) -> float:
        return self.theta

    def strict_prob(self, gap: float) -> float:
        return self.theta

    def strict_prob_batch(self, gaps: np.ndarray) -> np.ndarray:
        return np.full_like(gaps, self.theta)

    def to_dict(self) -> dict:
        return {"constant_flip": {"theta": self.theta}}


@dataclass(frozen=True)
class BoundedResponse:
    """Accuracy rises with the utility gap: theta_min + span * tanh(gap / tau)."""

    theta_min: float
    theta_max: float
    tau: float

    def __post_init__(self):
        if not 0.5 < self.theta_min <= self.theta_max < 1.0:
            raise ValueError("need 1/2 < theta_min <= theta_max < 1")
        if self.tau <= 0:
            raise ValueError("tau must be positive")

    @property
    def floor(self) -> float:
        return self.theta_min

    def strict_prob(self, gap: float) -> float:
        # np.tanh keeps scalar and batch paths bitwise identical
        return float(self.theta_min + (self.theta_max - self.theta_min) * np.tanh(gap / self.tau))

    def strict_prob_batch(self, gaps: np.ndarray) -> np.ndarray:
        return self.theta_min + (self.theta_max - self.theta_min) * np.tanh(gaps / self.tau)

    def to_dict(self) -> dict:
        return {
            "bounded_response": {
                "theta_min": self.theta_min,
                "theta_max": self.theta_max,
                "tau": self.tau,
            }
        }


NoiseModel = ConstantFlip | BoundedResponse


def noise_from_dict(d: dict) -> NoiseModel:
    if "constant_flip" in d:
        return ConstantFlip(float(d["constant_flip"]["theta"]))
    if "bounded_response" in d:
        b = d["bounded_response"]
        return BoundedResponse(float(b["theta_min"]), float(b["theta_max"]), float(b["tau"]))
    raise ValueError(f"unknown noise descriptor {sorted(d)}")


def q_eval(noise: NoiseModel, pref, x, y) -> float:
    """Probability that x is chosen from {x, y} by an agent ranked by pref.

    Exactly 1/2 on indifference, above the noise floor on strict pairs, and
    q(x, y) + q(y, x) = 1 holds exactly by construction.
    """
    ux, uy = pref.value(x), pref.value(y)
    if ux == uy:
        return 0.5
    if ux > uy:
        return noise.strict_prob(ux - uy)
    return 1.0 - noise.strict_prob(uy - ux)


def q_eval_batch(noise: NoiseModel, vx: np.ndarray, vy: np.ndarray) -> np.ndarray:
    """Vectorized q over precomputed utility columns."""
    gap = vx - vy
    up = noise.strict_prob_batch(np.abs(gap))
    return np.where(gap > 0, up, np.where(gap < 0, 1.0 - up, 0.5))


@dataclass(frozen=True)
class ChoiceRecord:
    """One resolved problem, chosen option first."""

    chosen: tuple[float, ...]
    rejected: tuple[float, ...]

    def __post_init__(self):
        if len(self.chosen) != len(self.rejected):
            raise ValueError("chosen and rejected must have the same dimension")


@dataclass
class Dataset:
    """Choice records plus the metadata needed to regenerate them bit-for-bit."""

    records: list[ChoiceRecord]
    meta: dict

    @property
    def n(self) -> int:
        return len(self.records)

    def chosen_matrix(self) -> np.ndarray:
        return np.array([r.chosen for r in self.records], dtype=float).reshape(self.n, -1)

    def rejected_matrix(self) -> np.ndarray:
        return np.array([r.rejected for r in self.records], dtype=float).reshape(self.n, -1)


def sample_problem(domain: Domain, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Two independent uniform draws from the domain."""
    return domain.sample(rng), domain.sample(rng)


def _record_rng(seed, i: int) -> np.random.Generator:
    base = list(seed) if isinstance(seed, (list, tuple)) else [seed]
    return np.random.default_rng([*base, i])


def generate_dataset(
    domain: Domain,
    pref: WaldUtility,
    noise: NoiseModel,
    n: int,
    seed: int | list[int],
) -> Dataset:
    """Simulate n problems; chosen = x with probability q(x, y), else y."""
    if n < 0:
        raise ValueError("n must be >= 0")
    records = []
    for i in range(n):
        rng = _record_rng(seed, i)
        x, y = sample_problem(domain, rng)
        p = q_eval(noise, pref, x, y)
        if rng.uniform() < p:
            chosen, rejected = x, y
        else:
            chosen, rejected = y, x
        records.append(ChoiceRecord(tuple(chosen.tolist()), tuple(rejected.tolist())))
    meta = {
        "format": "choice-dataset/1",
        "domain": domain.to_dict(),
        "noise": noise.to_dict(),
        "preference": pref.to_dict(),
        "seed": list(seed) if isinstance(seed, (list, tuple)) else seed,
        "n": n,
    }
    return Dataset(records, meta)


def dataset_text(ds: Dataset) -> str:
    """Line-delimited JSON: meta line first, then one record per line."""
    lines = [_jsonio.dumps(ds.meta)]
    for r in ds.records:
        lines.append(
            '{"chosen": '
            + _jsonio.dumps(list(r.chosen))
            + ', "rejected": '
            + _jsonio.dumps(list(r.rejected))
            + "}"
        )
    return "\n".join(lines) + "\n"


def write_dataset(ds: Dataset, path: str | Path) -> None:
    Path(path).write_text(dataset_text(ds), encoding="utf-8")


def read_dataset(path: str | Path) -> Dataset:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DatasetFormatError("empty dataset file", line=1)
    try:
        meta = _jsonio.loads(lines[0])
    except ValueError as exc:
        raise DatasetFormatError(f"bad meta line: {exc}", line=1) from exc
    if not isinstance(meta, dict) or "n" not in meta:
        raise DatasetFormatError("meta line must be an object with an 'n' field", line=1)
    dim = None
    if "domain" in meta:
        dom = domain_from_dict(meta["domain"])
        dim = dom.dim
    records = []
    for lineno, raw in enumerate(lines[1:], start=2):
        try:
            obj = _jsonio.loads(raw)
            rec = ChoiceRecord(tuple(obj["chosen"]), tuple(obj["rejected"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise DatasetFormatError(f"bad record: {exc}", line=lineno) from exc
        if dim is not None and len(rec.chosen) != dim:
            raise DatasetFormatError(
                f"record dimension {len(rec.chosen)} != domain dimension {dim}",
                line=lineno,
            )
        records.append(rec)
    if len(records) != meta["n"]:
        raise DatasetFormatError(
            f"meta says n={meta['n']} but found {len(records)} records",
            line=len(lines),
        )
    return Dataset(records, meta)
