"""Euclidean choice domains and Wald utility families.

Two domains: an axis-aligned box (convex, compact, used with a common
Lipschitz bound) and a cone section (homothetic setting): vectors theta*x
with x on the radius-M sphere patch above the floor alpha*1 and theta in
[0, 1].  Utilities are normalized so the constant bundle c*1 is worth
exactly c (weights on the simplex): linear, CES, and Cobb-Douglas kinds,
each enumerable on a parameter grid for the empirical-risk search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._combinatorics import compositions
from .errors import RejectionCapError, ShapeMismatchError

LINEAR = "linear"
CES = "ces"
COBB_DOUGLAS = "cobb_douglas"


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box with nonempty interior."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise ValueError("lo and hi must be same nonzero length")
        if any(l >= h for l, h in zip(self.lo, self.hi)):
            raise ValueError("need lo < hi componentwise")

    @staticmethod
    def unit(d: int) -> "BoxDomain":
        return BoxDomain((0.0,) * d, (1.0,) * d)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @cached_property
    def _lo(self) -> np.ndarray:
        return np.asarray(self.lo, dtype=float)

    @cached_property
    def _hi(self) -> np.ndarray:
        return np.asarray(self.hi, dtype=float)

    def contains(self, x) -> bool:
        x = _check_dim(x, self.dim)
        return bool(np.all(x >= self._lo) and np.all(x <= self._hi))

    def contains_batch(self, x: np.ndarray) -> np.ndarray:
        return np.all((x >= self._lo) & (x <= self._hi), axis=1)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self._lo, self._hi)

    def sample_batch(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self._lo, self._hi, size=(n, self.dim))

    def to_dict(self) -> dict:
        return {"box": {"lo": list(self.lo), "hi": list(self.hi)}}


@dataclass(frozen=True)
class ConeDomain:
    """Cone section: ||x|| <= M and min_i x_i >= (alpha/M) ||x||.

    Equivalent to the two-parameter form theta*s with s on the sphere patch
    {||s|| = M, s >= alpha*1} and theta in [0, 1]; the closed form above is
    what membership tests evaluate.
    """

    alpha: float
    M: float
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if not (0.0 < self.alpha and 0.0 < self.M):
            raise ValueError("alpha and M must be positive")
        if self.alpha * np.sqrt(self.d) >= self.M:
            raise ValueError("need alpha * sqrt(d) < M for a nonempty domain")

    @property
    def dim(self) -> int:
        return self.d

    def contains(self, x) -> bool:
        x = _check_dim(x, self.d)
        norm = float(np.linalg.norm(x))
        return norm <= self.M and float(np.min(x)) >= (self.alpha / self.M) * norm

    def contains_batch(self, x: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(x, axis=1)
        return (norms <= self.M) & (np.min(x, axis=1) >= (self.alpha / self.M) * norms)

    def sample(self, rng: np.random.Generator, max_tries: int = 10_000) -> np.ndarray:
        for _ in range(max_tries):
            x = rng.uniform(0.0, self.M, size=self.d)
            if self.contains(x):
                return x
        raise RejectionCapError(
            f"rejection sampling failed after {max_tries} tries; "
            "domain parameters look degenerate"
        )

    def sample_batch(self, rng: np.random.Generator, n: int, max_tries: int = 200) -> np.ndarray:
        out = np.empty((n, self.d))
        filled = 0
        for _ in range(max_tries):
            if filled >= n:
                break
            draw = rng.uniform(0.0, self.M, size=(max(n - filled, 64), self.d))
            good = draw[self.contains_batch(draw)]
            take = min(len(good), n - filled)
            out[filled : filled + take] = good[:take]
            filled += take
        if filled < n:
            raise RejectionCapError("batch rejection sampling stalled; degenerate parameters")
        return out

    def to_dict(self) -> dict:
        return {"cone": {"alpha": self.alpha, "M": self.M, "d": self.d}}


Domain = BoxDomain | ConeDomain


def domain_from_dict(d: dict) -> Domain:
    if "box" in d:
        return BoxDomain(tuple(d["box"]["lo"]), tuple(d["box"]["hi"]))
    if "cone" in d:
        c = d["cone"]
        return ConeDomain(float(c["alpha"]), float(c["M"]), int(c["d"]))
    raise ValueError(f"unknown domain descriptor {sorted(d)}")


def _check_dim(x, d: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (d,):
        raise ShapeMismatchError(f"expected vector of dimension {d}, got shape {x.shape}")
    return x


def contains(domain: Domain, x) -> bool:
    return domain.contains(x)


def sample(domain: Domain, rng: np.random.Generator) -> np.ndarray:
    return domain.sample(rng)


@dataclass(frozen=True)
class WaldUtility:
    """Utility over bundles with the diagonal normalization u(c*1) = c.

    Weights lie on the simplex; CES needs rho != 0 and Cobb-Douglas strictly
    positive weights.  All three kinds are homogeneous of degree one.
    """

    kind: str
    weights: tuple[float, ...]
    rho: float | None = None

    def __post_init__(self):
        w = self.weights
        if not w or any(v < 0.0 for v in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")
        if self.kind == CES:
            if self.rho is None or self.rho == 0.0:
                raise ValueError("ces utility needs rho != 0")
        elif self.kind == COBB_DOUGLAS:
            if any(v <= 0.0 for v in w):
                raise ValueError("cobb_douglas weights must be strictly positive")
            if self.rho is not None:
                raise ValueError("cobb_douglas takes no rho")
        elif self.kind == LINEAR:
            if self.rho is not None:
                raise ValueError("linear utility takes no rho")
        else:
            raise ValueError(f"unknown utility kind {self.kind!r}")

    @cached_property
    def _w(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def param_tuple(self) -> tuple[float, ...]:
        """Canonical parameter vector used for deterministic tie-breaking."""
        if self.kind == CES:
            return (self.rho, *self.weights)
        return tuple(self.weights)

    def value(self, x) -> float:
        return u_eval(self, x)

    def value_batch(self, x: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over rows of x."""
        w = self._w
        if self.kind == LINEAR:
            return x @ w
        if np.any(x < 0.0):
            raise ValueError("ces/cobb_douglas utilities need nonnegative bundles")
        if self.kind == COBB_DOUGLAS:
            return np.prod(np.power(x, w), axis=-1)
        if self.rho < 0.0:
            # zero coordinates get utility zero by convention (measure-zero set)
            out = np.zeros(x.shape[:-1])
            pos = np.all(x > 0.0, axis=-1)
            if np.any(pos):
                inner = np.power(x[pos], self.rho) @ w
                out[pos] = np.power(inner, 1.0 / self.rho)
            return out
        return np.power(np.power(x, self.rho) @ w, 1.0 / self.rho)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "weights": list(self.weights)}
        if self.rho is not None:
            out["rho"] = self.rho
        return out

    @staticmethod
    def from_dict(d: dict) -> "WaldUtility":
        return WaldUtility(d["kind"], tuple(d["weights"]), d.get("rho"))


def u_eval(u: WaldUtility, x) -> float:
    """Utility of a single bundle."""
    x = _check_dim(x, u.dim)
    return float(u.value_batch(x[None, :])[0])


@dataclass(frozen=True)
class UtilityFamily:
    """Enumerable parameter grid of Wald utilities over one domain.

    Weights run over the simplex at resolution 1/weight_steps; CES members
    additionally range over rho_grid.  ``kappa`` carries the family's common
    Lipschitz bound when one is asserted (box environments).
    """

    kind: str
    domain: Domain
    weight_steps: int
    rho_grid: tuple[float, ...] = ()
    kappa: float | None = None

    def __post_init__(self):
        if self.weight_steps < 1:
            raise ValueError("weight_steps must be >= 1")
        if self.kind == CES and not self.rho_grid:
            raise ValueError("ces family needs a rho grid")
        if self.kind != CES and self.rho_grid:
            raise ValueError("only ces families take a rho grid")

    @property
    def dim(self) -> int:
        return self.domain.dim

    def weight_grid(self) -> list[tuple[float, ...]]:
        out = []
        for counts in compositions(self.weight_steps, self.dim):
            if self.kind == COBB_DOUGLAS and any(c == 0 for c in counts):
                continue
            out.append(tuple(c / self.weight_steps for c in counts))
        return out

    def members(self) -> list[WaldUtility]:
        weights = self.weight_grid()
        if self.kind == CES:
            return [
                WaldUtility(CES, w, rho)
                for rho in sorted(self.rho_grid)
                for w in weights
            ]
        return [WaldUtility(self.kind, w) for w in weights]

    def refine_around(self, member: WaldUtility, level: int) -> list[WaldUtility]:
        """Candidates at half the grid step around ``member`` (local search).

        Weight moves transfer step/2**level mass between coordinate pairs;
        CES candidates also try rho midpoints toward grid neighbors.
        """
        h = 1.0 / (self.weight_steps * (2**level))
        d = self.dim
        weight_opts = [member.weights]
        base = np.asarray(member.weights)
        for i in range(d):
            for j in range(d):
                if i == j:
                    continue
                w = base.copy()
                w[i] += h
                w[j] -= h
                if w[j] < -1e-12 or (self.kind == COBB_DOUGLAS and w[j] <= 0.0):
                    continue
                w = np.clip(w, 0.0, 1.0)
                w /= w.sum()
                weight_opts.append(tuple(float(v) for v in w))
        if self.kind != CES:
            return [WaldUtility(self.kind, w) for w in weight_opts]
        rho_opts = [member.rho]
        grid = sorted(self.rho_grid)
        pos = int(np.argmin([abs(r - member.rho) for r in grid]))
        for nb in (pos - 1, pos + 1):
            if 0 <= nb < len(grid):
                mid = member.rho + (grid[nb] - member.rho) / (2**level)
                if mid != 0.0:
                    rho_opts.append(mid)
        return [WaldUtility(CES, w, r) for r in rho_opts for w in weight_opts]

    def to_dict(self) -> dict:
        body: dict = {"weight_steps": self.weight_steps}
        if self.kind == CES:
            body["rho_grid"] = list(self.rho_grid)
        if self.kappa is not None:
            body["kappa"] = self.kappa
        return {self.kind: body}

    @staticmethod
    def from_dict(d: dict, domain: Domain) -> "UtilityFamily":
        (kind, body), = d.items()
        return UtilityFamily(
            kind,
            domain,
            int(body["weight_steps"]),
            tuple(body.get("rho_grid", ())),
            body.get("kappa"),
        )


@dataclass(frozen=True)
class WaldCheckReport:
    """Observed violations of the diagonal and homogeneity identities."""

    max_wald_violation: float
    max_homogeneity_violation: float
    frac_certainty_in_domain: float
    n_points: int


def wald_check(
    u: WaldUtility, domain: Domain, n_points: int, seed: int = 0
) -> WaldCheckReport:
    """Sample the domain and measure |u(u(x)*1) - u(x)| and |u(tx) - t u(x)|."""
    rng = np.random.default_rng([seed, 2**16])
    max_wald = 0.0
    max_hom = 0.0
    inside = 0
    for _ in range(n_points):
        x = domain.sample(rng)
        v = u_eval(u, x)
        max_wald = max(max_wald, abs(u_eval(u, np.full(domain.dim, v)) - v))
        if domain.contains(np.full(domain.dim, v)):
            inside += 1
        for theta in (0.25, 0.5, 0.75):
            max_hom = max(max_hom, abs(u_eval(u, theta * x) - theta * v))
    return WaldCheckReport(max_wald, max_hom, inside / n_points, n_points)


def lattice_points(domain: Domain, steps: int) -> np.ndarray:
    """Deterministic evaluation lattice inside the domain.

    Boxes get the full product grid; cone sections the product grid over
    [0, M]^d filtered by membership.  Used as the default grid for utility
    sup-distances.
    """
    if isinstance(domain, BoxDomain):
        axes = [np.linspace(l, h, steps + 1) for l, h in zip(domain.lo, domain.hi)]
    else:
        axes = [np.linspace(0.0, domain.M, steps + 1)] * domain.d
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    if isinstance(domain, ConeDomain):
        pts = pts[domain.contains_batch(pts)]
    return pts


def lipschitz_estimate(u: WaldUtility, domain: Domain, grid_step: float) -> float:
    """Largest secant slope |u(x) - u(y)| / ||x - y|| over a domain lattice.

    Every secant slope is bounded by the true Lipschitz constant, so this is
    a genuine lower bound; for linear utilities it recovers the weight norm
    exactly whenever the weight direction is realizable on the lattice.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    if isinstance(domain, BoxDomain):
        axes = [
            np.arange(l, h + 1e-12, grid_step) for l, h in zip(domain.lo, domain.hi)
        ]
    else:
        axes = [np.arange(0.0, domain.M + 1e-12, grid_step)] * domain.d
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    pts = pts[domain.contains_batch(pts)]
    vals = u.value_batch(pts)
    best = 0.0
    for start in range(0, len(pts), 256):
        block = slice(start, min(start + 256, len(pts)))
        diff = pts[:, None, :] - pts[None, block, :]
        dist = np.linalg.norm(diff, axis=2)
        dv = np.abs(vals[:, None] - vals[None, block])
        mask = dist > 0
        if np.any(mask):
            best = max(best, float(np.max(dv[mask] / dist[mask])))
    return best


def validate_family_kappa(family: UtilityFamily, grid_step: float = 0.05) -> bool:
    """Check every grid member's estimated Lipschitz constant against kappa."""
    if family.kappa is None:
        raise ValueError("family carries no Lipschitz bound")
    return all(
        lipschitz_estimate(m, family.domain, grid_step) <= family.kappa * (1 + 1e-6)
        for m in family.members()
    )
