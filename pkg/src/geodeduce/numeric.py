"""Coordinate instantiation of constructions and empirical fact checking.

A construction is realized with concrete plane coordinates: free points
sampled uniformly in [-1,1]^2, semi-free points sampled on their locus,
determined points computed from their defining steps.  Facts are then
evaluated within a relative tolerance, which lets the pipeline discard
conjectures that are false on generic figures and flag unsound rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .construction import Construction
from .facts import Fact

MIN_SPACING = 1e-3        # pairwise distance floor, relative to the diameter
MIN_SIN = 1e-3            # intersection-angle floor
DEFAULT_TOL = 1e-8
MAX_ATTEMPTS = 100


class DegenerateModelError(RuntimeError):
    """No non-degenerate model could be sampled for this seed."""

    def __init__(self, seed: int):
        super().__init__(f"degenerate construction under seed {seed}")
        self.seed = seed


@dataclass(frozen=True)
class CoordinateModel:
    """An assignment of plane coordinates to every construction point."""

    coords: Dict[str, Tuple[float, float]]
    seed: int
    scale: float  # squared diameter of the point set

    def xy(self, name: str) -> np.ndarray:
        return np.asarray(self.coords[name])


@dataclass(frozen=True)
class Verdict:
    kind: str  # holds | fails | degenerate
    seed: Optional[int] = None  # witnessing seed for fails

    def __str__(self) -> str:
        if self.kind == "fails":
            return f"fails(seed={self.seed})"
        return self.kind


HOLDS = Verdict("holds")
DEGENERATE = Verdict("degenerate")


def _line_intersection(a, b, c, d):
    """Intersection of lines AB and CD, or None if (nearly) parallel."""
    r = b - a
    s = d - c
    denom = r[0] * s[1] - r[1] * s[0]
    nr = math.hypot(*r) * math.hypot(*s)
    if nr == 0 or abs(denom) / nr < MIN_SIN:
        return None
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / denom
    return a + t * r


def _circumcenter(a, b, c):
    """Circumcentre of triangle abc, or None if (nearly) collinear."""
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    diam = max(np.linalg.norm(b - a), np.linalg.norm(c - a), np.linalg.norm(c - b))
    if diam == 0 or abs(d) / (diam ** 2) < MIN_SIN:
        return None
    ux = ((a @ a) * (b[1] - c[1]) + (b @ b) * (c[1] - a[1]) + (c @ c) * (a[1] - b[1])) / d
    uy = ((a @ a) * (c[0] - b[0]) + (b @ b) * (a[0] - c[0]) + (c @ c) * (b[0] - a[0])) / d
    return np.array([ux, uy])


def _sample_once(c: Construction, rng: np.random.Generator):
    """One sampling attempt; returns coords dict or None on degeneracy."""
    pts: Dict[str, np.ndarray] = {}
    for step in c.steps:
        a = step.args
        if step.kind == "free_point":
            pts[a[0]] = rng.uniform(-1.0, 1.0, size=2)
        elif step.kind == "on_line":
            t = rng.uniform(-1.0, 2.0)
            pts[a[0]] = pts[a[1]] + t * (pts[a[2]] - pts[a[1]])
        elif step.kind == "on_circle":
            theta = rng.uniform(0.0, 2.0 * math.pi)
            r = np.linalg.norm(pts[a[2]] - pts[a[1]])
            pts[a[0]] = pts[a[1]] + r * np.array([math.cos(theta), math.sin(theta)])
        elif step.kind == "midpoint":
            pts[a[0]] = 0.5 * (pts[a[1]] + pts[a[2]])
        elif step.kind == "intersect":
            p = _line_intersection(pts[a[1]], pts[a[2]], pts[a[3]], pts[a[4]])
            if p is None:
                return None
            pts[a[0]] = p
        elif step.kind == "foot":
            u = pts[a[3]] - pts[a[2]]
            nn = u @ u
            if nn == 0:
                return None
            t = (pts[a[1]] - pts[a[2]]) @ u / nn
            pts[a[0]] = pts[a[2]] + t * u
        elif step.kind == "circumcenter":
            o = _circumcenter(pts[a[1]], pts[a[2]], pts[a[3]])
            if o is None:
                return None
            pts[a[0]] = o
    return pts


def _nondegenerate(c: Construction, pts: Dict[str, np.ndarray]) -> bool:
    names = list(pts)
    arr = np.array([pts[n] for n in names])
    if len(names) < 2:
        return False
    diff = arr[:, None, :] - arr[None, :, :]
    d2 = (diff ** 2).sum(axis=2)
    scale = float(d2.max())
    if scale == 0:
        return False
    iu = np.triu_indices(len(names), k=1)
    if (d2[iu] < (MIN_SPACING ** 2) * scale).any():
        return False
    for step in c.steps:
        if step.kind == "intersect":
            a = step.args
            r = pts[a[2]] - pts[a[1]]
            s = pts[a[4]] - pts[a[3]]
            sin = abs(r[0] * s[1] - r[1] * s[0]) / (np.linalg.norm(r) * np.linalg.norm(s))
            if sin < MIN_SIN:
                return False
    return True


def instantiate(c: Construction, seed: int) -> CoordinateModel:
    """Sample a non-degenerate model; deterministic for a given seed.

    Raises DegenerateModelError after MAX_ATTEMPTS failed draws.
    """
    rng = np.random.default_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        pts = _sample_once(c, rng)
        if pts is None or not _nondegenerate(c, pts):
            continue
        return model_from_coords({n: (float(p[0]), float(p[1])) for n, p in pts.items()},
                                 seed=seed)
    raise DegenerateModelError(seed)


def model_from_coords(coords: Dict[str, Tuple[float, float]], seed: int = 0) -> CoordinateModel:
    arr = np.array(list(coords.values()))
    diff = arr[:, None, :] - arr[None, :, :]
    scale = float((diff ** 2).sum(axis=2).max())
    return CoordinateModel(coords=dict(coords), seed=seed, scale=scale)


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def eval_fact(m: CoordinateModel, f: Fact, tol_rel: float = DEFAULT_TOL) -> bool:
    """Evaluate a fact on the model within a scale-relative tolerance."""
    p = [m.xy(name) for name in f.args]
    tol = tol_rel
    s = m.scale
    if f.pred == "coll":
        return _cross(p[1] - p[0], p[2] - p[0]) ** 2 <= tol * s * s
    if f.pred == "para":
        return _cross(p[1] - p[0], p[3] - p[2]) ** 2 <= tol * s * s
    if f.pred == "perp":
        return float((p[1] - p[0]) @ (p[3] - p[2])) ** 2 <= tol * s * s
    if f.pred == "midp":
        mid = 0.5 * (p[1] + p[2])
        return float((p[0] - mid) @ (p[0] - mid)) <= tol * s
    if f.pred == "cong":
        d1 = float((p[1] - p[0]) @ (p[1] - p[0]))
        d2 = float((p[3] - p[2]) @ (p[3] - p[2]))
        return abs(d1 - d2) <= tol * s
    if f.pred == "cyclic":
        o = _circumcenter(p[0], p[1], p[2])
        if o is None:
            return False
        r2 = float((p[0] - o) @ (p[0] - o))
        d2 = float((p[3] - o) @ (p[3] - o))
        return abs(d2 - r2) <= tol * s
    if f.pred == "eqangle":
        t1 = _dirangle(p[0], p[1], p[2], p[3])
        t2 = _dirangle(p[4], p[5], p[6], p[7])
        if t1 is None or t2 is None:
            return False
        return abs(math.sin(t1 - t2)) <= tol
    raise ValueError(f.pred)


def _dirangle(a, b, c, d):
    """Directed angle between lines ab and cd, modulo pi."""
    u = b - a
    v = d - c
    if (u @ u) == 0 or (v @ v) == 0:
        return None
    return math.atan2(_cross(u, v), float(u @ v))


def eval_condition(m: CoordinateModel, kind: str, args: Tuple[str, ...],
                   tol_rel: float = DEFAULT_TOL) -> bool:
    """Evaluate a nondegeneracy side condition on the model."""
    from .facts import make_fact

    if kind == "distinct":
        a, b = (m.xy(n) for n in args)
        return float((a - b) @ (a - b)) > tol_rel * m.scale
    if kind == "non_collinear":
        return not eval_fact(m, make_fact("coll", *args), tol_rel)
    if kind == "distinct_lines":
        x, y, u, v = args
        same = (eval_fact(m, make_fact("coll", x, y, u), tol_rel)
                and eval_fact(m, make_fact("coll", x, y, v), tol_rel))
        return not same
    raise ValueError(kind)


def sample_models(c: Construction, n_models: int, master_seed: int = 0):
    """Sample n models with seeds master_seed .. master_seed+n-1.

    Raises DegenerateModelError if any seed exhausts its attempts.
    """
    return [instantiate(c, master_seed + i) for i in range(n_models)]


def verify(f: Fact, c: Construction, n_models: int = 5,
           tol_rel: float = DEFAULT_TOL, master_seed: int = 0) -> Verdict:
    """holds iff f is true in all n non-degenerate sampled models."""
    try:
        models = sample_models(c, n_models, master_seed)
    except DegenerateModelError:
        return DEGENERATE
    for m in models:
        if not eval_fact(m, f, tol_rel):
            return Verdict("fails", seed=m.seed)
    return HOLDS
