"""The complete mirror of the projective plane and its order-3 symmetry.

``W(u, v) = u + v^2 / (uv - 1)`` on ``{uv != 1}``, with the action
``tau(u, v) = (zeta u, zeta^-1 v)`` for ``zeta = e^{2 pi i / 3}``. Since
``uv`` is invariant, ``W(tau p) = zeta W(p)``.
"""
from __future__ import annotations

import cmath
import math
import random

from .report import Report, judged

ZETA3 = cmath.exp(2j * math.pi / 3)
EXCLUSION = 0.1


def W(u: complex, v: complex) -> complex:
    d = u * v - 1
    if d == 0:
        raise ZeroDivisionError("W is undefined on uv = 1")
    return u + v * v / d


def tau(u: complex, v: complex, times: int = 1) -> tuple[complex, complex]:
    z = ZETA3**times
    return u * z, v / z


def admissible(u: complex, v: complex, margin: float = EXCLUSION) -> bool:
    """Sampler acceptance: stay at distance more than ``margin`` from ``uv = 1``."""
    return abs(u * v - 1) > margin


def sample_points(count: int, rng: random.Random, margin: float = EXCLUSION):
    """``count`` admissible points with coordinates uniform in the square ``|re|, |im| <= 2``.

    Returns the points and the number of rejected draws.
    """
    pts, rejected = [], 0
    while len(pts) < count:
        u = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        v = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if admissible(u, v, margin):
            pts.append((u, v))
        else:
            rejected += 1
    return pts, rejected


def cp2_mirror_report(samples: int, seed: int = 0, tol: float = 1e-9) -> Report:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    pts, rejected = sample_points(samples, rng)
    eq = cube = 0.0
    for u, v in pts:
        tu, tv = tau(u, v)
        eq = max(eq, abs(W(tu, tv) - ZETA3 * W(u, v)))
        cu, cv = tau(u, v, 3)
        cube = max(cube, abs(cu - u), abs(cv - v))
    rep = Report("cp2-mirror", config={"samples": samples, "seed": seed, "tol": tol,
                                       "rejected": rejected})
    rep.cases.append(judged("W-equivariance", eq, tol, detail="max |W(tau p) - zeta W(p)|"))
    rep.cases.append(judged("tau-cubed", cube, tol, detail="max |tau^3 p - p|"))
    w0, w1 = W(2, 1), W(*tau(2, 1))
    rep.cases.append(judged("oracle:W(2,1)=3", abs(w0 - 3), tol, w0, 3))
    rep.cases.append(judged("oracle:W(tau(2,1))=3zeta", abs(w1 - 3 * ZETA3), tol, w1, 3 * ZETA3))
    rep.cases.append(judged("sampler-rejects-uv=1", 0.0 if not admissible(2, 0.5) else 1.0, tol))
    return rep
