"""Brute-force feasibility oracle for the coefficient bounds.

A candidate pair ``(a_2, a_3)`` is pushed through the coefficient equations
that tie it to the first two Taylor coefficients of the two P_m(beta)
functions ``p`` (for ``f``) and ``q`` (for ``f^{-1}``):

    p_1 = c_1 a_2 / gamma
    p_2 = (A a_2^2 + B a_3) / gamma
    q_1 = -p_1
    q_2 = (A a_2^2 + B (2 a_2^2 - a_3)) / gamma

with ``(c_1, A, B) = ((2-lam) phi_2, (lam^2-2lam) phi_2^2, (3-lam) phi_3)`` for
the S-type class and ``(2 c_1, 4 A, 3 B)`` of those for the K-type class.
The pair is feasible when all images obey ``|.| <= m (1 - beta)``.  The
search samples the unknowns, keeps the feasible extremes, and compares them
with the closed-form bounds.
"""

from __future__ import annotations

import cmath
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import BoundReport, bounds_for, phi23
from .classes import ClassParams
from .errors import DegenerateDenominator, NoFeasibleSample, ParameterError
from .hypergeom import HohlovParams

FEASIBILITY_RTOL = 1e-12
DOMINANCE_TOL = 1e-9
ENVELOPE = 1.5
REFINE_ITERATIONS = 200
REFINE_STEP = 0.1
BATCH_SIZE = 1 << 14
RECONSTRUCTION_EPS = 1e-14


def equation_coefficients(kind: str, lam: float, phi2: float, phi3: float) -> tuple[float, float, float]:
    """``(c_1, A, B)`` of the coefficient equations for class ``kind``."""
    if not (phi2 > 0 and phi3 > 0):
        raise ParameterError(f"phi2 and phi3 must be positive, got {phi2}, {phi3}")
    c1 = (2 - lam) * phi2
    A = (lam * lam - 2 * lam) * phi2 * phi2
    B = (3 - lam) * phi3
    if kind == "s":
        return c1, A, B
    if kind == "k":
        return 2 * c1, 4 * A, 3 * B
    raise ParameterError(f"class kind must be 's' or 'k', got {kind!r}")


def coefficient_images(kind, a2, a3, cp: ClassParams, phi2: float, phi3: float):
    """Vectorized ``(p1, p2, q2)`` for arrays (or scalars) ``a2``, ``a3``."""
    c1, A, B = equation_coefficients(kind, cp.lam, phi2, phi3)
    sq = a2 * a2
    g = cp.gamma
    return c1 * a2 / g, (A * sq + B * a3) / g, (A * sq + B * (2 * sq - a3)) / g


def _worst(p1, p2, q2):
    return np.maximum(np.maximum(np.abs(p1), np.abs(p2)), np.abs(q2))


@dataclass(frozen=True)
class FeasibilityTuple:
    p1: complex
    p2: complex
    q1: complex
    q2: complex
    feasible: bool
    slack: float

    def to_dict(self) -> dict:
        pair = lambda z: [z.real, z.imag]  # noqa: E731
        return {
            "p1": pair(self.p1),
            "p2": pair(self.p2),
            "q1": pair(self.q1),
            "q2": pair(self.q2),
            "feasible": self.feasible,
            "slack": self.slack,
        }


def feasibility_map(kind: str, a2: complex, a3: complex, cp: ClassParams, phi2: float, phi3: float) -> FeasibilityTuple:
    p1, p2, q2 = (complex(v) for v in coefficient_images(kind, complex(a2), complex(a3), cp, phi2, phi3))
    bound = cp.coefficient_bound
    worst = max(abs(p1), abs(p2), abs(q2))
    return FeasibilityTuple(p1, p2, -p1, q2, worst <= bound * (1 + FEASIBILITY_RTOL), bound - worst)


def feasibility_map_s(a2, a3, cp, phi2, phi3) -> FeasibilityTuple:
    return feasibility_map("s", a2, a3, cp, phi2, phi3)


def feasibility_map_k(a2, a3, cp, phi2, phi3) -> FeasibilityTuple:
    return feasibility_map("k", a2, a3, cp, phi2, phi3)


ROUTES = ("p1_p2", "p2_q2", "p1_q2")


def a3_branch_consistency(
    kind: str,
    a2: complex,
    a3: complex,
    cp: ClassParams,
    phi2: float,
    phi3: float,
    on_degenerate: str = "raise",
) -> list[complex]:
    """Recover ``a_3`` from the images of ``(a_2, a_3)`` along three routes.

    * ``p1_p2``: ``a_3 = (gamma p_2 - A (gamma p_1 / c_1)^2) / B``
    * ``p2_q2``: ``a_3 = gamma (p_2+q_2) / (2(A+B)) + gamma (p_2-q_2) / (2B)``
    * ``p1_q2``: ``a_3 = ((A + 2B) (gamma p_1 / c_1)^2 - gamma q_2) / B``

    A route whose denominator falls below ``1e-14`` raises
    :class:`DegenerateDenominator` naming the route, or yields ``nan`` when
    ``on_degenerate="nan"``.
    """
    c1, A, B = equation_coefficients(kind, cp.lam, phi2, phi3)
    t = feasibility_map(kind, a2, a3, cp, phi2, phi3)
    g = cp.gamma
    a2_from_p1 = g * t.p1 / c1
    out = []
    for route in ROUTES:
        den = {"p1_p2": B, "p2_q2": 2 * (A + B), "p1_q2": B}[route]
        if abs(den) < RECONSTRUCTION_EPS:
            if on_degenerate == "raise":
                raise DegenerateDenominator(f"route {route}: denominator {den!r} is degenerate", route=route)
            out.append(complex(math.nan, math.nan))
            continue
        if route == "p1_p2":
            out.append((g * t.p2 - A * a2_from_p1**2) / B)
        elif route == "p2_q2":
            out.append(g * (t.p2 + t.q2) / den + g * (t.p2 - t.q2) / (2 * B))
        else:
            out.append(((A + 2 * B) * a2_from_p1**2 - g * t.q2) / B)
    return out


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


@dataclass(frozen=True)
class SearchReport:
    kind: str
    seed: int
    samples: int
    feasible_count: int
    max_a2: float
    max_a2_witness: tuple[complex, complex]
    max_a3: float
    max_a3_witness: tuple[complex, complex]
    a2_bound: float
    a3_bound: float
    a2_envelope_sufficient: bool
    a3_envelope: float
    a3_envelope_hit: bool
    bounds: BoundReport
    a2_ratio: float = field(init=False)
    a3_ratio: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "a2_ratio", self.max_a2 / self.a2_bound)
        object.__setattr__(self, "a3_ratio", self.max_a3 / self.a3_bound)

    @property
    def dominated(self) -> bool:
        """Whether both published bounds dominate every feasible point found."""
        return self.a2_ratio <= 1 + DOMINANCE_TOL and self.a3_ratio <= 1 + DOMINANCE_TOL

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "samples": self.samples,
            "feasible_count": self.feasible_count,
            "max_a2": self.max_a2,
            "max_a2_witness": {"a2": _pair(self.max_a2_witness[0]), "a3": _pair(self.max_a2_witness[1])},
            "max_a3": self.max_a3,
            "max_a3_witness": {"a2": _pair(self.max_a3_witness[0]), "a3": _pair(self.max_a3_witness[1])},
            "a2_bound": self.a2_bound,
            "a3_bound": self.a3_bound,
            "a2_ratio": self.a2_ratio,
            "a3_ratio": self.a3_ratio,
            "dominated": self.dominated,
            "a2_envelope_sufficient": self.a2_envelope_sufficient,
            "a3_envelope": self.a3_envelope,
            "a3_envelope_hit": self.a3_envelope_hit,
            "bounds": self.bounds.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _draw_batch(seq: np.random.SeedSequence, n: int, r2: float, r3: float):
    """Stratified modulus, uniform phase, for both unknowns."""
    rng = np.random.default_rng(seq)
    strata = np.arange(n)
    m2 = r2 * (rng.permutation(strata) + rng.random(n)) / n
    m3 = r3 * (rng.permutation(strata) + rng.random(n)) / n
    a2 = m2 * np.exp(2j * np.pi * rng.random(n))
    a3 = m3 * np.exp(2j * np.pi * rng.random(n))
    return a2, a3


def _scan_batch(kind, seq, n, r2, r3, cp, phi2, phi3):
    a2, a3 = _draw_batch(seq, n, r2, r3)
    worst = _worst(*coefficient_images(kind, a2, a3, cp, phi2, phi3))
    ok = worst <= cp.coefficient_bound * (1 + FEASIBILITY_RTOL)
    count = int(ok.sum())
    if not count:
        return 0, None, None
    a2f, a3f = a2[ok], a3[ok]
    i2 = int(np.argmax(np.abs(a2f)))
    i3 = int(np.argmax(np.abs(a3f)))
    return count, (complex(a2f[i2]), complex(a3f[i2])), (complex(a2f[i3]), complex(a3f[i3]))


def hill_climb(
    kind: str,
    start: tuple[complex, complex],
    target: int,
    cp: ClassParams,
    phi2: float,
    phi3: float,
    steps: tuple[float, float],
    iterations: int = REFINE_ITERATIONS,
) -> tuple[complex, complex]:
    """Coordinate ascent on ``|a_2|`` (``target=0``) or ``|a_3|`` (``target=1``).

    Each iteration tries ``+-h`` along the four real coordinates and keeps the
    best feasible move, ranked first by the objective and then by slack, so
    that moves which free up room for the objective are accepted.  When no
    move helps the step is halved; an accepted move doubles it again, up to
    the initial size.  Only feasible points are ever accepted.

    The feasible set is invariant under ``(a_2, a_3) -> (a_2 e^{i psi}, a_3 e^{2 i psi})``,
    so after every accepted move the point is rotated to make ``a_2`` real and
    nonnegative; otherwise the escape direction from a corner where both
    second-coefficient constraints are tight is not a coordinate direction.
    """

    def canonical(a2: complex, a3: complex) -> np.ndarray:
        if a2 != 0:
            rot = abs(a2) / a2
            a2, a3 = abs(a2), a3 * rot * rot
        return np.array([a2.real, a2.imag, a3.real, a3.imag])

    x = canonical(complex(start[0]), complex(start[1]))
    h0 = np.array([steps[0], steps[0], steps[1], steps[1]])
    h = h0
    bound = cp.coefficient_bound * (1 + FEASIBILITY_RTOL)
    eye = np.eye(4)

    def score(pts):
        a2 = pts[:, 0] + 1j * pts[:, 1]
        a3 = pts[:, 2] + 1j * pts[:, 3]
        worst = _worst(*coefficient_images(kind, a2, a3, cp, phi2, phi3))
        obj = np.abs(a2 if target == 0 else a3)
        return obj, bound - worst

    obj0, slack0 = score(x[None, :])
    cur = (float(obj0[0]), float(slack0[0]))
    for _ in range(iterations):
        cand = np.concatenate([x + eye * h, x - eye * h])
        obj, slack = score(cand)
        best = None
        for i in range(cand.shape[0]):
            if slack[i] < 0:
                continue
            key = (float(obj[i]), float(slack[i]))
            if key > cur and (best is None or key > best[0]):
                best = (key, i)
        if best is None:
            h = h * 0.5
            continue
        cur = best[0]
        x = canonical(complex(*cand[best[1], :2]), complex(*cand[best[1], 2:]))
        h = np.minimum(2 * h, h0)
    return complex(x[0], x[1]), complex(x[2], x[3])


def extremal_search(
    kind: str,
    cp: ClassParams,
    hp: HohlovParams,
    samples: int = 100_000,
    seed: int = 0,
    refine_iterations: int = REFINE_ITERATIONS,
    workers: int = 1,
) -> SearchReport:
    """Sample ``(a_2, a_3)``, keep the feasible extremes, refine, and compare.

    The envelope is ``1.5x`` each published bound.  For ``a_2`` the envelope
    is provably sufficient (checked and reported); for ``a_3`` it is a
    heuristic and ``a3_envelope_hit`` flags samples near its edge.
    """
    if samples < 10_000:
        raise ParameterError(f"samples must be >= 10000, got {samples}")
    phi2, phi3 = phi23(hp)
    report = bounds_for(kind, cp, hp)
    r2, r3 = ENVELOPE * report.a2_bound, ENVELOPE * report.a3_bound

    origin = feasibility_map(kind, 0, 0, cp, phi2, phi3)
    if not origin.feasible:
        raise NoFeasibleSample("the origin is infeasible; parameters are corrupted")

    c1, A, B = equation_coefficients(kind, cp.lam, phi2, phi3)
    g = abs(cp.gamma)
    a2_envelope_sufficient = max(c1 * r2 / g, abs(A + B) * r2 * r2 / g) > cp.coefficient_bound * (
        1 + FEASIBILITY_RTOL
    )

    sizes = [BATCH_SIZE] * (samples // BATCH_SIZE)
    if samples % BATCH_SIZE:
        sizes.append(samples % BATCH_SIZE)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(kind, s, n, r2, r3, cp, phi2, phi3) for s, n in zip(seqs, sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda j: _scan_batch(*j), jobs))
    else:
        results = [_scan_batch(*j) for j in jobs]

    feasible = 1
    best2 = best3 = (0j, 0j)
    for count, w2, w3 in results:
        feasible += count
        if w2 is not None and abs(w2[0]) > abs(best2[0]):
            best2 = w2
        if w3 is not None and abs(w3[1]) > abs(best3[1]):
            best3 = w3

    steps = (REFINE_STEP * report.a2_bound, REFINE_STEP * report.a3_bound)
    for target in (0, 1):
        start = best2 if target == 0 else best3
        refined = hill_climb(kind, start, target, cp, phi2, phi3, steps, refine_iterations)
        if not feasibility_map(kind, *refined, cp, phi2, phi3).feasible:
            continue
        if abs(refined[0]) > abs(best2[0]):
            best2 = refined
        if abs(refined[1]) > abs(best3[1]):
            best3 = refined

    return SearchReport(
        kind=kind,
        seed=seed,
        samples=samples,
        feasible_count=feasible,
        max_a2=abs(best2[0]),
        max_a2_witness=best2,
        max_a3=abs(best3[1]),
        max_a3_witness=best3,
        a2_bound=report.a2_bound,
        a3_bound=report.a3_bound,
        a2_envelope_sufficient=bool(a2_envelope_sufficient),
        a3_envelope=r3,
        a3_envelope_hit=abs(best3[1]) >= 0.99 * r3,
        bounds=report,
    )


def zero_slack_witness(kind: str, cp: ClassParams, phi2: float, phi3: float) -> tuple[complex, complex]:
    """The pair ``a_3 = a_2^2`` with ``|p_2| = |q_2| = m (1-beta)``, real phase.

    On that ray ``p_2 = q_2 = (A+B) a_2^2 / gamma``; the modulus of ``a_2`` is
    then the square-root branch of the ``a_2`` bound.
    """
    _, A, B = equation_coefficients(kind, cp.lam, phi2, phi3)
    if abs(A + B) < RECONSTRUCTION_EPS:
        raise DegenerateDenominator("A + B vanishes; the square-root branch is unbounded")
    scale = cp.coefficient_bound * abs(cp.gamma) / abs(A + B)
    a2 = cmath.sqrt(scale * (cp.gamma / abs(cp.gamma)) * math.copysign(1.0, A + B))
    return a2, a2 * a2
