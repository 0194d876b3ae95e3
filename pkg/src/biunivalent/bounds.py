"""Closed-form upper bounds on ``|a_2|`` and ``|a_3|``.

Every bound is a minimum over a short list of branch expressions.  The
evaluators return all branches so callers can see which one is active.
Branch order follows the published listing inside each ``min{...}``.

Notation used below: ``K = m |gamma| (1 - beta)``, ``A = (lam^2 - 2 lam) phi_2^2``
and ``B = (3 - lam) phi_3``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .classes import ClassParams
from .errors import DegenerateDenominator, ParameterError
from .hypergeom import HohlovParams, phi_sequence

DENOMINATOR_EPS = 1e-14
INF = math.inf

# corollary name -> (class kind, lambda it specializes)
COROLLARIES = {
    "S_lambda1": ("s", 1.0),
    "H_lambda0": ("s", 0.0),
    "K_lambda1": ("k", 1.0),
    "Q_lambda0": ("k", 0.0),
}
COROLLARY_ALIASES = {"s1": "S_lambda1", "h0": "H_lambda0", "k1": "K_lambda1", "q0": "Q_lambda0"}


def _over(num: float, den: float) -> float:
    """``num / den`` with the guard: a vanishing denominator gives ``inf``."""
    if abs(den) < DENOMINATOR_EPS:
        return INF
    return num / den


def _num(x: float):
    return "inf" if math.isinf(x) else x


@dataclass(frozen=True)
class BoundReport:
    label: str
    kind: str
    a2_branches: tuple[float, ...]
    a3_branches: tuple[float, ...]
    phi2: float
    phi3: float
    class_params: ClassParams
    hohlov_params: HohlovParams | None = None

    def __post_init__(self):
        for name in ("a2_branches", "a3_branches"):
            branches = getattr(self, name)
            if not any(math.isfinite(b) for b in branches):
                raise DegenerateDenominator(f"{self.label}: every {name[:2]} branch is degenerate")

    @staticmethod
    def _argmin(branches: Sequence[float]) -> int:
        best = 0
        for i, b in enumerate(branches):
            if b < branches[best]:
                best = i
        return best

    @property
    def a2_argmin(self) -> int:
        return self._argmin(self.a2_branches)

    @property
    def a3_argmin(self) -> int:
        return self._argmin(self.a3_branches)

    @property
    def a2_bound(self) -> float:
        return self.a2_branches[self.a2_argmin]

    @property
    def a3_bound(self) -> float:
        return self.a3_branches[self.a3_argmin]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "a2_branches": [_num(b) for b in self.a2_branches],
            "a2_bound": _num(self.a2_bound),
            "a2_argmin": self.a2_argmin,
            "a3_branches": [_num(b) for b in self.a3_branches],
            "a3_bound": _num(self.a3_bound),
            "a3_argmin": self.a3_argmin,
            "params": {
                **self.class_params.to_dict(),
                "hohlov": None if self.hohlov_params is None else self.hohlov_params.to_dict(),
                "phi2": self.phi2,
                "phi3": self.phi3,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def phi23(hp: HohlovParams) -> tuple[float, float]:
    phi = phi_sequence(hp, 3)
    return float(phi[1]), float(phi[2])


def _scale(cp: ClassParams) -> float:
    return cp.m * abs(cp.gamma) * (1.0 - cp.beta)


def _check_phi(phi2: float, phi3: float) -> None:
    if not (phi2 > 0 and phi3 > 0):
        raise ParameterError(f"phi2 and phi3 must be positive, got {phi2}, {phi3}")


def s_bounds_from_phi(cp: ClassParams, phi2: float, phi3: float, hp: HohlovParams | None = None) -> BoundReport:
    _check_phi(phi2, phi3)
    K = _scale(cp)
    lam = cp.lam
    A = (lam * lam - 2 * lam) * phi2 * phi2
    B = (3 - lam) * phi3
    D = abs(A + B)
    c2 = (2 - lam) ** 2 * phi2 * phi2
    a2 = (
        math.sqrt(_over(K, D)),
        K / ((2 - lam) * phi2),
    )
    a3 = (
        K / B + _over(K, D),
        (K / B) * (1 + K * (2 * lam - lam * lam) / c2),
        (K / B) * (1 + K * abs(A + 2 * B) / c2),
    )
    return BoundReport("s_class", "s", a2, a3, phi2, phi3, cp, hp)


def k_bounds_from_phi(cp: ClassParams, phi2: float, phi3: float, hp: HohlovParams | None = None) -> BoundReport:
    _check_phi(phi2, phi3)
    K = _scale(cp)
    lam = cp.lam
    A = (lam * lam - 2 * lam) * phi2 * phi2
    B = (3 - lam) * phi3
    D4 = abs(4 * A + 3 * B)
    c2 = (2 - lam) ** 2 * phi2 * phi2
    a2 = (
        math.sqrt(_over(K, D4)),
        K / (2 * (2 - lam) * phi2),
    )
    a3 = (
        (K / (3 * B)) * (1 + K * (2 * lam - lam * lam) / c2),
        K / (3 * B) + _over(K, D4),
        K / (3 * B) + K * K / (3 * B) * (1 + 3 * B / (2 * c2)),
    )
    return BoundReport("k_class", "k", a2, a3, phi2, phi3, cp, hp)


def s_class_bounds(cp: ClassParams, hp: HohlovParams) -> BoundReport:
    """Bounds for the S-type class (Hohlov operator, complex order ``gamma``)."""
    return s_bounds_from_phi(cp, *phi23(hp), hp=hp)


def k_class_bounds(cp: ClassParams, hp: HohlovParams) -> BoundReport:
    """Bounds for the K-type class."""
    return k_bounds_from_phi(cp, *phi23(hp), hp=hp)


def bounds_for(kind: str, cp: ClassParams, hp: HohlovParams) -> BoundReport:
    if kind == "s":
        return s_class_bounds(cp, hp)
    if kind == "k":
        return k_class_bounds(cp, hp)
    raise ParameterError(f"class kind must be 's' or 'k', got {kind!r}")


def corollary_bounds(which: str, cp: ClassParams, phi2: float, phi3: float) -> BoundReport:
    """Evaluate one of the four specialized bound statements as printed.

    ``which`` is ``S_lambda1``, ``H_lambda0``, ``K_lambda1`` or ``Q_lambda0``
    (or the short aliases ``s1``, ``h0``, ``k1``, ``q0``).  ``cp.lam`` is
    ignored; the lambda value is implied by the corollary.  ``H_lambda0`` and
    ``Q_lambda0`` carry a single ``a_3`` branch because the printed statements
    already resolve the minimum.
    """
    which = COROLLARY_ALIASES.get(which, which)
    if which not in COROLLARIES:
        raise ParameterError(f"unknown corollary {which!r}")
    _check_phi(phi2, phi3)
    kind, lam = COROLLARIES[which]
    cp = cp.replace(lam=lam)
    K = _scale(cp)
    p2sq = phi2 * phi2
    if which == "S_lambda1":
        d = abs(2 * phi3 - p2sq)
        a2 = (math.sqrt(_over(K, d)), K / phi2)
        a3 = (
            _over(K, d) + K / (2 * phi3),
            K / (2 * phi3) * (1 + K / p2sq),
            K / (2 * phi3) * (1 + K * abs(4 * phi3 - p2sq) / p2sq),
        )
    elif which == "H_lambda0":
        a2 = (math.sqrt(K / (3 * phi3)), K / (2 * phi2))
        a3 = (K / (3 * phi3),)
    elif which == "K_lambda1":
        d = abs(6 * phi3 - 4 * p2sq)
        a2 = (math.sqrt(_over(K, d)), K / (2 * phi2))
        a3 = (
            K / (6 * phi3) * (1 + K / p2sq),
            K / (6 * phi3) + _over(K, d),
            K / (6 * phi3) + K * K / (6 * phi3) * (1 + 6 * phi3 / (2 * p2sq)),
        )
    else:
        a2 = (math.sqrt(K / (9 * phi3)), K / (4 * phi2))
        a3 = (K / (9 * phi3),)
    return BoundReport(f"corollary_{which}", kind, a2, a3, phi2, phi3, cp)


# interface names kept for callers of the published API
theorem31_bounds = s_class_bounds
theorem41_bounds = k_class_bounds
