"""The class P_m(beta) and the transforms defining the S- and K-type classes.

A function ``P`` with ``P(0) = 1`` lies in P_m(beta) when

    int_0^{2 pi} |Re P(r e^{i theta}) - beta| / (1 - beta) d theta <= m pi

for every ``0 < r < 1``.  Members with ``beta = 0`` are generated here from a
signed atomic measure through the classical Herglotz kernel
``(1 + z e^{it}) / (1 - z e^{it})`` with total mass ``2 pi`` and total
variation at most ``m pi``; the kernel is divided by ``2 pi`` so that a single
atom yields the half-plane map ``(1+z)/(1-z)``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .errors import BetaOutOfRange, ParameterError
from .hypergeom import HohlovParams, hohlov_apply
from .series import (
    DEFAULT_ORDER,
    NormalizedFunction,
    TruncatedSeries,
    differentiate,
    divide_by_z,
    eval_at,
    multiply_by_z,
    revert,
)

Kind = Literal["s", "k"]

DEFAULT_GRID = 4096
DEFAULT_RADII = (0.5, 0.9, 0.99)
MEMBERSHIP_RTOL = 1e-6
COEFFICIENT_RTOL = 1e-12


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta < 1.0:
        raise BetaOutOfRange(f"beta must lie in [0, 1), got {beta}")
    return beta


@dataclass(frozen=True)
class ClassParams:
    """Complex order ``gamma``, weight ``lam``, order bound ``beta`` and index ``m``."""

    gamma: complex
    lam: float
    beta: float
    m: float = 2.0

    def __post_init__(self):
        gamma = complex(self.gamma)
        if not (cmath.isfinite(gamma) and abs(gamma) > 0):
            raise ParameterError(f"gamma must be a finite nonzero complex number, got {self.gamma!r}")
        lam = float(self.lam)
        if not 0.0 <= lam <= 1.0:
            raise ParameterError(f"lambda must lie in [0, 1], got {lam}")
        m = float(self.m)
        if not (math.isfinite(m) and m >= 2.0):
            raise ParameterError(f"m must be >= 2, got {m}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta", _check_beta(self.beta))
        object.__setattr__(self, "m", m)

    @property
    def coefficient_bound(self) -> float:
        """``m (1 - beta)``, the bound on every Taylor coefficient of a P_m(beta) member."""
        return self.m * (1.0 - self.beta)

    def replace(self, **changes) -> "ClassParams":
        values = {"gamma": self.gamma, "lam": self.lam, "beta": self.beta, "m": self.m}
        values.update(changes)
        return ClassParams(**values)

    def to_dict(self) -> dict:
        return {
            "gamma": [self.gamma.real, self.gamma.imag],
            "lambda": self.lam,
            "beta": self.beta,
            "m": self.m,
        }


@dataclass(frozen=True)
class PmMeasure:
    """Signed atomic measure ``sum_j w_j delta_{t_j}`` with total mass ``2 pi``."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(t) % (2 * math.pi), float(w)) for t, w in self.atoms)
        if not atoms:
            raise ParameterError("a measure needs at least one atom")
        total = math.fsum(w for _, w in atoms)
        if abs(total - 2 * math.pi) > 1e-9 * 2 * math.pi:
            raise ParameterError(f"atom weights must sum to 2*pi, got {total}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def total_variation(self) -> float:
        return math.fsum(abs(w) for _, w in self.atoms)

    @property
    def min_m(self) -> float:
        """Smallest ``m`` with total variation ``<= m pi``."""
        return self.total_variation / math.pi

    def to_dict(self) -> dict:
        return {"atoms": [{"t": t, "w": w} for t, w in self.atoms]}

    @classmethod
    def from_dict(cls, data: dict) -> "PmMeasure":
        try:
            return cls(tuple((atom["t"], atom["w"]) for atom in data["atoms"]))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed measure document: {exc}") from None

    @classmethod
    def loads(cls, text: str) -> "PmMeasure":
        return cls.from_dict(json.loads(text))


def random_pm_measure(m: float, n_atoms: int, rng: np.random.Generator) -> PmMeasure:
    """Random measure with mass ``2 pi`` and total variation exactly ``m pi``.

    Positive and negative parts carry ``(m+2) pi / 2`` and ``(m-2) pi / 2``.
    """
    if m < 2:
        raise ParameterError(f"m must be >= 2, got {m}")
    if m > 2 and n_atoms < 2:
        raise ParameterError("m > 2 needs at least one positive and one negative atom")
    n_pos = max(1, n_atoms // 2) if m > 2 else n_atoms
    n_neg = n_atoms - n_pos
    pos = rng.dirichlet(np.ones(n_pos)) * (m + 2) * math.pi / 2
    atoms = [(t, w) for t, w in zip(rng.uniform(0, 2 * math.pi, n_pos), pos)]
    if n_neg:
        neg = rng.dirichlet(np.ones(n_neg)) * (m - 2) * math.pi / 2
        atoms += [(t, -w) for t, w in zip(rng.uniform(0, 2 * math.pi, n_neg), neg)]
    return PmMeasure(tuple(atoms))


def pm_generate(measure: PmMeasure, beta: float = 0.0, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Taylor series of ``(1-beta) p + beta`` for the Herglotz integral ``p`` of ``measure``.

    ``p(z) = (1/2pi) sum_j w_j (1 + z e^{i t_j}) / (1 - z e^{i t_j})``, so
    ``h_n = (1/pi) sum_j w_j e^{i n t_j}`` for ``n >= 1``.
    """
    beta = _check_beta(beta)
    n = np.arange(1, order + 1)
    t = np.array([a[0] for a in measure.atoms])
    w = np.array([a[1] for a in measure.atoms])
    h = (np.exp(1j * np.outer(n, t)) @ w) / math.pi
    coeffs = np.empty(order + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    coeffs[1:] = (1.0 - beta) * h
    return TruncatedSeries(coeffs)


def pm_integral(P: TruncatedSeries, r: float, beta: float = 0.0, grid: int = DEFAULT_GRID) -> float:
    """Trapezoidal value of ``int_0^{2pi} |Re P(r e^{i theta}) - beta| / (1-beta) d theta``."""
    beta = _check_beta(beta)
    if grid < 64:
        raise ParameterError(f"grid must be >= 64, got {grid}")
    if not 0.0 < r < 1.0:
        raise ParameterError(f"radius must lie in (0, 1), got {r}")
    if abs(P.coeffs[0] - 1) > 1e-12:
        raise ParameterError(f"P(0) must equal 1, got {P.coeffs[0]}")
    theta = 2 * math.pi * np.arange(grid) / grid
    values = eval_at(P, r * np.exp(1j * theta))
    integrand = np.abs(values.real - beta) / (1.0 - beta)
    return float(2 * math.pi * integrand.mean())


class CoefficientCheck(NamedTuple):
    ok: bool
    index: int | None


def coefficient_bound_check(P: TruncatedSeries, m: float, beta: float = 0.0) -> CoefficientCheck:
    """Test ``|h_n| <= m (1 - beta)`` for every coefficient with ``n >= 1``.

    Returns the verdict and the first offending index (``None`` when all pass).
    """
    beta = _check_beta(beta)
    if abs(P.coeffs[0] - 1) > 1e-12:
        raise ParameterError(f"P(0) must equal 1, got {P.coeffs[0]}")
    limit = m * (1.0 - beta) * (1.0 + COEFFICIENT_RTOL)
    bad = np.nonzero(np.abs(P.coeffs[1:]) > limit)[0]
    if bad.size:
        return CoefficientCheck(False, int(bad[0]) + 1)
    return CoefficientCheck(True, None)


def _finish(quotient: TruncatedSeries, gamma: complex) -> TruncatedSeries:
    out = 1.0 + (quotient - 1.0) / gamma
    c = out.coeffs.copy()
    c[0] = 1.0
    return TruncatedSeries(c)


def s_transform(
    f: NormalizedFunction, cp: ClassParams, hp: HohlovParams, order: int | None = None
) -> TruncatedSeries:
    """``1 + (1/gamma) [ z (I f)' / ((1-lam) z + lam I f) - 1 ]``.

    Both numerator and denominator vanish at the origin, so the common factor
    ``z`` is removed before dividing; the result has order ``N - 1``.
    """
    F = hohlov_apply(hp, f, order)
    num = differentiate(F)
    den = (1.0 - cp.lam) + cp.lam * divide_by_z(F)
    return _finish(num / den, cp.gamma)


def k_transform(
    f: NormalizedFunction, cp: ClassParams, hp: HohlovParams, order: int | None = None
) -> TruncatedSeries:
    """``1 + (1/gamma) [ (z (I f)' + z^2 (I f)'') / ((1-lam) z + lam z (I f)') - 1 ]``."""
    F = hohlov_apply(hp, f, order)
    d1 = differentiate(F)
    num = d1 + multiply_by_z(differentiate(d1))
    den = (1.0 - cp.lam) + cp.lam * d1
    return _finish(num / den, cp.gamma)


_TRANSFORMS = {"s": s_transform, "k": k_transform}


def transform(kind: Kind, f, cp, hp, order=None) -> TruncatedSeries:
    try:
        fn = _TRANSFORMS[kind]
    except KeyError:
        raise ParameterError(f"class kind must be 's' or 'k', got {kind!r}") from None
    return fn(f, cp, hp, order)


def inverse_transforms(
    f: NormalizedFunction, cp: ClassParams, hp: HohlovParams, order: int | None = None, kind: Kind = "s"
) -> TruncatedSeries:
    """Apply the ``kind`` transform to ``g = f^{-1}`` in the variable ``w``."""
    f = NormalizedFunction.coerce(f)
    if order is not None:
        f = f.with_order(order)
    return transform(kind, revert(f), cp, hp)


@dataclass(frozen=True)
class MembershipReport:
    """Integral-criterion values for the direct and inverse transforms.

    A pass is only a necessary condition for class membership: the check
    runs at finite truncation order and at finitely many radii.
    """

    kind: str
    radii: tuple[float, ...]
    direct_integrals: tuple[float, ...]
    inverse_integrals: tuple[float, ...]
    threshold: float
    per_radius: tuple[bool, ...] = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        cut = self.threshold * (1.0 + MEMBERSHIP_RTOL)
        per = tuple(
            d <= cut and i <= cut for d, i in zip(self.direct_integrals, self.inverse_integrals)
        )
        object.__setattr__(self, "per_radius", per)
        object.__setattr__(self, "passed", all(per))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "radii": list(self.radii),
            "direct_integrals": list(self.direct_integrals),
            "inverse_integrals": list(self.inverse_integrals),
            "threshold": self.threshold,
            "per_radius": list(self.per_radius),
            "passed": self.passed,
        }


def membership_check(
    f: NormalizedFunction,
    cp: ClassParams,
    hp: HohlovParams,
    kind: Kind = "s",
    radii: Sequence[float] = DEFAULT_RADII,
    grid: int = DEFAULT_GRID,
    order: int | None = None,
) -> MembershipReport:
    """Run the P_m(beta) integral criterion on both defining transforms."""
    radii = tuple(float(r) for r in radii)
    for r in radii:
        if not 0.0 < r < 1.0:
            raise ParameterError(f"radii must lie in (0, 1), got {r}")
    direct = transform(kind, f, cp, hp, order)
    inverse = inverse_transforms(f, cp, hp, order, kind)
    return MembershipReport(
        kind=kind,
        radii=radii,
        direct_integrals=tuple(pm_integral(direct, r, cp.beta, grid) for r in radii),
        inverse_integrals=tuple(pm_integral(inverse, r, cp.beta, grid) for r in radii),
        threshold=cp.m * math.pi,
    )


# interface name kept for callers of the published API
lemma21_check = coefficient_bound_check
