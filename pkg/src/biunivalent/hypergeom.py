"""Pochhammer symbols, Gauss hypergeometric coefficients and the Hohlov operator.

The Hohlov operator ``I_{a,b,c}`` is the Hadamard product with
``z * 2F1(a, b; c; z)``; it multiplies the ``n``-th Taylor coefficient of a
normalized function by

    phi_n = (a)_{n-1} (b)_{n-1} / ((c)_{n-1} (n-1)!).

Classical special cases:

* ``b = 1`` gives the Carlson-Shaffer operator ``L(a, c) = I_{a,1,c}``;
* ``(1, 1+delta, 2+delta)`` gives the Bernardi operator;
* ``(1, 1, 2)`` and ``(1, 2, 3)`` give the Alexander and Libera operators;
* ``(a, 1, a)`` is the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .series import DEFAULT_ORDER, NormalizedFunction, TruncatedSeries, eval_at, hadamard


@dataclass(frozen=True)
class HohlovParams:
    """Positive real parameters ``(a, b, c)`` of the Hohlov operator."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if isinstance(value, complex):
                raise ParameterError(f"{name} must be real, got {value!r}")
            value = float(value)
            if not math.isfinite(value) or value <= 0:
                raise ParameterError(f"{name} must be a finite positive real, got {value!r}")
            object.__setattr__(self, name, value)

    def phi(self, n: int) -> float:
        return phi_n(self, n)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial ``alpha (alpha+1) ... (alpha+n-1)``, with ``(alpha)_0 = 1``."""
    if n < 0:
        raise ParameterError(f"pochhammer index must be nonnegative, got {n}")
    result = 1.0
    for k in range(n):
        result *= alpha + k
        if math.isinf(result):
            raise OverflowError(f"({alpha})_{n} overflows double precision at factor {k + 1}")
    return result


def phi_sequence(params: HohlovParams, n_max: int) -> np.ndarray:
    """``[phi_1, ..., phi_{n_max}]`` by the ratio recurrence.

    ``phi_{n+1} / phi_n = (a+n-1)(b+n-1) / ((c+n-1) n)``.
    """
    if n_max < 1:
        raise ParameterError(f"n must be >= 1, got {n_max}")
    a, b, c = params.a, params.b, params.c
    out = np.empty(n_max)
    value = 1.0
    out[0] = value
    for n in range(1, n_max):
        value *= (a + n - 1) * (b + n - 1) / ((c + n - 1) * n)
        if math.isinf(value):
            raise OverflowError(f"phi_{n + 1} overflows double precision")
        out[n] = value
    return out


def phi_n(params: HohlovParams, n: int) -> float:
    return float(phi_sequence(params, n)[-1])


def gauss_2f1_series(params: HohlovParams, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Taylor polynomial of ``2F1(a, b; c; z)`` through ``z^order``.

    Each coefficient is evaluated directly from Pochhammer products, which
    keeps this route independent of :func:`phi_sequence`.
    """
    if order < 0:
        raise ParameterError(f"order must be >= 0, got {order}")
    c = [
        pochhammer(params.a, k) * pochhammer(params.b, k) / (pochhammer(params.c, k) * math.factorial(k))
        for k in range(order + 1)
    ]
    return TruncatedSeries(np.array(c, dtype=np.complex128))


def hohlov_kernel(params: HohlovParams, order: int = DEFAULT_ORDER) -> NormalizedFunction:
    """``z * 2F1(a, b; c; z)`` truncated at ``order``."""
    f21 = gauss_2f1_series(params, order - 1)
    c = np.zeros(order + 1, dtype=np.complex128)
    c[1:] = f21.coeffs
    c[1] = 1.0
    return NormalizedFunction(c)


def hohlov_apply(params: HohlovParams, f: NormalizedFunction, order: int | None = None) -> NormalizedFunction:
    """Apply ``I_{a,b,c}``: coefficient ``n`` becomes ``phi_n * a_n``."""
    f = NormalizedFunction.coerce(f)
    if order is not None:
        f = f.with_order(order)
    out = f.coeffs.copy()
    out[1:] *= phi_sequence(params, f.order)
    out[1] = 1.0
    return NormalizedFunction(out)


def hohlov_apply_by_convolution(params: HohlovParams, f: NormalizedFunction) -> NormalizedFunction:
    """Same image as :func:`hohlov_apply`, built as an explicit Hadamard product."""
    f = NormalizedFunction.coerce(f)
    return hadamard(hohlov_kernel(params, f.order), f)


def bernardi_apply(f: NormalizedFunction, delta: float, order: int | None = None) -> NormalizedFunction:
    """Bernardi integral operator ``(1+delta) z^{-delta} int_0^z t^{delta-1} f(t) dt``.

    Integrated termwise: ``a_n z^n`` maps to ``a_n (1+delta)/(n+delta) z^n``.
    """
    delta = float(delta)
    if not delta > -1:
        raise ParameterError(f"Bernardi delta must satisfy delta > -1, got {delta}")
    f = NormalizedFunction.coerce(f)
    if order is not None:
        f = f.with_order(order)
    n = np.arange(f.order + 1)
    weights = np.ones(f.order + 1)
    weights[1:] = (1 + delta) / (n[1:] + delta)
    out = f.coeffs * weights
    out[1] = 1.0
    return NormalizedFunction(out)


def bernardi_quadrature(f: TruncatedSeries, delta: float, z: complex, nodes: int = 64) -> complex:
    """Evaluate the Bernardi integral at ``z`` by Gauss-Legendre quadrature.

    Along the segment ``t = z s`` the operator becomes
    ``(1+delta) int_0^1 s^{delta-1} f(z s) ds``.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    s = 0.5 * (x + 1.0)
    values = eval_at(f, z * s)
    return complex((1 + delta) * 0.5 * np.sum(w * s ** (delta - 1) * values))


def named_operator(name: str, a: float | None = None, c: float | None = None) -> HohlovParams:
    """Hohlov parameters of a classical operator.

    ``name`` is one of ``alexander``, ``libera``, ``carlson_shaffer`` (needs
    ``a`` and ``c``) or ``identity`` (uses ``a``, default 1).
    """
    key = name.lower().replace("-", "_")
    if key == "alexander":
        return HohlovParams(1, 1, 2)
    if key == "libera":
        return HohlovParams(1, 2, 3)
    if key in ("carlson_shaffer", "carlson"):
        if a is None or c is None:
            raise ParameterError("carlson_shaffer needs both a and c")
        return HohlovParams(a, 1, c)
    if key == "identity":
        a = 1.0 if a is None else a
        return HohlovParams(a, 1, a)
    raise ParameterError(f"unknown operator {name!r}")


def bernardi_params(delta: float) -> HohlovParams:
    return HohlovParams(1, 1 + delta, 2 + delta)
