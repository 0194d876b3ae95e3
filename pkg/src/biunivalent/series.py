"""Truncated complex power series.

A :class:`TruncatedSeries` of order ``N`` stores the Taylor coefficients
``c_0 .. c_N`` of a polynomial in ``z``.  Binary operations truncate to the
smaller of the two operand orders, so a result never claims coefficients
that were not determined by both inputs.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from os import PathLike
from typing import Iterable, Sequence

import numpy as np

from .errors import CompositionRequiresZeroConstant, DivisionBySingularSeries, ParameterError

DEFAULT_ORDER = 16
EPS_DIV = 1e-12


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Degree-``N`` complex Taylor polynomial ``c_0 + c_1 z + ... + c_N z^N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if arr.size == 0:
            raise ParameterError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("series coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1, dtype=np.complex128))

    @classmethod
    def constant(cls, value: complex, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @classmethod
    def monomial(cls, k: int, order: int, value: complex = 1.0) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        if k <= order:
            c[k] = value
        return cls(c)

    @classmethod
    def geometric(cls, order: int, ratio: complex = 1.0) -> "TruncatedSeries":
        """Truncation of ``1 / (1 - ratio*z)``."""
        return cls(np.asarray(ratio, dtype=np.complex128) ** np.arange(order + 1))

    # basic protocol -----------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order}, coeffs={self.coeffs.tolist()!r})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ParameterError(f"cannot truncate order {self.order} series to order {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def with_order(self, order: int) -> "TruncatedSeries":
        """Truncate, or zero-pad treating the series as an exact polynomial."""
        if order <= self.order:
            return TruncatedSeries(self.coeffs[: order + 1])
        c = np.zeros(order + 1, dtype=np.complex128)
        c[: self.coeffs.size] = self.coeffs
        return TruncatedSeries(c)

    def allclose(self, other: "TruncatedSeries", rtol: float = 1e-12, atol: float = 1e-12) -> bool:
        if self.order != other.order:
            return False
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order) + 1
            return TruncatedSeries(self.coeffs[:n] + other.coeffs[:n])
        if isinstance(other, numbers.Number):
            c = self.coeffs.copy()
            c[0] += other
            return TruncatedSeries(c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (TruncatedSeries, numbers.Number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, numbers.Number):
            return TruncatedSeries(self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return TruncatedSeries(self.coeffs * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        if isinstance(other, numbers.Number):
            return TruncatedSeries(self.coeffs / other)
        return NotImplemented

    def __call__(self, z):
        return eval_at(self, z)

    # serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedSeries":
        try:
            order = int(data["order"])
            pairs = data["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed coefficient document: {exc}") from None
        if len(pairs) != order + 1:
            raise ParameterError(f"expected {order + 1} coefficient pairs, got {len(pairs)}")
        try:
            coeffs = [complex(float(re), float(im)) for re, im in pairs]
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"coefficients must be [re, im] pairs: {exc}") from None
        return cls(np.array(coeffs, dtype=np.complex128))


class NormalizedFunction(TruncatedSeries):
    """Truncated member of the class of normalized analytic functions.

    The coefficients satisfy ``c_0 == 0`` and ``c_1 == 1`` exactly, i.e. the
    series is ``z + a_2 z^2 + ... + a_N z^N``.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.order < 1:
            raise ParameterError("a normalized function needs order >= 1")
        if self.coeffs[0] != 0 or self.coeffs[1] != 1:
            raise ParameterError(
                f"normalized function requires c0 = 0 and c1 = 1, got c0={self.coeffs[0]}, c1={self.coeffs[1]}"
            )

    @classmethod
    def from_taylor(cls, tail: Sequence[complex] = (), order: int | None = None) -> "NormalizedFunction":
        """Build ``z + tail[0] z^2 + tail[1] z^3 + ...``, zero-padded to ``order``."""
        tail = list(tail)
        n = len(tail) + 1 if order is None else order
        if len(tail) > n - 1:
            raise ParameterError(f"{len(tail)} tail coefficients do not fit in order {n}")
        c = np.zeros(n + 1, dtype=np.complex128)
        c[1] = 1.0
        c[2 : 2 + len(tail)] = tail
        return cls(c)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "NormalizedFunction":
        return cls.from_taylor((), order)

    @classmethod
    def coerce(cls, s: TruncatedSeries) -> "NormalizedFunction":
        if isinstance(s, NormalizedFunction):
            return s
        return cls(s.coeffs)

    def tail(self) -> np.ndarray:
        """Coefficients ``a_2 .. a_N``."""
        return self.coeffs[2:]

    def with_order(self, order: int) -> "NormalizedFunction":
        return NormalizedFunction(super().with_order(order).coeffs)

    def truncate(self, order: int) -> "NormalizedFunction":
        return NormalizedFunction(super().truncate(order).coeffs)


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the shared order."""
    n = min(s.order, t.order) + 1
    return TruncatedSeries(np.convolve(s.coeffs[:n], t.coeffs[:n])[:n])


def div(s: TruncatedSeries, t: TruncatedSeries, eps: float = EPS_DIV) -> TruncatedSeries:
    """Quotient ``s / t`` by back-substitution; needs ``|t_0| > eps``."""
    t0 = t.coeffs[0]
    if abs(t0) <= eps:
        raise DivisionBySingularSeries(f"divisor constant term {t0!r} has modulus <= {eps}")
    n = min(s.order, t.order) + 1
    a, b = s.coeffs[:n], t.coeffs[:n]
    out = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        acc = a[k]
        if k:
            acc -= np.dot(b[1 : k + 1], out[k - 1 :: -1][:k])
        out[k] = acc / t0
    return TruncatedSeries(out)


def differentiate(s: TruncatedSeries) -> TruncatedSeries:
    if s.order < 1:
        raise ParameterError("differentiate needs order >= 1")
    k = np.arange(1, s.order + 1)
    return TruncatedSeries(k * s.coeffs[1:])


def divide_by_z(s: TruncatedSeries) -> TruncatedSeries:
    """Exact division by ``z`` of a series with zero constant term; order drops by one."""
    if s.coeffs[0] != 0:
        raise DivisionBySingularSeries("divide_by_z needs a zero constant term")
    if s.order < 1:
        raise ParameterError("divide_by_z needs order >= 1")
    return TruncatedSeries(s.coeffs[1:])


def multiply_by_z(s: TruncatedSeries) -> TruncatedSeries:
    """Exact product ``z * s``; order grows by one."""
    c = np.zeros(s.order + 2, dtype=np.complex128)
    c[1:] = s.coeffs
    return TruncatedSeries(c)


def hadamard(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise (convolution) product."""
    n = min(s.order, t.order) + 1
    out = s.coeffs[:n] * t.coeffs[:n]
    if isinstance(s, NormalizedFunction) and isinstance(t, NormalizedFunction):
        return NormalizedFunction(out)
    return TruncatedSeries(out)


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficients of ``f(g(z))``; the inner series must vanish at 0."""
    if g.coeffs[0] != 0:
        raise CompositionRequiresZeroConstant(f"inner constant term is {g.coeffs[0]!r}")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = TruncatedSeries.constant(f.coeffs[n], n)
    for c in f.coeffs[n - 1 :: -1] if n else ():
        acc = mul(acc, g) + c
    return acc


def revert(f: NormalizedFunction) -> NormalizedFunction:
    """Compositional inverse of a normalized function.

    Uses Lagrange inversion: ``[w^n] f^{-1} = (1/n) [z^{n-1}] (z/f(z))^n``.
    """
    f = NormalizedFunction.coerce(f)
    n_max = f.order
    h = div(TruncatedSeries.constant(1.0, n_max - 1), divide_by_z(f))
    out = np.zeros(n_max + 1, dtype=np.complex128)
    out[1] = 1.0
    power = h
    for n in range(2, n_max + 1):
        power = mul(power, h)
        out[n] = power.coeffs[n - 1] / n
    return NormalizedFunction(out)


def eval_at(s: TruncatedSeries, z):
    """Horner evaluation; ``z`` may be a scalar or a numpy array."""
    acc = np.zeros_like(np.asarray(z, dtype=np.complex128)) + s.coeffs[-1]
    for c in s.coeffs[-2::-1]:
        acc = acc * z + c
    if np.ndim(acc) == 0:
        return complex(acc)
    return acc


def dumps(s: TruncatedSeries) -> str:
    return json.dumps(s.to_dict())


def loads(text: str) -> TruncatedSeries:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid JSON: {exc}") from None
    return TruncatedSeries.from_dict(data)


def save(s: TruncatedSeries, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(s))
        fh.write("\n")


def load(path: str | PathLike) -> TruncatedSeries:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def coefficients(values: Iterable[complex]) -> TruncatedSeries:
    """Shorthand: ``coefficients([1, 2, 3])`` is ``1 + 2z + 3z^2``."""
    return TruncatedSeries(np.array(list(values), dtype=np.complex128))
