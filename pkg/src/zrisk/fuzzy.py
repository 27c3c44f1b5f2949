"""Triangular fuzzy numbers and Z-numbers.

All values are immutable; every operation returns a new :class:`TFN`.
Only nonnegative operands are accepted by ``mul``, ``div`` and ``pow``
because every decision scale used here is nonnegative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .exceptions import DegenerateInputError, DomainError


@dataclass(frozen=True)
class TFN:
    """Triangular fuzzy number ``(a, b, c)`` with ``a <= b <= c``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        # normalise ints / numpy scalars to plain floats
        for n in ("a", "b", "c"):
            object.__setattr__(self, n, float(getattr(self, n)))
        bad = [n for n in ("a", "b", "c") if not math.isfinite(getattr(self, n))]
        if bad:
            raise DomainError(
                f"TFN components must be finite, got non-finite {', '.join(bad)} "
                f"in ({self.a}, {self.b}, {self.c})",
                code="fuzzy.construction",
            )
        if not (self.a <= self.b <= self.c):
            offending = []
            if self.a > self.b:
                offending.append(f"a={self.a} > b={self.b}")
            if self.b > self.c:
                offending.append(f"b={self.b} > c={self.c}")
            raise DomainError(
                "TFN ordering violated: " + ", ".join(offending),
                code="fuzzy.construction",
            )

    @classmethod
    def crisp(cls, x: float) -> "TFN":
        return cls(x, x, x)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __add__(self, other):
        return tfn_add(self, other)

    def __mul__(self, other):
        if isinstance(other, TFN):
            return tfn_mul(self, other)
        return tfn_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return tfn_div(self, other)

    def __pow__(self, w):
        return tfn_pow(self, w)

    def dominates(self, other: "TFN") -> bool:
        """Componentwise ``>=``."""
        return self.a >= other.a and self.b >= other.b and self.c >= other.c


ONE = TFN(1.0, 1.0, 1.0)
ZERO = TFN(0.0, 0.0, 0.0)


def tfn_new(a: float, b: float, c: float) -> TFN:
    return TFN(a, b, c)


def _require_nonnegative(x: TFN, op: str):
    if x.a < 0:
        raise DomainError(f"{op} requires a nonnegative TFN, got {x.as_tuple()}")


def tfn_add(x: TFN, y: TFN) -> TFN:
    return TFN(x.a + y.a, x.b + y.b, x.c + y.c)


def tfn_mul(x: TFN, y: TFN) -> TFN:
    _require_nonnegative(x, "tfn_mul")
    _require_nonnegative(y, "tfn_mul")
    return TFN(x.a * y.a, x.b * y.b, x.c * y.c)


def tfn_scale(x: TFN, k: float) -> TFN:
    if not k >= 0:
        raise DomainError(f"tfn_scale factor must be nonnegative, got {k}")
    return TFN(k * x.a, k * x.b, k * x.c)


def tfn_div(x: TFN, y: TFN) -> TFN:
    """Interval-style division ``(xa/yc, xb/yb, xc/ya)``."""
    if y.a <= 0:
        raise DomainError(
            f"divisor must be strictly positive (a > 0), got {y.as_tuple()}",
            code="fuzzy.division-domain",
        )
    _require_nonnegative(x, "tfn_div")
    return TFN(x.a / y.c, x.b / y.b, x.c / y.a)


def tfn_pow(x: TFN, w: float) -> TFN:
    _require_nonnegative(x, "tfn_pow")
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"exponent must lie in [0, 1], got {w}")
    return TFN(x.a ** w, x.b ** w, x.c ** w)


def tfn_sum(xs: Iterable[TFN]) -> TFN:
    total = ZERO
    for x in xs:
        total = tfn_add(total, x)
    return total


def tfn_mean(xs: Iterable[TFN]) -> TFN:
    xs = list(xs)
    if not xs:
        raise DegenerateInputError("cannot average an empty list of TFNs")
    return tfn_scale(tfn_sum(xs), 1.0 / len(xs))


def centroid(x: TFN) -> float:
    """Centre of area of the triangular membership function.

    For a triangle the integral ``∫ y μ(y) dy / ∫ μ(y) dy`` reduces to the
    mean of the three vertices.
    """
    # clamp guards the last-ulp rounding of the sum; a <= result <= c
    return min(max((x.a + x.b + x.c) / 3.0, x.a), x.c)


@dataclass(frozen=True)
class ZNumber:
    """Ordered pair of a restriction and its reliability."""

    restriction: TFN
    reliability: TFN

    def __post_init__(self):
        r = self.reliability
        if r.a < 0 or r.c > 1:
            raise DomainError(
                f"reliability must lie within [0, 1], got {r.as_tuple()}",
                code="fuzzy.construction",
            )


def z_to_tfn(z: ZNumber) -> TFN:
    """Weight the restriction by the square root of the crisp reliability."""
    alpha = centroid(z.reliability)
    return tfn_scale(z.restriction, math.sqrt(alpha))
