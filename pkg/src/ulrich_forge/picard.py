"""Divisor arithmetic and intersection theory on Pic(X_e) = Z*C0 + Z*f.

Divisors carry no surface; every function takes the invariant ``e`` explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass


def check_e(e: int) -> int:
    if not isinstance(e, int) or e < 0:
        raise ValueError(f"Hirzebruch invariant must be a non-negative integer, got {e!r}")
    return e


@dataclass(frozen=True, order=True)
class Divisor:
    """The class ``alpha*C0 + beta*f``."""

    alpha: int
    beta: int

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: Divisor) -> Divisor:
        return Divisor(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> Divisor:
        return Divisor(-self.alpha, -self.beta)

    def __mul__(self, k: int) -> Divisor:
        return Divisor(k * self.alpha, k * self.beta)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.alpha
        yield self.beta

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


@dataclass(frozen=True)
class Polarization:
    """A candidate polarization ``h = a*C0 + b*f``.

    Very ampleness depends on ``e`` and is checked by :func:`check_very_ample`.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"polarization needs a > 0, got a={self.a}")

    @property
    def divisor(self) -> Divisor:
        return Divisor(self.a, self.b)

    def __iter__(self):
        yield self.a
        yield self.b


def as_divisor(D) -> Divisor:
    if isinstance(D, Divisor):
        return D
    if isinstance(D, Polarization):
        return D.divisor
    alpha, beta = D
    return Divisor(int(alpha), int(beta))


def intersect(e: int, D1, D2) -> int:
    """Intersection number using C0^2 = -e, C0.f = 1, f^2 = 0."""
    a1, b1 = as_divisor(D1)
    a2, b2 = as_divisor(D2)
    return -e * a1 * a2 + a1 * b2 + a2 * b1


def self_intersection(e: int, D) -> int:
    return intersect(e, D, D)


def canonical(e: int) -> Divisor:
    check_e(e)
    return Divisor(-2, -(2 + e))


def is_very_ample(e: int, D) -> bool:
    a, b = as_divisor(D)
    return a > 0 and b > a * e


def check_very_ample(e: int, h) -> Polarization:
    """Return ``h`` as a :class:`Polarization`, raising if it is not very ample on X_e."""
    check_e(e)
    a, b = as_divisor(h)
    if not is_very_ample(e, (a, b)):
        raise ValueError(
            f"h = {a}C0 + {b}f is not very ample on X_{e}: need a > 0 and b > a*e"
        )
    return h if isinstance(h, Polarization) else Polarization(a, b)
