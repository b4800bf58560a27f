"""Integer invariants of Ulrich bundles on (X_e, h = aC0 + bf).

Everything is exact: half-integers are handled in doubled integers or with
:class:`fractions.Fraction`.  Divisors are ``(alpha, beta)`` pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .picard import Divisor, Polarization, as_divisor, canonical, check_e, check_very_ample, intersect


@dataclass(frozen=True)
class BundleNumerics:
    r: int
    c1: Divisor
    c2: int


@dataclass(frozen=True)
class ChernCheck:
    degree_ok: bool
    c2: int


@dataclass(frozen=True)
class ExponentsCoker:
    gamma: int
    delta: int
    tau: int

    def __iter__(self):
        yield from (self.gamma, self.delta, self.tau)


@dataclass(frozen=True)
class ExponentsKer:
    lam: int
    mu: int
    nu: int

    def __iter__(self):
        yield from (self.lam, self.mu, self.nu)


@dataclass(frozen=True)
class MonadExponents:
    eps: int
    zeta: int
    eta: int
    theta: int

    def __iter__(self):
        yield from (self.eps, self.zeta, self.eta, self.theta)


@dataclass(frozen=True)
class AdmissiblePair:
    r: int
    c1: Divisor


def _h(h) -> tuple[int, int]:
    a, b = as_divisor(h)
    return a, b


def ulrich_degree_doubled(e: int, h, r: int) -> int:
    """2 * (r/2)(3h^2 + hK) = r(3h^2 + hK)."""
    K = canonical(e)
    return r * (3 * intersect(e, h, h) + intersect(e, h, K))


def degree_condition(e: int, h, r: int, c1) -> bool:
    return 2 * intersect(e, c1, h) == ulrich_degree_doubled(e, h, r)


def special_class(e: int, h, r: int = 2) -> Divisor | None:
    """(r/2)(3h + K), or None when it is not integral."""
    D = 3 * as_divisor(h) + canonical(e)
    if (r * D.alpha) % 2 or (r * D.beta) % 2:
        return None
    return Divisor(r * D.alpha // 2, r * D.beta // 2)


def ulrich_chern_conditions(e: int, h, r: int, c1) -> ChernCheck:
    """Degree condition and the forced c2 of a rank ``r`` Ulrich bundle.

    ``c2 = (c1^2 - c1.K)/2 - r(h^2 - 1)``.
    """
    check_very_ample(e, h)
    K = canonical(e)
    num = intersect(e, c1, c1) - intersect(e, c1, K)
    if num % 2:
        raise ValueError(f"c1^2 - c1.K = {num} is odd: no integral c2")
    c2 = num // 2 - r * (intersect(e, h, h) - 1)
    return ChernCheck(degree_condition(e, h, r, c1), c2)


def chi_twist(e: int, h, r: int, c1, D) -> int:
    """chi(E(D)) = r h^2 + c1.D + (r/2) D.(D - K) for E satisfying the Ulrich Chern equalities."""
    D = as_divisor(D)
    DDK = intersect(e, D, D - canonical(e))
    assert DDK % 2 == 0
    return r * intersect(e, h, h) + intersect(e, c1, D) + r * DDK // 2


def coker_exponents(e: int, h, r: int, c1) -> ExponentsCoker:
    a, b = _h(h)
    al, be = as_divisor(c1)
    gamma = al + be - r * (a + b - 1) - e * (al - a * r)
    delta = be - r * (b - 1) - e * (al - a * r)
    tau = al - r * (a - 1)
    return ExponentsCoker(gamma, delta, tau)


def ker_exponents(e: int, h, r: int, c1) -> ExponentsKer:
    a, b = _h(h)
    al, be = as_divisor(c1)
    lam = r * (2 * b - 1 - e) - be - e * (r * (2 * a - 2) - al)
    mu = r * (2 * a - 1) - al
    nu = r * (2 * a + 2 * b - 3 - e) - al - be - e * (r * (2 * a - 2) - al)
    return ExponentsKer(lam, mu, nu)


def monad_exponents(e: int, h, r: int, c1) -> MonadExponents:
    a, b = _h(h)
    if a <= 1:
        raise ValueError("the monad presentation needs a > 1")
    al, be = as_divisor(c1)
    eps = 2 * al + be - r * (2 * a + b - 1) - e * (al - a * r)
    zeta = 2 * al - 2 * r * (a - 1)
    eta = al + be - r * (a + b - 1) - e * (al - a * r)
    theta = al - r * (a - 1)
    return MonadExponents(eps, zeta, eta, theta)


def c1_from_coker(e: int, h, gamma: int, delta: int, tau: int) -> tuple[int, Divisor]:
    """Rank and c1 of the cokernel of O^gamma(a-1,b-e-1) -> O^delta(a-1,b-e) + O^tau(a,b-1)."""
    a, b = _h(h)
    r = delta + tau - gamma
    return r, Divisor(tau + r * (a - 1), r * (b - 1) + delta - e * (r - tau))


def c1_from_ker(e: int, h, lam: int, mu: int, nu: int) -> tuple[int, Divisor]:
    a, b = _h(h)
    r = lam + mu - nu
    return r, Divisor(r * (2 * a - 1) - mu, r * (2 * b - 1 - e) - lam - e * (mu - r))


def is_admissible_pair(e: int, h, r: int, c1) -> bool:
    """Whether ``(r, c1)`` passes the degree identity and the exponent windows."""
    check_very_ample(e, h)
    if r <= 0:
        return False
    a, b = _h(h)
    al, be = as_divisor(c1)
    if not degree_condition(e, h, r, c1):
        return False
    lo, hi = r * (a - 1), r * (2 * a - 1)
    if e > 0 and a > 1:
        if not lo < al < hi:
            return False
    elif not lo <= al <= hi:
        return False
    if not r * (b - 1) - e * (al - r * (2 * a - 2)) <= be <= r * (2 * b - 1) - e * (r * (2 * a - 1) - al):
        return False
    # The beta window above is centred at a constant, so on its own it lets
    # classes above the centre through with delta < 0.  Requiring delta >= 0
    # restores the duality c1 -> r(3h+K) - c1 and agrees with the alpha window
    # of alpha_range() + integrality.
    return coker_exponents(e, h, r, c1).delta >= 0


def alpha_range(e: int, h, r: int) -> tuple[Fraction, Fraction]:
    """Closed rational interval for alpha implied by the beta-bounds."""
    a, b = _h(h)
    shift = Fraction(e * r * a * (a - 1), 2 * b)
    return r * (a - 1) + shift, r * (2 * a - 1) - shift


def t_value(e: int, h, r: int, alpha: int) -> Fraction:
    """T = (er/2)(3a-1) + (b/a)(alpha + r); integral iff beta is."""
    a, b = _h(h)
    return Fraction(e * r * (3 * a - 1), 2) + Fraction(b, a) * (alpha + r)


def enumerate_admissible_c1(e: int, h, r: int) -> list[Divisor]:
    check_very_ample(e, h)
    a, b = _h(h)
    lo, hi = alpha_range(e, h, r)
    out = []
    for al in range(math.ceil(lo), math.floor(hi) + 1):
        T = t_value(e, h, r, al)
        if T.denominator != 1:
            continue
        be = r * (3 * b - 1) + al * e - int(T)
        if is_admissible_pair(e, h, r, (al, be)):
            out.append(Divisor(al, be))
    return out


def ulrich_line_bundles(e: int, h) -> list[Divisor]:
    check_very_ample(e, h)
    a, b = _h(h)
    if e == 0:
        return [Divisor(2 * a - 1, b - 1), Divisor(a - 1, 2 * b - 1)]
    if a != 1:
        return []
    return [Divisor(0, 2 * b - 1 - e), Divisor(1, b - 1)]


def delta_threshold(e: int, h, t: int) -> Fraction:
    a, b = _h(h)
    den = b - a * e + e
    if den <= 0:
        raise ValueError(f"b - ae + e = {den} must be positive")
    return Fraction(t * b, den)


def odd_rank_obstruction(e: int, h, r: int) -> bool:
    """True when r is odd and below Delta_1, so no admissible pair of rank r exists.

    Valid only for gcd(a, b) = 1, e > 0, a > 1 and (a odd or e even).
    """
    check_very_ample(e, h)
    a, b = _h(h)
    if math.gcd(a, b) != 1 or e <= 0 or a <= 1 or (a % 2 == 0 and e % 2 == 1):
        raise ValueError("odd-rank obstruction needs gcd(a,b)=1, e>0, a>1 and (a odd or e even)")
    return r % 2 == 1 and r < delta_threshold(e, h, 1)


def bogomolov_discriminant(e: int, r: int, c1, c2: int) -> int:
    if r != 2:
        raise ValueError("the discriminant 4c2 - c1^2 is the rank-two normalization")
    return 4 * c2 - intersect(e, c1, c1)


def moduli_dimension(e: int, h, r: int, c1) -> int:
    """c1^2 - r c1.K - r^2 (2h^2 - 1) + 1."""
    K = canonical(e)
    return intersect(e, c1, c1) - r * intersect(e, c1, K) - r * r * (2 * intersect(e, h, h) - 1) + 1


def null_direction(e: int, h) -> Divisor:
    """D = aC0 + (ae - b)f, with D.h = 0 and D^2 = -h^2."""
    a, b = _h(h)
    return Divisor(a, a * e - b)


def chi_hom(e: int, h, first: tuple[int, int], second: tuple[int, int]) -> int:
    """chi(E_i (x) E_j^dual) for even-rank Ulrich E_i, E_j with c1 = (r/2)(3h+K) + k D."""
    (ri, ki), (rj, kj) = first, second
    if ri % 2 or rj % 2:
        raise ValueError("chi_hom needs even ranks")
    a, b = _h(h)
    h2 = intersect(e, h, h)
    KD = 2 * b - 2 * a - a * e
    return -(ri * rj // 4) * (h2 - 4) + KD * (ri // 2 * kj - rj // 2 * ki) + ki * kj * h2
