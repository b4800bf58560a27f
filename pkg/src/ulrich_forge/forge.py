"""Random Beilinson-type presentations and exact Ulrich certificates.

A candidate bundle is built either as the cokernel of

    phi: O^gamma(a-1, b-e-1) -> O^delta(a-1, b-e) + O^tau(a, b-1)

or as the kernel of

    psi: O^lambda(2a-1, 2b-2) + O^mu(2a-2, 2b-1-e) -> O^nu(2a-1, 2b-1).

Whether the map has full rank at every point is only sampled; the cohomological
Ulrich condition is decided exactly by elimination over F_p.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import asdict, dataclass, field

import numpy as np

from . import gfp
from .coxring import BigradedPoly, FormMatrix, graded_piece_map, random_form, rank_and_kernel
from .numerics import (
    chi_twist,
    coker_exponents,
    is_admissible_pair,
    ker_exponents,
    ulrich_line_bundles,
)
from .picard import Divisor, as_divisor, canonical, check_very_ample

DEFAULT_SAMPLES = 200


class ConstructionKind(str, enum.Enum):
    COKERNEL = "cokernel"
    KERNEL = "kernel"


class NotAdmissibleError(ValueError):
    """The pair (r, c1) is not an admissible Ulrich pair for h."""


class Status(str, enum.Enum):
    ULRICH = "ULRICH"
    NOT_ULRICH = "NOT_ULRICH"
    DEGENERATE_MAP = "DEGENERATE_MAP"


@dataclass(frozen=True)
class ProbeResult:
    samples_tested: int
    full_rank_everywhere: bool
    first_failure_point: list[int] | None = None


@dataclass(frozen=True)
class H2Check:
    codomain_defect: int
    h1_E_minus_2h: int
    h2_E_minus_2h: int


# --- map construction ---------------------------------------------------------


def _check_pair(e, h, r, c1):
    check_very_ample(e, h)
    if not is_admissible_pair(e, h, r, c1):
        raise NotAdmissibleError(f"(r={r}, c1={as_divisor(c1)}) is not admissible for h={tuple(h)} on X_{e}")


def phi_twists(e: int, h, gamma: int, delta: int, tau: int):
    a, b = h
    rows = [Divisor(a - 1, b - e)] * delta + [Divisor(a, b - 1)] * tau
    cols = [Divisor(a - 1, b - e - 1)] * gamma
    return rows, cols


def psi_twists(e: int, h, lam: int, mu: int, nu: int):
    a, b = h
    rows = [Divisor(2 * a - 1, 2 * b - 1)] * nu
    cols = [Divisor(2 * a - 1, 2 * b - 2)] * lam + [Divisor(2 * a - 2, 2 * b - 1 - e)] * mu
    return rows, cols


def random_form_matrix(e: int, p: int, rows, cols, rng: np.random.Generator) -> FormMatrix:
    entries = [[random_form(e, r - c, p, rng) for c in cols] for r in rows]
    return FormMatrix(e, p, rows, cols, entries)


def build_phi(e: int, h, r: int, c1, p: int = gfp.DEFAULT_PRIME, seed: int = 0) -> FormMatrix:
    _check_pair(e, h, r, c1)
    ex = coker_exponents(e, h, r, c1)
    if min(ex) < 0:
        raise ValueError(f"negative cokernel exponents {tuple(ex)}")
    rows, cols = phi_twists(e, tuple(h), *ex)
    return random_form_matrix(e, p, rows, cols, np.random.default_rng(seed))


def build_psi(e: int, h, r: int, c1, p: int = gfp.DEFAULT_PRIME, seed: int = 0) -> FormMatrix:
    _check_pair(e, h, r, c1)
    ex = ker_exponents(e, h, r, c1)
    if min(ex) < 0:
        raise ValueError(f"negative kernel exponents {tuple(ex)}")
    rows, cols = psi_twists(e, tuple(h), *ex)
    return random_form_matrix(e, p, rows, cols, np.random.default_rng(seed))


def _bidiagonal(e: int, p: int, n: int, x: BigradedPoly, y: BigradedPoly, row: Divisor, col: Divisor) -> list[list[BigradedPoly]]:
    # n x (n-1), x on the diagonal and y just below: cokernel O(n-1) on the line
    zero = BigradedPoly.zero(e, p, row - col)
    out = [[zero] * (n - 1) for _ in range(n)]
    for j in range(n - 1):
        out[j][j] = x
        out[j + 1][j] = y
    return out


def counterexample_phi(d: int, u: int, p: int = gfp.DEFAULT_PRIME) -> FormMatrix:
    """Block-diagonal phi on (X_0, O(d, d)) whose cokernel is O(u+d-1, d-1) + O(d-1, 3d-u-1).

    Both summands are non-Ulrich for 1 <= u <= d-1.
    """
    if not (d >= 2 and 1 <= u <= d - 1):
        raise ValueError("need d >= 2 and 1 <= u <= d-1")
    e = 0
    col = Divisor(d - 1, d - 1)
    top, bot = Divisor(d - 1, d), Divisor(d, d - 1)
    n_top, n_bot = 2 * d - u, u
    rows = [top] * n_top + [bot] * n_bot
    cols = [col] * (n_top - 1) + [col] * (n_bot - 1)
    M = FormMatrix.zeros(e, p, rows, cols)
    t0, t1 = BigradedPoly.variable(e, p, "t0"), BigradedPoly.variable(e, p, "t1")
    s0, s1 = BigradedPoly.variable(e, p, "s0"), BigradedPoly.variable(e, p, "s1")
    A = _bidiagonal(e, p, n_top, t0, t1, top, col)
    B = _bidiagonal(e, p, n_bot, s0, s1, bot, col)
    for i in range(n_top):
        for j in range(n_top - 1):
            M.entries[i][j] = A[i][j]
    for i in range(n_bot):
        for j in range(n_bot - 1):
            M.entries[n_top + i][n_top - 1 + j] = B[i][j]
    return M


# --- pointwise probe ----------------------------------------------------------

# coordinates forced to zero in each stratum: the open torus, the four boundary
# curves and the four torus-fixed points
_STRATA = ((), (0,), (1,), (2,), (3,), (0, 2), (0, 3), (1, 2), (1, 3))


def sample_points(p: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` Cox coordinates (s0, s1, t0, t1) with (s0,s1) != 0 != (t0,t1), cycling through strata."""
    pts = rng.integers(1, p, size=(n, 4))
    for k in range(n):
        for v in _STRATA[k % len(_STRATA)]:
            pts[k, v] = 0
    return pts


def probe_pointwise_rank(e: int, M: FormMatrix, p: int | None = None, n_samples: int = DEFAULT_SAMPLES,
                         rng: np.random.Generator | int | None = None) -> ProbeResult:
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    p = M.p if p is None else p
    rng = np.random.default_rng(rng)
    pts = sample_points(p, n_samples, rng)
    target = min(M.shape)
    values = M.evaluate(pts)
    for k in range(n_samples):
        if gfp.rank_mod_p(values[k], p) < target:
            return ProbeResult(k + 1, False, [int(x) for x in pts[k]])
    return ProbeResult(n_samples, True, None)


# --- exact checks -------------------------------------------------------------


def check_h0_vanishing_kernel(e: int, h, psi: FormMatrix, p: int | None = None) -> int:
    """h^0(E(-h)) for E = ker(psi), as the kernel of psi on sections at twist -h."""
    G = graded_piece_map(e, psi, -as_divisor(h), p)
    return rank_and_kernel(G).kernel_dim


def _check_phi_layout(e, h, phi: FormMatrix):
    a, b = h
    top, bot, col = Divisor(a - 1, b - e), Divisor(a, b - 1), Divisor(a - 1, b - e - 1)
    if any(c != col for c in phi.col_twists):
        raise ValueError("phi columns must all be twisted by (a-1, b-e-1)")
    kinds = [0 if r == top else 1 if r == bot else -1 for r in phi.row_twists]
    if -1 in kinds or kinds != sorted(kinds):
        raise ValueError("phi rows must be (a-1, b-e) twists followed by (a, b-1) twists")


def check_h2_injectivity_coker(e: int, h, phi: FormMatrix, p: int | None = None) -> H2Check:
    """Dimensions of H^1 and H^2 of E(-2h) for E = coker(phi).

    H^2(phi(-2h)) is dualised to the multiplication map
    sum_i H^0(K + 2h - row_i) -> sum_j H^0(K + 2h - col_j) by the entries of phi.
    Its cokernel is H^1(E(-2h)) and its kernel is H^2(E(-2h)).
    """
    h = tuple(as_divisor(h))
    _check_phi_layout(e, h, phi)
    target = canonical(e) + 2 * as_divisor(h)
    G = graded_piece_map(e, phi.transpose_dual(target), (0, 0), p)
    rk = rank_and_kernel(G)
    n_cod = G.shape[0]
    return H2Check(n_cod - rk.rank, n_cod - rk.rank, rk.kernel_dim)


def vanishing_table(e: int, h, psi: FormMatrix, p: int | None = None, window=()) -> list[dict]:
    """h^0(E(D)) for E = ker(psi), for each twist D in ``window``."""
    rows = []
    for D in window:
        D = as_divisor(D)
        G = graded_piece_map(e, psi, D, p)
        rows.append({"twist": D, "h0_dim": rank_and_kernel(G).kernel_dim})
    return rows


# --- certificates -------------------------------------------------------------

_COUNTER_RE = re.compile(r"^counterexample:d=(\d+),u=(\d+)$")


def parse_construction(construction: str) -> tuple[int, int] | None:
    if construction == "random":
        return None
    m = _COUNTER_RE.match(construction)
    if not m:
        raise ValueError(f"unknown construction {construction!r}")
    return int(m.group(1)), int(m.group(2))


@dataclass
class UlrichCertificate:
    e: int
    h: list[int]
    r: int
    c1: list[int]
    kind: str
    p: int
    seed: int
    construction: str
    n_samples: int
    exponents: dict
    admissible: bool
    chi_minus_h: int
    chi_minus_2h: int
    probe: dict
    exact_check_name: str
    exact_check_value: int | None
    status: str
    verdict: bool
    matrix: dict | None = field(default=None, repr=False)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> UlrichCertificate:
        return cls(**json.loads(text))


CERTIFICATE_FIELDS = tuple(UlrichCertificate.__dataclass_fields__)


def _split_summands(e, h, kind, ex) -> list[tuple[Divisor, int]]:
    a, b = h
    if kind is ConstructionKind.COKERNEL:
        return [(Divisor(a - 1, b - e), ex["delta"]), (Divisor(a, b - 1), ex["tau"])]
    return [(Divisor(2 * a - 1, 2 * b - 2), ex["lambda"]), (Divisor(2 * a - 2, 2 * b - 1 - e), ex["mu"])]


def certify(e: int, h, r: int, c1, kind=ConstructionKind.KERNEL, p: int = gfp.DEFAULT_PRIME, seed: int = 0,
            n_samples: int = DEFAULT_SAMPLES, construction: str = "random") -> UlrichCertificate:
    """Build one presentation from ``seed`` and decide exactly whether it is Ulrich.

    Raises :class:`NotAdmissibleError` for non-admissible pairs.  A failed probe
    yields ``status == "DEGENERATE_MAP"`` with no exact check.
    """
    kind = ConstructionKind(kind)
    gfp.check_prime(p)
    hP = check_very_ample(e, h)
    h = (hP.a, hP.b)
    c1 = as_divisor(c1)
    _check_pair(e, h, r, c1)
    counter = parse_construction(construction)

    ce, ke = coker_exponents(e, h, r, c1), ker_exponents(e, h, r, c1)
    ex = {"gamma": ce.gamma, "delta": ce.delta, "tau": ce.tau, "lambda": ke.lam, "mu": ke.mu, "nu": ke.nu}
    hD = Divisor(*h)
    chi1, chi2 = chi_twist(e, h, r, c1, -hD), chi_twist(e, h, r, c1, -2 * hD)
    base = dict(e=e, h=list(h), r=r, c1=list(c1), kind=kind.value, p=p, seed=seed, construction=construction,
                n_samples=n_samples, exponents=ex, admissible=True, chi_minus_h=chi1, chi_minus_2h=chi2)

    split = ce.gamma == 0 if kind is ConstructionKind.COKERNEL else ke.nu == 0
    if split and counter is None:
        # the presentation degenerates to a sum of line bundles
        ulrich = set(ulrich_line_bundles(e, h))
        bad = sum(1 for L, mult in _split_summands(e, h, kind, ex) if mult > 0 and L not in ulrich)
        verdict = bad == 0 and chi1 == 0 and chi2 == 0
        return UlrichCertificate(
            **base, probe=asdict(ProbeResult(0, True, None)), exact_check_name="non_ulrich_summands",
            exact_check_value=bad, status=(Status.ULRICH if verdict else Status.NOT_ULRICH).value,
            verdict=verdict, matrix=None,
        )

    if counter is not None:
        d, u = counter
        if kind is not ConstructionKind.COKERNEL or e != 0 or h != (d, d) or r != 2 or c1 != Divisor(2 * d - 2 + u, 4 * d - 2 - u):
            raise ValueError(f"{construction} needs kind=cokernel, e=0, h=({d},{d}), r=2, c1=({2*d-2+u},{4*d-2-u})")
        M = counterexample_phi(d, u, p)
    elif kind is ConstructionKind.COKERNEL:
        M = build_phi(e, h, r, c1, p, seed)
    else:
        M = build_psi(e, h, r, c1, p, seed)

    probe = probe_pointwise_rank(e, M, p, n_samples, np.random.default_rng([seed, 1]))
    if not probe.full_rank_everywhere:
        name = "h2(E(-2h))" if kind is ConstructionKind.COKERNEL else "h0(E(-h))"
        return UlrichCertificate(
            **base, probe=asdict(probe), exact_check_name=name, exact_check_value=None,
            status=Status.DEGENERATE_MAP.value, verdict=False, matrix=M.to_json(),
        )

    if kind is ConstructionKind.COKERNEL:
        chk = check_h2_injectivity_coker(e, h, M, p)
        if chk.h1_E_minus_2h != chk.h2_E_minus_2h:
            # only possible off the degree condition, which admissibility rules out
            raise AssertionError(f"h1 != h2 for E(-2h): {chk}")
        name, value = "h2(E(-2h))", chk.h2_E_minus_2h
    else:
        name, value = "h0(E(-h))", check_h0_vanishing_kernel(e, h, M, p)

    verdict = value == 0 and chi1 == 0 and chi2 == 0
    return UlrichCertificate(
        **base, probe=asdict(probe), exact_check_name=name, exact_check_value=value,
        status=(Status.ULRICH if verdict else Status.NOT_ULRICH).value, verdict=verdict, matrix=M.to_json(),
    )
