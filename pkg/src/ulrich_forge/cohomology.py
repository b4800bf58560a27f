"""Cohomology of line bundles O(tC0 + sf) on X_e.

Two independent routes:

* :func:`line_bundle_cohomology` -- closed form.  For t >= 0 the bundle pushes
  forward to Sym^t(O + O(-e)) (x) O(s) = sum_j O(s - j*e) on the line; t = -1
  is acyclic; t <= -2 goes through Serre duality.
* :func:`cech_cohomology` -- the Cech complex of the four maximal affine charts
  of the toric fan, assembled character by character over a box in M = Z^2.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .picard import Divisor, as_divisor, canonical, check_e, intersect


@dataclass(frozen=True)
class CohomologyTriple:
    h0: int
    h1: int
    h2: int

    def __iter__(self):
        yield self.h0
        yield self.h1
        yield self.h2

    def __getitem__(self, i: int) -> int:
        return (self.h0, self.h1, self.h2)[i]

    @property
    def euler(self) -> int:
        return self.h0 - self.h1 + self.h2

    def reversed(self) -> CohomologyTriple:
        return CohomologyTriple(self.h2, self.h1, self.h0)


@dataclass(frozen=True)
class LatticeBox:
    """Closed rectangle ``[lower, upper]`` of characters m = (m1, m2)."""

    lower: tuple[int, int]
    upper: tuple[int, int]

    def __post_init__(self):
        if self.lower[0] > self.upper[0] or self.lower[1] > self.upper[1]:
            raise ValueError(f"empty box {self.lower}..{self.upper}")

    @classmethod
    def default(cls, e: int, D) -> LatticeBox:
        t, s = as_divisor(D)
        m = abs(t) * (e + 1) + abs(s) + 4
        return cls((-m, -m), (m, m))


class BoxTruncationWarning(UserWarning):
    """A character on the boundary of the oracle box has nonzero cohomology."""


def _line_h(d: int) -> tuple[int, int]:
    """(h0, h1) of O(d) on the projective line."""
    return max(0, d + 1), max(0, -d - 1)


def line_bundle_cohomology(e: int, D) -> CohomologyTriple:
    check_e(e)
    t, s = as_divisor(D)
    if t == -1:
        return CohomologyTriple(0, 0, 0)
    if t <= -2:
        return line_bundle_cohomology(e, canonical(e) - Divisor(t, s)).reversed()
    h0 = h1 = 0
    for j in range(t + 1):
        a, b = _line_h(s - j * e)
        h0 += a
        h1 += b
    return CohomologyTriple(h0, h1, 0)


def h0(e: int, D) -> int:
    return line_bundle_cohomology(e, D).h0


def euler_char_line(e: int, D) -> int:
    """Riemann-Roch for a line bundle: 1 + (D^2 - D.K)/2."""
    D = as_divisor(D)
    num = intersect(e, D, D) - intersect(e, D, canonical(e))
    assert num % 2 == 0
    return 1 + num // 2


# --- toric Cech oracle ------------------------------------------------------
#
# Fan of X_e: rays v1=(1,0), v2=(0,1), v3=(-1,e), v4=(0,-1).  Linear equivalence
# gives D1 ~ D3 = f, D2 = C0 (self-intersection -e), D4 ~ C0 + e f.
# Maximal cones are consecutive ray pairs; the face shared by a set of charts is
# the intersection of their ray sets.

_CHARTS = ((0, 1), (1, 2), (2, 3), (3, 0))


def _rays(e: int) -> np.ndarray:
    return np.array([[1, 0], [0, 1], [-1, e], [0, -1]], dtype=np.int64)


def _rank_q(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


@lru_cache(maxsize=None)
def _pattern_cohomology(pattern: tuple[bool, bool, bool, bool]) -> tuple[int, int, int]:
    """Cech cohomology of one character given which ray inequalities hold.

    ``pattern[k]`` says whether <m, v_k> >= -a_k.  The character spans a
    section over the chart intersection U_I iff every ray of the common face
    of the charts in I satisfies its inequality.
    """
    cochains: list[list[tuple[int, ...]]] = []
    for size in range(1, 5):
        present = []
        for I in itertools.combinations(range(4), size):
            face = set(_CHARTS[I[0]]).intersection(*(_CHARTS[i] for i in I[1:]))
            if all(pattern[k] for k in face):
                present.append(I)
        cochains.append(present)

    ranks = []
    for p in range(3):
        src, dst = cochains[p], cochains[p + 1]
        if not src or not dst:
            ranks.append(0)
            continue
        index = {I: n for n, I in enumerate(src)}
        mat = []
        for J in dst:
            row = [0] * len(src)
            for k in range(len(J)):
                sub = J[:k] + J[k + 1:]
                if sub in index:
                    row[index[sub]] += (-1) ** k
            mat.append(row)
        ranks.append(_rank_q(mat))
    dims = [len(c) for c in cochains]
    h = [dims[0] - ranks[0]]
    h.append(dims[1] - ranks[1] - ranks[0])
    h.append(dims[2] - ranks[2] - ranks[1])
    h3 = dims[3] - ranks[2]
    # four affine charts on a separated surface: Cech H^3 must vanish
    assert h3 == 0, (pattern, h3)
    return tuple(h)


def cech_cohomology(e: int, D, box: LatticeBox | None = None) -> CohomologyTriple:
    """Cech cohomology of O(D), summed over characters in ``box``.

    Emits :class:`BoxTruncationWarning` if a boundary character contributes.
    """
    check_e(e)
    t, s = as_divisor(D)
    if box is None:
        box = LatticeBox.default(e, (t, s))
    # D = t*C0 + s*f = s*D1 + t*D2
    coeffs = np.array([s, t, 0, 0], dtype=np.int64)
    m1, m2 = np.meshgrid(
        np.arange(box.lower[0], box.upper[0] + 1),
        np.arange(box.lower[1], box.upper[1] + 1),
        indexing="ij",
    )
    pairing = m1[..., None] * _rays(e)[:, 0] + m2[..., None] * _rays(e)[:, 1]
    ok = pairing >= -coeffs
    code = ok[..., 0] * 1 + ok[..., 1] * 2 + ok[..., 2] * 4 + ok[..., 3] * 8

    boundary = np.zeros(code.shape, dtype=bool)
    boundary[0, :] = boundary[-1, :] = boundary[:, 0] = boundary[:, -1] = True

    total = np.zeros(3, dtype=np.int64)
    truncated = False
    counts = np.bincount(code.ravel(), minlength=16)
    edge_counts = np.bincount(code[boundary].ravel(), minlength=16)
    for c in range(16):
        if counts[c] == 0:
            continue
        pattern = tuple(bool(c >> k & 1) for k in range(4))
        h = np.array(_pattern_cohomology(pattern))
        if h.any():
            total += counts[c] * h
            truncated |= bool(edge_counts[c])
    if truncated:
        warnings.warn(
            f"Cech box {box.lower}..{box.upper} too small for D=({t},{s}) on X_{e}",
            BoxTruncationWarning,
            stacklevel=2,
        )
    return CohomologyTriple(*(int(x) for x in total))
