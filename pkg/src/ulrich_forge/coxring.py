"""Bigraded Cox ring k[s0, s1, t0, t1] of X_e over F_p.

Degrees: s0 -> (1, 0) = C0, s1 -> (1, e) = C0 + e f, t0, t1 -> (0, 1) = f.
The bidegree-(t, s) piece is H^0(O(tC0 + sf)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gfp
from .picard import Divisor, as_divisor, check_e

Monomial = tuple[int, int, int, int]


def monomial_degree(e: int, m: Monomial) -> Divisor:
    i, j, k, l = m
    return Divisor(i + j, j * e + k + l)


@lru_cache(maxsize=4096)
def _basis(e: int, t: int, s: int) -> tuple[Monomial, ...]:
    out = []
    if t < 0:
        return ()
    for i in range(t, -1, -1):
        j = t - i
        rest = s - j * e
        if rest < 0:
            continue
        for k in range(rest, -1, -1):
            out.append((i, j, k, rest - k))
    return tuple(sorted(out))


def monomial_basis(e: int, D) -> list[Monomial]:
    """All monomials of bidegree ``D``, lexicographic in (i, j, k, l)."""
    check_e(e)
    t, s = as_divisor(D)
    return list(_basis(e, t, s))


@dataclass(frozen=True)
class BigradedPoly:
    """A bihomogeneous form; ``terms`` maps monomials to coefficients in [1, p)."""

    e: int
    p: int
    degree: Divisor
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for m, c in self.terms.items():
            if monomial_degree(self.e, m) != self.degree:
                raise ValueError(f"monomial {m} is not of degree {self.degree}")
            if not 0 < c < self.p:
                raise ValueError(f"coefficient {c} outside [1, p)")

    @classmethod
    def zero(cls, e: int, p: int, degree) -> BigradedPoly:
        return cls(e, p, as_divisor(degree), {})

    @classmethod
    def from_terms(cls, e: int, p: int, degree, terms) -> BigradedPoly:
        clean = {}
        for m, c in dict(terms).items():
            c %= p
            if c:
                clean[tuple(m)] = c
        return cls(e, p, as_divisor(degree), clean)

    @classmethod
    def variable(cls, e: int, p: int, name: str) -> BigradedPoly:
        m = {"s0": (1, 0, 0, 0), "s1": (0, 1, 0, 0), "t0": (0, 0, 1, 0), "t1": (0, 0, 0, 1)}[name]
        return cls(e, p, monomial_degree(e, m), {m: 1})

    @classmethod
    def constant(cls, e: int, p: int, c: int = 1) -> BigradedPoly:
        return cls.from_terms(e, p, (0, 0), {(0, 0, 0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: BigradedPoly) -> BigradedPoly:
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return BigradedPoly.from_terms(self.e, self.p, self.degree, terms)

    def __neg__(self) -> BigradedPoly:
        return BigradedPoly.from_terms(self.e, self.p, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: BigradedPoly) -> BigradedPoly:
        return self + (-other)

    def __mul__(self, other: BigradedPoly) -> BigradedPoly:
        return multiply(self, other)

    def scale(self, c: int) -> BigradedPoly:
        return BigradedPoly.from_terms(self.e, self.p, self.degree, {m: c * v for m, v in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedPoly):
            return NotImplemented
        return (self.e, self.p, self.degree, self.terms) == (other.e, other.p, other.degree, other.terms)

    def __hash__(self):
        return hash((self.e, self.p, self.degree, tuple(self.sorted_terms())))


def multiply(f: BigradedPoly, g: BigradedPoly) -> BigradedPoly:
    if (f.e, f.p) != (g.e, g.p):
        raise ValueError("forms live in different rings")
    p = f.p
    terms: dict[Monomial, int] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
            terms[m] = (terms.get(m, 0) + c1 * c2) % p
    return BigradedPoly.from_terms(f.e, p, f.degree + g.degree, terms)


def random_form(e: int, D, p: int, rng: np.random.Generator) -> BigradedPoly:
    """Uniform coefficients in [0, p) on the full monomial basis of degree ``D``."""
    basis = monomial_basis(e, D)
    if not basis:
        return BigradedPoly.zero(e, p, D)
    coeffs = rng.integers(0, p, size=len(basis))
    return BigradedPoly.from_terms(e, p, D, dict(zip(basis, (int(c) for c in coeffs))))


@dataclass
class FormMatrix:
    """A map  sum_j O(col_twists[j]) -> sum_i O(row_twists[i])  of bihomogeneous forms."""

    e: int
    p: int
    row_twists: list[Divisor]
    col_twists: list[Divisor]
    entries: list[list[BigradedPoly]]

    def __post_init__(self):
        self.row_twists = [as_divisor(d) for d in self.row_twists]
        self.col_twists = [as_divisor(d) for d in self.col_twists]
        if len(self.entries) != len(self.row_twists):
            raise ValueError("entries do not match row twists")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.col_twists):
                raise ValueError("entries do not match column twists")
            for j, f in enumerate(row):
                want = self.row_twists[i] - self.col_twists[j]
                if not f.is_zero() and f.degree != want:
                    raise ValueError(f"entry ({i},{j}) has degree {f.degree}, expected {want}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_twists), len(self.col_twists)

    @classmethod
    def zeros(cls, e: int, p: int, row_twists, col_twists) -> FormMatrix:
        rows = [as_divisor(d) for d in row_twists]
        cols = [as_divisor(d) for d in col_twists]
        entries = [[BigradedPoly.zero(e, p, r - c) for c in cols] for r in rows]
        return cls(e, p, rows, cols, entries)

    @classmethod
    def identity(cls, e: int, p: int, twists) -> FormMatrix:
        M = cls.zeros(e, p, twists, twists)
        for i in range(len(twists)):
            M.entries[i][i] = BigradedPoly.constant(e, p)
        return M

    def compose(self, other: FormMatrix) -> FormMatrix:
        """``self o other``; requires other's row twists to equal self's column twists."""
        if other.row_twists != self.col_twists:
            raise ValueError("twists do not chain")
        out = FormMatrix.zeros(self.e, self.p, self.row_twists, other.col_twists)
        for i in range(len(self.row_twists)):
            for j in range(len(other.col_twists)):
                acc = out.entries[i][j]
                for k in range(len(self.col_twists)):
                    prod = multiply(self.entries[i][k], other.entries[k][j])
                    if not prod.is_zero():
                        acc = acc + prod
                out.entries[i][j] = acc
        return out

    def transpose_dual(self, target: Divisor) -> FormMatrix:
        """Same entries viewed as  sum_i O(target - row_i) -> sum_j O(target - col_j)."""
        target = as_divisor(target)
        entries = [[self.entries[i][j] for i in range(len(self.row_twists))] for j in range(len(self.col_twists))]
        return FormMatrix(
            self.e, self.p,
            [target - c for c in self.col_twists],
            [target - r for r in self.row_twists],
            entries,
        )

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "p": self.p,
            "row_twists": [list(d) for d in self.row_twists],
            "col_twists": [list(d) for d in self.col_twists],
            "entries": [[[[list(m), c] for m, c in f.sorted_terms()] for f in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> FormMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        e, p = int(data["e"]), int(data["p"])
        rows = [Divisor(*d) for d in data["row_twists"]]
        cols = [Divisor(*d) for d in data["col_twists"]]
        entries = []
        for i, row in enumerate(data["entries"]):
            entries.append([
                BigradedPoly.from_terms(e, p, rows[i] - cols[j], {tuple(m): c for m, c in terms})
                for j, terms in enumerate(row)
            ])
        return cls(e, p, rows, cols, entries)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at Cox coordinates ``points`` (n, 4); returns (n, rows, cols) mod p."""
        p = self.p
        points = np.asarray(points, dtype=np.int64) % p
        n = points.shape[0]
        rows, cols = self.shape
        out = np.zeros((n, rows, cols), dtype=np.int64)
        maxdeg = max((max(m) for row in self.entries for f in row for m in f.terms), default=0)
        powers = np.ones((4, maxdeg + 1, n), dtype=np.int64)
        for v in range(4):
            for d in range(1, maxdeg + 1):
                powers[v, d] = powers[v, d - 1] * points[:, v] % p
        for i in range(rows):
            for j in range(cols):
                acc = np.zeros(n, dtype=np.int64)
                for (a, b, c, d), coeff in self.entries[i][j].terms.items():
                    mono = powers[0, a] * powers[1, b] % p * powers[2, c] % p * powers[3, d] % p
                    acc = (acc + coeff * mono) % p
                out[:, i, j] = acc
        return out


@dataclass
class GradedPieceMap:
    matrix: np.ndarray
    domain_basis: list[list[Monomial]]
    codomain_basis: list[list[Monomial]]
    p: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def graded_piece_map(e: int, M: FormMatrix, twist, p: int | None = None) -> GradedPieceMap:
    """Matrix of  sum_j H^0(O(col_j + twist)) -> sum_i H^0(O(row_i + twist))  in monomial bases."""
    p = M.p if p is None else p
    twist = as_divisor(twist)
    dom = [monomial_basis(e, c + twist) for c in M.col_twists]
    cod = [monomial_basis(e, r + twist) for r in M.row_twists]
    col_off = np.cumsum([0] + [len(b) for b in dom])
    row_off = np.cumsum([0] + [len(b) for b in cod])
    mat = np.zeros((int(row_off[-1]), int(col_off[-1])), dtype=np.int64)
    for i, cbasis in enumerate(cod):
        if not cbasis:
            continue
        index = {m: n for n, m in enumerate(cbasis)}
        for j, dbasis in enumerate(dom):
            f = M.entries[i][j]
            if f.is_zero() or not dbasis:
                continue
            for n, m in enumerate(dbasis):
                col = col_off[j] + n
                for fm, c in f.terms.items():
                    prod = (m[0] + fm[0], m[1] + fm[1], m[2] + fm[2], m[3] + fm[3])
                    r = row_off[i] + index[prod]
                    mat[r, col] = (mat[r, col] + c) % p
    return GradedPieceMap(mat, dom, cod, p)


@dataclass(frozen=True)
class RankKernel:
    rank: int
    kernel_dim: int


def rank_and_kernel(Mp: GradedPieceMap) -> RankKernel:
    rank = gfp.rank_mod_p(Mp.matrix, Mp.p)
    return RankKernel(rank, Mp.matrix.shape[1] - rank)
