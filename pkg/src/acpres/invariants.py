"""Abelianization screens: exact integer determinants and mod-2 row spaces.

These are cheap necessary conditions used to separate equivalence classes
before any search: every move acts on the exponent matrix by unimodular
row/column operations (or an identity block extension), so |det| never
changes, and the stable move set additionally preserves the mod-2 row
space up to stabilization padding.
"""

from dataclasses import dataclass

from . import words
from .errors import NotSquare
from .presentation import Presentation


@dataclass(frozen=True)
class ExponentMatrix:
    """One row per relator, one column per generator; exact integers."""

    rows: tuple[tuple[int, ...], ...]
    n_cols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols


def exponent_matrix(P: Presentation) -> ExponentMatrix:
    return ExponentMatrix(
        tuple(words.exponent_vector(r, P.n_generators) for r in P.relators),
        P.n_generators,
    )


def abs_det(M: ExponentMatrix) -> int:
    """|determinant| by fraction-free (Bareiss) elimination; exact."""
    if not M.is_square:
        raise NotSquare(f"matrix is {M.n_rows}x{M.n_cols}")
    n = M.n_cols
    if n == 0:
        return 1
    a = [list(r) for r in M.rows]
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return abs(a[n - 1][n - 1])


@dataclass(frozen=True)
class Mod2RowSpace:
    """Reduced row-echelon basis over GF(2), rows stored as bitmasks
    (bit j = column j), sorted by pivot column."""

    n_cols: int
    basis: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, mask: int) -> bool:
        return _xor_reduce(mask, self.basis) == 0


def _xor_reduce(v, basis):
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def _rref(vectors) -> tuple[int, ...]:
    basis = []
    for v in vectors:
        v = _xor_reduce(v, basis)
        if v:
            pivot = v & -v
            basis = [b ^ v if b & pivot else b for b in basis]
            basis.append(v)
            basis.sort(key=lambda b: b & -b)
    return tuple(basis)


def _row_masks(M: ExponentMatrix):
    for row in M.rows:
        mask = 0
        for j, e in enumerate(row):
            if e & 1:
                mask |= 1 << j
        yield mask


def mod2_row_space(M: ExponentMatrix) -> Mod2RowSpace:
    return Mod2RowSpace(M.n_cols, _rref(_row_masks(M)))


def padded_row_space(P: Presentation, n_total: int) -> Mod2RowSpace:
    """Row space after stabilizing ``P`` up to ``n_total`` generators
    (each stabilization contributes a fresh unit row)."""
    vectors = list(_row_masks(exponent_matrix(P)))
    vectors.extend(1 << k for k in range(P.n_generators, n_total))
    return Mod2RowSpace(n_total, _rref(vectors))


def sac_compatible(P1: Presentation, P2: Presentation) -> bool:
    """Equality of stabilization-padded mod-2 row spaces.

    False certifies the presentations are not equivalent under the stable
    move set; True is inconclusive.
    """
    n = max(P1.n_generators, P2.n_generators)
    return padded_row_space(P1, n) == padded_row_space(P2, n)


def basis_bitstrings(space: Mod2RowSpace) -> list[str]:
    return [
        "".join("1" if b >> j & 1 else "0" for j in range(space.n_cols))
        for b in space.basis
    ]
