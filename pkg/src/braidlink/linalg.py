"""Dense exact linear algebra over the rationals.

Forward elimination is fraction free (Bareiss) on integer rows; the result is
then normalised into reduced row echelon form with Fractions.  Subspaces
are always stored as the reduced echelon basis, so equal subspaces compare
equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError

Q0 = Fraction(0)


class QMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise DimensionError("ragged matrix rows")
        self.ncols = ncols

    @classmethod
    def zeros(cls, r: int, c: int) -> "QMatrix":
        return cls([[Q0] * c for _ in range(r)], c)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self.rows == other.rows

    def transpose(self) -> "QMatrix":
        return QMatrix([[r[j] for r in self.rows] for j in range(self.ncols)], self.nrows)

    T = property(transpose)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.rows:
            acc = [Q0] * other.ncols
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b:
                        acc[j] += a * b
            out.append(acc)
        return QMatrix(out, other.ncols)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise DimensionError("vector length does not match matrix columns")
        return [sum((a * b for a, b in zip(r, v) if a and b), Q0) for r in self.rows]

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * den) for x in r])
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination; returns the nonzero echelon rows and pivot columns."""
    m = [list(r) for r in rows]
    nrows = len(m)
    k = 0
    prev = 1
    pivots = []
    for j in range(ncols):
        if k == nrows:
            break
        p = next((i for i in range(k, nrows) if m[i][j]), None)
        if p is None:
            continue
        m[k], m[p] = m[p], m[k]
        pk = m[k]
        piv = pk[j]
        for i in range(k + 1, nrows):
            row = m[i]
            a = row[j]
            if a:
                for l in range(j + 1, ncols):
                    row[l] = (piv * row[l] - a * pk[l]) // prev
            else:
                if piv != prev:
                    for l in range(j + 1, ncols):
                        if row[l]:
                            row[l] = (piv * row[l]) // prev
            row[j] = 0
        prev = piv
        pivots.append(j)
        k += 1
    return m[:k], pivots


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    ech, pivots = bareiss_echelon(_integer_rows(rows), ncols)
    out = [[Fraction(x, r[p]) for x in r] for r, p in zip(ech, pivots)]
    for i in range(len(out) - 1, -1, -1):
        p = pivots[i]
        ri = out[i]
        for k in range(i):
            c = out[k][p]
            if c:
                rk = out[k]
                for l in range(p, ncols):
                    if ri[l]:
                        rk[l] -= c * ri[l]
    return out, pivots


class Subspace:
    """A subspace of Q^n held as a reduced row echelon basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        vectors = [list(v) for v in vectors]
        if any(len(v) != ambient for v in vectors):
            raise DimensionError("vector length does not match ambient dimension")
        self.ambient = ambient
        self.basis, self.pivots = rref(vectors, ambient)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, QMatrix.identity(n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def matrix(self) -> QMatrix:
        return QMatrix(self.basis, self.ambient)

    def reduce(self, v: Sequence) -> list[Fraction]:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        r = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            c = r[p]
            if c:
                for l in range(p, self.ambient):
                    if row[l]:
                        r[l] -= c * row[l]
        return r

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coefficients of ``v`` in the echelon basis (``v`` must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [Fraction(v[p]) for p in self.pivots]

    def annihilator(self) -> "Subspace":
        """All ``c`` with ``c . v = 0`` for every ``v`` in the subspace."""
        if not self.basis:
            return Subspace.full(self.ambient)
        return kernel(self.matrix())

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionError("ambient dimension mismatch")
        return Subspace(self.ambient, self.basis + other.basis)


def kernel(M: QMatrix) -> Subspace:
    rows, pivots = rref(M.rows, M.ncols)
    n = M.ncols
    free = [j for j in range(n) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [Q0] * n
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace(n, vecs)


def image(M: QMatrix) -> Subspace:
    return Subspace(M.nrows, M.transpose().rows)


def preimage(L: QMatrix, W: Subspace, annihilator: QMatrix | None = None) -> Subspace:
    """``{x : L x in W}``, the kernel of (annihilator of W) composed with L.

    A caller that already knows rows cutting out ``W`` may pass them as
    ``annihilator`` and skip recomputing them.
    """
    if L.nrows != W.ambient:
        raise DimensionError(f"map has codomain {L.nrows}, subspace lives in {W.ambient}")
    if annihilator is None:
        ann = W.annihilator()
        if not ann.dim:
            return Subspace.full(L.ncols)
        annihilator = ann.matrix()
    elif annihilator.ncols != L.nrows:
        raise DimensionError("annihilator rows do not match the codomain")
    if annihilator.nrows == 0:
        return Subspace.full(L.ncols)
    return kernel(annihilator @ L)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    """Sum-kernel construction: solve ``x U = y W`` and map back through ``U``."""
    if U.ambient != W.ambient:
        raise DimensionError("ambient dimension mismatch")
    if not U.dim or not W.dim:
        return Subspace.zero(U.ambient)
    stacked = QMatrix(U.basis + [[-x for x in w] for w in W.basis], U.ambient)
    relations = kernel(stacked.transpose())
    vecs = []
    for rel in relations.basis:
        x = rel[: U.dim]
        v = [Q0] * U.ambient
        for c, u in zip(x, U.basis):
            if c:
                for l, ul in enumerate(u):
                    if ul:
                        v[l] += c * ul
        vecs.append(v)
    return Subspace(U.ambient, vecs)
