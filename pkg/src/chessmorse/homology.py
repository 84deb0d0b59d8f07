"""Exact simplicial homology over Z, Q and GF(2).

Boundary maps use the sorted-vertex orientation, with the empty face as the
single (-1)-cell so that reduced homology falls out directly.  Integer ranks
and torsion come from a sparse elimination on unit pivots followed by a
dense Smith normal form of whatever is left (usually nothing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complex_core import SimplicialComplex, vertices

COEFFICIENTS = ("Z", "Q", "Z2")


class BoundaryError(AssertionError):
    """∂∘∂ ≠ 0; never expected, signals a construction bug."""


@dataclass
class BoundaryMatrix:
    """∂_p : C_p -> C_{p-1}, stored column-wise as {row index: entry}."""

    dim: int
    rows: list[int]
    cols: list[int]
    columns: list[dict[int, int]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def dense(self) -> list[list[int]]:
        out = [[0] * len(self.cols) for _ in self.rows]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out


def boundary_matrix(K: SimplicialComplex, p: int) -> BoundaryMatrix:
    """Boundary from p-faces to (p-1)-faces; p = 0 maps vertices onto ∅."""
    cols = K.faces_of_dim(p)
    rows = K.faces_of_dim(p - 1)
    index = {f: i for i, f in enumerate(rows)}
    columns = []
    for f in cols:
        col = {}
        for pos, v in enumerate(vertices(f)):
            col[index[f ^ (1 << v)]] = -1 if pos & 1 else 1
        columns.append(col)
    return BoundaryMatrix(p, rows, cols, columns)


def check_composition(upper: BoundaryMatrix, lower: BoundaryMatrix) -> None:
    """Raise BoundaryError unless lower ∘ upper = 0."""
    for j, col in enumerate(upper.columns):
        acc: dict[int, int] = {}
        for i, v in col.items():
            for r, w in lower.columns[i].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            raise BoundaryError(f"∂∂ ≠ 0 on column {j} of ∂_{upper.dim}")


# -- elimination ---------------------------------------------------------------

def _dense_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero Smith invariant factors of a small dense integer matrix."""
    A = [row[:] for row in mat]
    nr = len(A)
    nc = len(A[0]) if A else 0
    out = []
    t = 0
    while t < nr and t < nc:
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t onto the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, nr):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, nc):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility: fold in any entry not divisible by the pivot
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        out.append(abs(A[t][t]))
        t += 1
    return out


def invariant_factors(columns: list[dict[int, int]], modulus: int = 0) -> list[int]:
    """Nonzero invariant factors of the matrix given column-wise.

    With ``modulus=2`` entries are read in GF(2) and every factor is 1, so
    the length of the result is the GF(2) rank.
    """
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for j, c in enumerate(columns):
        col = {i: (v % modulus if modulus else v) for i, v in c.items()}
        col = {i: v for i, v in col.items() if v}
        if col:
            cols[j] = col
            for i in col:
                rows.setdefault(i, set()).add(j)

    def is_unit(v: int) -> bool:
        return v == 1 or v == -1 if not modulus else v != 0

    factors: list[int] = []
    work = sorted(cols, key=lambda j: -len(cols[j]))
    pending = set(work)
    stalled: set[int] = set()
    while work:
        j = work.pop()
        pending.discard(j)
        col = cols.get(j)
        if col is None:
            continue
        if not col:
            del cols[j]
            continue
        best = None
        for i, v in col.items():
            if is_unit(v) and (best is None or len(rows[i]) < len(rows[best])):
                best = i
        if best is None:
            stalled.add(j)
            continue
        i = best
        u = col[i]
        for j2 in list(rows[i]):
            if j2 == j:
                continue
            col2 = cols[j2]
            if modulus:
                factor = col2[i] * pow(u, -1, modulus) % modulus
            else:
                factor = col2[i] * u
            for r, v in col.items():
                nv = col2.get(r, 0) - factor * v
                if modulus:
                    nv %= modulus
                if nv:
                    if r not in col2:
                        rows[r].add(j2)
                    col2[r] = nv
                elif r in col2:
                    del col2[r]
                    rows[r].discard(j2)
            stalled.discard(j2)
            if j2 not in pending:
                pending.add(j2)
                work.append(j2)
        for r in col:
            rows[r].discard(j)
        del cols[j]
        del rows[i]
        factors.append(1)

    rest = [j for j in stalled if cols.get(j)]
    if rest:
        row_ids = sorted({i for j in rest for i in cols[j]})
        ri = {r: k for k, r in enumerate(row_ids)}
        dense = [[0] * len(rest) for _ in row_ids]
        for k, j in enumerate(rest):
            for i, v in cols[j].items():
                dense[ri[i]][k] = v
        if modulus:
            factors.extend([1] * _rank_mod(dense, modulus))
        else:
            factors.extend(_dense_invariants(dense))
    return sorted(factors)


def _rank_mod(mat: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in mat]
    rank = 0
    nc = len(A[0]) if A else 0
    for c in range(nc):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c] * inv % p
                A[r] = [(a - f * b) % p for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


# -- homology --------------------------------------------------------------------

@dataclass(frozen=True)
class BettiProfile:
    """Betti numbers b_0..b_dim; ``reduced`` runs over degrees -1..dim.

    ``torsion`` maps a degree to its torsion coefficients (integer case only).
    """

    coefficients: str
    betti: tuple[int, ...]
    reduced: tuple[int, ...]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def reduced_at(self, d: int) -> int:
        k = d + 1
        return self.reduced[k] if 0 <= k < len(self.reduced) else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.betti))

    @property
    def total(self) -> int:
        return sum(self.betti)

    def __str__(self) -> str:
        return "(" + ", ".join(str(b) for b in self.betti) + ")"


@dataclass
class HomologyStats:
    boundary_checks: int = 0
    complexes: int = 0


STATS = HomologyStats()


def betti(K: SimplicialComplex, coefficients: str = "Z") -> BettiProfile:
    """Betti numbers with exact arithmetic; Q ranks equal the free ranks over Z."""
    if coefficients not in COEFFICIENTS:
        raise ValueError(f"coefficients must be one of {COEFFICIENTS}")
    STATS.complexes += 1
    if K.is_void:
        return BettiProfile(coefficients, (), ())
    top = K.dim
    modulus = 2 if coefficients == "Z2" else 0
    # ranks[p] = rank of ∂_p for p = 0..top (∂_0 is the augmentation)
    ranks: dict[int, int] = {}
    tors: dict[int, tuple[int, ...]] = {}
    prev = None
    for p in range(0, top + 1):
        bm = boundary_matrix(K, p)
        if prev is not None:
            check_composition(bm, prev)
            STATS.boundary_checks += 1
        prev = bm
        facs = invariant_factors(bm.columns, modulus)
        ranks[p] = len(facs)
        big = tuple(x for x in facs if x > 1)
        if big and coefficients == "Z":
            tors[p - 1] = big
    reduced = []
    for d in range(-1, top + 1):
        nfaces = 1 if d == -1 else len(K.faces_of_dim(d))
        reduced.append(nfaces - ranks.get(d, 0) - ranks.get(d + 1, 0))
    bet = list(reduced[1:])
    if bet:
        bet[0] += 1
    return BettiProfile(coefficients, tuple(bet), tuple(reduced), tors)


def homological_connectivity(K: SimplicialComplex) -> float:
    """Largest c with vanishing reduced integer homology in every degree <= c.

    -2 for ``{∅}``, -1 for a disconnected complex, ``math.inf`` when the
    reduced homology vanishes everywhere.
    """
    if K.is_void:
        raise ValueError("connectivity of the void complex is undefined")
    h = betti(K, "Z")
    for d in range(-1, K.dim + 1):
        if h.reduced_at(d) or h.torsion.get(d):
            return d - 1
    return math.inf


def sphere_check(K: SimplicialComplex, d: int) -> bool:
    """Reduced integer homology of K equals that of S^d."""
    if K.is_void:
        return False
    h = betti(K, "Z")
    if h.torsion:
        return False
    for e in range(-1, max(K.dim, d) + 1):
        if h.reduced_at(e) != (1 if e == d else 0):
            return False
    return True
