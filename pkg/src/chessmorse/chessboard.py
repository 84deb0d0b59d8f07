"""Standard, generalized and multiple chessboard complexes on the [m]×[n] grid.

Cell (i, j) with column i in [m] and row j in [n] is vertex ``i + m*j``
(0-based), the same layout as :func:`complex_core.deleted_join_jwise`.
Row j carries the complex K_j (or cap k_j) on its column trace
{i : (i, j) in A}; column i carries L_i (or cap l_i) on {j : (i, j) in A}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex_core import (
    SimplicialComplex,
    _check_cap,
    full_simplex,
    grid_labels,
    vertices,
)


@dataclass(frozen=True)
class GridSpec:
    m: int  # columns
    n: int  # rows

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError(f"grid dimensions must be >= 1, got {self.m}x{self.n}")

    def cell(self, i: int, j: int) -> int:
        """Vertex index of column i, row j (0-based)."""
        return i + self.m * j

    def coords(self, v: int) -> tuple[int, int]:
        return v % self.m, v // self.m

    def row_mask(self, j: int) -> int:
        return ((1 << self.m) - 1) << (self.m * j)

    def col_mask(self, i: int) -> int:
        mask = 0
        for j in range(self.n):
            mask |= 1 << (i + self.m * j)
        return mask

    @property
    def size(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class MultiplicityProfile:
    row_caps: tuple[int, ...]  # k_1..k_n
    col_caps: tuple[int, ...]  # l_1..l_m

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_caps", tuple(int(x) for x in self.row_caps))
        object.__setattr__(self, "col_caps", tuple(int(x) for x in self.col_caps))
        if any(x < 0 for x in self.row_caps + self.col_caps):
            raise ValueError("caps must be nonnegative")

    def check(self, g: GridSpec) -> None:
        if len(self.row_caps) != g.n or len(self.col_caps) != g.m:
            raise ValueError(f"expected {g.n} row caps and {g.m} column caps, got "
                             f"{len(self.row_caps)} and {len(self.col_caps)}")

    @classmethod
    def uniform(cls, g: GridSpec, k: int = 1, l: int = 1) -> MultiplicityProfile:
        return cls((k,) * g.n, (l,) * g.m)


@dataclass(frozen=True)
class ComplexPair:
    """Row complexes K_1..K_n over [m] and column complexes L_1..L_m over [n]."""

    row_complexes: tuple[SimplicialComplex, ...]
    col_complexes: tuple[SimplicialComplex, ...]

    def check(self, g: GridSpec) -> None:
        if len(self.row_complexes) != g.n or len(self.col_complexes) != g.m:
            raise ValueError("need n row complexes and m column complexes")
        if any(K.ground_size != g.m for K in self.row_complexes):
            raise ValueError("row complexes must live on [m]")
        if any(L.ground_size != g.n for L in self.col_complexes):
            raise ValueError("column complexes must live on [n]")


@dataclass(frozen=True)
class StarCondition:
    lhs: int  # l_1 + ... + l_m
    rhs: int  # k_1 + ... + k_n + n - 1

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self) -> bool:
        return self.holds


def star_condition(mp: MultiplicityProfile, g: GridSpec) -> StarCondition:
    mp.check(g)
    return StarCondition(sum(mp.col_caps), sum(mp.row_caps) + g.n - 1)


def cap_complex(ground_size: int, cap: int) -> SimplicialComplex:
    """All subsets of size at most ``cap``."""
    return SimplicialComplex(ground_size, frozenset(
        f for f in range(1 << ground_size) if f.bit_count() <= cap))


def _grid_complex(g: GridSpec, faces: list[int]) -> SimplicialComplex:
    return SimplicialComplex(g.size, frozenset(faces), grid_labels(g.m, g.n))


def generalized_chessboard(g: GridSpec, pair: ComplexPair) -> SimplicialComplex:
    """Placements whose row traces lie in K_j and column traces lie in L_i."""
    pair.check(g)
    m, n = g.m, g.n
    rows = [K.sorted_faces() for K in pair.row_complexes]
    cols = [L.faces for L in pair.col_complexes]
    if any(not r for r in rows) or any(not c for c in cols):
        return SimplicialComplex(g.size, frozenset(), grid_labels(m, n))
    out: list[int] = []

    # column traces are grown row by row; L_i downward closed makes pruning exact
    def extend(j: int, acc: int, traces: tuple[int, ...]) -> None:
        if j == n:
            out.append(acc)
            if len(out) & 0xFFFF == 0:
                _check_cap(len(out))
            return
        bit = 1 << j
        for a in rows[j]:
            new = list(traces)
            ok = True
            for i in vertices(a):
                t = new[i] | bit
                if t not in cols[i]:
                    ok = False
                    break
                new[i] = t
            if ok:
                extend(j + 1, acc | (a << (m * j)), tuple(new))

    extend(0, 0, (0,) * m)
    _check_cap(len(out))
    return _grid_complex(g, out)


def multiple_chessboard(g: GridSpec, mp: MultiplicityProfile) -> SimplicialComplex:
    """At most k_j rooks in row j and at most l_i rooks in column i."""
    mp.check(g)
    m, n = g.m, g.n
    kcaps, lcaps = mp.row_caps, mp.col_caps
    row_choices = [[a for a in range(1 << m) if a.bit_count() <= kcaps[j]
                    and all(lcaps[i] >= 1 for i in vertices(a))] for j in range(n)]
    out: list[int] = []

    def extend(j: int, acc: int, counts: tuple[int, ...]) -> None:
        if j == n:
            out.append(acc)
            if len(out) & 0xFFFF == 0:
                _check_cap(len(out))
            return
        for a in row_choices[j]:
            new = list(counts)
            ok = True
            for i in vertices(a):
                new[i] += 1
                if new[i] > lcaps[i]:
                    ok = False
                    break
            if ok:
                extend(j + 1, acc | (a << (m * j)), tuple(new))

    extend(0, 0, (0,) * m)
    _check_cap(len(out))
    return _grid_complex(g, out)


def standard_chessboard(g: GridSpec) -> SimplicialComplex:
    """Non-taking rook placements."""
    return multiple_chessboard(g, MultiplicityProfile.uniform(g))


def cap_pair(g: GridSpec, mp: MultiplicityProfile) -> ComplexPair:
    """The ComplexPair whose generalized chessboard is the multiple chessboard."""
    mp.check(g)
    return ComplexPair(tuple(cap_complex(g.m, k) for k in mp.row_caps),
                       tuple(cap_complex(g.n, l) for l in mp.col_caps))


def transpose_grid(g: GridSpec, mp: MultiplicityProfile | None = None):
    """Swap rows and columns; caps swap roles accordingly."""
    gt = GridSpec(g.n, g.m)
    if mp is None:
        return gt
    mp.check(g)
    return gt, MultiplicityProfile(mp.col_caps, mp.row_caps)


def transpose_vertex(g: GridSpec, v: int) -> int:
    i, j = g.coords(v)
    return j + g.n * i


def transpose_complex(K: SimplicialComplex, g: GridSpec) -> SimplicialComplex:
    """Image of a complex on the grid g under (i, j) -> (j, i)."""
    if K.ground_size != g.size:
        raise ValueError("complex does not live on this grid")
    perm = [transpose_vertex(g, v) for v in range(g.size)]
    faces = set()
    for f in K.faces:
        out = 0
        for v in vertices(f):
            out |= 1 << perm[v]
        faces.add(out)
    return SimplicialComplex(g.size, frozenset(faces), grid_labels(g.n, g.m))


def full_grid_simplex(g: GridSpec) -> SimplicialComplex:
    return full_simplex(g.size).with_labels(grid_labels(g.m, g.n))


def row_counts(R: int, g: GridSpec) -> list[int]:
    return [(R & g.row_mask(j)).bit_count() for j in range(g.n)]


def col_counts(R: int, g: GridSpec) -> list[int]:
    return [(R & g.col_mask(i)).bit_count() for i in range(g.m)]


def parse_caps(text: str, expected: int | None = None, what: str = "caps") -> tuple[int, ...]:
    try:
        caps = tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise ValueError(f"bad {what} {text!r}") from None
    if expected is not None and len(caps) != expected:
        raise ValueError(f"expected {expected} {what}, got {len(caps)} in {text!r}")
    return caps

