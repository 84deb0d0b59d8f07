"""Discrete vector fields on simplicial complexes and two explicit Morse matchings.

A matching is stored as pairs ``(alpha, beta)`` of face masks with alpha a
facet of beta.  Both constructions here are written as a pure classification
``face -> partner | None``; the pair set is read off by running it on every
face and checking that partners agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .bier import BierError, BierFace, bier_sphere
from .chessboard import GridSpec, MultiplicityProfile, multiple_chessboard, star_condition
from .complex_core import SimplicialComplex, alexander_dual, boundary_faces, render


class MatchingError(ValueError):
    pass


class TrivialDualError(BierError):
    """K° = {∅}: the Bier matching has no base vertex on the K° side."""


class StarConditionError(MatchingError):
    pass


class CertificateNotApplicable(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DiscreteVectorField:
    complex: SimplicialComplex
    pairs: tuple[tuple[int, int], ...]
    _up: dict[int, int] = field(default_factory=dict, repr=False)
    _down: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for a, b in self.pairs:
            self._up.setdefault(a, b)
            self._down.setdefault(b, a)

    @classmethod
    def from_pairs(cls, K: SimplicialComplex, pairs: Iterable[tuple[int, int]]) -> DiscreteVectorField:
        return cls(K, tuple(sorted(pairs)))

    def up(self, alpha: int) -> int | None:
        return self._up.get(alpha)

    def down(self, beta: int) -> int | None:
        return self._down.get(beta)

    def is_matched(self, f: int) -> bool:
        return f in self._up or f in self._down

    def __len__(self) -> int:
        return len(self.pairs)


def validate(dvf: DiscreteVectorField) -> list[str]:
    """Every violation of the vector-field axioms; an empty list means valid."""
    K = dvf.complex
    problems = []
    seen: Counter[int] = Counter()
    for a, b in dvf.pairs:
        seen[a] += 1
        seen[b] += 1
        if a not in K.faces or b not in K.faces:
            problems.append(f"(b) pair {render(a)} -> {render(b)} uses a non-face")
        elif a & b != a or b.bit_count() != a.bit_count() + 1:
            problems.append(f"(b) {render(a)} is not a facet of {render(b)}")
        if a == 0 or b == 0:
            problems.append(f"(c) empty face matched in {render(a)} -> {render(b)}")
    for f, c in sorted(seen.items()):
        if c > 1:
            problems.append(f"(a) {render(f)} lies in {c} pairs")
    return problems


def critical_cells(dvf: DiscreteVectorField) -> list[int]:
    """Unmatched nonempty faces, ordered by dimension."""
    return [f for f in dvf.complex.sorted_faces() if f and not dvf.is_matched(f)]


def critical_counts(dvf: DiscreteVectorField) -> dict[int, int]:
    counts: Counter[int] = Counter(f.bit_count() - 1 for f in critical_cells(dvf))
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class GradientPath:
    """alpha_0, beta_0, alpha_1, beta_1, ..., alpha_r."""

    cells: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return len(self.cells) >= 3 and self.cells[0] == self.cells[-1]

    def check(self, dvf: DiscreteVectorField) -> bool:
        c = self.cells
        if len(c) % 2 == 0:
            return False
        for k in range(0, len(c) - 1, 2):
            a, b, nxt = c[k], c[k + 1], c[k + 2]
            if dvf.up(a) != b:
                return False
            if nxt == a or nxt & b != nxt or nxt.bit_count() + 1 != b.bit_count():
                return False
        return True

    def __str__(self) -> str:
        parts = [render(self.cells[0])]
        for k in range(1, len(self.cells)):
            parts.append(("↗ " if k % 2 else "↘ ") + render(self.cells[k]))
        return " ".join(parts)


@dataclass(frozen=True)
class Acyclicity:
    acyclic: bool
    closed_path: GradientPath | None = None

    def __bool__(self) -> bool:
        return self.acyclic


def is_acyclic(dvf: DiscreteVectorField) -> Acyclicity:
    """Look for a closed gradient path; returns a verified witness if one exists.

    Arcs run alpha -> alpha' when alpha is matched up to beta and alpha' is
    another facet of beta.  Only matched-up faces have outgoing arcs.
    """
    succ: dict[int, list[int]] = {}
    for a, b in dvf.pairs:
        succ[a] = [g for g in boundary_faces(b) if g != a and g in dvf._up]
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(succ, WHITE)
    for start in sorted(succ):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(succ[start]))]
        color[start] = GREY
        on_path = [start]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
                on_path.pop()
                continue
            if color[nxt] == GREY:
                cyc = on_path[on_path.index(nxt):] + [nxt]
                cells = []
                for a in cyc[:-1]:
                    cells.extend([a, dvf.up(a)])
                cells.append(cyc[-1])
                path = GradientPath(tuple(cells))
                if not (path.closed and path.check(dvf)):
                    raise AssertionError("closed-path witness failed re-verification")
                return Acyclicity(False, path)
            if color[nxt] == WHITE:
                color[nxt] = GREY
                on_path.append(nxt)
                stack.append((nxt, iter(succ[nxt])))
    return Acyclicity(True)


def gradient_paths_from(dvf: DiscreteVectorField, alpha: int, limit: int = 10_000) -> list[GradientPath]:
    """All maximal gradient paths starting at ``alpha`` (acyclic fields only)."""
    out: list[GradientPath] = []

    def walk(cells: list[int]) -> None:
        if len(out) >= limit:
            return
        a = cells[-1]
        b = dvf.up(a)
        if b is None:
            out.append(GradientPath(tuple(cells)))
            return
        nxts = [g for g in boundary_faces(b) if g != a]
        for g in nxts:
            walk(cells + [b, g])

    walk([alpha])
    return out


def matching_from_classifier(K: SimplicialComplex, partner: Callable[[int], int | None]) -> DiscreteVectorField:
    """Pairs from a face -> partner function, insisting on mutual agreement.

    A face whose partner would be the empty face stays unmatched.
    """
    pairs = []
    for f in K.sorted_faces():
        if f == 0:
            continue
        p = partner(f)
        if p is None or p == 0:
            continue
        if p not in K.faces:
            raise AssertionError(f"partner {render(p)} of {render(f)} is not a face")
        if abs(p.bit_count() - f.bit_count()) != 1 or (p & f) not in (p, f):
            raise AssertionError(f"partner {render(p)} of {render(f)} is not a facet/cofacet")
        back = partner(p)
        if back != f:
            raise AssertionError(f"inconsistent matching: {render(f)} -> {render(p)} -> "
                                 f"{render(back) if back is not None else 'critical'}")
        if p.bit_count() == f.bit_count() + 1:
            pairs.append((f, p))
    return DiscreteVectorField.from_pairs(K, pairs)


def connectivity_certificate(dvf: DiscreteVectorField) -> int:
    """N - 1, where N is the least dimension of a critical cell other than the
    unique critical vertex; needs exactly one critical vertex."""
    crit = critical_cells(dvf)
    verts = [f for f in crit if f.bit_count() == 1]
    if len(verts) != 1:
        raise CertificateNotApplicable(f"expected one critical vertex, found {len(verts)}")
    others = [f.bit_count() - 1 for f in crit if f.bit_count() > 1]
    n = min(others) if others else dvf.complex.dim + 1
    return n - 1


def morse_inequality_holds(dvf: DiscreteVectorField, betti: Iterable[int]) -> bool:
    counts = critical_counts(dvf)
    return all(counts.get(p, 0) >= b for p, b in enumerate(betti))


# -- Bier spheres -----------------------------------------------------------------

def _lowbit(x: int) -> int:
    return x & -x


def _highbit(x: int) -> int:
    return 1 << (x.bit_length() - 1) if x else 0


def bier_classifier(m: int, K_faces: frozenset[int] | set[int],
                    Kd_faces: frozenset[int] | set[int]) -> Callable[[int, int], tuple[int, int] | None]:
    """Partner of the Bier face (A1, A2; B) as a pair (A1', A2'), or None.

    Step 1 moves the least element of B into A2 when it is below all of A2
    and the enlarged A2 stays in K°.  Step 2 then, among faces left over,
    moves the largest element of B into A1 when it is above all of A1 and
    the enlarged A1 stays in K.  Comparisons with an empty set are vacuous.
    """
    full = (1 << m) - 1

    def step1(a1: int, a2: int) -> tuple[int, int] | None:
        b = full & ~(a1 | a2)
        lb, la2 = _lowbit(b), _lowbit(a2)
        if b and (not a2 or lb < la2) and (a2 | lb) in Kd_faces:
            return a1, a2 | lb
        if a2 and (not b or la2 < lb):
            return a1, a2 ^ la2
        return None

    def partner(a1: int, a2: int) -> tuple[int, int] | None:
        if not (a1 | a2):
            return None
        p = step1(a1, a2)
        if p is not None:
            return p
        b = full & ~(a1 | a2)
        hb, ha1 = _highbit(b), _highbit(a1)
        if b and hb > ha1 and (a1 | hb) in K_faces:
            if step1(a1 | hb, a2) is None:
                return a1 | hb, a2
        if a1 and ha1 > hb:
            if step1(a1 ^ ha1, a2) is None:
                return a1 ^ ha1, a2
        return None

    return partner


def bier_dmf(K: SimplicialComplex, allow_trivial_dual: bool = False) -> DiscreteVectorField:
    """Two-step matching on Bier(K) with exactly two critical cells.

    If {1} is in K° the critical vertex is (∅, {1}; rest); otherwise it is
    the mirror image ({m}, ∅; rest).  K° = {∅} is rejected unless
    ``allow_trivial_dual`` is set.
    """
    m = K.ground_size
    Kd = alexander_dual(K)
    if Kd.faces == frozenset({0}) and not allow_trivial_dual:
        raise TrivialDualError("K° = {∅}: trivial case, no element can be moved to the dual side")
    B = bier_sphere(K)
    classify = bier_classifier(m, K.faces, Kd.faces)
    full = (1 << m) - 1

    def partner(f: int) -> int | None:
        p = classify(f & full, f >> m)
        return None if p is None else p[0] | (p[1] << m)

    return matching_from_classifier(B, partner)


def bier_top_critical(K: SimplicialComplex, Kd: SimplicialComplex | None = None) -> list[BierFace]:
    """Critical (m-2)-cells of the Bier matching, found without building Bier(K).

    Scans faces (A1, A2; {i}) only; each is classified on its own.
    """
    m = K.ground_size
    if Kd is None:
        Kd = alexander_dual(K)
    classify = bier_classifier(m, K.faces, Kd.faces)
    full = (1 << m) - 1
    out = []
    for i in range(m):
        rest = full ^ (1 << i)
        sub = rest
        while True:
            a1, a2 = sub, rest ^ sub
            if a1 in K.faces and a2 in Kd.faces and classify(a1, a2) is None:
                out.append(BierFace(m, a1, a2))
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return out


# -- multiple chessboard complexes ------------------------------------------------

@dataclass(frozen=True)
class MatchingTrace:
    """State of the row-by-row scan when it stopped.

    ``step`` is the 1-based row that decided the face (n + 1 if it ran off the
    end); ``pointers`` holds a_1 <= a_2 <= ... (1-based columns) and
    ``reuse`` the counter T(R) at that point.
    """

    step: int
    pointers: tuple[int, ...]
    reuse: int
    outcome: str  # "up", "down", "critical", "base"
    undefined_pointer: bool = False


def multichess_classifier(g: GridSpec, mp: MultiplicityProfile):
    """face -> (partner | None, MatchingTrace) for the row-scan matching."""
    m, n = g.m, g.n
    kc, lc = mp.row_caps, mp.col_caps
    rmask = [g.row_mask(j) for j in range(n)]
    cmask = [g.col_mask(i) for i in range(m)]

    def classify(R: int) -> tuple[int | None, MatchingTrace]:
        a = -1
        T = 0
        ptrs: list[int] = []
        for k in range(n):
            row_full = (R & rmask[k]).bit_count() >= kc[k]
            if k > 0:
                cell = 1 << (a + m * k)
                if R & cell:
                    ptrs.append(a + 1)
                    return R ^ cell, MatchingTrace(k + 1, tuple(ptrs), T, "down")
                if (R & cmask[a]).bit_count() < lc[a] - T:
                    ptrs.append(a + 1)
                    if not row_full:
                        return R | cell, MatchingTrace(k + 1, tuple(ptrs), T, "up")
                    T += 1
                    continue
            c = a + 1
            while c < m:
                cell = 1 << (c + m * k)
                if R & cell or (R & cmask[c]).bit_count() < lc[c]:
                    break
                c += 1
            if c == m:
                return None, MatchingTrace(k + 1, tuple(ptrs), T, "critical", undefined_pointer=True)
            a = c
            ptrs.append(a + 1)
            cell = 1 << (a + m * k)
            if R & cell:
                return R ^ cell, MatchingTrace(k + 1, tuple(ptrs), T, "down")
            if not row_full:
                return R | cell, MatchingTrace(k + 1, tuple(ptrs), T, "up")
            T = 1
        return None, MatchingTrace(n + 1, tuple(ptrs), T, "critical")

    return classify


def multiple_chessboard_dmf(g: GridSpec, mp: MultiplicityProfile,
                            K: SimplicialComplex | None = None,
                            require_star: bool = True):
    """Row-scan matching on the multiple chessboard complex.

    Returns ``(dvf, traces)`` with one MatchingTrace per face.  Under
    condition (*) every critical face other than the base vertex has all
    rows full.
    """
    cond = star_condition(mp, g)
    if require_star and not cond.holds:
        raise StarConditionError(
            f"condition (*) fails: sum(l) = {cond.lhs} < sum(k) + n - 1 = {cond.rhs}; "
            f"the column pointer can run past column {g.m} before row {g.n}")
    if K is None:
        K = multiple_chessboard(g, mp)
    classify = multichess_classifier(g, mp)
    traces: dict[int, MatchingTrace] = {}

    def partner(f: int) -> int | None:
        p, tr = classify(f)
        traces[f] = tr
        return p

    dvf = matching_from_classifier(K, partner)
    out = {}
    for f in K.sorted_faces():
        if f == 0:
            continue
        tr = traces.get(f)
        if tr is None:
            _, tr = classify(f)
        if not dvf.is_matched(f) and tr.outcome != "critical":
            tr = MatchingTrace(tr.step, tr.pointers, tr.reuse, "base")
        out[f] = tr
    if require_star:
        bad = [f for f, t in out.items() if t.undefined_pointer and t.step <= g.n - 1]
        if bad:
            raise AssertionError(f"pointer undefined before the last row at {render(bad[0])}")
    return dvf, out
