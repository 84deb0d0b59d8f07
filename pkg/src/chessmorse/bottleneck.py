"""Bottleneck extrema of a clutter and its blocker.

For a clutter R on E and weights f, the min over R of the max weight equals
the max over the blocker S of the min weight.  Besides brute force, the
common value is read off the top critical cell (A1, A2; {i}) of the Bier
matching on K = 2^E minus the upper closure of R, with E relabeled so that
f is increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bier import BierFace
from .complex_core import (
    SimplicialComplex,
    _check_cap,
    alexander_dual,
    render,
    vertices,
    void_complex,
)
from .morse import bier_top_critical

Number = Fraction | int


class ClutterError(ValueError):
    pass


@dataclass(frozen=True)
class Clutter:
    """Antichain of nonempty subsets (bitmasks) of ``range(ground_size)``."""

    ground_size: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        ms = tuple(sorted(set(self.members), key=lambda x: (x.bit_count(), vertices(x))))
        object.__setattr__(self, "members", ms)
        for x in ms:
            if x == 0:
                raise ClutterError("clutter members must be nonempty")
            if x >> self.ground_size:
                raise ClutterError(f"member {render(x)} leaves the ground set")
        for x in ms:
            for y in ms:
                if x != y and x & y == x:
                    raise ClutterError(f"{render(x)} ⊂ {render(y)}: not an antichain")

    @classmethod
    def of(cls, ground_size: int, members: Iterable[Iterable[int]]) -> Clutter:
        masks = []
        for mem in members:
            mask = 0
            for v in mem:
                mask |= 1 << v
            masks.append(mask)
        return cls(ground_size, tuple(masks))

    @classmethod
    def minimal(cls, ground_size: int, sets: Iterable[int]) -> Clutter:
        """Inclusion-minimal members of an arbitrary family."""
        fam = sorted(set(sets), key=int.bit_count)
        keep: list[int] = []
        for x in fam:
            if not any(y & x == y for y in keep):
                keep.append(x)
        return cls(ground_size, tuple(keep))

    def __str__(self) -> str:
        return "{" + ", ".join(render(x) for x in self.members) + "}"


def upper_closure(R: Clutter) -> set[int]:
    """All subsets of E containing some member of R."""
    _check_cap(1 << R.ground_size)
    return {a for a in range(1 << R.ground_size) if any(x & a == x for x in R.members)}


def complement_complex(R: Clutter) -> SimplicialComplex:
    """2^E minus the upper closure of R (always downward closed)."""
    _check_cap(1 << R.ground_size)
    mem = R.members
    return SimplicialComplex(R.ground_size, frozenset(
        a for a in range(1 << R.ground_size) if not any(x & a == x for x in mem)))


def blocker(R: Clutter) -> Clutter:
    """Minimal transversals of R, built member by member (Berge's scheme)."""
    if not R.members:
        raise ClutterError("the blocker of the empty clutter is not a clutter of nonempty sets")
    trans = [0]
    for x in R.members:
        nxt = set()
        for t in trans:
            if t & x:
                nxt.add(t)
            else:
                for v in vertices(x):
                    nxt.add(t | (1 << v))
        trans = Clutter.minimal(R.ground_size, nxt).members
    return Clutter(R.ground_size, tuple(trans))


def blocker_bruteforce(R: Clutter) -> Clutter:
    """Minimal hitting sets by exhaustive search (small ground sets)."""
    hits = [a for a in range(1 << R.ground_size) if all(a & x for x in R.members)]
    return Clutter.minimal(R.ground_size, hits)


def dichotomy_violations(R: Clutter, S: Clutter, limit: int = 1) -> list[int]:
    """Subsets E0 for which not exactly one of 'a member of R lies in E0' and
    'a member of S lies in E \\ E0' holds."""
    full = (1 << R.ground_size) - 1
    bad = []
    for e0 in range(full + 1):
        e1 = full ^ e0
        r_in = any(x & e0 == x for x in R.members)
        s_in = any(y & e1 == y for y in S.members)
        if r_in == s_in:
            bad.append(e0)
            if len(bad) >= limit:
                break
    return bad


@dataclass(frozen=True)
class DualIdentityReport:
    holds: bool
    dual_of_K: SimplicialComplex
    complement_of_blocker: SimplicialComplex
    counterexample: int | None = None


def dual_complex_identity(R: Clutter) -> DualIdentityReport:
    """Compare K° for K = 2^E - closure(R) with 2^E - closure(blocker(R))."""
    K = complement_complex(R)
    lhs = alexander_dual(K)
    if R.members:
        rhs = complement_complex(blocker(R))
    else:
        # blocker of the empty clutter is {∅}, whose closure is all of 2^E
        rhs = void_complex(R.ground_size)
    diff = sorted(lhs.faces ^ rhs.faces)
    return DualIdentityReport(not diff, lhs, rhs, diff[0] if diff else None)


# -- weights ---------------------------------------------------------------------

def parse_weights(text: str) -> list[Fraction]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad weight {tok!r}") from None
    return out


def weight_order(f: Sequence[Number]) -> list[int]:
    """Elements sorted by (f-value, index); ties broken by index."""
    return sorted(range(len(f)), key=lambda e: (f[e], e))


def _ranks(f: Sequence[Number]) -> list[int]:
    rank = [0] * len(f)
    for r, e in enumerate(weight_order(f)):
        rank[e] = r
    return rank


@dataclass(frozen=True)
class Extremum:
    value: Number
    witness: int        # member of the clutter attaining the value
    element: int        # element of the witness carrying the value


def minmax_bruteforce(R: Clutter, f: Sequence[Number]) -> Extremum:
    """min over members I of max over x in I of f(x)."""
    if not R.members:
        raise ClutterError("empty clutter")
    rank = _ranks(f)
    best = None
    for x in R.members:
        top = max(vertices(x), key=lambda e: rank[e])
        if best is None or rank[top] < rank[best[1]]:
            best = (x, top)
    return Extremum(f[best[1]], best[0], best[1])


def maxmin_bruteforce(S: Clutter, f: Sequence[Number]) -> Extremum:
    """max over members J of min over x in J of f(x)."""
    if not S.members:
        raise ClutterError("empty clutter")
    rank = _ranks(f)
    best = None
    for y in S.members:
        low = min(vertices(y), key=lambda e: rank[e])
        if best is None or rank[low] > rank[best[1]]:
            best = (y, low)
    return Extremum(f[best[1]], best[0], best[1])


@dataclass(frozen=True)
class MorseBottleneck:
    value: Number
    element: int
    cell: BierFace          # (A1, A2; {i}) in the original labels
    relabeled_cell: BierFace  # same cell in the f-increasing labels


def bottleneck_via_morse(R: Clutter, f: Sequence[Number]) -> MorseBottleneck:
    """Read the bottleneck value off the unique top critical cell of the Bier matching."""
    n = R.ground_size
    if len(f) != n:
        raise ValueError(f"need {n} weights, got {len(f)}")
    if not R.members:
        raise ClutterError("empty clutter")
    if n < 2:
        raise ClutterError("ground set must have at least 2 elements")
    if n > 16:
        raise ClutterError("bottleneck_via_morse is limited to |E| <= 16")
    order = weight_order(f)       # new label r -> old element
    rank = _ranks(f)              # old element -> new label
    members = []
    for x in R.members:
        y = 0
        for v in vertices(x):
            y |= 1 << rank[v]
        members.append(y)
    Rr = Clutter(n, tuple(members))
    K = complement_complex(Rr)
    Kd = alexander_dual(K)
    cells = bier_top_critical(K, Kd)
    if len(cells) != 1:
        raise AssertionError(f"expected one top critical cell, found {len(cells)}")
    cell = cells[0]
    i = cell.B.bit_length() - 1
    a1, a2 = cell.A1, cell.A2
    if not (a1 in K.faces and a2 in Kd.faces
            and (not a1 or a1.bit_length() - 1 < i)
            and (not a2 or (a2 & -a2).bit_length() - 1 > i)):
        raise AssertionError(f"critical cell {cell} violates A1 < i < A2")

    def back(mask: int) -> int:
        out = 0
        for v in vertices(mask):
            out |= 1 << order[v]
        return out

    elem = order[i]
    orig = BierFace(n, back(a1), back(a2))
    return MorseBottleneck(f[elem], elem, orig, cell)


def parse_clutter(ground_size: int, text: str) -> Clutter:
    """``"1 2;1 3"`` (1-based) -> Clutter."""
    members = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        mask = 0
        for tok in chunk.replace(",", " ").split():
            try:
                v = int(tok)
            except ValueError:
                raise ClutterError(f"bad element token {tok!r}") from None
            if not 1 <= v <= ground_size:
                raise ClutterError(f"element {tok!r} out of range 1..{ground_size}")
            mask |= 1 << (v - 1)
        members.append(mask)
    return Clutter(ground_size, tuple(members))


def random_clutter(ground_size: int, rng, max_members: int = 6) -> Clutter:
    sets = [rng.randrange(1, 1 << ground_size) for _ in range(rng.randint(1, max_members))]
    return Clutter.minimal(ground_size, sets)


def random_injective_weights(ground_size: int, rng) -> list[Fraction]:
    """Distinct rationals with small numerators/denominators."""
    seen: set[Fraction] = set()
    out = []
    while len(out) < ground_size:
        w = Fraction(rng.randint(-50, 50), rng.randint(1, 4))
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out
