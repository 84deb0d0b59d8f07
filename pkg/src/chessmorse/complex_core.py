"""Finite simplicial complexes stored as explicit families of bitmask faces.

A face is a Python ``int`` whose set bits are its (0-based) vertices, so the
empty face is ``0``.  Vertices are rendered 1-based in all text output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

DEFAULT_FACE_CAP = 2**22
_face_cap = DEFAULT_FACE_CAP


class InstanceTooLarge(ValueError):
    """Raised when a construction would enumerate more faces than the cap."""


class IsomorphismUndecided(RuntimeError):
    """The isomorphism search ran out of budget before reaching a verdict."""


def get_face_cap() -> int:
    return _face_cap


def set_face_cap(cap: int) -> int:
    """Set the global face-count cap; returns the previous value."""
    global _face_cap
    if cap < 1:
        raise ValueError(f"face cap must be positive, got {cap}")
    old, _face_cap = _face_cap, cap
    return old


def _check_cap(count: int) -> None:
    if count > _face_cap:
        raise InstanceTooLarge(f"instance exceeds the face cap ({count} > {_face_cap})")


# -- face helpers -----------------------------------------------------------

def face(vertices: Iterable[int]) -> int:
    """Bitmask of a collection of 0-based vertex indices."""
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"negative vertex index {v}")
        mask |= 1 << v
    return mask


def vertices(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def dim(mask: int) -> int:
    return mask.bit_count() - 1


def subfaces(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def boundary_faces(mask: int) -> Iterator[int]:
    m = mask
    while m:
        low = m & -m
        yield mask ^ low
        m ^= low


def render(mask: int, labels: Sequence[str] | None = None) -> str:
    """``{1,3}`` style rendering; 1-based unless labels are supplied."""
    vs = vertices(mask)
    if labels is None:
        return "{" + ",".join(str(v + 1) for v in vs) + "}"
    return "{" + ",".join(labels[v] for v in vs) + "}"


def face_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical ordering: by dimension, then lexicographically by vertices."""
    return (mask.bit_count(), vertices(mask))


# -- complexes --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Downward-closed family of faces over the ground set ``range(ground_size)``.

    The void complex has no faces at all; ``{∅}`` contains only the empty face.
    Labels are used for rendering only and do not take part in equality.
    """

    ground_size: int
    faces: frozenset[int]
    labels: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.ground_size < 0:
            raise ValueError("ground size must be nonnegative")
        if self.labels is not None and len(self.labels) != self.ground_size:
            raise ValueError("one label per ground element required")

    def __contains__(self, mask: object) -> bool:
        return mask in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_faces())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.ground_size == other.ground_size and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.ground_size, self.faces))

    def __repr__(self) -> str:
        return f"SimplicialComplex(ground_size={self.ground_size}, f={self.f_vector()})"

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def dim(self) -> int:
        if not self.faces:
            return -2
        return max(f.bit_count() for f in self.faces) - 1

    @property
    def full_mask(self) -> int:
        return (1 << self.ground_size) - 1

    def sorted_faces(self) -> list[int]:
        if "sorted" not in self._cache:
            self._cache["sorted"] = sorted(self.faces, key=face_key)
        return self._cache["sorted"]

    def faces_of_dim(self, p: int) -> list[int]:
        by_dim = self._cache.get("by_dim")
        if by_dim is None:
            by_dim = {}
            for f in self.sorted_faces():
                by_dim.setdefault(f.bit_count() - 1, []).append(f)
            self._cache["by_dim"] = by_dim
        return by_dim.get(p, [])

    def facets(self) -> list[int]:
        if "facets" not in self._cache:
            fs = self.faces
            out = [f for f in self.sorted_faces()
                   if not any((f | (1 << v)) in fs
                              for v in range(self.ground_size) if not f >> v & 1)]
            self._cache["facets"] = out
        return self._cache["facets"]

    def used_vertices(self) -> list[int]:
        return [v for v in range(self.ground_size) if (1 << v) in self.faces]

    def f_vector(self) -> tuple[int, ...]:
        return f_vector(self)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v + 1)

    def render(self, mask: int) -> str:
        return render(mask, self.labels)

    def with_labels(self, labels: Sequence[str] | None) -> SimplicialComplex:
        return SimplicialComplex(self.ground_size, self.faces,
                                 tuple(labels) if labels is not None else None)


def _closure(facets: Iterable[int]) -> set[int]:
    faces: set[int] = set()
    for f in facets:
        if f in faces:
            continue
        _check_cap(len(faces) + (1 << f.bit_count()))
        faces.update(subfaces(f))
    _check_cap(len(faces))
    return faces


def from_facets(ground_size: int, facets: Iterable[Iterable[int] | int],
                labels: Sequence[str] | None = None) -> SimplicialComplex:
    """Downward closure of ``facets`` (vertex iterables or masks, 0-based).

    An empty facet list gives the void complex; ``[[]]`` gives ``{∅}``.
    """
    masks = []
    limit = 1 << ground_size
    for f in facets:
        mask = f if isinstance(f, int) else face(f)
        if mask >= limit:
            bad = max(vertices(mask))
            raise ValueError(f"vertex {bad + 1} out of range for ground set of size {ground_size}")
        masks.append(mask)
    return SimplicialComplex(ground_size, frozenset(_closure(masks)),
                             tuple(labels) if labels is not None else None)


def from_faces(ground_size: int, faces: Iterable[int],
               labels: Sequence[str] | None = None, check: bool = True) -> SimplicialComplex:
    """Wrap an already downward-closed family of masks."""
    fs = frozenset(faces)
    _check_cap(len(fs))
    K = SimplicialComplex(ground_size, fs, tuple(labels) if labels is not None else None)
    if check:
        bad = first_closure_violation(K)
        if bad is not None:
            raise ValueError(f"family is not downward closed: {render(bad[0])} ⊂ {render(bad[1])}")
    return K


def first_closure_violation(K: SimplicialComplex) -> tuple[int, int] | None:
    """A pair (missing facet, face) witnessing failure of downward closure."""
    for f in K.faces:
        if f >= 1 << K.ground_size:
            return (f, f)
        for g in boundary_faces(f):
            if g not in K.faces:
                return (g, f)
    if K.faces and 0 not in K.faces:
        return (0, min(K.faces))
    return None


def void_complex(ground_size: int) -> SimplicialComplex:
    return SimplicialComplex(ground_size, frozenset())


def full_simplex(ground_size: int) -> SimplicialComplex:
    _check_cap(1 << ground_size)
    return SimplicialComplex(ground_size, frozenset(range(1 << ground_size)))


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    """Face counts by dimension 0..dim K; the empty face is not counted."""
    if K.dim < 0:
        return ()
    counts = [0] * (K.dim + 1)
    for f in K.faces:
        if f:
            counts[f.bit_count() - 1] += 1
    return tuple(counts)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * c for d, c in enumerate(f_vector(K)))


def alexander_dual(K: SimplicialComplex) -> SimplicialComplex:
    """``{E \\ A : A not in K}`` over the same ground set E.

    The full simplex dualizes to the void complex and vice versa.
    """
    _check_cap(1 << K.ground_size)
    full = K.full_mask
    fs = K.faces
    dual = frozenset(full ^ a for a in range(full + 1) if a not in fs)
    return SimplicialComplex(K.ground_size, dual)


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < -1:
        raise ValueError("skeleton dimension must be >= -1")
    return SimplicialComplex(K.ground_size, frozenset(f for f in K.faces if f.bit_count() <= k + 1),
                             K.labels)


def link(K: SimplicialComplex, sigma: int) -> SimplicialComplex:
    """``{G : G ∩ sigma = ∅, G ∪ sigma ∈ K}`` on the same ground set."""
    if sigma not in K.faces:
        raise ValueError(f"{render(sigma)} is not a face")
    return SimplicialComplex(K.ground_size,
                             frozenset(f ^ sigma for f in K.faces if f & sigma == sigma),
                             K.labels)


def relabel(K: SimplicialComplex, perm: Sequence[int], ground_size: int | None = None) -> SimplicialComplex:
    """Image of K under the vertex map ``v -> perm[v]``."""
    n = K.ground_size if ground_size is None else ground_size
    return SimplicialComplex(n, frozenset(_map_mask(f, perm) for f in K.faces))


def _map_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    v = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[v]
        mask >>= 1
        v += 1
    return out


def join(Ks: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """Join over the disjoint union of the ground sets, in the given order."""
    offsets = []
    total = 0
    for K in Ks:
        offsets.append(total)
        total += K.ground_size
    count = 1
    for K in Ks:
        count *= len(K.faces)
    _check_cap(count)
    faces = {0} if all(K.faces for K in Ks) else set()
    if not faces:
        return void_complex(total)
    for K, off in zip(Ks, offsets):
        faces = {f | (g << off) for f in faces for g in K.faces}
    return SimplicialComplex(total, frozenset(faces))


def deleted_join_jwise(Ks: Sequence[SimplicialComplex], j: int) -> SimplicialComplex:
    """n-fold j-wise deleted join of complexes K_1..K_n over a common [m].

    Vertex (i, k), element i of factor k, sits at index ``i + m*k``.  A tuple
    (A_1..A_n) is kept when no element lies in j or more of the A_k.
    """
    n = len(Ks)
    if n == 0:
        raise ValueError("need at least one factor")
    m = Ks[0].ground_size
    if any(K.ground_size != m for K in Ks):
        raise ValueError("all factors must share the ground set")
    if not 2 <= j <= n + 1:
        raise ValueError(f"j must satisfy 2 <= j <= n+1 = {n + 1}, got {j}")
    if any(K.is_void for K in Ks):
        return void_complex(m * n)

    factor_faces = [K.sorted_faces() for K in Ks]
    out: list[int] = []

    def extend(k: int, acc: int, counts: tuple[int, ...]) -> None:
        if k == n:
            out.append(acc)
            if len(out) > _face_cap:
                _check_cap(len(out))
            return
        for a in factor_faces[k]:
            new = list(counts)
            ok = True
            for i in vertices(a):
                new[i] += 1
                if new[i] >= j:
                    ok = False
                    break
            if ok:
                extend(k + 1, acc | (a << (m * k)), tuple(new))

    extend(0, 0, (0,) * m)
    return SimplicialComplex(m * n, frozenset(out))


def grid_labels(m: int, n: int) -> tuple[str, ...]:
    """Labels ``(i,k)`` for the linearized grid ``i + m*k``, 1-based."""
    return tuple(f"({i + 1},{k + 1})" for k in range(n) for i in range(m))


def point() -> SimplicialComplex:
    return full_simplex(1)


def boundary_of_simplex(ground_size: int) -> SimplicialComplex:
    full = (1 << ground_size) - 1
    return SimplicialComplex(ground_size, frozenset(range(full)))


def complexes_on(ground_size: int, include_void: bool = False) -> Iterator[SimplicialComplex]:
    """Every simplicial complex on ``range(ground_size)`` (for tiny ground sets).

    Enumerates antichains of nonempty sets as facet lists; the count is the
    Dedekind number, so keep ground_size <= 4.
    """
    if ground_size > 5:
        raise InstanceTooLarge("exhaustive complex enumeration limited to ground sets of size <= 5")
    if include_void:
        yield void_complex(ground_size)
    sets = sorted(range(1, 1 << ground_size), key=face_key, reverse=True)
    seen: set[frozenset[int]] = set()

    def rec(idx: int, chosen: list[int]) -> Iterator[list[int]]:
        if idx == len(sets):
            yield chosen
            return
        s = sets[idx]
        yield from rec(idx + 1, chosen)
        if not any(s & c == s for c in chosen):
            chosen.append(s)
            yield from rec(idx + 1, chosen)
            chosen.pop()

    for facets in rec(0, []):
        K = from_facets(ground_size, facets) if facets else SimplicialComplex(ground_size, frozenset({0}))
        if K.faces not in seen:
            seen.add(K.faces)
            yield K


# -- isomorphism -------------------------------------------------------------

@dataclass(frozen=True)
class LabeledIsomorphism:
    """Vertex bijection between the used vertices of two complexes."""

    source: SimplicialComplex
    target: SimplicialComplex
    mapping: dict[int, int]

    def apply(self, mask: int) -> int:
        out = 0
        for v in vertices(mask):
            out |= 1 << self.mapping[v]
        return out

    def verify(self) -> bool:
        if sorted(self.mapping) != self.source.used_vertices():
            return False
        if sorted(self.mapping.values()) != self.target.used_vertices():
            return False
        image = {self.apply(f) for f in self.source.faces}
        return image == set(self.target.faces)


def _vertex_invariants(K: SimplicialComplex, used: list[int], rounds: int = 2) -> dict[int, tuple]:
    d = K.dim
    star: dict[int, list[int]] = {v: [0] * (d + 1) for v in used}
    for f in K.faces:
        if not f:
            continue
        p = f.bit_count() - 1
        for v in vertices(f):
            star[v][p] += 1
    sig = {v: tuple(star[v]) for v in used}
    nbrs = {v: [u for u in used if u != v and ((1 << u) | (1 << v)) in K.faces] for v in used}
    for _ in range(rounds):
        sig = {v: (sig[v], tuple(sorted(sig[u] for u in nbrs[v]))) for v in used}
    return sig


def is_isomorphic(K: SimplicialComplex, L: SimplicialComplex,
                  budget: int = 2_000_000) -> LabeledIsomorphism | None:
    """Search for a vertex bijection carrying faces of K exactly onto faces of L.

    Returns a verified witness, or None when no isomorphism exists.  Raises
    IsomorphismUndecided when ``budget`` search nodes are exhausted.
    """
    if K.is_void or L.is_void:
        return LabeledIsomorphism(K, L, {}) if K.is_void and L.is_void else None
    if f_vector(K) != f_vector(L):
        return None
    uk, ul = K.used_vertices(), L.used_vertices()
    sk, sl = _vertex_invariants(K, uk), _vertex_invariants(L, ul)
    if sorted(sk.values()) != sorted(sl.values()):
        return None
    by_sig: dict[tuple, list[int]] = {}
    for w in ul:
        by_sig.setdefault(sl[w], []).append(w)

    star_k = {v: [f for f in K.faces if f >> v & 1] for v in uk}
    star_l = {w: [f for f in L.faces if f >> w & 1] for w in ul}

    # order: rarest signature first, then grow along edges
    order: list[int] = []
    remaining = set(uk)
    while remaining:
        seed_v = min(remaining, key=lambda v: (len(by_sig[sk[v]]), v))
        frontier = [seed_v]
        while frontier:
            v = frontier.pop(0)
            if v not in remaining:
                continue
            remaining.discard(v)
            order.append(v)
            nb = sorted((u for u in remaining if ((1 << u) | (1 << v)) in K.faces),
                        key=lambda u: (len(by_sig[sk[u]]), u))
            frontier.extend(nb)

    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    nodes = 0

    def consistent(v: int, w: int) -> bool:
        dom = 0
        for x in fwd:
            dom |= 1 << x
        for f in star_k[v]:
            if f & ~dom == 0:
                img = 0
                for x in vertices(f):
                    img |= 1 << fwd[x]
                if img not in L.faces:
                    return False
        cod = 0
        for y in bwd:
            cod |= 1 << y
        for g in star_l[w]:
            if g & ~cod == 0:
                pre = 0
                for y in vertices(g):
                    pre |= 1 << bwd[y]
                if pre not in K.faces:
                    return False
        return True

    def search(idx: int) -> bool:
        nonlocal nodes
        if idx == len(order):
            return True
        v = order[idx]
        for w in by_sig[sk[v]]:
            if w in bwd:
                continue
            nodes += 1
            if nodes > budget:
                raise IsomorphismUndecided(f"isomorphism search exceeded {budget} nodes")
            fwd[v] = w
            bwd[w] = v
            if consistent(v, w) and search(idx + 1):
                return True
            del fwd[v]
            del bwd[w]
        return False

    if not search(0):
        return None
    iso = LabeledIsomorphism(K, L, dict(fwd))
    if not iso.verify():
        raise AssertionError("isomorphism witness failed re-verification")
    return iso


# -- facet-list text format --------------------------------------------------

def format_facets(K: SimplicialComplex) -> str:
    """Header ``m <n>`` then one facet per line (1-based); ``void`` for the void complex.

    The complex ``{∅}`` is written as a single blank facet line.
    """
    lines = [f"m {K.ground_size}"]
    if K.is_void:
        lines.append("void")
    else:
        for f in K.facets():
            lines.append(" ".join(str(v + 1) for v in vertices(f)))
    return "\n".join(lines) + "\n"


class FacetFormatError(ValueError):
    pass


def parse_facets(text: str) -> SimplicialComplex:
    """Inverse of :func:`format_facets`. ``#`` starts a comment line.

    A header with no facet lines, or a ``void`` line, gives the void complex;
    a blank line stands for the empty facet.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    if idx == len(lines):
        raise FacetFormatError("missing header line 'm <ground_size>'")
    head = lines[idx].split()
    if len(head) != 2 or head[0] != "m":
        raise FacetFormatError(f"bad header {lines[idx].strip()!r}; expected 'm <ground_size>'")
    try:
        n = int(head[1])
    except ValueError:
        raise FacetFormatError(f"bad ground size {head[1]!r}") from None
    if n < 0:
        raise FacetFormatError(f"bad ground size {head[1]!r}")
    facets: list[int] = []
    void = False
    for line in lines[idx + 1:]:
        s = line.strip()
        if s.startswith("#"):
            continue
        if s == "void":
            void = True
            continue
        mask = 0
        for tok in s.split():
            try:
                v = int(tok)
            except ValueError:
                raise FacetFormatError(f"bad vertex token {tok!r}") from None
            if not 1 <= v <= n:
                raise FacetFormatError(f"vertex {tok!r} out of range 1..{n}")
            mask |= 1 << (v - 1)
        facets.append(mask)
    if void:
        if facets:
            raise FacetFormatError("'void' cannot be combined with facet lines")
        return void_complex(n)
    return from_facets(n, facets)


def random_complex(ground_size: int, rng, proper: bool = True) -> SimplicialComplex:
    """Closure of a few random facets; never void, and never the full
    simplex when ``proper`` is set."""
    full = (1 << ground_size) - 1
    while True:
        count = rng.randint(0, 2 * ground_size)
        facets = []
        for _ in range(count):
            size = rng.randint(1, ground_size)
            facets.append(face(rng.sample(range(ground_size), size)))
        K = from_facets(ground_size, facets) if facets else SimplicialComplex(ground_size, frozenset({0}))
        if not (proper and full in K.faces):
            return K
