"""Bier spheres Bier(K) = K *_Δ K° and the (A1, A2; B) face encoding.

Vertex layout: element i of the K-side copy is vertex i, element i of the
K°-side copy is vertex m + i.  A face mask therefore splits as
``A1 = mask & full`` and ``A2 = mask >> m``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex_core import (
    SimplicialComplex,
    alexander_dual,
    _check_cap,
    render,
)


class BierError(ValueError):
    pass


@dataclass(frozen=True)
class BierFace:
    m: int
    A1: int
    A2: int

    def __post_init__(self) -> None:
        if self.A1 & self.A2:
            raise BierError("A1 and A2 must be disjoint")
        if (self.A1 | self.A2) >> self.m:
            raise BierError("A1, A2 must lie in the ground set")

    @property
    def B(self) -> int:
        return ((1 << self.m) - 1) & ~(self.A1 | self.A2)

    @property
    def dim(self) -> int:
        return self.A1.bit_count() + self.A2.bit_count() - 1

    def encode(self) -> int:
        return self.A1 | (self.A2 << self.m)

    def __str__(self) -> str:
        return f"({render(self.A1)}, {render(self.A2)}; {render(self.B)})"


def bier_labels(m: int) -> tuple[str, ...]:
    return tuple(f"{i + 1}" for i in range(m)) + tuple(f"{i + 1}'" for i in range(m))


def bier_faces(K: SimplicialComplex, Kd: SimplicialComplex) -> list[int]:
    """Masks ``A1 | A2 << m`` with A1 in K, A2 in Kd, A1 ∩ A2 = ∅."""
    m = K.ground_size
    full = (1 << m) - 1
    out = []
    kd = Kd.faces
    for a1 in K.faces:
        rest = full ^ a1
        sub = rest
        while True:
            if sub in kd:
                out.append(a1 | (sub << m))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        if len(out) > 1 << 16:
            _check_cap(len(out))
    _check_cap(len(out))
    return out


def bier_sphere(K: SimplicialComplex) -> SimplicialComplex:
    """The deleted join of K with its Alexander dual, on 2m vertices."""
    m = K.ground_size
    if m < 2:
        raise BierError("Bier spheres need a ground set of size >= 2")
    if K.is_void:
        raise BierError("K must contain the empty face")
    if len(K.faces) == 1 << m:
        raise BierError("K is the full simplex; its dual is void")
    Kd = alexander_dual(K)
    return SimplicialComplex(2 * m, frozenset(bier_faces(K, Kd)), bier_labels(m))


def decode(B: SimplicialComplex, mask: int) -> BierFace:
    """Triple view of a face of a Bier sphere; foreign faces are rejected."""
    if mask not in B.faces:
        raise BierError(f"{render(mask)} is not a face of this Bier sphere")
    m = B.ground_size // 2
    full = (1 << m) - 1
    return BierFace(m, mask & full, mask >> m)


def encode(B: SimplicialComplex, bf: BierFace) -> int:
    mask = bf.encode()
    if mask not in B.faces or B.ground_size != 2 * bf.m:
        raise BierError(f"{bf} is not a face of this Bier sphere")
    return mask


def decoding_table(B: SimplicialComplex) -> list[tuple[str, str]]:
    """Rows (face in vertex labels, triple) for every facet."""
    rows = []
    for f in B.facets():
        rows.append((B.render(f), str(decode(B, f))))
    return rows


def render_triple(m: int, mask: int) -> str:
    full = (1 << m) - 1
    return str(BierFace(m, mask & full, mask >> m))

