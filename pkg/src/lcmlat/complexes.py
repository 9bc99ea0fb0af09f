"""Simplicial complexes, interval complexes of a lattice, reduced homology.

Faces are int masks over vertex positions.  A complex stores its facets; the
void complex has no facets at all, the empty complex has the single facet 0
(just the empty face).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import ParseError
from .kernels import rank_mod_p, rank_rational
from .lattice import FiniteAtomicLattice, atoms_of, popcount


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``p == 0``) or the prime field with ``p`` elements."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "rational", "rationals"):
            return cls(0)
        m = re.fullmatch(r"f(\d+)|fp:(\d+)|gf\((\d+)\)", t)
        if not m:
            raise ParseError(f"unknown field {text!r}; use q, f2, or fp:<p>")
        p = int(next(g for g in m.groups() if g))
        if not _is_prime(p):
            raise ParseError(f"field characteristic {p} is not prime")
        return cls(p)

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def rank(self, rows: list[list[int]]) -> int:
        if not rows or not rows[0]:
            return 0
        if self.p == 0:
            return rank_rational(rows)
        return rank_mod_p(np.array(rows, dtype=np.int64), self.p)


QQ = FieldSpec(0)
F2 = FieldSpec(2)


def _maximal(faces: Iterable[int]) -> tuple[int, ...]:
    faces = sorted(set(faces), key=lambda f: -popcount(f))
    kept: list[int] = []
    for f in faces:
        if not any(g & f == f for g in kept):
            kept.append(f)
    return tuple(sorted(kept))


def _submasks(m: int):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[Hashable, ...]
    facets: tuple[int, ...]

    @classmethod
    def from_facets(cls, vertices: Sequence[Hashable], facets: Iterable) -> "SimplicialComplex":
        """Build from facets given as masks or as lists of vertex labels."""
        vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        masks = []
        for f in facets:
            if isinstance(f, int):
                masks.append(f)
            else:
                m = 0
                for v in f:
                    if v not in pos:
                        raise ValueError(f"unknown vertex {v!r}")
                    m |= 1 << pos[v]
                masks.append(m)
        return cls(vertices, _maximal(masks))

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls((), ())

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls((), (0,))

    @classmethod
    def simplex(cls, vertices: Sequence[Hashable]) -> "SimplicialComplex":
        return cls(tuple(vertices), ((1 << len(vertices)) - 1,))

    @classmethod
    def boundary_of_simplex(cls, vertices: Sequence[Hashable]) -> "SimplicialComplex":
        full = (1 << len(vertices)) - 1
        return cls.from_facets(vertices, [full & ~(1 << i) for i in range(len(vertices))])

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_empty(self) -> bool:
        return self.facets == (0,)

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            out.update(_submasks(f))
        return frozenset(out)

    def faces_of_dim(self, d: int) -> list[int]:
        return sorted(f for f in self.faces if popcount(f) == d + 1)

    @property
    def dimension(self) -> int | None:
        if self.is_void:
            return None
        return max(popcount(f) for f in self.facets) - 1

    def f_vector(self) -> list[int]:
        """Face counts for dimensions -1, 0, 1, ..."""
        if self.is_void:
            return []
        counts = [0] * (self.dimension + 2)
        for f in self.faces:
            counts[popcount(f)] += 1
        return counts

    def face_labels(self, f: int) -> list:
        return [self.vertices[i] for i in range(len(self.vertices)) if f >> i & 1]

    def used_vertices(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    def same_faces(self, other: "SimplicialComplex") -> bool:
        """Equality of face sets after translating vertex labels."""
        mine = {frozenset(self.face_labels(f)) for f in self.faces}
        theirs = {frozenset(other.face_labels(f)) for f in other.faces}
        return mine == theirs

    def to_json_obj(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "facets": [self.face_labels(f) for f in self.facets],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SimplicialComplex":
        try:
            vertices = obj["vertices"]
            facets = obj["facets"]
        except (KeyError, TypeError):
            raise ParseError('complex JSON needs "vertices" and "facets"') from None
        vertices = [tuple(v) if isinstance(v, list) else v for v in vertices]
        facets = [[tuple(v) if isinstance(v, list) else v for v in f] for f in facets]
        return cls.from_facets(vertices, facets)


def boundary_rows(X: SimplicialComplex, d: int) -> list[list[int]]:
    """Matrix of the boundary map from d-faces to (d-1)-faces, rows = (d-1)-faces."""
    lower = X.faces_of_dim(d - 1)
    upper = X.faces_of_dim(d)
    row_of = {f: i for i, f in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for j, f in enumerate(upper):
        sign = 1
        bit = 1
        while bit <= f:
            if f & bit:
                rows[row_of[f & ~bit]][j] = sign
                sign = -sign
            bit <<= 1
    return rows


def reduced_homology(X: SimplicialComplex, field: FieldSpec = QQ) -> dict[int, int]:
    """Nonzero reduced Betti numbers ``{degree: dim}``, degrees from -1 up."""
    if X.is_void:
        return {}
    top = X.dimension
    counts = X.f_vector()
    ranks = {d: field.rank(boundary_rows(X, d)) for d in range(0, top + 1)}
    out = {}
    for i in range(-1, top + 1):
        h = counts[i + 1] - ranks.get(i, 0) - ranks.get(i + 1, 0)
        if h:
            out[i] = h
    return out


def euler_characteristic(X: SimplicialComplex) -> int:
    """Reduced Euler characteristic from face counts."""
    return sum((-1) ** (k - 1) * c for k, c in enumerate(X.f_vector()))


def is_acyclic(X: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Zero reduced homology; the void complex counts as acyclic, the empty one does not."""
    return not reduced_homology(X, field)


def crosscut_open_interval(L: FiniteAtomicLattice, p: int) -> SimplicialComplex:
    """Cross-cut complex of the open interval (0, p).

    Vertices are the atoms strictly below ``p``; an atom set is a face iff its
    join lies strictly below ``p``.
    """
    P = L.sets[p]
    if P == 0:
        raise ValueError("interval (0, 0) is undefined")
    if popcount(P) == 1:
        return SimplicialComplex.empty()
    atoms = atoms_of(P)
    faces = [T for T in _submasks(P) if L.closure(T) != P]
    facets = [
        T for T in faces if all(L.closure(T | (1 << (a - 1))) == P for a in atoms if not T >> (a - 1) & 1)
    ]
    # remap atom bits to vertex positions
    pos = {a - 1: k for k, a in enumerate(atoms)}
    out = []
    for T in facets:
        m = 0
        for b, k in pos.items():
            if T >> b & 1:
                m |= 1 << k
        out.append(m)
    return SimplicialComplex(tuple(atoms), _maximal(out))


def order_complex_open_interval(L: FiniteAtomicLattice, p: int) -> SimplicialComplex:
    """Order complex of the open interval (0, p): vertices are elements, faces are chains."""
    P = L.sets[p]
    if P == 0:
        raise ValueError("interval (0, 0) is undefined")
    inside = [i for i, s in enumerate(L.sets) if s and s != P and s & P == s]
    if not inside:
        return SimplicialComplex.empty()
    pos = {i: k for k, i in enumerate(inside)}
    facets: list[int] = []
    ups = L.upper_covers

    def walk(x: int, acc: int) -> None:
        for y in ups[x]:
            if y == p:
                facets.append(acc)
            elif y in pos:
                walk(y, acc | (1 << pos[y]))

    walk(L.bottom, 0)
    return SimplicialComplex(tuple(L.sets[i] for i in inside), _maximal(facets))
