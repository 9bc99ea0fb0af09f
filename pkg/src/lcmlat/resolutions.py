"""Betti numbers of lattices, Scarf complexes and cellular-support checks.

The multigraded Betti number in homological degree ``i`` at element ``p`` is
the dimension of reduced homology in degree ``i - 2`` of the open interval
(0, p), computed from its cross-cut complex, its order complex, or both.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .complexes import (
    QQ,
    FieldSpec,
    SimplicialComplex,
    crosscut_open_interval,
    order_complex_open_interval,
    reduced_homology,
)
from .coordinatization import eccv_labeling, realize
from .errors import (
    HomotopyMismatch,
    LabelInconsistent,
    NotGradedRankN,
    OutOfSupportedRange,
)
from .ideals import MonomialIdeal, is_strongly_generic
from .lattice import FiniteAtomicLattice, atoms_of, popcount, set_label
from .ln import ln_upper_covers

VIAS = ("crosscut", "order", "both")


@dataclass(frozen=True)
class BettiTable:
    lattice: FiniteAtomicLattice
    field: FieldSpec
    entries: dict[tuple[int, int], int] = field(hash=False)

    @property
    def total(self) -> list[int]:
        top = max((i for i, _ in self.entries), default=0)
        out = [1] + [0] * top
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def at(self, i: int, p: int) -> int:
        return self.entries.get((i, p), 0)

    def at_element(self, p: int) -> dict[int, int]:
        return {i: v for (i, q), v in self.entries.items() if q == p}

    def to_json_obj(self) -> dict:
        L = self.lattice
        rows = [
            {"i": i, "element": atoms_of(L.sets[p]), "value": v}
            for (i, p), v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        ]
        return {"field": self.field.name, "total": self.total, "entries": rows}

    def to_text(self) -> str:
        L = self.lattice
        elems = sorted({p for _, p in self.entries})
        degrees = range(1, len(self.total))
        head = ["element"] + [f"b{i}" for i in degrees]
        rows = [[set_label(L.sets[p])] + [str(self.at(i, p) or ".") for i in degrees] for p in elems]
        rows.append(["total"] + [str(self.total[i]) for i in degrees])
        widths = [max(len(r[c]) for r in [head] + rows) for c in range(len(head))]
        fmt = lambda r: "  ".join(s.rjust(w) for s, w in zip(r, widths)).rstrip()
        lines = [f"field {self.field.name}; total {self.total}", fmt(head)]
        lines += [fmt(r) for r in rows]
        return "\n".join(lines) + "\n"


def interval_homology(L: FiniteAtomicLattice, p: int, field: FieldSpec, via: str) -> dict[int, int]:
    if via == "crosscut":
        return reduced_homology(crosscut_open_interval(L, p), field)
    if via == "order":
        return reduced_homology(order_complex_open_interval(L, p), field)
    if via == "both":
        a = reduced_homology(crosscut_open_interval(L, p), field)
        b = reduced_homology(order_complex_open_interval(L, p), field)
        if a != b:
            raise HomotopyMismatch(
                f"interval (0, {atoms_of(L.sets[p])}) over {field.name}: "
                f"cross-cut {a} vs order complex {b}"
            )
        return a
    raise ValueError(f"via must be one of {VIAS}, got {via!r}")


@lru_cache(maxsize=8192)
def betti_table(L: FiniteAtomicLattice, field: FieldSpec = QQ, via: str = "crosscut") -> BettiTable:
    entries = {}
    for p in range(1, len(L)):
        for deg, dim in interval_homology(L, p, field, via).items():
            entries[(deg + 2, p)] = dim
    return BettiTable(L, field, entries)


def total_betti(L: FiniteAtomicLattice, field: FieldSpec = QQ) -> tuple[int, ...]:
    return tuple(betti_table(L, field).total)


# Scarf complex ---------------------------------------------------------


def scarf_complex(L: FiniteAtomicLattice) -> SimplicialComplex:
    """Atom sets that are the unique atom set joining to their join."""
    faces = [s for x, s in enumerate(L.sets) if L.equiv_unique(x)]
    X = SimplicialComplex.from_facets(range(1, L.n + 1), faces)
    assert X.faces == frozenset(faces), "Scarf complex is not downward closed"
    return X


def is_scarf_resolved(L: FiniteAtomicLattice, field: FieldSpec = QQ) -> bool:
    total = list(betti_table(L, field).total)
    faces = scarf_complex(L).f_vector()
    width = max(len(total), len(faces))
    return total + [0] * (width - len(total)) == faces + [0] * (width - len(faces))


def strongly_generic_coordinatization(L: FiniteAtomicLattice) -> MonomialIdeal:
    """ECCV ideal of a lattice graded of rank n; strongly generic by construction."""
    graded, rank = L.is_graded()
    if not graded or rank != L.n:
        target = L.n
        chain = next(c for c in L.maximal_chains() if len(c) + 1 != target)
        raise NotGradedRankN(
            f"maximal chain {[atoms_of(L.sets[x]) for x in chain]} has length "
            f"{len(chain) + 1}, need {target}",
            chain,
        )
    M = realize(eccv_labeling(L))
    assert is_strongly_generic(M).ok
    return M


def augmented_face_lattice(X: SimplicialComplex) -> FiniteAtomicLattice:
    """Face poset of X plus a top; vertex k becomes atom k + 1."""
    if X.is_void:
        raise ValueError("the void complex has no face lattice")
    n = len(X.vertices)
    return FiniteAtomicLattice.from_family(n, set(X.faces) | {(1 << n) - 1})


# cellular support ------------------------------------------------------


@dataclass
class CellularCertificate:
    complex: SimplicialComplex
    face_labels: dict[int, int]
    supports: bool
    minimal: bool
    failures: list[tuple[str, str]]

    def to_json_obj(self, L: FiniteAtomicLattice) -> dict:
        X = self.complex
        return {
            "supports": self.supports,
            "minimal": self.minimal,
            "faces": [
                {"face": X.face_labels(f), "label": atoms_of(L.sets[lab])}
                for f, lab in sorted(self.face_labels.items(), key=lambda kv: (popcount(kv[0]), kv[0]))
            ],
            "failures": [{"where": w, "reason": r} for w, r in self.failures],
        }


def supports_resolution(
    L: FiniteAtomicLattice,
    X: SimplicialComplex,
    vertex_labels: list[int] | None = None,
    field: FieldSpec = QQ,
    face_labels: dict[int, int] | None = None,
) -> CellularCertificate:
    """Check that X, labeled by joins in L, supports a (minimal) resolution.

    ``vertex_labels[k]`` is the element index labeling vertex ``k``; the
    default labels vertex ``k`` by atom ``k + 1``.  Optional ``face_labels``
    (face mask -> element index) must agree with the joins.
    """
    if vertex_labels is None:
        if len(X.vertices) != L.n:
            raise LabelInconsistent(f"complex has {len(X.vertices)} vertices, lattice {L.n} atoms")
        vertex_labels = L.atoms
    if len(vertex_labels) != len(X.vertices):
        raise LabelInconsistent("one label per vertex required")
    labels: dict[int, int] = {}
    for f in X.faces:
        if f == 0:
            continue
        m = 0
        for k in range(len(X.vertices)):
            if f >> k & 1:
                m |= L.sets[vertex_labels[k]]
        labels[f] = L.index[L.closure(m)]
    if face_labels is not None:
        for f, lab in face_labels.items():
            if labels.get(f) != lab:
                raise LabelInconsistent(
                    f"face {X.face_labels(f)} labeled {atoms_of(L.sets[lab])}, "
                    f"join of its vertices is {atoms_of(L.sets[labels[f]]) if f in labels else None}"
                )

    failures: list[tuple[str, str]] = []
    for p, P in enumerate(L.sets):
        below = [f for f, lab in labels.items() if L.sets[lab] & P == L.sets[lab]]
        if not below:
            continue
        h = reduced_homology(SimplicialComplex.from_facets(X.vertices, below), field)
        if h:
            failures.append((set_label(P), f"subcomplex of faces labeled <= {set_label(P)} has homology {h}"))
    supports = not failures
    minimal = supports
    if supports:
        for f, lab in labels.items():
            for k in range(len(X.vertices)):
                g = f & ~(1 << k)
                if f >> k & 1 and g and labels[g] == lab:
                    minimal = False
                    failures.append(
                        (
                            f"{X.face_labels(g)} < {X.face_labels(f)}",
                            f"faces in a cover relation share label {set_label(L.sets[lab])}",
                        )
                    )
    return CellularCertificate(X, labels, supports, minimal, failures)


# filter harness --------------------------------------------------------

COVER_MODE_READING = (
    "Q covers P; P is the augmented face lattice of an acyclic complex X (taken as "
    "Scarf(P)); Betti numbers of Q equal those of P at the maximum of each fiber of "
    "the canonical map Q -> P and vanish elsewhere"
)


def ln_filter(P: FiniteAtomicLattice) -> list[FiniteAtomicLattice]:
    """All lattices above P in L(n), by breadth-first ascent."""
    seen = {P.sets: P}
    queue = deque([P])
    while queue:
        for Q in ln_upper_covers(queue.popleft()):
            if Q.sets not in seen:
                seen[Q.sets] = Q
                queue.append(Q)
    return sorted(seen.values(), key=lambda L: (len(L), L.sets))


def _fmt(L: FiniteAtomicLattice) -> list[list[int]]:
    return L.to_json_obj()["sets"]


def verify_scarf_filter(P: FiniteAtomicLattice, field: FieldSpec = QQ, mode: str = "betti") -> dict:
    """Search the filter above P for lattices with P's total Betti numbers
    that violate Scarf lifting (``mode="betti"``) or cellular lifting along
    covers (``mode="cover"``)."""
    if P.n > 4:
        raise OutOfSupportedRange("the filter harness is limited to n <= 4")
    if mode not in ("betti", "cover"):
        raise ValueError(f"mode must be 'betti' or 'cover', got {mode!r}")
    totals = list(betti_table(P, field).total)
    X = scarf_complex(P)
    report = {
        "mode": mode,
        "field": field.name,
        "lattice": _fmt(P),
        "total": totals,
        "checked": 0,
        "qualifying": 0,
        "counterexamples": [],
    }
    if mode == "betti":
        report["hypothesis"] = is_scarf_resolved(P, field)
        if not report["hypothesis"]:
            return report
        candidates = ln_filter(P)
    else:
        report["reading"] = COVER_MODE_READING
        report["hypothesis"] = augmented_face_lattice(X) == P and not reduced_homology(X, field)
        if not report["hypothesis"]:
            return report
        candidates = ln_upper_covers(P)
        base = betti_table(P, field)

    for Q in candidates:
        report["checked"] += 1
        if list(betti_table(Q, field).total) != totals:
            continue
        if mode == "betti":
            report["qualifying"] += 1
            XQ = scarf_complex(Q)
            if not (is_scarf_resolved(Q, field) and XQ.same_faces(X)):
                report["counterexamples"].append(
                    {
                        "lattice": _fmt(Q),
                        "scarf_resolved": is_scarf_resolved(Q, field),
                        "scarf": XQ.to_json_obj(),
                    }
                )
            continue
        bq = betti_table(Q, field)
        lifted = {}
        for p, s in enumerate(P.sets):
            for i, v in base.at_element(p).items():
                lifted[(i, Q.index[s])] = v
        if bq.entries != lifted:
            continue
        report["qualifying"] += 1
        cert = supports_resolution(Q, X, field=field)
        if not (cert.supports and cert.minimal):
            report["counterexamples"].append({"lattice": _fmt(Q), "certificate": cert.to_json_obj(Q)})
    return report
