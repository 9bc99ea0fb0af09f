"""Deformations of exponents, and realizing Q <= P in L(n) as one."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .coordinatization import Labeling, eccv_labeling, realize
from .errors import NotComparable, ShapeMismatch
from .ideals import GenericityCheck, MonomialIdeal, fresh_names, lcm_lattice
from .lattice import FiniteAtomicLattice
from .ln import ln_leq


@dataclass(frozen=True)
class Deformation:
    base: MonomialIdeal
    epsilon: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        eps = tuple(tuple(int(e) for e in row) for row in self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if len(eps) != self.base.ngens or any(len(r) != len(self.base.variables) for r in eps):
            raise ShapeMismatch(
                f"epsilon must be {self.base.ngens} x {len(self.base.variables)}"
            )

    def deformed(self) -> MonomialIdeal:
        gens = [
            tuple(m + e for m, e in zip(g, row))
            for g, row in zip(self.base.generators, self.epsilon)
        ]
        M = MonomialIdeal.minimalize(self.base.variables, gens)
        assert M.generators == tuple(gens), "deformation produced a non-minimal ideal"
        return M

    def to_json_obj(self) -> dict:
        return {"base": self.base.to_json_obj(), "epsilon": [list(r) for r in self.epsilon]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Deformation":
        return cls(MonomialIdeal.from_json_obj(obj["base"]), tuple(map(tuple, obj["epsilon"])))


def is_valid_deformation(d: Deformation) -> GenericityCheck:
    """Strict exponent inequalities survive and zero exponents stay fixed.

    Witness: ``(variable, i)`` for a zero-rule or negativity violation,
    ``(variable, i, j)`` for a reversed or collapsed inequality (1-based).
    """
    gens = d.base.generators
    for s, v in enumerate(d.base.variables):
        for i, g in enumerate(gens):
            if g[s] == 0 and d.epsilon[i][s] != 0:
                return GenericityCheck(False, (v, i + 1))
            if g[s] + d.epsilon[i][s] < 0:
                return GenericityCheck(False, (v, i + 1))
        for i, g in enumerate(gens):
            for j, h in enumerate(gens):
                if g[s] < h[s] and not g[s] + d.epsilon[i][s] < h[s] + d.epsilon[j][s]:
                    return GenericityCheck(False, (v, i + 1, j + 1))
    return GenericityCheck(True)


def _restrict(chains, L: FiniteAtomicLattice, src: FiniteAtomicLattice) -> list[set[int]]:
    """Members of each chain of ``src`` that also belong to ``L``, as indices of ``L``."""
    return [{L.index[src.sets[p]] for p in c if src.sets[p] in L.index} for c in chains]


def restricted_labeling(Q: FiniteAtomicLattice, chain_sets: list[set[int]], names) -> Labeling:
    """Variable ``j`` labels the members of chain ``j`` lying strictly between bottom and top."""
    k = len(chain_sets)
    acc: dict[int, list[int]] = {}
    for j, members in enumerate(chain_sets):
        for q in members:
            if q not in (Q.bottom, Q.top):
                acc.setdefault(q, [0] * k)[j] = 1
    return Labeling(Q, tuple(names), {q: tuple(m) for q, m in acc.items()})


def _exponent_counts(L: FiniteAtomicLattice, chain_sets: list[set[int]]) -> list[list[int]]:
    """Entry (i, j): members of chain j not above atom i."""
    out = []
    for a in L.atoms:
        comp = set(L.filter_complement(a))
        out.append([len(comp & c) for c in chain_sets])
    return out


class DeformationResult(NamedTuple):
    M_Q: MonomialIdeal
    M_P: MonomialIdeal
    deformation: Deformation


def construct_deformation(P: FiniteAtomicLattice, Q: FiniteAtomicLattice) -> DeformationResult:
    """Coordinatizations of Q and P whose ideals differ by a deformation of exponents.

    P gets its ECCV labeling and Q the restriction of that labeling to its own
    members.  The exponent of variable j in generator i counts chain members
    off the filter of atom i; on Q this count only sees the members of Q, so
    it is a monotone coarsening of the count on P with the same zero pattern.
    """
    if not ln_leq(Q, P):
        raise NotComparable("construct_deformation needs Q <= P in L(n)")
    chains = P.maximal_chains()
    names = fresh_names(len(chains))
    M_P = realize(eccv_labeling(P, names))
    on_q = _restrict(chains, Q, P)
    M_Q = realize(restricted_labeling(Q, on_q, names))
    up = _exponent_counts(P, [set(c) for c in chains])
    down = _exponent_counts(Q, on_q)
    eps = tuple(tuple(u - v for u, v in zip(r, s)) for r, s in zip(up, down))
    d = Deformation(M_Q, eps)
    assert is_valid_deformation(d).ok
    assert d.deformed() == M_P
    assert lcm_lattice(M_Q).lattice == Q
    assert lcm_lattice(M_P).lattice == P
    return DeformationResult(M_Q, M_P, d)


class UniversalFamily:
    """One coordinatization of Q deforming to every lattice above it.

    All ideals come from the ECCV chains of the Boolean lattice restricted to
    the lattice at hand.
    """

    def __init__(self, Q: FiniteAtomicLattice):
        self.Q = Q
        self.B = FiniteAtomicLattice.boolean(Q.n)
        self.chains = self.B.maximal_chains()
        self.names = fresh_names(len(self.chains))
        on_q = _restrict(self.chains, Q, self.B)
        self.M_Q = realize(restricted_labeling(Q, on_q, self.names))
        self._counts_q = _exponent_counts(Q, on_q)

    def ideal_for(self, P: FiniteAtomicLattice) -> MonomialIdeal:
        return realize(restricted_labeling(P, _restrict(self.chains, P, self.B), self.names))

    def deform_to(self, P: FiniteAtomicLattice) -> Deformation:
        if not ln_leq(self.Q, P):
            raise NotComparable("deform_to needs a lattice above Q")
        up = _exponent_counts(P, _restrict(self.chains, P, self.B))
        eps = tuple(
            tuple(u - v for u, v in zip(r, s)) for r, s in zip(up, self._counts_q)
        )
        d = Deformation(self.M_Q, eps)
        assert is_valid_deformation(d).ok
        assert lcm_lattice(d.deformed()).lattice == P
        return d


def universal_family(Q: FiniteAtomicLattice) -> UniversalFamily:
    return UniversalFamily(Q)
