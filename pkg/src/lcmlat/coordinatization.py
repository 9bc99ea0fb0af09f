"""Labelings of a lattice by monomials and the ideals they induce.

Generator ``i`` of the realized ideal is the product of the labels on every
element not above atom ``i``.  A labeling is a coordinatization when all
meet-irreducibles carry a non-unit label and each variable occurs only along
a chain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import InvalidLabeling, ParseError
from .ideals import (
    LabeledLattice,
    Monomial,
    MonomialIdeal,
    format_monomial,
    fresh_names,
    gcd,
    lcm_lattice,
)
from .lattice import FiniteAtomicLattice, atoms_of, mask_of


@dataclass(frozen=True)
class Labeling:
    """Non-unit labels keyed by element index; the top is never labeled."""

    lattice: FiniteAtomicLattice
    variables: tuple[str, ...]
    labels: dict[int, Monomial] = field(hash=False)

    def __post_init__(self):
        k = len(self.variables)
        clean = {}
        for x, m in self.labels.items():
            m = tuple(m)
            if len(m) != k or any(e < 0 for e in m):
                raise InvalidLabeling(f"label on element {x} has a bad exponent vector {m}")
            if x != self.lattice.top and any(m):
                clean[x] = m
        object.__setattr__(self, "labels", clean)

    @classmethod
    def from_sets(cls, lattice: FiniteAtomicLattice, variables: Sequence[str], labels) -> "Labeling":
        """``labels`` maps atom lists (or masks) to exponent vectors or ``{var: exp}`` dicts."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        out = {}
        for key, val in dict(labels).items():
            x = lattice.ref(key if isinstance(key, int) else list(key))
            if isinstance(val, dict):
                m = [0] * len(variables)
                for v, e in val.items():
                    m[pos[v]] += e
                val = m
            out[x] = tuple(val)
        return cls(lattice, variables, out)

    def label(self, x: int) -> Monomial:
        return self.labels.get(x, (0,) * len(self.variables))

    def describe(self) -> dict[str, str]:
        L = self.lattice
        return {
            str(atoms_of(L.sets[x])): format_monomial(m, self.variables)
            for x, m in sorted(self.labels.items())
        }

    def to_json_obj(self) -> dict:
        L = self.lattice
        return {
            "lattice": L.to_json_obj(),
            "vars": list(self.variables),
            "labels": {
                json.dumps(atoms_of(L.sets[x]), separators=(",", ":")): list(m)
                for x, m in sorted(self.labels.items())
            },
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Labeling":
        try:
            L = FiniteAtomicLattice.from_json_obj(obj["lattice"])
            variables = tuple(obj["vars"])
            raw = obj["labels"]
        except (KeyError, TypeError):
            raise ParseError('labeling JSON needs "lattice", "vars" and "labels"') from None
        labels = {}
        for key, exps in raw.items():
            try:
                atoms = json.loads(key)
            except json.JSONDecodeError:
                raise ParseError(f"label key {key!r} is not a JSON list") from None
            labels[L.ref(mask_of(atoms))] = tuple(exps)
        return cls(L, variables, labels)


class LabelingVerdict(NamedTuple):
    valid: bool
    unlabeled: list[int]
    off_chain: list[tuple[str, int, int]]

    def reasons(self, L: FiniteAtomicLattice) -> list[str]:
        out = [f"meet-irreducible {atoms_of(L.sets[x])} is unlabeled" for x in self.unlabeled]
        out += [
            f"variable {v} labels incomparable elements {atoms_of(L.sets[p])} and {atoms_of(L.sets[q])}"
            for v, p, q in self.off_chain
        ]
        return out


def validate_labeling(lab: Labeling) -> LabelingVerdict:
    L = lab.lattice
    unlabeled = [x for x in L.meet_irreducibles() if x not in lab.labels]
    off_chain = []
    for s, v in enumerate(lab.variables):
        carriers = sorted(x for x, m in lab.labels.items() if m[s])
        for i, p in enumerate(carriers):
            bad = next((q for q in carriers[i + 1 :] if not L.leq(p, q)), None)
            if bad is not None:
                off_chain.append((v, p, bad))
                break
    return LabelingVerdict(not unlabeled and not off_chain, unlabeled, off_chain)


def _induced_generators(lab: Labeling) -> list[Monomial]:
    L = lab.lattice
    k = len(lab.variables)
    gens = []
    for a in L.atoms:
        g = [0] * k
        for p in L.filter_complement(a):
            m = lab.labels.get(p)
            if m:
                for s in range(k):
                    g[s] += m[s]
        gens.append(tuple(g))
    return gens


def realize(lab: Labeling) -> MonomialIdeal:
    """Monomial ideal of a valid labeling; its LCM lattice is the labeled lattice."""
    verdict = validate_labeling(lab)
    if not verdict.valid:
        raise InvalidLabeling("; ".join(verdict.reasons(lab.lattice)))
    M = MonomialIdeal(lab.variables, tuple(_induced_generators(lab)))
    assert lcm_lattice(M).lattice == lab.lattice, "realized ideal has the wrong LCM lattice"
    return M


def minimal_squarefree_labeling(L: FiniteAtomicLattice, names: Sequence[str] | None = None) -> Labeling:
    """One fresh variable on each meet-irreducible, in canonical element order."""
    mi = L.meet_irreducibles()
    names = tuple(names) if names is not None else tuple(fresh_names(len(mi)))
    if len(names) != len(mi):
        raise ValueError(f"need {len(mi)} variable names, got {len(names)}")
    labels = {}
    for k, x in enumerate(mi):
        m = [0] * len(mi)
        m[k] = 1
        labels[x] = tuple(m)
    return Labeling(L, names, labels)


def eccv_labeling(L: FiniteAtomicLattice, names: Sequence[str] | None = None) -> Labeling:
    """Every Chain Covered by a Variable.

    Variable ``j`` belongs to the ``j``-th maximal chain (lexicographic by
    mask); each element between bottom and top gets the product of the
    variables of the chains through it.  On the one-atom lattice the only
    chain is empty and its variable goes on the bottom instead.
    """
    chains = L.maximal_chains()
    names = tuple(names) if names is not None else tuple(fresh_names(len(chains)))
    if len(names) != len(chains):
        raise ValueError(f"need {len(chains)} variable names, got {len(names)}")
    acc: dict[int, list[int]] = {}
    for j, chain in enumerate(chains):
        for p in chain or [L.bottom]:
            acc.setdefault(p, [0] * len(chains))[j] = 1
    return Labeling(L, names, {p: tuple(m) for p, m in acc.items()})


def deficit_labeling(LL: LabeledLattice) -> Labeling:
    """Label each element by the gcd of the multidegrees strictly above it, divided by its own."""
    L = LL.lattice
    labels = {}
    for x in range(len(L) - 1):
        above = [y for y in range(x + 1, len(L)) if L.leq(x, y)]
        g = LL.multidegrees[above[0]]
        for y in above[1:]:
            g = gcd(g, LL.multidegrees[y])
        labels[x] = tuple(a - b for a, b in zip(g, LL.multidegrees[x]))
    return Labeling(L, LL.variables, labels)


def roundtrip_check(M: MonomialIdeal) -> bool:
    N = realize(deficit_labeling(lcm_lattice(M)))
    return N.variables == M.variables and N.generators == M.generators
