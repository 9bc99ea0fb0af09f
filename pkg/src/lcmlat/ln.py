"""The lattice L(n) of finite atomic lattices on n ordered atoms.

Q <= P in L(n) iff Q's support family is contained in P's.  The canonical
join-preserving map P -> Q sends p to the smallest member of Q containing it.
"""

from __future__ import annotations

import os
import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from . import kernels
from .errors import AtomCountMismatch, NotComparable, OutOfSupportedRange
from .lattice import FiniteAtomicLattice, popcount

MAX_NAV_ATOMS = 6
MAX_ENUM_ATOMS = 5
L6_COUNT = 66_960_965_307


@dataclass(frozen=True)
class LnContext:
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_NAV_ATOMS:
            raise OutOfSupportedRange(f"L(n) navigation supports 1 <= n <= {MAX_NAV_ATOMS}, got {self.n}")


def _same_n(P: FiniteAtomicLattice, Q: FiniteAtomicLattice) -> None:
    if P.n != Q.n:
        raise AtomCountMismatch(f"lattices have {P.n} and {Q.n} atoms")


def _nav(P: FiniteAtomicLattice) -> None:
    LnContext(P.n)


def ln_leq(Q: FiniteAtomicLattice, P: FiniteAtomicLattice) -> bool:
    _same_n(P, Q)
    return set(Q.sets) <= set(P.sets)


def ln_meet(P: FiniteAtomicLattice, Q: FiniteAtomicLattice) -> FiniteAtomicLattice:
    _same_n(P, Q)
    return FiniteAtomicLattice.from_family(P.n, set(P.sets) & set(Q.sets))


def intersection_closure(n: int, sets) -> FiniteAtomicLattice:
    fam = set(sets)
    frontier = list(fam)
    while frontier:
        new = []
        for a in frontier:
            for b in list(fam):
                c = a & b
                if c not in fam:
                    fam.add(c)
                    new.append(c)
        frontier = new
    return FiniteAtomicLattice.from_family(n, fam)


def ln_join(P: FiniteAtomicLattice, Q: FiniteAtomicLattice) -> FiniteAtomicLattice:
    _same_n(P, Q)
    return intersection_closure(P.n, set(P.sets) | set(Q.sets))


def addable_subsets(P: FiniteAtomicLattice) -> list[int]:
    """Subsets whose addition keeps the family intersection-closed."""
    _nav(P)
    fam = set(P.sets)
    out = []
    for s in range(1 << P.n):
        if s in fam:
            continue
        if all((s & t) in fam or (s & t) == s for t in fam):
            out.append(s)
    return out


def ln_upper_covers(P: FiniteAtomicLattice) -> list[FiniteAtomicLattice]:
    return [FiniteAtomicLattice._trusted(P.n, P.sets + (s,)) for s in addable_subsets(P)]


def removable_subsets(P: FiniteAtomicLattice) -> list[int]:
    """Non-atom meet-irreducibles: the members whose removal keeps closure."""
    return [P.sets[x] for x in P.meet_irreducibles() if popcount(P.sets[x]) >= 2]


def ln_lower_covers(P: FiniteAtomicLattice) -> list[FiniteAtomicLattice]:
    out = []
    for s in removable_subsets(P):
        out.append(FiniteAtomicLattice._trusted(P.n, [t for t in P.sets if t != s]))
    return out


def canonical_map(P: FiniteAtomicLattice, Q: FiniteAtomicLattice) -> dict[int, int]:
    """Element map P -> Q, ``p ↦ join in Q of supp(p)``, for Q <= P."""
    _same_n(P, Q)
    if not ln_leq(Q, P):
        raise NotComparable("canonical map needs Q <= P in L(n)")
    f = {x: Q.index[Q.closure(s)] for x, s in enumerate(P.sets)}
    assert all(f[a] == Q.index[P.sets[a]] for a in P.atoms)
    assert set(f.values()) == set(range(len(Q)))
    # order preserving on covers, so chains map to chains
    assert all(Q.leq(f[x], f[y]) for x, ups in enumerate(P.upper_covers) for y in ups)
    return f


def ln_rank(P: FiniteAtomicLattice) -> int:
    return len(P) - (P.n + 2)


def ln_meet_irreducibles(n: int) -> list[FiniteAtomicLattice]:
    """The lattices B_n minus the interval [σ, [n] \\ {i}], |σ| >= 2, i ∉ σ."""
    if n < 3:
        raise OutOfSupportedRange("meet-irreducibles of L(n) need n >= 3")
    LnContext(n)
    full = (1 << n) - 1
    out = []
    for i in range(n):
        coatom = full & ~(1 << i)
        for sigma in range(1 << n):
            if sigma & (1 << i) or popcount(sigma) < 2:
                continue
            fam = [s for s in range(1 << n) if not (s & sigma == sigma and s & coatom == s)]
            L = FiniteAtomicLattice.from_family(n, fam)
            assert len(addable_subsets(L)) == 1
            out.append(L)
    return out


# enumeration -----------------------------------------------------------


def _check_enum(n: int) -> None:
    if n == 6:
        raise OutOfSupportedRange(
            f"|L(6)| = {L6_COUNT:,} is cited, not computed; enumeration supports 3 <= n <= 5"
        )
    if not 3 <= n <= MAX_ENUM_ATOMS:
        raise OutOfSupportedRange(f"enumeration supports 3 <= n <= {MAX_ENUM_ATOMS}, got {n}")


def _count_branch(args):
    n, root = args
    return kernels.count_families(n, [root])


def _families_branch(args):
    n, root = args
    return kernels.families(n, [root])


def _default_jobs() -> int:
    return max(1, os.cpu_count() or 1)


def ln_count(n: int, jobs: int | None = None) -> int:
    """|L(n)|.  With ``jobs > 1`` the search tree is split by first-added subset."""
    _check_enum(n)
    jobs = jobs or _default_jobs()
    if jobs <= 1:
        return kernels.count_families(n)
    roots = kernels.branch_roots(n)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return sum(ex.map(_count_branch, [(n, r) for r in roots]))


def ln_family_masks(n: int, jobs: int | None = None):
    """All family masks of L(n) in ascending numeric order."""
    _check_enum(n)
    jobs = jobs or _default_jobs()
    if jobs <= 1:
        return kernels.families(n)
    import numpy as np

    roots = kernels.branch_roots(n)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_families_branch, [(n, r) for r in roots]))
    return np.sort(np.concatenate(parts))


def lattice_from_family_mask(n: int, fam: int) -> FiniteAtomicLattice:
    fam = int(fam)
    sets = []
    s = 0
    while fam:
        if fam & 1:
            sets.append(s)
        fam >>= 1
        s += 1
    return FiniteAtomicLattice(n, tuple(sets))


def ln_enumerate(n: int, jobs: int | None = None) -> Iterator[FiniteAtomicLattice]:
    """Every lattice of L(n), ordered by the numeric value of its family mask."""
    for fam in ln_family_masks(n, jobs):
        yield lattice_from_family_mask(n, fam)


def ln_enumerate_bfs(n: int) -> list[FiniteAtomicLattice]:
    """Reference enumeration: breadth-first over upper covers with a seen-set."""
    if n > 4:
        raise OutOfSupportedRange("the reference enumeration is limited to n <= 4")
    start = FiniteAtomicLattice.minimal(n)
    seen = {start.sets: start}
    queue = deque([start])
    while queue:
        P = queue.popleft()
        for Q in ln_upper_covers(P):
            if Q.sets not in seen:
                seen[Q.sets] = Q
                queue.append(Q)
    return sorted(seen.values(), key=lambda L: sum(1 << s for s in L.sets))


# sampling helpers ------------------------------------------------------


def random_lattice(n: int, rng: random.Random, density: float | None = None) -> FiniteAtomicLattice:
    """Intersection-closure of a random collection of subsets."""
    full = (1 << n) - 1
    base = [0, full] + [1 << i for i in range(n)]
    density = rng.random() if density is None else density
    extra = [s for s in range(1 << n) if popcount(s) >= 2 and s != full and rng.random() < density]
    return intersection_closure(n, base + extra)


def random_descent(P: FiniteAtomicLattice, rng: random.Random, steps: int | None = None) -> FiniteAtomicLattice:
    """Walk down random lower covers; returns some Q <= P."""
    steps = rng.randint(0, ln_rank(P)) if steps is None else steps
    Q = P
    for _ in range(steps):
        removable = removable_subsets(Q)
        if not removable:
            break
        s = rng.choice(removable)
        Q = FiniteAtomicLattice._trusted(Q.n, [t for t in Q.sets if t != s])
    return Q


def random_ascent_chain(n: int, rng: random.Random) -> list[FiniteAtomicLattice]:
    """A random maximal chain of L(n) built by repeated upper covers from the bottom."""
    P = FiniteAtomicLattice.minimal(n)
    chain = [P]
    while True:
        adds = addable_subsets(P)
        if not adds:
            return chain
        P = FiniteAtomicLattice._trusted(n, P.sets + (rng.choice(adds),))
        chain.append(P)


def comparable_pair(n: int, rng: random.Random) -> tuple[FiniteAtomicLattice, FiniteAtomicLattice]:
    """Random (Q, P) with Q <= P."""
    P = random_lattice(n, rng)
    return random_descent(P, rng), P
