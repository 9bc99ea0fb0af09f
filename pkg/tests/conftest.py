from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from lcmlat.ideals import MonomialIdeal, parse_ideal
from lcmlat.lattice import FiniteAtomicLattice, mask_of

GOLD_SQFREE = "c*d*f, d*e*f, b*e*f, a*b*c*e"
GOLD_ECCV = "b*c^2*d^2*e^2*f^2, a*d*e^2*f^2, a^2*b^2*c*f, a^3*b^3*c^3*d^3*e"


def lat(n, *sets):
    return FiniteAtomicLattice.from_family(n, [mask_of(s) for s in sets])


@pytest.fixture
def path():
    return lat(4, [], [1], [2], [3], [4], [1, 2], [2, 3], [3, 4], [1, 2, 3, 4])


@pytest.fixture
def golden():
    return lat(4, [], [1], [2], [3], [4], [1, 2], [2, 3], [3, 4], [1, 2, 3], [1, 2, 3, 4])


@pytest.fixture
def b3():
    return FiniteAtomicLattice.boolean(3)


@pytest.fixture
def m3():
    return FiniteAtomicLattice.minimal(3)


# independent oracles ----------------------------------------------------


def brute_join(L, mask):
    """Intersection of every member containing ``mask``."""
    out = L.full
    for s in L.sets:
        if s & mask == mask:
            out &= s
    return out


def brute_equiv_set(L, p):
    target = L.sets[p]
    return [s for s in range(1 << L.n) if brute_join(L, s) == target]


def brute_family_count(n):
    """Filter every subfamily of the non-base subsets for intersection closure."""
    full = (1 << n) - 1
    base = {0, full} | {1 << i for i in range(n)}
    extra = [s for s in range(1 << n) if s not in base]
    out = []
    for r in range(len(extra) + 1):
        for pick in itertools.combinations(extra, r):
            fam = base | set(pick)
            if all(a & b in fam for a in pick for b in pick):
                out.append(frozenset(fam))
    return out


def float_homology(facets_masks, nverts):
    """Reduced rational homology by floating point ranks (small inputs only)."""
    faces = set()
    for f in facets_masks:
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    if not facets_masks:
        return {}
    by_dim = {}
    for f in faces:
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    for v in by_dim.values():
        v.sort()
    top = max(by_dim)

    def rank(d):
        if d not in by_dim or d - 1 not in by_dim:
            return 0
        rows = {f: i for i, f in enumerate(by_dim[d - 1])}
        mat = np.zeros((len(by_dim[d - 1]), len(by_dim[d])))
        for j, f in enumerate(by_dim[d]):
            bits = [i for i in range(nverts) if f >> i & 1]
            for k, b in enumerate(bits):
                mat[rows[f & ~(1 << b)], j] = (-1) ** k
        return int(np.linalg.matrix_rank(mat))

    out = {}
    for d in range(-1, top + 1):
        h = len(by_dim.get(d, [])) - rank(d) - rank(d + 1)
        if h:
            out[d] = h
    return out


def koszul_betti_totals(M: MonomialIdeal):
    """Totals from upper Koszul complexes K^m = {F : m / x^F in M}, m over lcms."""
    gens = M.generators
    k = len(M.variables)
    lcms = set()
    for r in range(1, len(gens) + 1):
        for sub in itertools.combinations(gens, r):
            lcms.add(tuple(max(col) for col in zip(*sub)))
    totals = {0: 1}

    def in_ideal(m):
        return any(all(a <= b for a, b in zip(g, m)) for g in gens)

    for m in lcms:
        support = [i for i in range(k) if m[i] > 0]
        faces = []
        for r in range(len(support) + 1):
            for F in itertools.combinations(support, r):
                q = list(m)
                for i in F:
                    q[i] -= 1
                if in_ideal(q):
                    faces.append(sum(1 << support.index(i) for i in F))
        for d, h in float_homology(faces, len(support)).items():
            totals[d + 2] = totals.get(d + 2, 0) + h
    return [totals.get(i, 0) for i in range(max(totals) + 1)]


def random_ideal(rng: random.Random, max_gens=5, max_vars=5, max_exp=4) -> MonomialIdeal:
    while True:
        k = rng.randint(1, max_vars)
        t = rng.randint(1, max_gens)
        gens = [tuple(rng.randint(0, max_exp) for _ in range(k)) for _ in range(t)]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        return MonomialIdeal.minimalize([f"x{i + 1}" for i in range(k)], gens)


def random_strongly_generic_ideal(rng: random.Random, max_gens=5, max_vars=6) -> MonomialIdeal:
    """Per variable, distinct positive exponents on a random subset of generators."""
    while True:
        t = rng.randint(1, max_gens)
        k = rng.randint(1, max_vars)
        cols = []
        for _ in range(k):
            users = [i for i in range(t) if rng.random() < 0.6]
            exps = rng.sample(range(1, t + 3), len(users))
            col = [0] * t
            for i, e in zip(users, exps):
                col[i] = e
            cols.append(col)
        gens = [tuple(c[i] for c in cols) for i in range(t)]
        if not all(any(g) for g in gens):
            continue
        try:
            return MonomialIdeal(tuple(f"x{i + 1}" for i in range(k)), tuple(gens))
        except Exception:
            continue


@pytest.fixture
def gold_sqfree():
    return parse_ideal(GOLD_SQFREE)


@pytest.fixture
def gold_eccv():
    return parse_ideal(GOLD_ECCV)


def random_chain(L, rng: random.Random):
    """A random maximal chain (bottom and top excluded)."""
    x, chain = L.bottom, []
    while True:
        x = rng.choice(L.upper_covers[x])
        if x == L.top:
            return chain
        chain.append(x)


def random_valid_labeling(L, rng: random.Random):
    """Random chains per variable with random exponents, then one fresh variable
    for every meet-irreducible left unlabeled."""
    from lcmlat.coordinatization import Labeling

    k = rng.randint(0, 4)
    raw: list[dict[int, int]] = []
    for _ in range(k):
        chain = random_chain(L, rng)
        if not chain:
            continue
        picked = [x for x in chain if rng.random() < 0.5] or [rng.choice(chain)]
        raw.append({x: rng.randint(1, 3) for x in picked})
    covered = {x for var in raw for x in var}
    for x in L.meet_irreducibles():
        if x not in covered:
            raw.append({x: rng.randint(1, 2)})
    names = [f"x{i + 1}" for i in range(len(raw))]
    labels: dict[int, list[int]] = {}
    for j, var in enumerate(raw):
        for x, e in var.items():
            labels.setdefault(x, [0] * len(raw))[j] = e
    return Labeling(L, tuple(names), {x: tuple(m) for x, m in labels.items()})
