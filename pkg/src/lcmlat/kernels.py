"""Hot numeric kernels: L(n) enumeration and exact matrix rank.

Each kernel has a numba implementation and a numpy implementation with the
same contract.  ``enumerate_families`` and ``rank_mod_p`` dispatch on the
backend chosen in :mod:`lcmlat._accel`; the ``*_numpy`` / ``*_numba``
functions are exposed so tests and the benchmark can compare them directly.

Families are encoded as int64 masks over the ``2**n`` subsets of the atoms:
bit ``s`` is set iff the subset with bit-encoding ``s`` is a member.  This
limits the enumeration kernels to ``n <= 5``.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

MAX_KERNEL_ATOMS = 5
MAX_MODULUS = 2**31 - 1


def base_family_mask(n: int) -> int:
    """Mask of the minimal element of L(n): empty set, singletons, full set."""
    mask = 1 | (1 << ((1 << n) - 1))
    for i in range(n):
        mask |= 1 << (1 << i)
    return mask


def candidate_subsets(n: int) -> np.ndarray:
    """Subsets of size 2..n-1 in ascending bit-encoding."""
    return np.array(
        [s for s in range(1 << n) if 2 <= bin(s).count("1") <= n - 1], dtype=np.int64
    )


# Every intersection-closed family F over the base is built exactly once by
# adding its non-base members in ascending encoding: a prefix is closed because
# a & b <= a numerically.  So a child adds only candidates above the last one.


@njit(cache=True)
def _enumerate_numba(n, cands, root_fam, root_next, out):
    m = cands.shape[0]
    nsub = 1 << n
    collect = out.shape[0] > 0
    fams = np.empty(m + 2, np.int64)
    nxt = np.empty(m + 2, np.int64)
    depth = 0
    fams[0] = root_fam
    nxt[0] = root_next
    count = 1
    if collect:
        out[0] = root_fam
    one = np.int64(1)
    while depth >= 0:
        c = nxt[depth]
        if c >= m:
            depth -= 1
            continue
        nxt[depth] = c + 1
        fam = fams[depth]
        sig = cands[c]
        if (fam >> sig) & one:
            continue
        child = fam | (one << sig)
        ok = True
        for s in range(nsub):
            if (fam >> s) & one:
                if not ((child >> (sig & s)) & one):
                    ok = False
                    break
        if ok:
            if collect:
                out[count] = child
            count += 1
            depth += 1
            fams[depth] = child
            nxt[depth] = c + 1
    return count


def _enumerate_numpy(n, cands, root_fam, root_next, collect):
    m = cands.shape[0]
    nsub = 1 << n
    fam = np.array([root_fam], dtype=np.int64)
    nxt = np.array([root_next], dtype=np.int64)
    count = 1
    chunks = [fam] if collect else []
    while fam.size:
        new_fam, new_nxt = [], []
        for c in range(m):
            sig = int(cands[c])
            sel = (nxt <= c) & (((fam >> sig) & 1) == 0)
            if not sel.any():
                continue
            f = fam[sel]
            child = f | np.int64(1 << sig)
            ok = np.ones(f.size, dtype=bool)
            for s in range(nsub):
                has = ((f >> s) & 1).astype(bool)
                ok &= ~has | ((child >> (sig & s)) & 1).astype(bool)
            if ok.any():
                new_fam.append(child[ok])
                new_nxt.append(np.full(int(ok.sum()), c + 1, dtype=np.int64))
        if not new_fam:
            break
        fam = np.concatenate(new_fam)
        nxt = np.concatenate(new_nxt)
        count += fam.size
        if collect:
            chunks.append(fam)
    if collect:
        return count, np.concatenate(chunks)
    return count, None


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_KERNEL_ATOMS:
        raise ValueError(f"enumeration kernel supports 1 <= n <= {MAX_KERNEL_ATOMS}, got {n}")


def branch_roots(n: int) -> list[tuple[int, int]]:
    """Split the search tree by first-added subset.

    Returns ``(family_mask, next_candidate)`` roots; the base family itself is
    the root ``(base, len(cands))`` with no children.
    """
    cands = candidate_subsets(n)
    base = base_family_mask(n)
    roots = [(base, len(cands))]
    # every candidate is addable to the base family
    roots += [(base | (1 << int(s)), i + 1) for i, s in enumerate(cands)]
    return roots


def count_families_numba(n: int, roots=None) -> int:
    _check_n(n)
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend unavailable")
    cands = candidate_subsets(n)
    roots = roots if roots is not None else [(base_family_mask(n), 0)]
    empty = np.empty(0, dtype=np.int64)
    return sum(_enumerate_numba(n, cands, np.int64(f), np.int64(k), empty) for f, k in roots)


def count_families_numpy(n: int, roots=None) -> int:
    _check_n(n)
    cands = candidate_subsets(n)
    roots = roots if roots is not None else [(base_family_mask(n), 0)]
    return sum(_enumerate_numpy(n, cands, f, k, False)[0] for f, k in roots)


def families_numba(n: int, roots=None) -> np.ndarray:
    _check_n(n)
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend unavailable")
    cands = candidate_subsets(n)
    roots = roots if roots is not None else [(base_family_mask(n), 0)]
    parts = []
    empty = np.empty(0, dtype=np.int64)
    for f, k in roots:
        total = _enumerate_numba(n, cands, np.int64(f), np.int64(k), empty)
        out = np.empty(total, dtype=np.int64)
        _enumerate_numba(n, cands, np.int64(f), np.int64(k), out)
        parts.append(out)
    return np.sort(np.concatenate(parts))


def families_numpy(n: int, roots=None) -> np.ndarray:
    _check_n(n)
    cands = candidate_subsets(n)
    roots = roots if roots is not None else [(base_family_mask(n), 0)]
    parts = [_enumerate_numpy(n, cands, f, k, True)[1] for f, k in roots]
    return np.sort(np.concatenate(parts))


def count_families(n: int, roots=None) -> int:
    """Number of intersection-closed families in the subtree(s) at ``roots``."""
    return count_families_numba(n, roots) if HAVE_NUMBA else count_families_numpy(n, roots)


def families(n: int, roots=None) -> np.ndarray:
    """Family masks in ascending numeric order."""
    return families_numba(n, roots) if HAVE_NUMBA else families_numpy(n, roots)


@njit(cache=True)
def _rank_mod_p_numba(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        # Fermat inverse
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, cols):
            a[r, j] = a[r, j] * inv % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


def rank_mod_p_numpy(matrix: np.ndarray, p: int) -> int:
    a = np.mod(np.asarray(matrix, dtype=np.int64), p)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        below = a[r + 1 :, c]
        hit = np.nonzero(below)[0] + r + 1
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        r += 1
    return r


def rank_mod_p_numba(matrix: np.ndarray, p: int) -> int:
    if not HAVE_NUMBA:
        raise RuntimeError("numba backend unavailable")
    a = np.mod(np.asarray(matrix, dtype=np.int64), p)
    return int(_rank_mod_p_numba(np.ascontiguousarray(a), np.int64(p)))


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over the prime field with ``p`` elements."""
    if not 2 <= p <= MAX_MODULUS:
        raise ValueError(f"modulus must lie in [2, {MAX_MODULUS}], got {p}")
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.size == 0:
        return 0
    return rank_mod_p_numba(matrix, p) if HAVE_NUMBA else rank_mod_p_numpy(matrix, p)


def rank_rational(rows: list[list[int]]) -> int:
    """Exact rank over the rationals by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in rows]
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        # columns left of c are already zero below the pivot rows
        prev = pv
        r += 1
    return r
