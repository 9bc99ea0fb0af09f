"""Finite atomic lattices as intersection-closed families of atom subsets.

An element is identified with its support, the set of atoms below it, encoded
as an int bitmask (atom ``i`` is bit ``i - 1``).  Families are kept sorted by
numeric value of the mask, so ``sets[0]`` is the bottom (empty set) and
``sets[-1]`` the top (all atoms).  Because ``a ⊆ b`` implies ``a <= b``
numerically, the first member containing a mask is its join.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import (
    AtomCapacityExceeded,
    InvalidAtomSet,
    LatticeError,
    MissingRequiredSet,
    NotIntersectionClosed,
)

MAX_ATOMS = 32


def atoms_of(mask: int) -> list[int]:
    """1-based atoms of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(atoms: Iterable[int]) -> int:
    m = 0
    for a in atoms:
        m |= 1 << (a - 1)
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def set_label(mask: int) -> str:
    """Compact support label, e.g. ``12`` for {1, 2} and ``∅`` for the empty set."""
    atoms = atoms_of(mask)
    if not atoms:
        return "∅"
    sep = "" if atoms[-1] < 10 else ","
    return sep.join(map(str, atoms))


class OrderOps(NamedTuple):
    leq: bool
    meet: int
    join: int


class Graded(NamedTuple):
    graded: bool
    rank: int | None


@dataclass(frozen=True, eq=True)
class FiniteAtomicLattice:
    """Canonical intersection-closed family on ``n`` ordered atoms.

    Build instances with :meth:`from_family` (validating) or the named
    constructors.  Operations take and return element indices into ``sets``.
    """

    n: int
    sets: tuple[int, ...]

    # construction -------------------------------------------------------

    @classmethod
    def from_family(cls, n: int, sets: Iterable) -> "FiniteAtomicLattice":
        """Validate and canonicalize a family.

        ``sets`` may hold int masks or iterables of 1-based atoms.
        """
        if n < 1:
            raise LatticeError(f"atom count must be positive, got {n}")
        if n > MAX_ATOMS:
            raise AtomCapacityExceeded(f"at most {MAX_ATOMS} atoms supported, got {n}")
        full = (1 << n) - 1
        masks = set()
        for s in sets:
            if isinstance(s, int):
                m = s
                if m < 0 or m & ~full:
                    raise InvalidAtomSet(f"mask {m:#x} uses atoms outside 1..{n}")
            else:
                atoms = list(s)
                for a in atoms:
                    if not isinstance(a, int) or not 1 <= a <= n:
                        raise InvalidAtomSet(f"atom {a!r} outside 1..{n}")
                m = mask_of(atoms)
            masks.add(m)
        if not masks:
            raise LatticeError("family is empty")
        for req in [0, full] + [1 << i for i in range(n)]:
            if req not in masks:
                raise MissingRequiredSet(req, n)
        family = tuple(sorted(masks))
        for i, a in enumerate(family):
            for b in family[i + 1 :]:
                if (a & b) not in masks:
                    raise NotIntersectionClosed(a, b)
        return cls(n, family)

    @classmethod
    def _trusted(cls, n: int, sets: Iterable[int]) -> "FiniteAtomicLattice":
        return cls(n, tuple(sorted(set(sets))))

    @classmethod
    def boolean(cls, n: int) -> "FiniteAtomicLattice":
        return cls.from_family(n, range(1 << n))

    @classmethod
    def minimal(cls, n: int) -> "FiniteAtomicLattice":
        """Bottom of L(n): atoms are also coatoms."""
        return cls.from_family(n, [0, (1 << n) - 1] + [1 << i for i in range(n)])

    # basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self.index

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.sets)}

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.sets) - 1

    @property
    def atoms(self) -> list[int]:
        return [self.index[1 << i] for i in range(self.n)]

    @property
    def is_trivial(self) -> bool:
        return self.n == 1

    def ref(self, atoms_or_mask) -> int:
        """Element index for a mask or an iterable of 1-based atoms."""
        m = atoms_or_mask if isinstance(atoms_or_mask, int) else mask_of(atoms_or_mask)
        try:
            return self.index[m]
        except KeyError:
            raise LatticeError(f"{atoms_of(m)} is not an element") from None

    def support(self, x: int) -> list[int]:
        return atoms_of(self.sets[x])

    def closure(self, mask: int) -> int:
        """Smallest member containing ``mask``: the join of those atoms."""
        for s in self.sets:
            if s & mask == mask:
                return s
        raise LatticeError(f"{atoms_of(mask)} exceeds the atom set")

    # order ------------------------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        a, b = self.sets[x], self.sets[y]
        return a & b == a

    def meet(self, x: int, y: int) -> int:
        return self.index[self.sets[x] & self.sets[y]]

    def join(self, x: int, y: int) -> int:
        return self.index[self.closure(self.sets[x] | self.sets[y])]

    def order_ops(self, x: int, y: int) -> OrderOps:
        return OrderOps(self.leq(x, y), self.meet(x, y), self.join(x, y))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        # in an atomic lattice every cover of a is a ∨ (some atom)
        out = []
        for a in self.sets:
            cand = {self.closure(a | (1 << i)) for i in range(self.n) if not a >> i & 1}
            mins = [b for b in cand if not any(c != b and c & b == c for c in cand)]
            out.append(tuple(sorted(self.index[b] for b in mins)))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        low: list[list[int]] = [[] for _ in self.sets]
        for i, ups in enumerate(self.upper_covers):
            for j in ups:
                low[j].append(i)
        return tuple(tuple(v) for v in low)

    def covers_of(self, x: int) -> list[int]:
        """Elements covering ``x``, ascending."""
        return list(self.upper_covers[x])

    def meet_irreducibles(self) -> list[int]:
        """Elements other than the top with exactly one upper cover."""
        top = self.top
        return [i for i, ups in enumerate(self.upper_covers) if i != top and len(ups) == 1]

    def filter_complement(self, a: int) -> list[int]:
        """Elements not above ``a``."""
        m = self.sets[a]
        return [i for i, s in enumerate(self.sets) if s & m != m]

    def maximal_chains(self) -> list[list[int]]:
        """All maximal chains without bottom and top, lexicographic by mask."""
        top = self.top
        ups = self.upper_covers
        chains: list[list[int]] = []

        def walk(x: int, path: list[int]) -> None:
            for y in ups[x]:
                if y == top:
                    chains.append(list(path))
                else:
                    path.append(y)
                    walk(y, path)
                    path.pop()

        walk(self.bottom, [])
        chains.sort(key=lambda c: [self.sets[i] for i in c])
        return chains

    def chain_length_bounds(self) -> tuple[int, int]:
        """(shortest, longest) maximal bottom-to-top chain length in edges."""
        lo = [0] * len(self.sets)
        hi = [0] * len(self.sets)
        for i in range(1, len(self.sets)):
            below = self.lower_covers[i]
            lo[i] = 1 + min(lo[j] for j in below)
            hi[i] = 1 + max(hi[j] for j in below)
        return lo[self.top], hi[self.top]

    def is_graded(self) -> Graded:
        lo, hi = self.chain_length_bounds()
        return Graded(True, lo) if lo == hi else Graded(False, None)

    def equiv_unique(self, p: int) -> bool:
        """True iff the support of ``p`` is the only atom set joining to ``p``.

        Joins are monotone, so a smaller generating set exists iff dropping a
        single atom already joins to ``p``.
        """
        m = self.sets[p]
        bit = 1
        while bit <= m:
            if m & bit and self.closure(m & ~bit) == m:
                return False
            bit <<= 1
        return True

    # serialization ------------------------------------------------------

    def canonical_encoding(self) -> bytes:
        return struct.pack(f">B{len(self.sets)}I", self.n, *self.sets)

    @classmethod
    def decode(cls, data: bytes) -> "FiniteAtomicLattice":
        n = data[0]
        count = (len(data) - 1) // 4
        return cls.from_family(n, struct.unpack(f">{count}I", data[1:]))

    def to_json_obj(self) -> dict:
        ordered = sorted(self.sets, key=lambda m: (popcount(m), atoms_of(m)))
        return {"n": self.n, "sets": [atoms_of(m) for m in ordered]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FiniteAtomicLattice":
        try:
            n = obj["n"]
            sets = obj["sets"]
        except (KeyError, TypeError):
            raise LatticeError('lattice JSON needs "n" and "sets"') from None
        if not isinstance(n, int) or not isinstance(sets, list):
            raise LatticeError('"n" must be an integer and "sets" a list')
        return cls.from_family(n, [list(s) for s in sets])

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, m in enumerate(self.sets):
            lines.append(f'  e{i} [label="{set_label(m)}"];')
        for i, ups in enumerate(self.upper_covers):
            for j in ups:
                lines.append(f"  e{i} -> e{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        body = ",".join(set_label(m) for m in self.sets)
        return f"FiniteAtomicLattice(n={self.n}, {{{body}}})"
