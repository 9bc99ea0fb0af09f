"""Monomials, monomial ideals, LCM lattices and genericity tests.

A monomial is a tuple of exponents aligned with the variables of the ideal it
belongs to.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import NotMinimal, ParseError
from .lattice import FiniteAtomicLattice

Monomial = tuple[int, ...]


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def strictly_divides(a: Monomial, b: Monomial) -> bool:
    """``a | b`` with a strictly smaller exponent wherever ``b`` is positive."""
    return all(x < y if y > 0 else x == 0 for x, y in zip(a, b))


class MonomialOps(NamedTuple):
    lcm: Monomial
    gcd: Monomial
    divides: bool
    strictly_divides: bool


def monomial_ops(a: Monomial, b: Monomial) -> MonomialOps:
    if len(a) != len(b):
        raise ValueError("monomials live in different rings")
    return MonomialOps(lcm(a, b), gcd(a, b), divides(a, b), strictly_divides(a, b))


def natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def fresh_names(k: int) -> list[str]:
    """Letters a..z when they suffice, otherwise x1..xk."""
    if k <= 26:
        return [chr(ord("a") + i) for i in range(k)]
    return [f"x{i + 1}" for i in range(k)]


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimally generated monomial ideal; generator order is significant."""

    variables: tuple[str, ...]
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        k = len(self.variables)
        if len(set(self.variables)) != k:
            raise ValueError("duplicate variable names")
        for g in self.generators:
            if len(g) != k:
                raise ValueError(f"generator {g} has {len(g)} exponents, expected {k}")
            if any((not isinstance(e, int)) or e < 0 for e in g):
                raise ValueError(f"exponents must be non-negative integers: {g}")
        if not self.generators:
            raise ValueError("ideal needs at least one generator")
        for i, g in enumerate(self.generators):
            for j, h in enumerate(self.generators):
                if i != j and divides(g, h):
                    raise NotMinimal(
                        f"generator {i + 1} ({format_monomial(g, self.variables)}) divides "
                        f"generator {j + 1} ({format_monomial(h, self.variables)})"
                    )

    @classmethod
    def minimalize(cls, variables, generators) -> "MonomialIdeal":
        """Drop duplicates and non-minimal generators, keeping first occurrences."""
        gens = [tuple(g) for g in generators]
        keep = []
        for i, g in enumerate(gens):
            dominated = any(
                divides(h, g) and (h != g or j < i) for j, h in enumerate(gens) if j != i
            )
            if not dominated:
                keep.append(g)
        return cls(tuple(variables), tuple(keep))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def text(self) -> str:
        return ", ".join(format_monomial(g, self.variables) for g in self.generators)

    def __str__(self) -> str:
        return self.text()

    def to_json_obj(self) -> dict:
        return {"vars": list(self.variables), "gens": [list(g) for g in self.generators]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MonomialIdeal":
        try:
            return cls(tuple(obj["vars"]), tuple(tuple(g) for g in obj["gens"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f'ideal JSON needs "vars" and "gens": {exc}') from None

    @classmethod
    def parse(cls, text: str) -> "MonomialIdeal":
        return parse_ideal(text)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[*^,()]))")


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse ``"c*d*f, d*e*f, x^2*y"``; variables are ordered naturally by name."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))

    i = 0

    def peek():
        return tokens[i]

    def take(kind, value=None):
        nonlocal i
        t = tokens[i]
        if t[0] != kind or (value is not None and t[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {t[1] or 'end of input'!r}", t[2])
        i += 1
        return t

    wrapped = peek()[:2] == ("op", "(")
    if wrapped:
        take("op", "(")
    raw: list[dict[str, int]] = []
    while True:
        mono: dict[str, int] = {}
        while True:
            t = peek()
            if t[0] == "int":
                take("int")
                if t[1] != "1":
                    raise ParseError(f"coefficient {t[1]} not allowed", t[2])
            else:
                name = take("name")[1]
                exp = 1
                if peek()[:2] == ("op", "^"):
                    take("op", "^")
                    exp = int(take("int")[1])
                mono[name] = mono.get(name, 0) + exp
            if peek()[:2] == ("op", "*"):
                take("op", "*")
                continue
            break
        raw.append(mono)
        if peek()[:2] == ("op", ","):
            take("op", ",")
            continue
        break
    if wrapped:
        take("op", ")")
    take("end")
    names = sorted({v for m in raw for v in m}, key=natural_key)
    gens = tuple(tuple(m.get(v, 0) for v in names) for m in raw)
    return MonomialIdeal(tuple(names), gens)


@dataclass(frozen=True)
class LabeledLattice:
    """A lattice with one multidegree per element (aligned with ``lattice.sets``)."""

    lattice: FiniteAtomicLattice
    variables: tuple[str, ...]
    multidegrees: tuple[Monomial, ...]

    def multidegree(self, x: int) -> Monomial:
        return self.multidegrees[x]


def lcm_lattice(M: MonomialIdeal) -> LabeledLattice:
    """LCM lattice of ``M``; atom ``i`` is generator ``i``."""
    gens = M.generators
    t = len(gens)
    if any(not any(g) for g in gens):
        raise NotMinimal("the unit ideal has no LCM lattice")
    if t > 32:
        raise ValueError("at most 32 generators supported")

    def support(m: Monomial) -> int:
        s = 0
        for i, g in enumerate(gens):
            if divides(g, m):
                s |= 1 << i
        return s

    unit = (0,) * len(M.variables)
    elems: dict[int, Monomial] = {0: unit}
    queue = []
    for i, g in enumerate(gens):
        elems[1 << i] = g
        queue.append(1 << i)
    while queue:
        s = queue.pop()
        m = elems[s]
        for i, g in enumerate(gens):
            if not s >> i & 1:
                lm = lcm(m, g)
                sup = support(lm)
                if sup not in elems:
                    elems[sup] = lm
                    queue.append(sup)
    L = FiniteAtomicLattice.from_family(t, elems)
    return LabeledLattice(L, M.variables, tuple(elems[s] for s in L.sets))


class GenericityCheck(NamedTuple):
    ok: bool
    witness: tuple | None = None


def is_strongly_generic(M: MonomialIdeal) -> GenericityCheck:
    """No variable has the same positive exponent in two generators.

    The witness is ``(variable, i, j)`` with 1-based generator indices.
    """
    for s, v in enumerate(M.variables):
        seen: dict[int, int] = {}
        for i, g in enumerate(M.generators):
            e = g[s]
            if e:
                if e in seen:
                    return GenericityCheck(False, (v, seen[e] + 1, i + 1))
                seen[e] = i
    return GenericityCheck(True)


def is_generic(M: MonomialIdeal) -> GenericityCheck:
    """Every tie in a positive exponent is broken by a third generator strictly dividing the lcm."""
    gens = M.generators
    for s, v in enumerate(M.variables):
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if gens[i][s] and gens[i][s] == gens[j][s]:
                    m = lcm(gens[i], gens[j])
                    if not any(
                        strictly_divides(gens[k], m) for k in range(len(gens)) if k not in (i, j)
                    ):
                        return GenericityCheck(False, (v, i + 1, j + 1))
    return GenericityCheck(True)


def labeled_to_json_obj(LL: LabeledLattice) -> dict:
    obj = LL.lattice.to_json_obj()
    order = [LL.lattice.ref(s) for s in obj["sets"]]
    obj["vars"] = list(LL.variables)
    obj["multidegrees"] = [list(LL.multidegrees[i]) for i in order]
    return obj

