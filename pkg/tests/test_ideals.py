import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcmlat.errors import NotMinimal, ParseError
from lcmlat.ideals import (
    MonomialIdeal,
    fresh_names,
    is_generic,
    is_strongly_generic,
    lcm,
    lcm_lattice,
    monomial_ops,
    parse_ideal,
)
from lcmlat.lattice import FiniteAtomicLattice, atoms_of

from conftest import GOLD_SQFREE, GOLD_ECCV, random_ideal, random_strongly_generic_ideal

ideals = st.integers(0, 2**32).map(lambda s: random_ideal(random.Random(s), 6, 6, 4))


def test_monomial_ops():
    xy, yz = (1, 1, 0), (0, 1, 1)
    ops = monomial_ops(xy, yz)
    assert ops.lcm == (1, 1, 1) and ops.gcd == (0, 1, 0)
    assert monomial_ops((1, 0, 0), (2, 1, 0)).divides
    assert not monomial_ops((2, 1, 0), (2, 1, 0)).strictly_divides
    assert monomial_ops((1, 1, 0), (2, 2, 1)).strictly_divides
    assert not monomial_ops((1, 1, 0), (1, 2, 1)).strictly_divides
    with pytest.raises(ValueError):
        monomial_ops((1,), (1, 2))


def test_parse_and_format_round_trip():
    for text in (GOLD_SQFREE, GOLD_ECCV, "x^2*y, y^2*z, x*z^2", "x1*x10, x2^3"):
        assert parse_ideal(text).text() == text
    M = parse_ideal("(x^2*y, y^2*z)")
    assert M.variables == ("x", "y", "z")
    assert parse_ideal("x10*x2, x1").variables == ("x1", "x2", "x10")
    assert parse_ideal("1*x*x").generators == ((2,),)


@pytest.mark.parametrize(
    "text, pos",
    [("x*y, ", 5), ("x^*y", 2), ("2*x", 0), ("x y", 2), ("x, y$", 4), ("(x, y", 5)],
)
def test_parse_errors_report_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_ideal(text)
    assert exc.value.position == pos


def test_ideal_validation():
    with pytest.raises(NotMinimal):
        parse_ideal("x, x*y")
    with pytest.raises(NotMinimal):
        parse_ideal("x*y, x*y")
    with pytest.raises(ValueError):
        MonomialIdeal(("x",), ((1, 2),))
    with pytest.raises(ValueError):
        MonomialIdeal(("x", "x"), ((1, 0),))
    M = MonomialIdeal.minimalize(("x", "y"), [(1, 1), (1, 0), (1, 0), (0, 2)])
    assert M.generators == ((1, 0), (0, 2))


def test_json_round_trip(gold_eccv):
    assert MonomialIdeal.from_json_obj(gold_eccv.to_json_obj()) == gold_eccv
    with pytest.raises(ParseError):
        MonomialIdeal.from_json_obj({"vars": ["x"]})


def test_fresh_names():
    assert fresh_names(6) == list("abcdef")
    assert fresh_names(27)[:2] == ["x1", "x2"] and fresh_names(27)[-1] == "x27"


def test_lcm_lattice_examples():
    assert lcm_lattice(parse_ideal("x, y, z")).lattice == FiniteAtomicLattice.boolean(3)
    assert lcm_lattice(parse_ideal("x*y, y*z, x*z")).lattice == FiniteAtomicLattice.minimal(3)
    L = lcm_lattice(parse_ideal(GOLD_SQFREE)).lattice
    assert [atoms_of(s) for s in L.sets] == [
        [], [1], [2], [1, 2], [3], [2, 3], [1, 2, 3], [4], [3, 4], [1, 2, 3, 4]
    ]
    with pytest.raises(NotMinimal):
        lcm_lattice(MonomialIdeal(("x",), ((0,),)))


def _brute_lcm_family(M):
    gens = M.generators
    fam = {0}
    for r in range(1, len(gens) + 1):
        for sub in itertools.combinations(range(len(gens)), r):
            m = gens[sub[0]]
            for i in sub[1:]:
                m = lcm(m, gens[i])
            fam.add(sum(1 << i for i, g in enumerate(gens) if all(a <= b for a, b in zip(g, m))))
    return fam


@settings(max_examples=150, deadline=None)
@given(ideals)
def test_lcm_lattice_matches_subset_enumeration(M):
    LL = lcm_lattice(M)
    assert set(LL.lattice.sets) == _brute_lcm_family(M)
    L = LL.lattice
    assert not any(LL.multidegrees[0])
    for x in range(len(L)):
        for y in range(len(L)):
            assert LL.multidegrees[L.join(x, y)] == lcm(LL.multidegrees[x], LL.multidegrees[y])


def test_genericity_examples():
    M = parse_ideal("x^2*y, y^2*z, x*z^2")
    assert is_strongly_generic(M).ok and is_generic(M).ok
    N = parse_ideal("x*y, y*z, x*z")
    assert is_strongly_generic(N) == (False, ("x", 1, 3))
    assert not is_generic(N).ok
    assert is_generic(N).witness[1:] in {(1, 2), (1, 3), (2, 3)}
    assert is_strongly_generic(parse_ideal("x, y, z")).ok


def test_generic_but_not_strongly_generic():
    # the y-tie between the first two is broken: x*z strictly divides x^2*y*z^2
    M = parse_ideal("x^2*y, y*z^2, x*z")
    assert not is_strongly_generic(M).ok
    assert is_generic(M).ok


@settings(max_examples=150, deadline=None)
@given(ideals)
def test_strongly_generic_implies_generic(M):
    if is_strongly_generic(M).ok:
        assert is_generic(M).ok


@pytest.mark.parametrize("seed", range(60))
def test_strongly_generic_lcm_lattice_graded_rank_t(seed):
    M = random_strongly_generic_ideal(random.Random(seed))
    assert is_strongly_generic(M).ok
    g = lcm_lattice(M).lattice.is_graded()
    assert g == (True, M.ngens)
