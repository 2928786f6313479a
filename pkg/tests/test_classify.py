import pytest
from hypothesis import given, strategies as st

from nielsen.classify import classify_indefinite, family_coverage, same_indefinite_class
from nielsen.lattice import LatticeError, invariants, standard_lattice


def check(rank, sig, parity):
    d = classify_indefinite(rank, sig, parity)
    i = invariants(standard_lattice(d.normal_form))
    assert (i.rank, i.signature, i.parity, i.unimodular) == (rank, sig, parity, True)
    return d


def test_k3():
    assert str(check(22, -16, "even").normal_form) == "2*E8 + 3*U"


def test_odd_small():
    assert str(check(2, 0, "odd").normal_form) == "<1> + <-1>"


def test_even_12():
    assert str(check(12, -8, "even").normal_form) == "E8 + 2*U"


def test_positive_signature_uses_flipped_e8():
    assert str(check(18, 16, "even").normal_form) == "2*E8(-1) + U"


def test_signature_zero_even():
    assert str(check(6, 0, "even").normal_form) == "3*U"


@pytest.mark.parametrize("args", [(8, -8, "even"), (4, 4, "odd"), (5, -2, "odd"), (10, -4, "even"),
                                  (8, -8, "odd"), (3, 1, "weird")])
def test_errors(args):
    with pytest.raises(LatticeError):
        classify_indefinite(*args)


@given(st.integers(2, 24).flatmap(lambda r: st.tuples(st.just(r), st.integers(-r + 1, r - 1))))
def test_odd_roundtrip(rs):
    rank, sig = rs
    if (rank - sig) % 2 == 0:
        check(rank, sig, "odd")


def test_same_class():
    a = standard_lattice("<1> + <-1>")
    assert not same_indefinite_class(a, standard_lattice("U"))
    assert same_indefinite_class(a, a)
    b = standard_lattice("E8 + U + <1> + <-1>")
    c = standard_lattice("2*<1> + 10*<-1>")
    assert same_indefinite_class(b, c) == (invariants(b).parity == invariants(c).parity)
    with pytest.raises(LatticeError):
        same_indefinite_class(standard_lattice("E8"), standard_lattice("E8"))
    with pytest.raises(LatticeError):
        same_indefinite_class(standard_lattice("U(2)"), standard_lattice("U"))


def test_y_coverage():
    c = family_coverage("Y", -8)
    assert c.min_rank == 12 and c.realized(3) == [12, 14, 16] and c.excluded == [10] and c.consistent


def test_y_coverage_against_enumeration():
    # even ranks 8r + 2q, q >= 1, versus 12|r| + 2(n - 1), n >= 1
    for r in range(1, 5):
        c = family_coverage("Y", -8 * r)
        possible = {8 * r + 2 * q for q in range(1, 40)}
        realized = {12 * r + 2 * (n - 1) for n in range(1, 40)}
        assert set(c.excluded) == {x for x in possible if x < min(realized)}


def test_x_coverage_formula():
    c = family_coverage("X", -1, b2T=2)
    assert c.min_rank == 4
    assert not c.consistent  # rank 4 cannot carry signature -1
    c = family_coverage("X", -3, b2T=9)
    assert c.min_rank == 3 * 13 - 4 + 2 and c.consistent


@pytest.mark.parametrize("args", [("Y", 0), ("Y", -4), ("Z", -8), ("X", -1)])
def test_coverage_errors(args):
    with pytest.raises(LatticeError):
        family_coverage(*args)
