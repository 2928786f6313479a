from fractions import Fraction

import pytest

from nielsen import linalg
from nielsen.classify import classify_indefinite
from nielsen.classify import same_indefinite_class
from nielsen.degtyarev import build_certificate, build_k3_lattice, glue_d4d4_to_e8, verify_certificate
from nielsen.lattice import discriminant_group, invariants, standard_lattice


@pytest.fixture(scope="module")
def cert():
    return build_certificate()


@pytest.fixture(scope="module")
def report(cert):
    return verify_certificate(cert)


def test_k3_lattice():
    k3 = build_k3_lattice()
    i = invariants(k3)
    assert (i.rank, i.b_plus, i.b_minus, i.parity, i.unimodular) == (22, 3, 19, "even", True)
    assert same_indefinite_class(k3, standard_lattice(classify_indefinite(22, -16, "even").normal_form))
    assert discriminant_group(k3).invariant_factors == ()


def test_gluing_scales():
    e8, glue = glue_d4d4_to_e8(1)
    i = invariants(e8)
    assert (abs(i.det), i.rank, i.b_plus, i.parity) == (1, 8, 0, "even")
    assert len(glue) == 2
    e82, _ = glue_d4d4_to_e8(2)
    # det(D4(2) + D4(2)) = 2^12, index 4
    assert abs(linalg.det(standard_lattice("2*D4(2)").gram)) == 2 ** 12
    assert abs(invariants(e82).det) == 2 ** 8 == 2 ** 12 // 4 ** 2


def test_gluing_bad_scale():
    with pytest.raises(ValueError):
        glue_d4d4_to_e8(3)


def test_core_identities(cert):
    pair = cert.base_pair
    assert pair(cert.a_plus, cert.a_plus) == pair(cert.a_minus, cert.a_minus) == -4
    assert pair(cert.r_plus, cert.r_plus) == pair(cert.r_minus, cert.r_minus) == -2
    assert pair(cert.r_plus, cert.r_minus) == 0
    assert cert.r_plus == tuple((Fraction(a) + b) / 2 for a, b in zip(cert.a_plus, cert.a_minus))


def test_final_lattice(cert):
    i = invariants(cert.L_minus1)
    assert (i.rank, i.parity, abs(i.det)) == (12, "even", 2 ** 10)
    assert discriminant_group(cert.L_minus1) == discriminant_group(standard_lattice("E8(2) + U(2) + U"))
    assert linalg.det(cert.base.gram) == i.det * cert.index ** 2


def test_report(report):
    assert report.passed
    assert len(report.identities) == 9 and all(c.passed for c in report.identities)
    assert report.tau_sign == -1
    assert any("D4(2)" in n for n in report.notes)


def test_actions_form_klein_group(cert):
    n = cert.L_minus1.rank
    c1, tau = cert.c1_action, cert.tau_action
    assert linalg.matmul(c1, c1) == linalg.matmul(tau, tau) == linalg.identity(n)
    assert linalg.matmul(c1, tau) == linalg.matmul(tau, c1)
    for m in (c1, tau):
        assert linalg.congruent(cert.L_minus1.matrix, m) == cert.L_minus1.matrix


def test_report_flags_broken_certificate(cert):
    from dataclasses import replace
    broken = replace(cert, r_minus=tuple(-x for x in cert.r_plus))
    rep = verify_certificate(broken)
    assert not rep.passed
    assert not next(c for c in rep.checks if c.name == "r+ . r- = 0").passed
