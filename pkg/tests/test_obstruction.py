import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nielsen.lattice import direct_sum, is_characteristic, standard_lattice
from nielsen.manifold import (Manifold, Pi1, SurfaceConfig, build, building_block, capacities,
                              reverse_orientation)
from nielsen.obstruction import (Conclusion, ObstructionError, check_multi_reflection, check_multi_twist,
                                 check_multi_twist_spin, check_projective_twist, projective_twist_nontrivial,
                                 reevaluate)

OBS = Conclusion.OBSTRUCTED_NO_FINITE_ORDER
INV = Conclusion.OBSTRUCTED_NO_INVOLUTION
HF = Conclusion.HYPOTHESIS_FAILURE
NA = Conclusion.INAPPLICABLE


def spheres(e, k):
    return SurfaceConfig.spheres(e, k)


class TestSpinLemma:
    def test_k3_one_sphere(self):
        v = check_multi_twist_spin(building_block("K3"), spheres(-2, 1))
        assert v.conclusion == OBS

    def test_boundary(self):
        x = Manifold("spin(-2)", 6, -2, parity="even", spin=True, cover_spin=True)
        assert check_multi_twist_spin(x, spheres(-2, 1)).conclusion == NA

    def test_k_plus_too_large(self):
        v = check_multi_twist_spin(building_block("K3"), spheres(2, 2))
        assert v.conclusion == HF
        # -sigma/16 + 1 = 2 is not > 2
        assert [c.id for c in v.conditions if not c.satisfied] == ["k_plus_range"]

    def test_k_plus_one_allowed(self):
        assert check_multi_twist_spin(building_block("K3"), spheres(2, 1)).conclusion == OBS

    def test_exact_rational_bound(self):
        # sigma = -24: -sigma/16 + 1 = 5/2, so k+ = 2 is allowed and 3 is not
        x = Manifold("spin(-24)", 36, -24, parity="even", spin=True, cover_spin=True)
        assert check_multi_twist_spin(x, spheres(2, 2)).conclusion == OBS
        assert check_multi_twist_spin(x, spheres(2, 3)).conclusion == HF

    def test_sigma_zero(self):
        assert check_multi_twist_spin(building_block("S2xS2"), spheres(-2, 1)).conclusion == NA

    def test_errors(self):
        with pytest.raises(ObstructionError):
            check_multi_twist_spin(building_block("Enriques"), spheres(-2, 1))
        with pytest.raises(ObstructionError):
            check_multi_twist_spin(building_block("K3"), SurfaceConfig())


class TestMultiTwist:
    def test_enriques(self):
        v = check_multi_twist(building_block("Enriques"), spheres(-2, 1))
        assert v.conclusion == OBS and v.rule == "thm:obstruction1"
        assert v.details["cover"] == {"degree": 2, "sigma": -16, "spheres": 2}

    def test_enriques_boundary(self):
        assert check_multi_twist(building_block("Enriques"), spheres(-2, 4)).conclusion == NA

    def test_elliptic(self):
        assert check_multi_twist(building_block("Elliptic", n=2, p=3, t=1), spheres(-2, 1)).conclusion == OBS

    def test_sign_mismatch(self):
        assert check_multi_twist(building_block("Enriques"), spheres(2, 1)).conclusion == NA

    def test_errors(self):
        mixed = SurfaceConfig(spheres(-2, 1).components + spheres(2, 1).components)
        with pytest.raises(ObstructionError):
            check_multi_twist(build("csum(K3, S2xS2)"), mixed)
        with pytest.raises(ObstructionError):
            check_multi_twist(build("Enriques#2"), spheres(-2, 1))


@st.composite
def twist_records(draw):
    m = draw(st.sampled_from([1, 2, 3, 4, 128]))
    sigma = draw(st.integers(-40, 40).filter(bool))
    b2 = abs(sigma) + 2 * draw(st.integers(1, 6))
    k = draw(st.integers(1, 30))
    spin_cover = draw(st.booleans())
    x = Manifold(f"R(m={m})", b2 + 2, sigma, parity="even" if (m == 1 and spin_cover) else "odd",
                 pi1=Pi1(m, f"G{m}"), spin=(m == 1 and spin_cover), cover_spin=spin_cover)
    return x, k


@given(twist_records())
def test_mirror_symmetry(rec):
    x, k = rec
    e = -2 if x.sigma < 0 else 2
    a = check_multi_twist(x, spheres(e, k))
    b = check_multi_twist(reverse_orientation(x), spheres(-e, k))
    assert a.conclusion == b.conclusion


@given(twist_records())
def test_cover_consistency(rec):
    x, k = rec
    e = -2 if x.sigma < 0 else 2
    v = check_multi_twist(x, spheres(e, k))
    m = x.pi1.order
    half = Fraction(abs(x.sigma), 2)
    assert (k != half) == (m * k != m * half)
    if "cover_verdict" in v.details:
        assert v.obstructed == (v.details["cover_verdict"]["conclusion"] == OBS.value)
    assert reevaluate(v)


class TestProjective:
    def test_hitchin(self):
        h = building_block("Hitchin")
        v = check_projective_twist(h, SurfaceConfig.planes(-1, 1))
        assert v.conclusion == OBS and v.rule == "cor:obstruction"
        assert v.details["double_cover_verdict"]["conclusion"] == OBS.value
        assert projective_twist_nontrivial(h).conclusion == Conclusion.NONTRIVIAL_CLASS

    def test_mirror(self):
        h = reverse_orientation(building_block("Hitchin"))
        assert check_projective_twist(h, SurfaceConfig.planes(1, 1)).conclusion == OBS

    def test_sigma_minus_one(self):
        q = Manifold("q", 3, -1, pi1=Pi1(2, "Z2"), cover_spin=True, caps=capacities(plane_m1=1))
        assert check_projective_twist(q, SurfaceConfig.planes(-1, 1)).conclusion == NA

    def test_k_equals_minus_sigma(self):
        q = Manifold("q", 4, -2, pi1=Pi1(2, "Z2"), cover_spin=True, caps=capacities(plane_m1=2))
        v = check_projective_twist(q, SurfaceConfig.planes(-1, 2))
        assert v.conclusion == NA and v.rule == "rk:multiPT"

    def test_errors(self):
        h = building_block("Hitchin")
        with pytest.raises(ObstructionError):
            check_projective_twist(h, SurfaceConfig.planes(-1, 1, essential=False))
        with pytest.raises(ObstructionError):
            check_projective_twist(h, spheres(-2, 1))
        with pytest.raises(ObstructionError):
            check_projective_twist(build("Hitchin#2"), SurfaceConfig.planes(-1, 1))

    def test_nontrivial_silent_case(self):
        x = Manifold("b1=1", 1, -1, b1=1, caps=capacities(plane_m1=1))
        assert (x.b_plus, x.b_minus, x.b1) == (0, 1, 1)
        assert projective_twist_nontrivial(x).conclusion == HF

    def test_nontrivial_needs_plane(self):
        with pytest.raises(ObstructionError):
            projective_twist_nontrivial(building_block("K3"))


class TestReflection:
    def test_k3_three(self):
        v = check_multi_reflection(building_block("K3"), 3)
        assert v.conclusion == INV
        assert v.details["c1_squared_minus_sigma"] == 16 == v.details["minus_sigma_xprime"]

    def test_k3_sixteen(self):
        assert check_multi_reflection(building_block("K3"), 16).conclusion == NA

    def test_sigma_zero(self):
        assert check_multi_reflection(build("S2xS2#2"), 1).conclusion == HF

    def test_hitchin_literal_and_as_paper(self):
        h = building_block("Hitchin")
        lit = check_multi_reflection(h, 1)
        assert lit.conclusion == HF
        pap = check_multi_reflection(h, 1, as_paper=True)
        assert pap.conclusion == INV
        assert {c.id for c in pap.conditions if c.overridden} == {"xprime_spin", "h1_ok", "c_characteristic"}
        assert any("--as-paper override" in n for n in pap.notes)
        assert reevaluate(pap) and reevaluate(lit)

    def test_h1_assertion(self):
        e = building_block("K3")
        assert check_multi_reflection(e, 3, h1_ok=False).conclusion == HF

    def test_k_zero(self):
        with pytest.raises(ObstructionError):
            check_multi_reflection(building_block("K3"), 0)

    @pytest.mark.parametrize("k", range(1, 5))
    def test_characteristic_agrees(self, k):
        v = check_multi_reflection(building_block("K3"), k)
        lat = direct_sum(standard_lattice("2*E8 + 3*U"), standard_lattice(f"{k}*<-1>"))
        c = [0] * 22 + [1] * k
        cond = next(c for c in v.conditions if c.id == "c_characteristic")
        assert cond.satisfied == is_characteristic(lat, c) is True


class TestSelfCertifying:
    def test_roundtrip_json(self):
        v = check_multi_twist(building_block("Enriques"), spheres(-2, 1))
        d = json.loads(v.to_json())
        assert reevaluate(d)
        assert v.to_json() == check_multi_twist(building_block("Enriques"), spheres(-2, 1)).to_json()

    def test_tampered_witness_detected(self):
        d = json.loads(check_multi_twist(building_block("Enriques"), spheres(-2, 1)).to_json())
        d["conditions"][-1]["values"]["k"] = 4
        assert not reevaluate(d)

    def test_tampered_conclusion_detected(self):
        d = check_multi_twist(building_block("Enriques"), spheres(-2, 4)).to_dict()
        d["conclusion"] = OBS.value
        assert not reevaluate(d)

    def test_obstructed_requires_all_conditions(self):
        for v in (check_multi_twist(building_block("Enriques"), spheres(-2, 1)),
                  check_multi_reflection(building_block("K3"), 3),
                  check_projective_twist(building_block("Hitchin"), SurfaceConfig.planes(-1, 1))):
            assert v.obstructed and all(c.satisfied for c in v.conditions)

    def test_text_report(self):
        t = check_multi_reflection(building_block("Hitchin"), 1, as_paper=True).to_text()
        assert "OVR" in t and "thm:obstruction2" in t
