"""Decide the non-realizability criteria for a (manifold, mapping class) pair.

Every verdict carries its hypotheses as conditions with the integer
witnesses they were evaluated on. ``reevaluate`` recomputes each condition
from those witnesses alone, so a serialized verdict can be checked without
rebuilding the manifold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .lattice import direct_sum, is_characteristic, standard_lattice
from .manifold import (PLANE, Manifold, Pi1, SurfaceConfig,
                       lift_surface_config, universal_cover)


class ObstructionError(ValueError):
    pass


class Conclusion(str, Enum):
    OBSTRUCTED_NO_FINITE_ORDER = "ObstructedNoFiniteOrder"
    OBSTRUCTED_NO_INVOLUTION = "ObstructedNoInvolution"
    NONTRIVIAL_CLASS = "NontrivialClass"
    INAPPLICABLE = "Inapplicable"
    HYPOTHESIS_FAILURE = "HypothesisFailure"

    @property
    def obstructed(self) -> bool:
        return self in (Conclusion.OBSTRUCTED_NO_FINITE_ORDER, Conclusion.OBSTRUCTED_NO_INVOLUTION)


HF, INAPP = Conclusion.HYPOTHESIS_FAILURE, Conclusion.INAPPLICABLE

RULE_SUCCESS = {
    "lem:multi-twist-spin": Conclusion.OBSTRUCTED_NO_FINITE_ORDER,
    "thm:obstruction1": Conclusion.OBSTRUCTED_NO_FINITE_ORDER,
    "cor:obstruction": Conclusion.OBSTRUCTED_NO_FINITE_ORDER,
    "rk:multiPT": Conclusion.OBSTRUCTED_NO_FINITE_ORDER,
    "prop:essential": Conclusion.NONTRIVIAL_CLASS,
    "thm:obstruction2": Conclusion.OBSTRUCTED_NO_INVOLUTION,
}


def _half(x: int) -> Fraction:
    return Fraction(x, 2)


# condition id -> predicate on the recorded witnesses
PREDICATES: Dict[str, Callable[[dict], bool]] = {
    "spin": lambda v: v["spin"],
    "b1_zero": lambda v: v["b1"] == 0,
    "pi1_finite": lambda v: v["pi1_order"] is not None,
    "pi1_order_even": lambda v: v["pi1_order"] is not None and v["pi1_order"] % 2 == 0,
    "cover_spin": lambda v: v["cover_spin"],
    "sigma_nonzero": lambda v: v["sigma"] != 0,
    # the lemma is evaluated on the orientation with negative signature
    "sigma_half_ne_kdiff": lambda v: _half(v["sigma"]) != v["k_plus"] - v["k_minus"],
    "k_plus_range": lambda v: v["k_plus"] == 0 or Fraction(-v["sigma"], 16) + 1 > v["k_plus"] > 0,
    "sign_matches": lambda v: v["sigma"] * v["euler"] > 0,
    "k_ne_half_sigma": lambda v: v["k"] != _half(abs(v["sigma"])),
    "abs_sigma_gt_one": lambda v: v["sigma"] * v["euler"] > 1,
    "k_ne_sigma": lambda v: v["k"] != abs(v["sigma"]),
    "b_plus_minus_unrestricted": lambda v: v["b_plus"] != v["b1"] - 1 or v["b_minus"] != v["b1"],
    "xprime_spin": lambda v: v["spin"],
    "xprime_sigma_negative": lambda v: v["sigma_xprime"] < 0,
    "h1_ok": lambda v: v["h1_ok"],
    "c1sq_minus_sigma_positive": lambda v: v["c1_squared"] - v["sigma_x"] > 0,
    "c_characteristic": lambda v: v["characteristic"],
    "k_ne_minus_half_sigma_x": lambda v: v["k"] != _half(-v["sigma_x"]),
}


@dataclass
class Condition:
    id: str
    text: str
    satisfied: bool
    values: dict
    on_fail: Conclusion = HF
    overridden: bool = False

    def to_dict(self) -> dict:
        return {"id": self.id, "text": self.text, "satisfied": self.satisfied,
                "values": self.values, "on_fail": self.on_fail.value, "overridden": self.overridden}


def _cond(cid: str, text: str, values: dict, on_fail: Conclusion = HF) -> Condition:
    return Condition(cid, text, bool(PREDICATES[cid](values)), values, on_fail)


def conclude(conditions: List[Condition], success: Conclusion) -> Conclusion:
    """Structural hypothesis failures win over range exclusions."""
    failed = [c for c in conditions if not c.satisfied and not c.overridden]
    if any(c.on_fail == HF for c in failed):
        return HF
    if failed:
        return INAPP
    return success


@dataclass
class Verdict:
    conclusion: Conclusion
    rule: str
    conditions: List[Condition]
    citations: List[str]
    notes: List[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.conclusion.obstructed

    def to_dict(self) -> dict:
        return {
            "conclusion": self.conclusion.value,
            "rule": self.rule,
            "conditions": [c.to_dict() for c in self.conditions],
            "citations": list(self.citations),
            "notes": list(self.notes),
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"verdict: {self.conclusion.value}", f"rule:    {self.rule}"]
        for c in self.conditions:
            mark = "ok  " if c.satisfied else ("OVR " if c.overridden else "FAIL")
            vals = ", ".join(f"{k}={v}" for k, v in sorted(c.values.items()))
            lines.append(f"  [{mark}] {c.text}  ({vals})")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append("cites:   " + ", ".join(self.citations))
        return "\n".join(lines)


def reevaluate(v: Verdict | dict) -> bool:
    """True iff every condition and the conclusion follow from the recorded witnesses."""
    d = v.to_dict() if isinstance(v, Verdict) else v
    conds = []
    for c in d["conditions"]:
        ok = bool(PREDICATES[c["id"]](c["values"]))
        if ok != c["satisfied"]:
            return False
        conds.append(Condition(c["id"], c["text"], ok, c["values"],
                               Conclusion(c["on_fail"]), c["overridden"]))
    expected = conclude(conds, RULE_SUCCESS[d["rule"]])
    if expected.value != d["conclusion"]:
        return False
    nested = [x for x in d.get("details", {}).values() if isinstance(x, dict) and "rule" in x]
    return all(reevaluate(x) for x in nested)


def _verdict(rule: str, conditions: List[Condition], citations: List[str], **kw) -> Verdict:
    return Verdict(conclude(conditions, RULE_SUCCESS[rule]), rule, conditions, citations, **kw)


# -- multi-twists ----------------------------------------------------------------

def _sphere_only(cfg: SurfaceConfig, allowed: Tuple[int, ...]):
    if cfg.has_planes:
        raise ObstructionError("configuration contains projective planes")
    bad = {c.euler for c in cfg.components} - set(allowed)
    if bad:
        raise ObstructionError(f"spheres of normal Euler number {sorted(bad)} are not twist spheres")
    if cfg.k == 0:
        raise ObstructionError("empty configuration: the multi-twist is the identity")


def check_multi_twist_spin(x: Manifold, cfg: SurfaceConfig) -> Verdict:
    """Spin criterion for a multi-twist with k+ (+2)-spheres and k- (-2)-spheres.

    For positive signature the criterion is applied to the reversed
    orientation, which swaps k+ and k-.
    """
    if not x.spin:
        raise ObstructionError(f"{x.name} is not spin")
    if x.b1:
        raise ObstructionError(f"{x.name} has b1 = {x.b1}; the criterion is modeled for b1 = 0")
    _sphere_only(cfg, (-2, 2))
    cites = ["lem:multi-twist-spin"]
    conds = [_cond("spin", "X is spin", {"spin": x.spin}),
             _cond("sigma_nonzero", "sigma(X) != 0", {"sigma": x.sigma}, INAPP)]
    if x.sigma == 0:
        return _verdict("lem:multi-twist-spin", conds, cites)
    mirrored = x.sigma > 0
    sigma, kp, km = (-x.sigma, cfg.k_minus, cfg.k_plus) if mirrored else (x.sigma, cfg.k_plus, cfg.k_minus)
    if mirrored:
        cites.append("rk:positivesign")
    w = {"sigma": sigma, "k_plus": kp, "k_minus": km}
    conds += [
        _cond("sigma_half_ne_kdiff", "sigma/2 != k+ - k-", w, INAPP),
        _cond("k_plus_range", "k+ = 0 or -sigma/16 + 1 > k+ > 0", {"sigma": sigma, "k_plus": kp}),
    ]
    notes = ["evaluated on the reversed orientation (roles of k+ and k- switched)"] if mirrored else []
    return _verdict("lem:multi-twist-spin", conds, cites, notes=notes)


def check_multi_twist(x: Manifold, cfg: SurfaceConfig) -> Verdict:
    """Finite-pi1 criterion for a multi-twist along same-sign (+-2)-spheres, via the spin cover."""
    _sphere_only(cfg, (-2, 2))
    eulers = {c.euler for c in cfg.components}
    if len(eulers) != 1:
        raise ObstructionError("mixed normal Euler numbers in a multi-twist configuration")
    if not x.pi1.finite:
        raise ObstructionError(f"{x.name}: fundamental group not known to be finite")
    euler = eulers.pop()
    k = cfg.k
    conds = [
        _cond("pi1_finite", "pi1(X) finite", {"pi1_order": x.pi1.order}),
        _cond("b1_zero", "b1(X) = 0", {"b1": x.b1}),
        _cond("cover_spin", "universal cover is spin", {"cover_spin": x.cover_spin}),
        _cond("sign_matches", "sign of sigma(X) matches the sphere Euler numbers",
              {"sigma": x.sigma, "euler": euler}, INAPP),
        _cond("k_ne_half_sigma", "k != |sigma|/2", {"k": k, "sigma": x.sigma}, INAPP),
    ]
    details = {}
    verdict = _verdict("thm:obstruction1", conds, ["thm:obstruction1", "lem:multi-twist-spin"],
                       details=details)
    if all(c.satisfied for c in conds[:4]):
        cover = universal_cover(x)
        lifted = lift_surface_config(cfg, x.pi1.order)
        sub = check_multi_twist_spin(cover, lifted)
        details["cover"] = {"degree": x.pi1.order, "sigma": cover.sigma, "spheres": lifted.k}
        details["cover_verdict"] = sub.to_dict()
        if sub.obstructed != verdict.obstructed:
            raise AssertionError("cover criterion disagrees with the k != |sigma|/2 test")
    return verdict


# -- projective twists -------------------------------------------------------------

def _double_cover(x: Manifold) -> Manifold:
    # parity/spin are only pinned down when the double cover is universal;
    # the twist criterion reads sigma, pi1 and cover_spin only
    m = x.pi1.order
    spin = x.cover_spin and m == 2
    return Manifold(f"double({x.name})", 2 * x.chi, 2 * x.sigma, 0, "even" if spin else "odd",
                    Pi1(m // 2, "index-2 subgroup"), spin, x.cover_spin)


def check_projective_twist(x: Manifold, cfg: SurfaceConfig) -> Verdict:
    if not cfg.has_planes or any(c.kind != PLANE for c in cfg.components):
        raise ObstructionError("a projective (multi-)twist needs projective planes only")
    if any(not c.essential for c in cfg.components):
        raise ObstructionError("non-essential projective plane: the criterion needs essential planes")
    eulers = {c.euler for c in cfg.components}
    if len(eulers) != 1:
        raise ObstructionError("mixed normal Euler numbers among projective planes")
    if not x.pi1.finite:
        raise ObstructionError(f"{x.name}: fundamental group not known to be finite")
    euler = eulers.pop()
    k = cfg.count(PLANE)
    rule = "cor:obstruction" if k == 1 else "rk:multiPT"
    conds = [
        _cond("pi1_finite", "pi1(X) finite", {"pi1_order": x.pi1.order}),
        _cond("pi1_order_even", "pi1(X) has even order (essential planes need a double cover)",
              {"pi1_order": x.pi1.order}),
        _cond("b1_zero", "b1(X) = 0", {"b1": x.b1}),
        _cond("cover_spin", "universal cover is spin", {"cover_spin": x.cover_spin}),
        _cond("abs_sigma_gt_one", "sigma(X) < -1 (resp. > 1 for Euler number +1)",
              {"sigma": x.sigma, "euler": euler}, INAPP),
        _cond("k_ne_sigma", "k != |sigma|", {"k": k, "sigma": x.sigma}, INAPP),
    ]
    details = {}
    notes = ["in the double cover each essential plane lifts to a sphere of Euler number "
             f"{2 * euler:+d}"]
    verdict = _verdict(rule, conds, ["cor:obstruction", "rk:multiPT", "thm:obstruction1"],
                       notes=notes, details=details)
    if all(c.satisfied for c in conds[:4]):
        double = _double_cover(x)
        sub = check_multi_twist(double, SurfaceConfig.spheres(2 * euler, k))
        details["double_cover"] = {"sigma": double.sigma, "spheres": k, "euler": 2 * euler}
        details["double_cover_verdict"] = sub.to_dict()
        if verdict.obstructed and not sub.obstructed:
            raise AssertionError("double-cover reduction does not support the projective verdict")
    return verdict


def projective_twist_nontrivial(x: Manifold) -> Verdict:
    if not (x.capacity(PLANE, -1) or x.capacity(PLANE, 1)):
        raise ObstructionError(f"{x.name} has no essential projective plane on record")
    w = {"b_plus": x.b_plus, "b_minus": x.b_minus, "b1": x.b1}
    conds = [_cond("b_plus_minus_unrestricted", "b+ != b1 - 1 or b- != b1", w)]
    return _verdict("prop:essential", conds, ["prop:essential"])


# -- multi-reflections -------------------------------------------------------------

def _derived_h1_ok(x: Manifold) -> bool:
    # H1 is the abelianization of pi1; odd order rules out 2-torsion
    return x.b1 == 0 and x.pi1.finite and x.pi1.order % 2 == 1


def check_multi_reflection(xprime: Manifold, k: int, h1_ok: Optional[bool] = None,
                           as_paper: bool = False) -> Verdict:
    """Multi-reflection along k exceptional spheres of X = X' # k CP2bar.

    ``h1_ok`` asserts that H1(X') has no 2-torsion and no infinite-order
    elements; when None it is derived from b1 and |pi1|. ``as_paper``
    overrides the spin-related hypotheses on X' and records each override.
    """
    if k < 1:
        raise ObstructionError("a multi-reflection needs k >= 1 exceptional spheres")
    sigma_x = xprime.sigma - k
    source = "asserted" if h1_ok is not None else "derived"
    h1 = bool(h1_ok) if h1_ok is not None else _derived_h1_ok(xprime)
    c1_sq = -k
    conds = [
        _cond("xprime_spin", "X' is spin", {"spin": xprime.spin}),
        _cond("xprime_sigma_negative", "sigma(X') < 0", {"sigma_xprime": xprime.sigma}),
        _cond("h1_ok", "H1(X') has no 2-torsion or infinite-order elements",
              {"h1_ok": h1, "source": source}),
        _cond("c1sq_minus_sigma_positive", "c1(s)^2 - sigma(X) > 0",
              {"c1_squared": c1_sq, "sigma_x": sigma_x}),
        _cond("k_ne_minus_half_sigma_x", "k != -sigma(X)/2", {"k": k, "sigma_x": sigma_x}, INAPP),
    ]
    details = {"sigma_x": sigma_x, "c1_squared": c1_sq,
               "c1_squared_minus_sigma": c1_sq - sigma_x, "minus_sigma_xprime": -xprime.sigma}
    if xprime.lattice is not None:
        lat = direct_sum(xprime.lattice, standard_lattice(f"{k}*<-1>"))
        c = [0] * xprime.lattice.rank + [1] * k
        conds.append(_cond("c_characteristic", "c = sum of exceptional classes is characteristic",
                           {"characteristic": is_characteristic(lat, c)}))
    notes = []
    if as_paper:
        for cond in conds:
            if not cond.satisfied and cond.id in ("xprime_spin", "h1_ok", "c_characteristic"):
                cond.overridden = True
                notes.append(f"--as-paper override: '{cond.text}' fails for X' = {xprime.name}")
        if notes:
            notes.append("hypotheses above are not met literally; the verdict follows the "
                         "as-paper application of the multi-reflection theorem")
    return _verdict("thm:obstruction2", conds, ["thm:obstruction2", "lem:multi-reflection"],
                    notes=notes, details=details)
