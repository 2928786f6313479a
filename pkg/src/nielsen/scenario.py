"""Scenario files: a manifold build expression plus a mapping class."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from .manifold import (PLANE, SPHERE, Component, Manifold, SurfaceConfig, build,
                       building_block, connected_sum, repeat_sum, validate_config)
from .obstruction import (Verdict, check_multi_reflection, check_multi_twist,
                          check_projective_twist, projective_twist_nontrivial)

MAPPING_TYPES = ("multi_twist", "projective_twist", "multi_reflection")


class ScenarioError(ValueError):
    """Malformed input or a configuration the manifold cannot carry."""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        super().__init__(message)
        self.violations = violations or []


@dataclass(frozen=True)
class MappingClass:
    type: str
    config: Optional[SurfaceConfig] = None
    k: Optional[int] = None
    xprime: Optional[str] = None
    h1_ok: Optional[bool] = None


@dataclass(frozen=True)
class Scenario:
    build: Optional[str]
    mapping_class: MappingClass
    as_paper: bool = False
    format: str = "text"


def _config(items, classes=None) -> SurfaceConfig:
    if not isinstance(items, list) or not items:
        raise ScenarioError("'config' must be a non-empty list of components")
    comps = []
    for it in items:
        if not isinstance(it, dict):
            raise ScenarioError(f"config entry {it!r} is not an object")
        unknown = set(it) - {"kind", "euler", "count", "essential"}
        if unknown:
            raise ScenarioError(f"unknown config keys {sorted(unknown)}")
        comps.append(Component(it.get("kind", SPHERE), int(it["euler"]), int(it.get("count", 1)),
                               bool(it.get("essential", True))))
    cls = tuple(tuple(int(x) for x in c) for c in classes) if classes is not None else None
    return SurfaceConfig(tuple(comps), cls)


def parse_scenario(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    mc = data.get("mapping_class")
    if not isinstance(mc, dict):
        raise ScenarioError("scenario needs a 'mapping_class' object")
    kind = mc.get("type")
    if kind not in MAPPING_TYPES:
        raise ScenarioError(f"mapping_class.type must be one of {MAPPING_TYPES}, got {kind!r}")
    opts = data.get("options", {}) or {}
    fmt = opts.get("format", "text")
    if fmt not in ("text", "json"):
        raise ScenarioError(f"options.format must be 'text' or 'json', got {fmt!r}")
    try:
        if kind == "multi_reflection":
            if "k" not in mc or "xprime" not in mc:
                raise ScenarioError("multi_reflection needs 'k' and 'xprime'")
            h1 = mc.get("h1_ok")
            m = MappingClass(kind, k=int(mc["k"]), xprime=str(mc["xprime"]),
                             h1_ok=None if h1 is None else bool(h1))
        else:
            if "build" not in data:
                raise ScenarioError(f"{kind} needs a 'build' expression")
            m = MappingClass(kind, config=_config(mc.get("config"), mc.get("classes")))
    except (KeyError, TypeError) as e:
        raise ScenarioError(f"malformed mapping_class: {e}") from e
    return Scenario(data.get("build"), m, bool(opts.get("as_paper", False)), fmt)


def load_scenario(path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ScenarioError(f"cannot read scenario {path}: {e}") from e
    return parse_scenario(data)


def reflection_target(xprime: Manifold, k: int) -> Manifold:
    """X = X' # k CP2bar."""
    return connected_sum(xprime, repeat_sum(building_block("CP2bar"), k))


def evaluate(x: Optional[Manifold], mc: MappingClass, as_paper: bool = False) -> Verdict:
    """Validate the configuration against x and dispatch to the matching criterion."""
    if mc.type == "multi_reflection":
        xprime = build(mc.xprime)
        if mc.k is None or mc.k < 1:
            raise ScenarioError("multi_reflection needs k >= 1")
        target = reflection_target(xprime, mc.k)
        if x is not None and (x.chi, x.sigma, x.b1) != (target.chi, target.sigma, target.b1):
            raise ScenarioError(f"build {x.name} is not {xprime.name} # {mc.k} CP2bar")
        return check_multi_reflection(xprime, mc.k, mc.h1_ok, as_paper=as_paper)
    violations = validate_config(x, mc.config)
    if violations:
        raise ScenarioError("configuration exceeds what the manifold carries", violations)
    if mc.type == "multi_twist":
        if mc.config.has_planes:
            raise ScenarioError("multi_twist config may only contain spheres")
        return check_multi_twist(x, mc.config)
    if any(c.kind != PLANE for c in mc.config.components):
        raise ScenarioError("projective_twist config may only contain projective planes")
    v = check_projective_twist(x, mc.config)
    v.details["nontrivial"] = projective_twist_nontrivial(x).to_dict()
    return v


def run(s: Scenario) -> Verdict:
    x = build(s.build) if s.build is not None else None
    return evaluate(x, s.mapping_class, s.as_paper)
