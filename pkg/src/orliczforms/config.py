"""Run configuration: a single JSON document that pins every knob of a
verification run, validated up front with a complete list of violations.

Schema (all keys optional, defaults shown):

{
  "dims": 2,
  "domain": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
  "grid_resolution": 51,
  "ball_resolution": 15,
  "ball_count": 24,
  "t_nodes": 32,
  "sigma": 1.1,
  "rho": null,                       // null -> same as sigma
  "k": 0.5,
  "radius_fraction": 0.25,
  "young": {"name": "power", "p": 2.0},           // or power_log / custom
  "g_class": {"p": 1.5, "q": 3.0, "c": 1.0},
  "conjugate": {"p": 2.0, "q": 2.0},
  "weighted": {"p": 4.0, "q": 1.5, "alpha": 2.0, "s": 1.2,
               "young": {"name": "power", "p": 1.2}},
  "weights": [{"name": "constant", "value": 1.0},
              {"name": "constant", "value": 2.5},
              {"name": "power", "exponent": 0.5}], // optional "center"
  "lemma_exponent_t": 2.0,
  "sobolev_t": 1.5,
  "osc_a_values": [0.5, 1.0, 2.0],
  "verifiers": ["all"],
  "stability_check": true,
  "seed": 0
}
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .geometry import Ball, Box, Domain
from .weights import Weight, constant_weight, custom_weight, power_weight
from .young import YoungFunction, custom_young, power, power_log

__all__ = ["RunConfig", "load_config", "DEFAULT_CONFIG"]

DEFAULT_CONFIG: dict = {
    "dims": 2,
    "domain": None,  # None -> unit box of the configured dimension
    "grid_resolution": 51,
    "ball_resolution": 15,
    "ball_count": 24,
    "t_nodes": 32,
    "sigma": 1.1,
    "rho": None,
    "k": 0.5,
    "radius_fraction": 0.25,
    "young": {"name": "power", "p": 2.0},
    "g_class": {"p": 1.5, "q": 3.0, "c": 1.0},
    "conjugate": {"p": 2.0, "q": 2.0},
    "weighted": {"p": 4.0, "q": 1.5, "alpha": 2.0, "s": 1.2,
                 "young": {"name": "power", "p": 1.2}},
    "weights": [{"name": "constant", "value": 1.0},
                {"name": "constant", "value": 2.5},
                {"name": "power", "exponent": 0.5}],
    "lemma_exponent_t": 2.0,
    "sobolev_t": 1.5,
    "osc_a_values": [0.5, 1.0, 2.0],
    "verifiers": ["all"],
    "stability_check": True,
    "seed": 0,
}

_VERIFIER_NAMES = (
    "lemma_T_bound", "lemma_closed_part_bound", "sobolev_poincare",
    "oscillation_lower_bound", "thm_lipschitz", "thm_bmo", "thm_bmo_le_lip",
    "conjugate_pair", "weighted_lipschitz",
)


def _is_num(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _check_young_spec(spec, where: str, errors: list):
    if not isinstance(spec, dict) or "name" not in spec:
        errors.append(f"{where}: expected an object with a 'name' key")
        return
    name = spec["name"]
    if name in ("power", "power_log"):
        p = spec.get("p")
        if not (_is_num(p) and p >= 1):
            errors.append(f"{where}: {name} needs p >= 1, got {p!r}")
    elif name == "custom":
        if not isinstance(spec.get("expression"), str):
            errors.append(f"{where}: custom needs an 'expression' string in t")
    else:
        errors.append(f"{where}: unknown Young function {name!r}")


def _build_young_spec(spec: dict) -> YoungFunction:
    if spec["name"] == "power":
        return power(spec["p"])
    if spec["name"] == "power_log":
        return power_log(spec["p"])
    return custom_young(spec["expression"])


@dataclass
class RunConfig:
    raw: dict = field(default_factory=lambda: copy.deepcopy(DEFAULT_CONFIG))

    # -- field accessors ----------------------------------------------------
    def __getattr__(self, name: str):
        raw = object.__getattribute__(self, "raw")
        if name in raw:
            return raw[name]
        raise AttributeError(name)

    @property
    def rho(self) -> float:
        return self.raw["sigma"] if self.raw["rho"] is None else self.raw["rho"]

    def to_dict(self) -> dict:
        return copy.deepcopy(self.raw)

    # -- construction ---------------------------------------------------
    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        merged = copy.deepcopy(DEFAULT_CONFIG)
        errors = [f"unknown config key {k!r}" for k in data if k not in merged]
        for k in merged:
            if k in data:
                merged[k] = copy.deepcopy(data[k])
        errors.extend(_validate(merged))
        if errors:
            raise ConfigError(errors)
        return cls(merged)

    # -- builders ---------------------------------------------------------
    def build_domain(self) -> Domain:
        spec = self.raw["domain"]
        if spec is None:
            n = self.raw["dims"]
            return Box([0.0] * n, [1.0] * n)
        if spec["kind"] == "box":
            return Box(spec["lo"], spec["hi"])
        return Ball(spec["center"], spec["radius"])

    def build_young(self) -> YoungFunction:
        return _build_young_spec(self.raw["young"])

    def build_weighted_young(self) -> YoungFunction:
        return _build_young_spec(self.raw["weighted"]["young"])

    def build_weights(self) -> list:
        out = []
        for spec in self.raw["weights"]:
            if spec["name"] == "constant":
                out.append(constant_weight(spec["value"]))
            elif spec["name"] == "power":
                center = spec.get("center")
                if center is None:
                    from .corpus import _offgrid_center
                    center = _offgrid_center(self.build_domain())
                out.append(power_weight(center, spec["exponent"]))
            else:
                out.append(custom_weight(spec["expression"], self.raw["dims"]))
        return out

    def enabled_verifiers(self) -> tuple:
        names = self.raw["verifiers"]
        if names == ["all"] or names == "all":
            return _VERIFIER_NAMES
        return tuple(n for n in _VERIFIER_NAMES if n in names)


def _validate(cfg: dict) -> list:
    e: list = []
    dims = cfg["dims"]
    if dims not in (2, 3):
        e.append(f"dims must be 2 or 3 (corpus presets exist for those), got {dims!r}")
        dims = 2  # keep later checks meaningful

    dom = cfg["domain"]
    if dom is not None:
        if not isinstance(dom, dict) or dom.get("kind") not in ("box", "ball"):
            e.append("domain: expected {'kind': 'box'|'ball', ...}")
        elif dom["kind"] == "box":
            lo, hi = dom.get("lo"), dom.get("hi")
            if (not isinstance(lo, list) or not isinstance(hi, list)
                    or len(lo) != dims or len(hi) != dims
                    or not all(_is_num(a) for a in lo + hi)):
                e.append(f"domain: box needs numeric lo/hi of length {dims}")
            elif not all(a < b for a, b in zip(lo, hi)):
                e.append("domain: box needs lo < hi per axis")
        else:
            c, r = dom.get("center"), dom.get("radius")
            if (not isinstance(c, list) or len(c) != dims
                    or not all(_is_num(a) for a in c) or not _is_num(r) or r <= 0):
                e.append(f"domain: ball needs a length-{dims} center and radius > 0")

    for key, low in (("grid_resolution", 5), ("ball_resolution", 5),
                     ("ball_count", 1), ("t_nodes", 2)):
        v = cfg[key]
        if not isinstance(v, int) or isinstance(v, bool) or v < low:
            e.append(f"{key} must be an integer >= {low}, got {v!r}")

    if not (_is_num(cfg["sigma"]) and cfg["sigma"] > 1):
        e.append(f"sigma must be > 1, got {cfg['sigma']!r}")
    if cfg["rho"] is not None and not (_is_num(cfg["rho"]) and cfg["rho"] > 1):
        e.append(f"rho must be null or > 1, got {cfg['rho']!r}")
    if not (_is_num(cfg["k"]) and 0 < cfg["k"] < 1):
        e.append(f"k must lie in (0, 1), got {cfg['k']!r}")
    if not (_is_num(cfg["radius_fraction"]) and 0 < cfg["radius_fraction"] <= 1):
        e.append(f"radius_fraction must lie in (0, 1], got {cfg['radius_fraction']!r}")

    _check_young_spec(cfg["young"], "young", e)

    g = cfg["g_class"]
    if not isinstance(g, dict) or not all(_is_num(g.get(x)) for x in ("p", "q")):
        e.append("g_class: needs numeric p and q")
    else:
        if not 1 <= g["p"] < g["q"]:
            e.append(f"g_class: needs 1 <= p < q, got p={g['p']}, q={g['q']}")
        if g.get("c") is not None and not (_is_num(g["c"]) and g["c"] >= 1):
            e.append(f"g_class: c must be null or >= 1, got {g.get('c')!r}")
        if all(_is_num(g.get(x)) for x in ("p", "q")):
            p, q = g["p"], g["q"]
            if "thm_bmo" in _requested(cfg) and not q * (dims - p) < dims * p:
                e.append(
                    f"thm_bmo exponent gate q(n-p) < np fails: "
                    f"{q}*({dims}-{p}) = {q * (dims - p)} >= {dims * p}")

    cj = cfg["conjugate"]
    if not isinstance(cj, dict) or not all(_is_num(cj.get(x)) for x in ("p", "q")):
        e.append("conjugate: needs numeric p and q")
    elif abs(1.0 / cj["p"] + 1.0 / cj["q"] - 1.0) > 1e-9:
        e.append(f"conjugate: 1/p + 1/q = 1 required, got p={cj['p']}, q={cj['q']}")

    w = cfg["weighted"]
    if not isinstance(w, dict) or not all(_is_num(w.get(x)) for x in ("p", "q", "alpha", "s")):
        e.append("weighted: needs numeric p, q, alpha, s")
    else:
        if not w["alpha"] > 1:
            e.append(f"weighted: alpha must exceed 1, got {w['alpha']}")
        gate = w["alpha"] * w["p"] - w["p"] - w["alpha"] * w["q"]
        if not gate > 0:
            e.append(f"weighted exponent gate alpha*p - p - alpha*q > 0 fails: "
                     f"got {gate}")
        if not 1 <= w["s"] < w["q"]:
            e.append(f"weighted: needs 1 <= s < q, got s={w['s']}, q={w['q']}")
        _check_young_spec(w.get("young", {}), "weighted.young", e)

    if not isinstance(cfg["weights"], list) or not cfg["weights"]:
        e.append("weights: needs a nonempty list")
    else:
        for i, spec in enumerate(cfg["weights"]):
            where = f"weights[{i}]"
            if not isinstance(spec, dict) or "name" not in spec:
                e.append(f"{where}: expected an object with a 'name' key")
            elif spec["name"] == "constant":
                if not (_is_num(spec.get("value")) and spec["value"] > 0):
                    e.append(f"{where}: constant needs value > 0")
            elif spec["name"] == "power":
                if not _is_num(spec.get("exponent")):
                    e.append(f"{where}: power needs a numeric exponent")
                c = spec.get("center")
                if c is not None and (not isinstance(c, list) or len(c) != dims
                                      or not all(_is_num(a) for a in c)):
                    e.append(f"{where}: center must be a length-{dims} point")
            elif spec["name"] == "custom":
                if not isinstance(spec.get("expression"), str):
                    e.append(f"{where}: custom needs an 'expression' string")
            else:
                e.append(f"{where}: unknown weight {spec['name']!r}")

    if not (_is_num(cfg["lemma_exponent_t"]) and cfg["lemma_exponent_t"] > 1):
        e.append(f"lemma_exponent_t must exceed 1, got {cfg['lemma_exponent_t']!r}")
    if not (_is_num(cfg["sobolev_t"]) and 1 < cfg["sobolev_t"] < dims):
        e.append(f"sobolev_t must lie in (1, dims) = (1, {dims}), "
                 f"got {cfg['sobolev_t']!r}")
    if (not isinstance(cfg["osc_a_values"], list) or not cfg["osc_a_values"]
            or not all(_is_num(a) and a > 0 for a in cfg["osc_a_values"])):
        e.append("osc_a_values: needs a nonempty list of positive numbers")

    v = cfg["verifiers"]
    if v != "all" and v != ["all"]:
        if not isinstance(v, list):
            e.append("verifiers: expected 'all' or a list of verifier names")
        else:
            unknown = [x for x in v if x not in _VERIFIER_NAMES]
            if unknown:
                e.append(f"verifiers: unknown names {unknown!r}; known: "
                         f"{list(_VERIFIER_NAMES)}")
    if (dom is not None and isinstance(dom, dict) and dom.get("kind") == "ball"
            and any(n in _requested(cfg)
                    for n in ("lemma_T_bound", "lemma_closed_part_bound",
                              "sobolev_poincare", "oscillation_lower_bound",
                              "thm_lipschitz", "thm_bmo"))):
        e.append("ball domains cannot run homotopy-image verifiers "
                 "(materialization needs a box); restrict 'verifiers'")

    if not isinstance(cfg["stability_check"], bool):
        e.append(f"stability_check must be boolean, got {cfg['stability_check']!r}")
    if not isinstance(cfg["seed"], int) or isinstance(cfg["seed"], bool):
        e.append(f"seed must be an integer, got {cfg['seed']!r}")
    return e


def _requested(cfg: dict) -> tuple:
    v = cfg.get("verifiers")
    if v == "all" or v == ["all"]:
        return _VERIFIER_NAMES
    return tuple(v) if isinstance(v, list) else ()


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Load a JSON config file, apply overrides, validate everything at once."""
    data: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError([f"cannot read config file {path!r}: {exc}"])
        except json.JSONDecodeError as exc:
            raise ConfigError([f"config file {path!r} is not valid JSON: {exc}"])
        if not isinstance(data, dict):
            raise ConfigError([f"config file {path!r} must hold a JSON object"])
    if overrides:
        data.update(overrides)
    return RunConfig.from_dict(data)
