"""Config loading: deep-merged defaults, aggregated validation, builders."""
import json

import pytest

from orliczforms import ConfigError, load_config
from orliczforms.config import DEFAULT_CONFIG, RunConfig
from orliczforms.geometry import Box


def test_defaults_load_clean():
    cfg = load_config()
    assert cfg.dims == 2
    assert cfg.grid_resolution == 51
    assert cfg.rho == cfg.sigma  # rho falls back to sigma
    assert cfg.to_dict() == DEFAULT_CONFIG


def test_overrides_replace_top_level_keys():
    cfg = load_config(overrides={"young": {"name": "power", "p": 3.0},
                                 "ball_count": 6})
    assert cfg.young["p"] == 3.0
    assert cfg.ball_count == 6
    assert DEFAULT_CONFIG["ball_count"] == 24  # defaults not mutated


def test_partial_nested_override_rejected():
    # nested sections are replaced wholesale, so an incomplete young spec
    # is caught rather than silently merged
    with pytest.raises(ConfigError):
        load_config(overrides={"young": {"p": 3.0}})


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"grid_resolution": 21, "seed": 7}))
    cfg = load_config(str(path))
    assert cfg.grid_resolution == 21
    assert cfg.seed == 7


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as exc:
        load_config(overrides={"grid_res": 21})
    assert any("grid_res" in v for v in exc.value.violations)


def test_violations_are_aggregated():
    with pytest.raises(ConfigError) as exc:
        load_config(overrides={"dims": 4, "sigma": 0.5,
                               "conjugate": {"p": 2.0, "q": 3.0}})
    assert len(exc.value.violations) == 3


# ---------------------------------------------------------------- gates

def test_conjugate_exponents_must_be_dual():
    load_config(overrides={"conjugate": {"p": 2.0, "q": 2.0}})
    load_config(overrides={"conjugate": {"p": 4.0, "q": 4.0 / 3.0}})
    with pytest.raises(ConfigError):
        load_config(overrides={"conjugate": {"p": 2.0, "q": 3.0}})


def test_bmo_gate_depends_on_dimension():
    # q(n-p) < np holds for (p,q) = (1.5,3) in the plane but the same pair
    # with n=3 would need a different q; reject an explicit bad request
    load_config(overrides={"g_class": {"p": 1.5, "q": 3.0}})
    with pytest.raises(ConfigError) as exc:
        load_config(overrides={"dims": 3, "g_class": {"p": 1.2, "q": 4.0}})
    assert any("q(n - p) < np" in v or "q*(n" in v or "gate" in v
               for v in exc.value.violations)


def _weighted(p, q, alpha):
    return {"p": p, "q": q, "alpha": alpha, "s": 1.2,
            "young": {"name": "power", "p": 1.2}}


def test_weighted_growth_gate():
    load_config(overrides={"weighted": _weighted(4.0, 1.5, 2.0)})
    # alpha*p - p - alpha*q must be positive
    with pytest.raises(ConfigError):
        load_config(overrides={"weighted": _weighted(2.0, 2.0, 2.0)})
    with pytest.raises(ConfigError):
        load_config(overrides={"weighted": _weighted(4.0, 1.5, 0.5)})


def test_numeric_gates():
    for bad in ({"grid_resolution": 3}, {"sigma": 1.0}, {"k": 0.0},
                {"k": 1.0}, {"ball_count": 0}, {"radius_fraction": 0.0},
                {"lemma_exponent_t": 1.0}, {"sobolev_t": 2.0}):
        with pytest.raises(ConfigError):
            load_config(overrides=bad)


def test_verifier_names_checked():
    cfg = load_config(overrides={"verifiers": ["thm_bmo", "lemma_T_bound"]})
    # registry order is preserved regardless of request order
    assert cfg.enabled_verifiers() == ("lemma_T_bound", "thm_bmo")
    with pytest.raises(ConfigError):
        load_config(overrides={"verifiers": ["thm_everything"]})


def test_ball_domain_incompatible_with_operator_verifiers():
    ball_domain = {"kind": "ball", "center": [0.5, 0.5], "radius": 0.4}
    load_config(overrides={"domain": ball_domain,
                           "verifiers": ["thm_bmo_le_lip"]})
    with pytest.raises(ConfigError):
        load_config(overrides={"domain": ball_domain})  # default "all"
    with pytest.raises(ConfigError):
        load_config(overrides={"domain": ball_domain,
                               "verifiers": ["oscillation_lower_bound"]})


# ---------------------------------------------------------------- builders

def test_build_domain_variants():
    cfg = load_config()
    box = cfg.build_domain()
    assert isinstance(box, Box)
    assert box.volume() == pytest.approx(1.0)

    cfg2 = load_config(overrides={
        "domain": {"kind": "box", "lo": [0.0, 0.0], "hi": [2.0, 1.0]}})
    assert cfg2.build_domain().volume() == pytest.approx(2.0)


def test_build_young_and_weights():
    cfg = load_config()
    phi = cfg.build_young()
    assert phi(2.0) == pytest.approx(4.0)
    weights = cfg.build_weights()
    assert len(weights) == 3
    psi = cfg.build_weighted_young()
    assert psi(2.0) == pytest.approx(2.0 ** 1.2)


def test_run_config_attribute_delegation():
    cfg = RunConfig({"alpha": 1.0})
    assert cfg.alpha == 1.0
    with pytest.raises(AttributeError):
        cfg.missing_key
