import pytest

from deeplrr import ConfigError, SolverConfig, load_config, write_config
from deeplrr.config import parse_config_text


def test_defaults_match_solver_schedule():
    cfg = SolverConfig()
    assert cfg.mu0 == 1e-6
    assert cfg.mu_max == 1e6
    assert cfg.eta == 1.5
    assert cfg.eps == 1e-7
    assert cfg.max_iter == 500
    assert cfg.kmeans_restarts == 20
    assert cfg.layers == 3
    cfg.validate()


@pytest.mark.parametrize("field,value", [
    ("layers", 0),
    ("alpha", -0.1),
    ("lambda1", 0.0),
    ("lambda1", -1.0),
    ("rho", 0.99),
    ("mu0", 0.0),
    ("mu_max", 1e-9),
    ("eta", 1.0),
    ("eps", 0.0),
    ("max_iter", 0),
    ("seed", -1),
    ("clusters", 0),
    ("kmeans_restarts", 0),
])
def test_validate_rejects(field, value):
    with pytest.raises(ConfigError):
        SolverConfig(**{field: value}).validate()


def test_parse_config_text():
    values = parse_config_text("lambda1 = 0.5\n\nlayers = 4\nmu_max = 1e7\n")
    assert values == {"lambda1": 0.5, "layers": 4, "mu_max": 1e7}


def test_parse_rejects_unknown_key():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_text("bogus = 1\n")


def test_parse_rejects_bad_value():
    with pytest.raises(ConfigError, match="bad value"):
        parse_config_text("layers = soon\n")


def test_parse_rejects_missing_equals():
    with pytest.raises(ConfigError):
        parse_config_text("layers 3\n")


def test_file_round_trip(tmp_path):
    cfg = SolverConfig(layers=5, lambda1=0.025, rho=3.0, seed=42)
    path = tmp_path / "model.cfg"
    write_config(cfg, path)
    assert load_config(path) == cfg


def test_file_values_override_base_and_keep_rest(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("lambda1 = 0.01\nclusters = 4\n")
    cfg = load_config(path)
    assert cfg.lambda1 == 0.01
    assert cfg.clusters == 4
    assert cfg.eta == SolverConfig().eta


def test_replace_override():
    cfg = SolverConfig().replace(alpha=2.0)
    assert cfg.alpha == 2.0
    assert cfg.lambda1 == SolverConfig().lambda1
