import math

import pytest

from micromaser.config import build_config, config_from_dict, parse_config, parse_config_text
from micromaser.errors import ConfigError, PhysicsInconsistencyError
from micromaser.simulator import EXPERIMENT_SEED_PHASES, DecayWindow, SimConfig, run
from micromaser.states import BlockKind, Objective


def test_empty_config_gives_experiment_defaults():
    cfg = parse_config()
    assert (cfg.g, cfg.T, cfg.gamma) == (4.4e4, 6.666e-3, 5.0)
    assert cfg.tau == pytest.approx(7.14e-5, rel=1e-3)
    assert cfg.atom.alpha == 0.9 and cfg.atom.beta == pytest.approx(math.sqrt(0.19))
    assert [p.seed_phase for p in cfg.parts] == list(EXPERIMENT_SEED_PHASES)
    assert [(p.block.n_low, p.block.n_high) for p in cfg.parts] == [(0, 0), (1, 3), (4, 8)]


def test_lossless_override():
    cfg = parse_config(overrides={"gamma": 0.0})
    assert cfg.gamma == 0.0


def test_parse_text_with_comments():
    text = """
    # comment line
    gamma = 0        # trailing comment
    atoms = 12
    snapshots = 0, 4, 12
    decay_window = minus-tau
    objective = y2
    blocks = 0-0, 1-3
    seed_phases_deg = 0, 45
    """
    s = parse_config_text(text)
    assert s["gamma"] == 0.0 and s["atoms"] == 12 and s["snapshots"] == [0, 4, 12]
    assert s["decay_window"] is DecayWindow.T_MINUS_TAU and s["objective"] is Objective.Y2
    cfg = build_config(s)
    assert cfg.snapshot_atoms == (0, 4, 12)
    assert [p.block.kind for p in cfg.parts] == [BlockKind.COTANGENT, BlockKind.TANGENT]
    assert cfg.parts[1].seed_phase == pytest.approx(complex(math.sqrt(0.5), math.sqrt(0.5)))


@pytest.mark.parametrize(
    "text, where",
    [
        ("gamma 5", ":1:"),
        ("\nbogus = 1", ":2:"),
        ("atoms = many", ":1:"),
        ("decay_window = sometimes", ":1:"),
    ],
)
def test_parse_errors_have_line_numbers(text, where):
    with pytest.raises(ConfigError, match=where):
        parse_config_text(text, "cfg.txt")


def test_missing_file():
    with pytest.raises(ConfigError):
        parse_config("/nonexistent/path.cfg")


def test_non_trapping_tau_rejected():
    with pytest.raises(PhysicsInconsistencyError, match="no trapping boundary"):
        build_config({"tau": 1.0 / 4.4e4})


def test_misplaced_block_rejected():
    with pytest.raises(PhysicsInconsistencyError):
        build_config({"blocks": [(0, 2)]})


def test_rounded_tau_leaks_through_cutoff():
    # 4.4e4 * 7.14e-5 misses pi by 7e-6: boundaries survive a loose tolerance
    # but the channel leaks at the cutoff
    with pytest.raises(PhysicsInconsistencyError):
        build_config({"tau": 7.14e-5})
    with pytest.raises(PhysicsInconsistencyError, match="completeness"):
        build_config({"tau": 7.14e-5, "block_tol": 1e-5})


def test_domain_errors_are_config_errors():
    with pytest.raises(ConfigError):
        build_config({"gamma": -1.0})
    with pytest.raises(ConfigError):
        build_config({"alpha": 1.5})
    with pytest.raises(ConfigError):
        build_config({"weights": [1.0]})
    with pytest.raises(ConfigError):
        build_config({"optimize_phases": 1})
    with pytest.raises(ConfigError):
        build_config({"seed_phase_overrides": {5: 10.0}})


def test_seed_phase_override():
    cfg = build_config({"seed_phase_overrides": {1: 180.0}})
    assert cfg.parts[1].seed_phase == pytest.approx(-1)
    assert cfg.parts[2].seed_phase == pytest.approx(1j)


def test_complex_alpha():
    cfg = build_config({"alpha": 0.6j})
    assert cfg.atom.alpha == 0.6j and cfg.atom.beta == pytest.approx(0.8)


def test_dict_roundtrip_reproduces_run():
    cfg = build_config({"atoms": 7, "gamma": 3.0, "seed_phase_overrides": {2: 33.0}})
    again = config_from_dict(cfg.to_dict())
    assert again == cfg
    a, b = run(cfg), run(again)
    assert a.series.records == b.series.records


def test_default_simconfig_roundtrip():
    cfg = SimConfig()
    assert config_from_dict(cfg.to_dict()) == cfg
