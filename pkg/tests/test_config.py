"""Tests for scenario files, scenario validation and runtime settings."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from config.scenario import SystemConfig, load_scenario, scenario_keys
from config.settings import Settings, reload_settings
from utils.exceptions import ScenarioConfigError

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "scenario.env"
    path.write_text(text, encoding="utf-8")
    return path


class TestScenarioFiles:
    def test_published_file_matches_defaults(self):
        assert load_scenario(SCENARIOS / "published.env") == SystemConfig()

    def test_bench_file(self):
        config = load_scenario(SCENARIOS / "bench.env")
        assert config.path_loss_intercept_db == 0.0
        assert config.p_max == pytest.approx(1.0)

    def test_dbm_keys_and_aliases(self, tmp_path):
        config = load_scenario(write(tmp_path, "P_MAX_DBM=30\nnoise_power_dbm=-90\nm=16\nq=8\n"))
        assert config.p_max == pytest.approx(1.0)
        assert config.noise_power == pytest.approx(1e-12)
        assert config.num_elements == 16
        assert config.quadrature_order == 8

    def test_positions(self, tmp_path):
        config = load_scenario(write(tmp_path, "warden_position=50, 5\n"))
        assert config.warden_position == (50.0, 5.0)

    def test_unknown_key_names_line(self, tmp_path):
        with pytest.raises(ScenarioConfigError) as info:
            load_scenario(write(tmp_path, "# comment\nm=10\nfoo=1\n"))
        assert info.value.line == 3
        assert info.value.key == "foo"
        assert ":3:" in str(info.value)

    def test_invalid_value_names_key_and_line(self, tmp_path):
        with pytest.raises(ScenarioConfigError) as info:
            load_scenario(write(tmp_path, "b=3\nm=0\n"))
        assert info.value.key == "num_elements"
        assert info.value.line == 2

    def test_missing_value(self, tmp_path):
        with pytest.raises(ScenarioConfigError):
            load_scenario(write(tmp_path, "eta=\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioConfigError):
            load_scenario(tmp_path / "absent.env")

    def test_base_scenario(self, tmp_path):
        base = SystemConfig(num_elements=30)
        assert load_scenario(write(tmp_path, "eta=5\n"), base=base).num_elements == 30


class TestSystemConfig:
    def test_derived_requirements(self):
        config = SystemConfig(eps_sic=2.0, eps_c=0.5)
        assert config.gamma_sic == pytest.approx(3.0)
        assert config.gamma_c == pytest.approx(2 ** 0.5 - 1)
        assert config.lam == pytest.approx(0.1)

    def test_overrides_accept_file_keys(self):
        config = SystemConfig().with_overrides(p_max_dbm=30.0, m=12)
        assert config.p_max == pytest.approx(1.0)
        assert config.num_elements == 12

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            SystemConfig(foo=1)

    def test_terminal_on_irs(self):
        with pytest.raises(ValidationError):
            SystemConfig(irs_position=(0.0, 0.0))

    def test_frozen(self):
        with pytest.raises(ValidationError):
            SystemConfig().eta = 3

    def test_schema(self):
        keys = scenario_keys()
        assert {"num_elements", "p_max_dbm", "noise_power_dbm", "eps_sic"} <= set(keys)


class TestSettings:
    def test_environment_prefix(self, monkeypatch):
        monkeypatch.setenv("COVERT_WORKERS", "4")
        monkeypatch.setenv("COVERT_LOG_LEVEL", "debug")
        settings = reload_settings()
        assert settings.workers == 4
        assert settings.log_level == "DEBUG"

    def test_invalid_log_level(self):
        with pytest.raises(ValidationError):
            Settings(log_level="LOUD")

    def test_output_dir_from_string(self):
        assert Settings(output_dir="out").output_dir == Path("out")
