# =============================================================================
# Apery Congruences - Configuration Unit Tests
# =============================================================================
# Tests for the Config singleton. The autouse isolated_config fixture points
# APERY_CONFIG_DIR at a fresh temporary directory for each test.
#
# Test Structure:
#   - TestConfigFile: creation, persistence and corruption handling
#   - TestConfigProperties: defaults, validation and the APERY_JOBS override
# =============================================================================

import json

import pytest

from apery_congruences.config import Config


class TestConfigFile:
    """Tests for config file handling."""

    def test_singleton(self, isolated_config):
        assert Config.get_instance() is isolated_config
        assert Config() is isolated_config

    def test_default_file_created(self, isolated_config):
        path = isolated_config.get_config_dir() / "config.json"
        assert path.exists()
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["jobs"] == 1
        assert data["prime_power_limit"] == 10_000

    def test_save_and_reload(self, isolated_config):
        isolated_config.prime_power_limit = 50_000
        isolated_config.chunk_size = 4
        isolated_config.save()

        Config.reset_instance()
        reloaded = Config.get_instance()
        assert reloaded is not isolated_config
        assert reloaded.prime_power_limit == 50_000
        assert reloaded.chunk_size == 4

    def test_missing_keys_use_defaults(self, isolated_config):
        path = isolated_config.get_config_dir() / "config.json"
        path.write_text(json.dumps({"jobs": 3}), encoding="utf-8")
        isolated_config.load()
        assert isolated_config.jobs == 3
        assert isolated_config.lagrange_samples == 10

    def test_corrupted_file(self, isolated_config):
        path = isolated_config.get_config_dir() / "config.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(RuntimeError, match="corrupted"):
            isolated_config.load()

    def test_reset_to_defaults(self, isolated_config):
        isolated_config.jobs = 8
        isolated_config.reset_to_defaults()
        assert isolated_config.jobs == 1


class TestConfigProperties:
    """Tests for the validated properties."""

    def test_defaults(self, isolated_config):
        assert isolated_config.jobs == 1
        assert isolated_config.chunk_size == 16
        assert isolated_config.lagrange_seed == 20100
        assert isolated_config.lagrange_samples == 10

    def test_default_log_file_in_config_dir(self, isolated_config):
        expected = isolated_config.get_config_dir() / "apery_congruences.log"
        assert isolated_config.log_file == expected

    def test_custom_log_file(self, isolated_config, tmp_path):
        isolated_config.log_file = tmp_path / "run.log"
        assert isolated_config.log_file == tmp_path / "run.log"
        isolated_config.log_file = None
        assert isolated_config.log_file.name == "apery_congruences.log"

    @pytest.mark.parametrize(
        "name,value",
        [
            ("jobs", 0),
            ("prime_power_limit", 1),
            ("chunk_size", 0),
            ("lagrange_samples", 0),
        ],
    )
    def test_invalid_values_rejected(self, isolated_config, name, value):
        with pytest.raises(ValueError):
            setattr(isolated_config, name, value)

    def test_jobs_environment_override(self, isolated_config, monkeypatch):
        isolated_config.jobs = 2
        monkeypatch.setenv("APERY_JOBS", "6")
        assert isolated_config.jobs == 6

    def test_invalid_jobs_environment_ignored(self, isolated_config, monkeypatch):
        isolated_config.jobs = 2
        monkeypatch.setenv("APERY_JOBS", "many")
        assert isolated_config.jobs == 2
        monkeypatch.setenv("APERY_JOBS", "0")
        assert isolated_config.jobs == 2
