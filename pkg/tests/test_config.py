import json

import pytest

from mulreg.config import (
    IntegratorConfig,
    RunConfig,
    Settings,
    StorageBackendType,
    backend_for,
    load_config,
)
from mulreg.errors import ConfigError
from mulreg.lepski import DEFAULT_C_THR


class TestLoadConfig:
    def test_defaults(self):
        cfg = load_config(None)
        assert cfg == RunConfig()
        assert cfg.y == (0.5,)
        assert (cfg.b, cfg.c_thr) == (1, DEFAULT_C_THR)

    def test_flags_override_file_override_defaults(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"n": 1000, "seed": 4, "b": 2}))
        cfg = load_config(
            str(path),
            overrides={"seed": 9, "b": None},
            defaults={"n": 100, "seed": 1, "reps": 50},
        )
        assert (cfg.n, cfg.seed, cfg.b, cfg.reps) == (1000, 9, 2, 50)

    def test_nested_integrator_merge(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"integrator": {"method": "grid"}}))
        cfg = load_config(
            str(path),
            overrides={"integrator": {"refine_passes": 3}},
            defaults={"integrator": {"nodes_per_axis": 24}},
        )
        assert cfg.integrator == IntegratorConfig(method="grid", nodes_per_axis=24, refine_passes=3)

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            load_config(None, overrides={"bandwith": 0.1})

    def test_non_cubic_sample_size(self):
        with pytest.raises(ConfigError, match="root"):
            load_config(None, overrides={"n": 10, "d": 2})

    def test_non_cubic_in_size_list(self):
        with pytest.raises(ConfigError):
            load_config(None, overrides={"ns": "100,1000", "d": 2})

    def test_point_broadcast(self):
        cfg = load_config(None, overrides={"d": 2, "n": 400, "y": 0.3})
        assert cfg.y == (0.3, 0.3)

    def test_point_from_string(self):
        cfg = load_config(None, overrides={"d": 2, "n": 400, "y": "0.3,0.6"})
        assert cfg.y == (0.3, 0.6)

    @pytest.mark.parametrize("y", ["0.3,0.6", "1.0", "0"])
    def test_point_rejected(self, y):
        with pytest.raises(ConfigError):
            load_config(None, overrides={"y": y})

    def test_lists_from_strings(self):
        cfg = load_config(None, overrides={"ns": "100, 1000", "functions": "f1,f4"})
        assert cfg.ns == (100, 1000)
        assert cfg.functions == ("f1", "f4")

    def test_bounds_order(self):
        with pytest.raises(ConfigError):
            load_config(None, overrides={"a_low": 3.0, "m_up": 1.0})

    def test_bad_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_non_object_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "absent.json"))


class TestSettings:
    def test_environment(self, monkeypatch):
        monkeypatch.setenv("MULREG_WORKERS", "3")
        monkeypatch.setenv("MULREG_NODES_PER_AXIS", "32")
        settings = Settings()
        assert settings.workers == 3
        assert settings.integrator_defaults()["nodes_per_axis"] == 32

    def test_out_dir_trailing_slash(self, monkeypatch):
        monkeypatch.setenv("MULREG_OUT_DIR", "s3://bucket/runs/")
        settings = Settings()
        assert settings.out_dir == "s3://bucket/runs"
        assert settings.backend_type == StorageBackendType.S3

    @pytest.mark.parametrize(
        ("path", "backend"),
        [
            ("runs", StorageBackendType.LOCAL),
            ("s3://b/p", StorageBackendType.S3),
            ("gs://b/p", StorageBackendType.GCS),
            ("gcs://b/p", StorageBackendType.GCS),
        ],
    )
    def test_backend_for(self, path, backend):
        assert backend_for(path) == backend


class TestIntegratorConfig:
    def test_auto_resolution(self):
        cfg = IntegratorConfig()
        assert cfg.resolve(3) == "grid"
        assert cfg.resolve(4) == "sample"

    def test_explicit_method(self):
        assert IntegratorConfig(method="sample").resolve(1) == "sample"
        assert IntegratorConfig(method="grid").resolve(6) == "grid"
