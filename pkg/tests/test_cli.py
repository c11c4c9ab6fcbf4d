import json

import numpy as np
import pytest

from poncelet_inversive import Conic, conic_fit
from poncelet_inversive.cli import ConfigError, load_config, main

from conftest import REF_A, REF_B, REF_F, REF_G, REF_K

REF_CONFIG = {
    "family": {"f": [REF_F.real, REF_F.imag], "g": [REF_G.real, REF_G.imag],
               "a": REF_A, "b": REF_B},
    "inversion": {"center": [REF_K.center.real, REF_K.center.imag],
                  "radius": REF_K.radius},
    "samples": 256,
}


@pytest.fixture
def cfg_path(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(REF_CONFIG))
    return str(path)


def write_cfg(tmp_path, mutate):
    raw = json.loads(json.dumps(REF_CONFIG))
    mutate(raw)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    return str(path)


class TestConfig:
    def test_loads_reference(self, cfg_path):
        cfg = load_config(cfg_path)
        assert cfg.fam.f == REF_F and cfg.fam.g == REF_G
        assert cfg.inversion.center == REF_K.center
        assert cfg.samples == 256

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            load_config("/nonexistent/cfg.json")

    def test_both_family_forms_rejected(self, tmp_path):
        path = write_cfg(tmp_path, lambda raw: raw["family"].update(
            {"inner_circle_center": [0.1, 0.0], "inner_circle_radius": 0.4}))
        with pytest.raises(ConfigError):
            load_config(path)

    def test_samples_floor(self, tmp_path):
        path = write_cfg(tmp_path, lambda raw: raw.update({"samples": 10}))
        with pytest.raises(ConfigError):
            load_config(path)

    def test_bad_complex(self, tmp_path):
        path = write_cfg(tmp_path, lambda raw: raw["family"].update({"f": 0.3}))
        with pytest.raises(ConfigError):
            load_config(path)

    def test_inner_circle_form(self, tmp_path):
        # Bicentric (Chapple) configuration given by its incircle.
        center = 0.2 + 0.1j
        r = 1.0 * (1 - abs(center) ** 2) / 2
        raw = {
            "family": {"a": 1.0, "b": 1.0,
                       "inner_circle_center": [center.real, center.imag],
                       "inner_circle_radius": r},
            "inversion": {"center": [2.0, 0.0], "radius": 0.5},
        }
        path = tmp_path / "chapple.json"
        path.write_text(json.dumps(raw))
        cfg = load_config(path)
        assert abs(cfg.fam.f - center) < 1e-12
        assert cfg.samples == 720  # default


class TestExitCodes:
    def test_config_error_is_2(self, capsys):
        assert main(["classify", "--config", "/nonexistent.json"]) == 2
        assert "config error" in capsys.readouterr().err

    def test_family_error_is_3(self, tmp_path, capsys):
        path = write_cfg(tmp_path, lambda raw: raw["family"].update(
            {"f": [1.5, 0.0]}))
        assert main(["classify", "--config", path]) == 3
        assert "family error" in capsys.readouterr().err

    def test_samples_override_validated(self, cfg_path, capsys):
        assert main(["classify", "--config", cfg_path, "--samples", "8"]) == 2


class TestCommands:
    def test_classify_output(self, cfg_path, capsys):
        assert main(["classify", "--config", cfg_path]) == 0
        out = capsys.readouterr().out
        assert out == "O=Interior locus=Hyperbola crossings=6\n"

    def test_sweep_outputs(self, cfg_path, tmp_path):
        out = tmp_path / "out"
        assert main(["sweep", "--config", cfg_path, "--out", str(out),
                     "--svg"]) == 0
        rows = (out / "sweep.csv").read_text().splitlines()
        assert len(rows) == 257  # header + samples
        assert rows[0].startswith("theta,x3_re")
        meta = json.loads((out / "sweep_meta.json").read_text())
        assert len(meta["exact_x3p_conic"]) == 6
        assert meta["samples"] == 256
        svg = (out / "sweep.svg").read_text()
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")

    def test_sweep_is_deterministic(self, cfg_path, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        main(["sweep", "--config", cfg_path, "--out", str(out1)])
        main(["sweep", "--config", cfg_path, "--out", str(out2)])
        assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()

    def test_csv_round_trip_matches_meta(self, cfg_path, tmp_path):
        out = tmp_path / "out"
        main(["sweep", "--config", cfg_path, "--out", str(out)])
        pts = []
        for row in (out / "sweep.csv").read_text().splitlines()[1:]:
            cells = row.split(",")
            if cells[-1] == "1":
                continue
            pts.append(complex(float(cells[3]), float(cells[4])))
        meta = json.loads((out / "sweep_meta.json").read_text())
        stored = Conic(np.array(meta["exact_x3p_conic"]))
        assert stored.distance(conic_fit(pts)) < 1e-8

    def test_verify_reference_passes(self, cfg_path, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["verify", "--config", cfg_path, "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "FAIL" not in text
        assert "closed_form_vs_direct: PASS" in text
        assert "conic_type_law: PASS" in text
        assert "homothety: SKIP" in text  # O is not P3 in this config
        assert (out / "report.txt").read_text() == text

    def test_verify_at_p3_runs_homothety(self, tmp_path, capsys):
        from poncelet_inversive import PonceletFamily, p3_point
        fam = PonceletFamily.from_axes(REF_F, REF_G, REF_A, REF_B)
        p3 = p3_point(fam).point
        raw = json.loads(json.dumps(REF_CONFIG))
        raw["inversion"] = {"center": [p3.real, p3.imag], "radius": 1.0}
        raw["samples"] = 720  # the similitude cloud check needs a dense sweep
        path = tmp_path / "p3.json"
        path.write_text(json.dumps(raw))
        assert main(["verify", "--config", str(path),
                     "--out", str(tmp_path / "out")]) == 0
        text = capsys.readouterr().out
        assert "homothety: PASS" in text
