import json
import math

import numpy as np
import pytest

import qradar_py as q


def test_tmsv_criteria():
    r = 0.5
    v = q.tmsv_cov(r)
    assert v.shape == (4, 4)
    assert q.lambda_sph(v) == pytest.approx((1 - math.cosh(4 * r)) / 8, abs=1e-12)
    assert q.two_eta(v) == pytest.approx(math.exp(-2 * r), rel=1e-12)
    rep = q.evaluate(v)
    assert rep["entangled_by_ppt"] and rep["entangled_by_sph"]
    assert rep["discord"] > 0


def test_vacuum_is_separable():
    rep = q.evaluate(0.5 * np.eye(4))
    assert not rep["entangled_by_ppt"]
    assert rep["two_eta"] == pytest.approx(1.0)
    assert q.symplectic_eigenvalues(0.5 * np.eye(4)) == pytest.approx([0.5, 0.5])


def test_unphysical_input_raises():
    v = 0.5 * np.eye(4)
    v[0, 2] = v[2, 0] = v[1, 3] = v[3, 1] = 0.5
    with pytest.raises(q.ValidationError):
        q.evaluate(v)


def test_n_eff_and_gain():
    l2 = math.log(2.0)
    assert q.n_eff(0.0, 1.0, 2 * l2, 2 * l2, 0.5, 1.0) == pytest.approx(2 / 3, rel=1e-14)
    s = q.scattering_matrix(2.0, 0.0, 0.5, 0.0)
    assert abs(s[0, 0]) == pytest.approx(5 / 3, rel=1e-12)
    with pytest.raises(q.NumericalError):
        q.scattering_matrix(1.0, 0.0, 0.5, 0.0)


def test_converter_thresholds():
    t_eom = q.eom_threshold_temperature()
    t_oe = q.oe_threshold_temperature()
    assert 0.0 < t_eom < t_oe


def test_presets_and_run(tmp_path):
    names = q.preset_names()
    assert "channel_neff" in names
    text = q.preset_text("channel_neff")
    assert q.validate_config(text) == []
    out = q.run_config(text, str(tmp_path / "neff"))
    assert out["exit_code"] == 0
    summary = json.loads((tmp_path / "neff" / "summary.json").read_text())
    assert summary["status"] == "ok"
    bad = json.dumps({"format_version": 1, "kind": "channel_neff", "parameters": {"n_in": -1}})
    assert q.run_config(bad, str(tmp_path / "bad"))["exit_code"] == 1
