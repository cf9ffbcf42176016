import json

import numpy as np
import pytest

import omabench as ob


def test_analytical_and_fe_frequencies():
    exact = ob.analytical_frequencies(ob.SupportCondition.CF, 5)
    assert exact == pytest.approx([8.2, 51.2, 144.8, 280.8, 463.7], rel=0.02)
    fe = ob.modal_analysis(ob.SupportCondition.SS, n_modes=3)
    assert len(fe["channel_nodes"]) == 9
    assert np.asarray(fe["channel_shapes"]).shape == (9, 3)
    assert fe["frequencies_hz"][0] == pytest.approx(22.9, rel=0.005)


def test_snr_and_mac():
    assert round(ob.nl_to_snr_db(0.05), 2) == 26.02
    assert round(ob.nl_to_snr_db(2.0), 2) == -6.02
    phi = np.array([1.0, 2.0, -0.5])
    assert ob.mac(phi, -3.0 * phi) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ob.nl_to_snr_db(0.0)
    with pytest.raises(ValueError):
        ob.mac(np.zeros(3), phi)


@pytest.fixture(scope="module")
def cantilever():
    return ob.simulate(ob.SupportCondition.CF)


def test_simulate_and_corrupt(cantilever):
    assert cantilever.channels == 10
    assert cantilever.samples == 50001
    assert cantilever.sample_rate == pytest.approx(1.0e4)
    same, snr = ob.corrupt(cantilever, 0.0)
    assert np.array_equal(same.data, cantilever.data)
    noisy, snr = ob.corrupt(cantilever, 0.5, seed=4)
    assert len(snr) == 10
    assert np.mean(snr) == pytest.approx(6.02, abs=0.3)


def test_record_from_numpy():
    t = np.arange(4096) / 200.0
    data = np.vstack([np.sin(2 * np.pi * 20.0 * t), 0.5 * np.sin(2 * np.pi * 20.0 * t)])
    rec = ob.Record(200.0, data, ["a", "b"])
    modes = ob.pp_identify(rec)
    assert any(abs(m["frequency_hz"] - 20.0) < 0.1 for m in modes)
    with pytest.raises(ValueError):
        ob.Record(200.0, np.zeros((2, 1)))


def test_identifiers_on_noise_free_cantilever(cantilever):
    for method in (ob.Method.PP, ob.Method.FDD, ob.Method.SSI):
        result = ob.identify_and_pair(cantilever, method, ob.SupportCondition.CF)
        assert result["error"] is None
        assert [p["mode"] for p in result["pairs"]] == [1, 2, 3, 4, 5]
        assert all(p["identified"] and p["mac"] >= 0.99 for p in result["pairs"]), method
    ssi = ob.ssi_identify(cantilever)
    assert all(m["damping"] is not None for m in ssi)


def same(x, y):
    """Exact structural equality that also handles numpy arrays."""
    if isinstance(x, dict):
        return isinstance(y, dict) and x.keys() == y.keys() and all(same(x[k], y[k]) for k in x)
    if isinstance(x, (list, tuple)):
        return type(x) is type(y) and len(x) == len(y) and all(same(a, b) for a, b in zip(x, y))
    if isinstance(x, np.ndarray):
        return isinstance(y, np.ndarray) and np.array_equal(x, y)
    return x == y


def test_config_and_single_run():
    resolved = json.loads(ob.config_to_json('{"runs": 2, "beams": ["CC"]}'))
    assert resolved["runs"] == 2
    assert resolved["schema_version"] == 1
    with pytest.raises(ValueError):
        ob.config_to_json('{"unknown": 1}')
    cfg = json.dumps({"beams": ["CC"], "methods": ["FDD"], "noise_levels": [0.2], "runs": 1})
    a = ob.run_single(cfg, ob.SupportCondition.CC, 0.2, 0)
    b = ob.run_single(cfg, ob.SupportCondition.CC, 0.2, 0)
    assert same(a, b)
    assert a["methods"][0]["method"] == "FDD"


def test_run_campaign_writes_outputs(tmp_path):
    cfg = json.dumps({"beams": ["SS"], "methods": ["PP"], "noise_levels": [0.1], "runs": 2})
    report = json.loads(ob.run_campaign(cfg, jobs=1, output_dir=str(tmp_path)))
    assert len(report["runs"]) == 2
    for name in ("report.json", "campaign_resolved.json", "table_freq_SS.csv", "table_mac_SS.csv", "table_err.csv"):
        assert (tmp_path / name).stat().st_size > 0
