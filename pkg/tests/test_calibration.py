import json

import pytest

from planarskein import calibration


def test_exactly_one_convention():
    rep = calibration.calibrate()
    conv = rep["conventions"]
    assert [conv[k]["identity_holds"] for k in ("false", "true")].count(True) == 1
    loser = conv[str(not rep["flip"]).lower()]
    assert loser["conjugate_holds"]


def test_engines_choose_the_same():
    assert calibration.calibrate("planar")["flip"] == calibration.calibrate("chord")["flip"]


def test_stable_and_persisted(tmp_path, monkeypatch):
    path = tmp_path / "cal.json"
    rep = calibration.calibrate()
    calibration.save(rep, path)
    assert json.loads(path.read_text())["flip"] == rep["flip"]
    assert calibration.calibrate()["flip"] == rep["flip"]


def test_disagreeing_file_rejected(tmp_path, monkeypatch):
    path = tmp_path / "cal.json"
    path.write_text(json.dumps({"flip": not calibration.calibrate()["flip"]}))
    monkeypatch.setenv("SKEIN_CALIBRATION", str(path))
    calibration.current_flip.cache_clear()
    try:
        with pytest.raises(calibration.CalibrationError):
            calibration.current_flip()
    finally:
        monkeypatch.delenv("SKEIN_CALIBRATION")
        calibration.current_flip.cache_clear()
