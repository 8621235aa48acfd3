import pathlib

import pytest
from pydantic import ValidationError

from utsuper import models


def test_get_setting_from_kwargs():
    assert models.get_setting(["table_cap"], {"table_cap": 10}) == 10


def test_get_setting_from_env(monkeypatch):
    monkeypatch.setenv("UTSUPER_TABLE_CAP", "20")
    assert models.get_setting(["UTSUPER_TABLE_CAP"], {}) == "20"


def test_get_setting_kwargs_takes_precedence(monkeypatch):
    monkeypatch.setenv("UTSUPER_TABLE_CAP", "20")
    assert models.get_setting(["UTSUPER_TABLE_CAP"], {"UTSUPER_TABLE_CAP": 30}) == 30


def test_get_setting_not_found():
    assert models.get_setting(["nonexistent_key_xyz"], {}) is None


def test_get_setting_first_match_wins():
    assert models.get_setting(["class_cap", "UTSUPER_CLASS_CAP"], {"UTSUPER_CLASS_CAP": 2, "class_cap": 1}) == 1


def test_env_loader_defaults():
    config = models.env_loader()
    assert config.table_cap == 2**16
    assert config.mackey_coset_cap == 2**14
    assert config.cache_dir == pathlib.Path(".utsuper-cache")


def test_env_loader_from_kwargs(tmp_path):
    config = models.env_loader(table_cap=100, cache_dir=tmp_path)
    assert config.table_cap == 100
    assert config.cache_dir == tmp_path


def test_env_loader_from_env(monkeypatch, tmp_path):
    monkeypatch.setenv("UTSUPER_ENUM_CAP", "512")
    monkeypatch.setenv("UTSUPER_CACHE_DIR", str(tmp_path))
    config = models.env_loader()
    assert config.enum_cap == 512
    assert config.cache_dir == tmp_path


def test_env_loader_kwargs_over_env(monkeypatch):
    monkeypatch.setenv("UTSUPER_PAIR_CAP", "8")
    assert models.env_loader(homomorphism_pair_cap=16).homomorphism_pair_cap == 16


def test_env_loader_rejects_garbage(monkeypatch):
    monkeypatch.setenv("UTSUPER_CLASS_CAP", "many")
    with pytest.raises(ValidationError):
        models.env_loader()


def test_documents_carry_the_schema_version():
    document = models.HistogramDocument(n=3, q=2, classes=5, histogram={"0": 4, "1": 1})
    assert document.model_dump(by_alias=True)["schema"] == models.SCHEMA_VERSION
    assert models.HistogramDocument.model_validate(document.model_dump(by_alias=True)) == document


def test_seeds_document_round_trip():
    payload = {"schema": 1, "seeds": [{"n": 5, "e": 2, "q": 2, "value": 18}]}
    document = models.SeedsDocument.model_validate(payload)
    assert document.seeds[0].value == 18
    assert document.seeds[0].poly is None


def test_report_flags():
    report = models.Report(suite="roots")
    assert not report.failed and not report.skipped
    report.checks.append(models.CheckRecord(id="a", anchor="x", status="skipped"))
    assert report.skipped and not report.failed
    report.checks.append(models.CheckRecord(id="b", anchor="x", status="fail", witness={"n": 3}))
    assert report.failed


def test_root_out_of_bounds_attributes():
    error = models.RootOutOfBounds(4, 2, 5)
    assert (error.n, error.i, error.j) == (4, 2, 5)
    assert str(error) == "root (2,5) out of bounds for n=4"


def test_missing_seed_message():
    assert str(models.MissingSeed(5, 2)) == "missing seed N_{5,2}"
    assert str(models.MissingSeed(5, 2, 3)) == "missing seed N_{5,2} at q=3"


def test_cap_exceeded_attributes():
    error = models.CapExceeded("enumeration", 729, 100)
    assert (error.what, error.size, error.cap) == ("enumeration", 729, 100)
    assert isinstance(error, models.UTSuperError)


def test_factor_parse_error_attributes():
    error = models.FactorParseError("(1,2)", 5, "expected ':'")
    assert error.position == 5
    assert str(error) == "expected ':' at position 5: '(1,2)'"


def test_every_exception_is_a_package_error():
    for name in ("SameRowError", "NotClosedError", "UnsupportedField", "OwnerMismatch", "SplittingFailure"):
        assert issubclass(getattr(models, name), models.UTSuperError)
