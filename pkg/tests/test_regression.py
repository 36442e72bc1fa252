from pathlib import Path

import pytest

from lcplab import regression

CHECKLIST = Path(__file__).with_name("reproduction_checklist.txt")


def _checklist():
    lines = CHECKLIST.read_text().splitlines()
    return [l.strip() for l in lines if l.strip() and not l.startswith("#")]


def test_checklist_matches_registered_checks():
    """Adding a reproduction target without a check (or vice versa) fails here."""
    assert _checklist() == regression.names()


def test_names_unique():
    assert len(set(regression.names())) == len(regression.names())


@pytest.mark.parametrize("name", regression.names())
def test_check_passes(name):
    [(got, ok, detail)] = regression.run_all({name})
    assert got == name
    assert ok, detail


def test_crash_is_reported_as_failure(monkeypatch):
    def boom():
        raise RuntimeError("injected")

    monkeypatch.setattr(regression, "CHECKS", [regression.Check("boom", "", boom)])
    assert regression.run_all() == [("boom", False, "RuntimeError: injected")]
