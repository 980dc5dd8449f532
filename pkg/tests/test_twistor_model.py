from fractions import Fraction

import pytest

from g2twistor.twistor import DegenerateParameter, FixtureError, UnknownObject
from g2twistor.twistor import fixtures
from g2twistor.twistor.model import (
    FLAT_K, TWISTOR, as_k, backend, conformal_root, objects, rational_conformal_ks,
)
from g2twistor.symcore import parse_scalar


@pytest.mark.parametrize("k", [0, 1])
def test_degenerate_k(k):
    with pytest.raises(DegenerateParameter):
        as_k(k)


def test_backend_bindings_are_derivatives():
    b = backend(Fraction(5, 2)).bindings(TWISTOR)
    h = b["h"]
    for i in range(1, 6):
        prev = h if i == 1 else b[f"h{i - 1}"]
        assert prev.differentiate("q") == b[f"h{i}"]
    assert h == parse_scalar("q^(5/2)/(15/4)", TWISTOR)


def test_conformal_roots():
    assert conformal_root(2) == 5
    assert conformal_root(3) is None
    for k in rational_conformal_ks():
        s = conformal_root(k)
        assert s is not None and s * s == 10 * k * k - 10 * k + 5
    assert Fraction(-2, 9) in rational_conformal_ks()


def test_flat_parameters():
    assert set(FLAT_K) == {Fraction(2), Fraction(2, 3), Fraction(1, 3), Fraction(-1)}


def test_unknown_object():
    with pytest.raises(UnknownObject):
        objects("symmetries", 2)("X99")


def test_missing_fixture_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("G2TWISTOR_FIXTURES", str(tmp_path))
    with pytest.raises(FixtureError):
        fixtures.load("symmetries")


def test_bad_fixture_line(tmp_path, monkeypatch):
    (tmp_path / "broken.txt").write_text("chart x y\nform a = dx +* dy\n")
    monkeypatch.setenv("G2TWISTOR_FIXTURES", str(tmp_path))
    fx = fixtures.load("broken")
    with pytest.raises(FixtureError):
        fx.get("a")


def test_entry_before_chart(tmp_path, monkeypatch):
    (tmp_path / "nochart.txt").write_text("form a = dx\n")
    monkeypatch.setenv("G2TWISTOR_FIXTURES", str(tmp_path))
    with pytest.raises(FixtureError):
        fixtures.load("nochart")
