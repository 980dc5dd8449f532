from fractions import Fraction

import pytest

from g2twistor import liealg
from g2twistor.symcore import signature_of_symmetric


@pytest.fixture(scope="module")
def models():
    return liealg.build_models()


def test_dimensions(models):
    assert models.g2.dim == 14 and models.so34.dim == 21


def test_stabilizer_is_g2(models):
    st = liealg.stabilizer_of_threeform(models.phi, models.so34)
    assert st.dim == 14
    assert all(models.g2.span.contains(e) for e in st.elements)


def test_so34_preserves_H(models):
    assert all(liealg.is_orthogonal(e.matrix, models.H) for e in models.so34.elements)


def test_killing_signatures(models):
    assert signature_of_symmetric(models.g2.killing) == (8, 6, 0)
    assert signature_of_symmetric(models.so34.killing) == (12, 9, 0)


def test_jacobi(models):
    assert liealg.jacobi_holds(models.g2)
    assert liealg.jacobi_holds(models.so34)


def test_killing_invariant(models):
    assert liealg.killing_is_invariant(models.g2)


def test_killing_from_structure_matches_trace_form(models):
    K = liealg.killing_from_structure(models.g2.structure_constants)
    assert K.rows == models.g2.killing.rows


def test_restricted_killing_ratio(models):
    r = liealg.restricted_killing_ratio(models)
    assert r != 0 and isinstance(r, Fraction)


def test_grading_of_g2(models):
    spec = liealg.degrees_from_vector_grading(models.g2, liealg.G2_VECTOR_DEGREES)
    gr = liealg.grading_split(models.g2, spec)
    assert gr.depth == 3
    dims = [len(spec.component(i)) for i in range(-3, 4)]
    assert dims == [2, 1, 2, 4, 2, 1, 2]


def test_codifferential(models):
    data = liealg.normality_setup(models)
    assert liealg.codifferential_square_zero(data.db)
    assert liealg.codifferential_square_zero(data.db_tilde)
    assert liealg.basis_formula_ratio(data.db) is not None


def test_normality_kernel_elements(models):
    rep = liealg.normality_report(liealg.normality_setup(models), models)
    for key in ("phi1_in_kernel", "phi1_tilde_in_kernel", "phi2_in_kernel", "phi2_tilde_in_kernel"):
        assert rep[key], key
    assert rep["Z4_tilde_equals_Z4"] and rep["Z5_tilde_equals_Z5"]


def test_not_closed():
    els = liealg.so34_elements()
    assert isinstance(liealg.algebra_closure([els[0], els[14]]), liealg.NotClosed)
    assert isinstance(liealg.algebra_closure(liealg.g2_elements()), liealg.Closed)
