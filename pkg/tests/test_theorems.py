"""Theorem verifiers: reports, hypothesis discipline, positive and negative
controls."""

from fractions import Fraction

import pytest

from braidkit.braided import (
    BracketMap,
    cross_bracket,
    dj_hecke_space,
    flip_space,
    gf8_unit_example,
    scalar_space,
)
from braidkit.linalg import Mat
from braidkit.scalars import QQ, PrimeField
from braidkit.tensor import TruncatedTensorBialgebra
from braidkit.quotients import enveloping_algebra, gr_prime, symmetric_algebra
from braidkit.theorems import (
    TheoremReport,
    bracket_triviality_sweep,
    discover_cocommutativity_mark,
    verify_bracket_triviality,
    verify_categorical_rigidity,
    verify_milnor_moore,
    verify_symmetric_strictness,
    verify_type_one_equivalence,
)

DJ = dj_hecke_space(QQ, 2, QQ.scalar(2))
LAM4 = QQ.scalar(4)
F5 = PrimeField(5)


def test_report_refuses_conclusion_under_failed_hypotheses():
    rep = TheoremReport("x", None)
    rep.add_hypothesis("h", False)
    with pytest.raises(Exception):
        rep.conclude(True, "nope")
    rep.skip_conclusion("skipped")
    assert rep.conclusion_verdict is None and not rep.passed


# -- the five-way equivalence ----------------------------------------------------


def test_equivalence_all_true_on_symmetric_algebra():
    B = symmetric_algebra(DJ, LAM4, 4).bialgebra()
    rep = verify_type_one_equivalence(B, LAM4)
    assert rep.passed
    assert all(rep.extras["conditions"].values())
    assert rep.extras["gamma_ladder"] == {"1": True, "2": True, "3": True}


def test_equivalence_all_false_on_tensor_bialgebra():
    B = TruncatedTensorBialgebra(DJ, 4).bialgebra()
    rep = verify_type_one_equivalence(B, LAM4)
    assert rep.passed  # agreement holds with every condition false
    assert not any(rep.extras["conditions"].values())


def test_equivalence_regularity_contract():
    B = symmetric_algebra(TAU := flip_space(QQ, 2), QQ.scalar(1), 3).bialgebra()
    rep = verify_type_one_equivalence(B, QQ.scalar(-1))
    assert not rep.hypotheses_pass
    assert rep.conclusion_verdict is None
    assert "regularity" in rep.conclusion_detail


# -- strictness ----------------------------------------------------------------------


def test_strictness_positive_cases():
    assert verify_symmetric_strictness(DJ, LAM4, 4).passed
    assert verify_symmetric_strictness(flip_space(QQ, 2), QQ.scalar(1), 4).passed


def test_strictness_charp_regularity_failure():
    F2 = PrimeField(2)
    rep = verify_symmetric_strictness(flip_space(F2, 2), F2.scalar(1), 3)
    assert not rep.hypotheses_pass
    assert rep.conclusion_verdict is None
    failed = [h["name"] for h in rep.hypotheses if not h["verdict"]]
    assert failed == ["mark_regular"]


# -- bracket triviality -----------------------------------------------------------------


def test_triviality_sweep_is_vacuous_for_dj():
    rep = bracket_triviality_sweep(DJ, LAM4)
    assert rep.passed and rep.vacuous
    assert rep.extras["compatible_bracket_dim"] == 0


def test_triviality_mark_one_lie_identities():
    rep = verify_bracket_triviality(flip_space(QQ, 3), QQ.scalar(1), cross_bracket(QQ))
    assert rep.passed
    proof = rep.extras["proof_objects"]
    assert proof["eigen_image_equals_minus_one_eigenspace"]
    assert proof["zeta_image_equals_intersection"]
    assert proof["antisymmetry"]
    assert proof["hecke_jacobi"]


def test_triviality_sweep_mark_one_flip():
    rep = bracket_triviality_sweep(flip_space(QQ, 2), QQ.scalar(1))
    assert rep.hypotheses_pass
    assert rep.extras["compatible_bracket_dim"] == 8
    # at mark one the theorem asserts the Lie identities, which arbitrary
    # compatible brackets need not satisfy: the sweep reports honestly
    assert rep.conclusion_verdict is not None


def test_triviality_char2_hypotheses_failure():
    space, lam, bracket = gf8_unit_example()
    rep = verify_bracket_triviality(space, lam, bracket)
    assert not rep.hypotheses_pass
    assert rep.conclusion_verdict is None
    assert rep.hypotheses[0] == {"name": "char_not_two", "verdict": False}
    assert not bracket.is_zero()  # the designed counterexample


def test_triviality_never_concludes_without_injectivity():
    # mark 1 with the misaligned bracket: degree-one map not injective
    space = scalar_space(QQ, 1, QQ.scalar(1))
    bracket = BracketMap(Mat.from_rows(QQ, [[Fraction(1)]]))
    rep = verify_bracket_triviality(space, QQ.scalar(1), bracket)
    assert not rep.hypotheses_pass
    names = [h["name"] for h in rep.hypotheses if not h["verdict"]]
    assert names == ["iota_injective"]
    assert rep.conclusion_verdict is None


# -- reconstruction ------------------------------------------------------------------------


def test_milnor_moore_reconstructs_symmetric_algebra():
    B = symmetric_algebra(DJ, LAM4, 4).bialgebra()
    rep = verify_milnor_moore(B)
    assert rep.passed
    assert rep.extras["mark"] == "4"
    assert rep.extras["infinitesimal_braiding_hecke"]
    assert rep.extras["recovered_bracket_zero"]
    assert rep.extras["model_dims"] == [1, 2, 3, 4, 5]
    assert all(rep.extras["degree_isomorphism"])


def test_milnor_moore_negative_control():
    B = TruncatedTensorBialgebra(DJ, 4).bialgebra()
    rep = verify_milnor_moore(B)
    assert not rep.passed
    assert rep.conclusion_detail == "not infinitesimally cocommutative"


def test_milnor_moore_mark_one_branch():
    env = enveloping_algebra(flip_space(QQ, 3), QQ.scalar(1), cross_bracket(QQ), 3)
    B = gr_prime(env).bialgebra()
    rep = verify_milnor_moore(B)
    assert rep.passed
    assert rep.extras["mark"] == "1"
    assert "mark one" in rep.conclusion_detail


def test_milnor_moore_idempotent_on_flip_symmetric_algebra():
    B = symmetric_algebra(flip_space(QQ, 2), QQ.scalar(1), 4).bialgebra()
    rep = verify_milnor_moore(B)
    assert rep.passed and rep.extras["mark"] == "1"


def test_discovery_reports_ambiguity():
    # one-dimensional degree-0 only: no degree-2 component to constrain the mark
    B = symmetric_algebra(scalar_space(QQ, 1, QQ.scalar(-1)), QQ.scalar(-1), 3).bialgebra()
    lam, status = discover_cocommutativity_mark(B)
    assert status in ("ambiguous", "ok")


def test_milnor_moore_on_nonstrict_input_truncates_and_reconstructs():
    # the sign-flip braiding on a line makes x^2 primitive, so the input is
    # not strict; the coradical associated graded truncates to degree 2 and
    # the mark-1 reconstruction from the two-dimensional primitive space
    # still matches degreewise
    B = TruncatedTensorBialgebra(scalar_space(QQ, 1, QQ.scalar(-1)), 4).bialgebra()
    rep = verify_milnor_moore(B)
    assert rep.passed
    assert rep.cutoff == 2
    assert rep.extras["gr_dims"] == [1, 2, 2]
    assert rep.extras["mark"] == "1"
    assert rep.extras["model_dims"] == [1, 2, 2]


def test_milnor_moore_char2_hypothesis():
    space, lam, bracket = gf8_unit_example()
    env = enveloping_algebra(space, lam, bracket, 3)
    B = gr_prime(env).bialgebra()
    rep = verify_milnor_moore(B)
    assert not rep.hypotheses_pass
    assert rep.hypotheses[0]["name"] == "char_not_two"


# -- categorical rigidity ---------------------------------------------------------------------


def test_rigidity_dj_over_f5():
    dj5 = dj_hecke_space(F5, 2, F5.scalar(2))
    rep = verify_categorical_rigidity(dj5, F5.scalar(4))
    assert rep.passed
    assert rep.extras["categorical_subspace_dims"] == [0, 2]


def test_rigidity_mark_one_not_applicable():
    F3 = PrimeField(3)
    rep = verify_categorical_rigidity(flip_space(F3, 2), F3.scalar(1))
    assert not rep.hypotheses_pass
    assert rep.conclusion_verdict is None
    # the flip preserves every subspace, and the report lists them all
    assert rep.extras["categorical_subspace_count"] == 6


def test_rigidity_dimension_one():
    rep = verify_categorical_rigidity(scalar_space(F5, 1, F5.scalar(3)), F5.scalar(3))
    assert rep.passed


def test_reports_are_deterministic():
    a = verify_milnor_moore(symmetric_algebra(DJ, LAM4, 3).bialgebra()).to_json_dict()
    b = verify_milnor_moore(symmetric_algebra(DJ, LAM4, 3).bialgebra()).to_json_dict()
    assert a == b
