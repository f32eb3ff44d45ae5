import math

import numpy as np
import pytest

from errors import ConsistencyError, RejectedInputError
from linalg_core import hermitian_eig, identity
from povm_lab import (
    Povm,
    analytic_eigenvalues,
    basis_overlap,
    build_w_povm,
    build_z_povm,
    computational_basis,
    delta0,
    delta1,
    first_argmax,
    hadamard_basis,
    overlap_report,
    pair_overlap,
    povm_validate,
    projective_povm,
    projector_shortcut_overlap,
    sqrt_effects,
)
from povm_lab import overlap as overlap_module
from walk_engine import WalkState, evolve, gamma


# ─── construction ─────────────────────────────────────────────────

def test_w_povm_is_rank_one_projector_and_complement():
    s = evolve(0, 0, 3, 3)
    w = build_w_povm(s)
    assert len(w) == 2
    np.testing.assert_allclose(w[0] + w[1], identity(6), atol=1e-10)
    np.testing.assert_allclose(hermitian_eig(w[0]).eigenvalues, [1] + [0] * 5, atol=1e-12)
    np.testing.assert_allclose(hermitian_eig(w[1]).eigenvalues, [1] * 5 + [0], atol=1e-12)
    assert povm_validate(w).valid


def test_w_povm_rejects_unnormalized_state():
    with pytest.raises(RejectedInputError):
        build_w_povm(WalkState(P=2, amplitudes=np.array([1, 1, 0, 0])))


def test_z_povm_effects():
    z = build_z_povm(5)
    assert len(z) == 5
    np.testing.assert_allclose(sum(z), identity(10))
    for j, zj in enumerate(z):
        assert np.trace(zj).real == pytest.approx(2.0)
        assert zj[j, j] == 1 and zj[5 + j, 5 + j] == 1
        for k in range(j + 1, 5):
            np.testing.assert_array_equal(zj @ z[k], np.zeros((10, 10)))
    assert povm_validate(z).valid


def test_z_povm_rejects_small_cycles():
    with pytest.raises(RejectedInputError):
        build_z_povm(1)


def test_povm_shape_checked():
    with pytest.raises(RejectedInputError):
        Povm(dim=2, effects=(identity(3),))
    with pytest.raises(RejectedInputError):
        Povm(dim=2, effects=())


def test_povm_effects_are_read_only():
    z = build_z_povm(2)
    with pytest.raises(ValueError):
        z[0][0, 0] = 5


# ─── validation ───────────────────────────────────────────────────

def test_validate_reports_incompleteness():
    verdict = povm_validate(Povm(dim=2, effects=(identity(2) / 2, identity(2) / 3)))
    assert not verdict.valid
    assert [v.kind for v in verdict.violations] == ["incomplete"]
    assert verdict.worst_magnitude == pytest.approx(1 / 6)


def test_validate_reports_negative_eigenvalue():
    bad = np.diag([1.1, 1.0])
    other = np.diag([-0.1, 0.0])
    verdict = povm_validate(Povm(dim=2, effects=(bad, other)))
    kinds = {(v.kind, v.effect_index) for v in verdict.violations}
    assert ("non-psd", 1) in kinds
    assert verdict.worst_magnitude == pytest.approx(0.1)


def test_validate_reports_non_hermitian():
    skew = np.array([[0.5, 0.2], [0.0, 0.5]])
    verdict = povm_validate(Povm(dim=2, effects=(skew, identity(2) - skew)))
    assert {v.kind for v in verdict.violations} == {"non-hermitian"}
    assert "effect 0" in verdict.violations[0].describe()


# ─── overlap ──────────────────────────────────────────────────────

def test_overlap_identical_projective_measurements():
    p = projective_povm(computational_basis(3))
    assert pair_overlap(p, p) == pytest.approx(1.0)


def test_overlap_qubit_mutually_unbiased_bases():
    comp, had = projective_povm(computational_basis(2)), projective_povm(hadamard_basis())
    assert pair_overlap(comp, had) == pytest.approx(0.5, abs=1e-12)
    assert projector_shortcut_overlap(comp, had) == pytest.approx(0.5, abs=1e-12)
    assert basis_overlap(computational_basis(2), hadamard_basis()) == pytest.approx(0.5)


def test_overlap_dimension_mismatch():
    with pytest.raises(RejectedInputError, match="mismatch"):
        pair_overlap(build_z_povm(2), build_z_povm(3))


def test_projector_shortcut_needs_projectors():
    noisy = Povm(dim=2, effects=(identity(2) / 2, identity(2) / 2))
    with pytest.raises(RejectedInputError):
        projector_shortcut_overlap(noisy, noisy)


def test_projective_povm_rejects_non_orthonormal_basis():
    with pytest.raises(RejectedInputError):
        projective_povm(np.array([[1, 1], [0, 1]]))


def test_sqrt_leaves_projector_effects_unchanged():
    z = build_z_povm(3)
    for root, effect in zip(sqrt_effects(z), z):
        np.testing.assert_allclose(root, effect, atol=1e-12)


@pytest.mark.parametrize("P", [2, 3, 5])
def test_walk_vs_position_overlap_is_trivial(P):
    s = evolve(0, 0, P, P)
    assert pair_overlap(build_w_povm(s), build_z_povm(P)) == pytest.approx(1.0, abs=1e-9)


# ─── delta0 / delta1 / analytic spectra ───────────────────────────

def test_basis_state_deltas():
    s = evolve(0, 0, 4, 0)
    assert delta0(s) == pytest.approx(1.0)
    assert delta1(s) == pytest.approx(1.0)
    lam0 = [e.lambda0 for e in analytic_eigenvalues(s)]
    assert lam0 == [1.0, 0.0, 0.0, 0.0]


@pytest.mark.parametrize("P", [3, 5, 11])
def test_delta1_is_one_and_delta0_is_gamma(P):
    s = evolve(0, 0, P, P)
    assert delta1(s) == pytest.approx(1.0, abs=1e-9)
    assert delta0(s) == pytest.approx(gamma(s), abs=1e-9)


@pytest.mark.parametrize("P", [3, 5, 11])
def test_analytic_spectra_match_explicit_eigensolve(P):
    s = evolve(0, 0, P, P)
    w0, w1 = build_w_povm(s)
    analytic = analytic_eigenvalues(s)
    assert sum(a.lambda0 for a in analytic) == pytest.approx(1.0, abs=1e-12)
    for a, zb in zip(analytic, build_z_povm(P)):
        a_b = w0 @ zb
        b_b = w1 @ zb
        top_a = hermitian_eig(a_b.conj().T @ a_b).eigenvalues
        top_b = hermitian_eig(b_b.conj().T @ b_b).eigenvalues
        assert top_a[0] == pytest.approx(a.lambda0, abs=1e-9)
        np.testing.assert_allclose(top_b[:2], sorted(a.lambda1, reverse=True), atol=1e-9)
        np.testing.assert_allclose(top_b[2:], 0.0, atol=1e-9)


def test_first_argmax_prefers_lowest_index_on_ties():
    assert first_argmax([0.2, 0.5, 0.5 - 1e-13, 0.1]) == 1
    assert first_argmax([0.5 - 1e-13, 0.5]) == 0


# ─── overlap_report ───────────────────────────────────────────────

def test_report_p3_t3():
    report = overlap_report(3, 3)
    assert report.overlap_c == pytest.approx(1.0, abs=1e-9)
    assert report.delta0 == pytest.approx(0.625, abs=1e-9)
    assert report.argmax_delta0 == 1
    assert report.max_abs_disagreement < 1e-9
    assert len(report.per_b_numeric) == len(report.per_b_analytic) == 3


def test_report_basis_state():
    report = overlap_report(2, 0)
    assert report.delta0 == pytest.approx(1.0)
    assert report.delta1 == pytest.approx(1.0)


def test_report_large_cycle():
    report = overlap_report(101, 100)
    assert report.delta1 == pytest.approx(1.0, abs=1e-9)
    assert report.delta0 < 1.0
    assert report.overlap_c == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("P", [2, 3, 5, 11, 21, 51, 101])
def test_overlap_trivial_and_delta0_is_gamma_over_time(P):
    for T in range(min(P, 50) + 1):
        report = overlap_report(P, T)
        assert report.overlap_c == pytest.approx(1.0, abs=1e-9), T
        assert report.delta1 == pytest.approx(1.0, abs=1e-9), T
        assert report.delta0 == pytest.approx(gamma(evolve(0, 0, P, T)), abs=1e-9), T


def test_report_raises_on_numeric_disagreement(monkeypatch):
    real = overlap_module.position_norms

    def skewed(s):
        w0, w1 = real(s)
        return w0 + 1e-3, w1

    monkeypatch.setattr(overlap_module, "position_norms", skewed)
    with pytest.raises(ConsistencyError, match="disagree"):
        overlap_report(3, 3)


def test_report_starting_coin_and_position():
    report = overlap_report(5, 5, c0=1, x0=2)
    assert (report.c0, report.x0) == (1, 2)
    assert report.delta0 == pytest.approx(gamma(evolve(1, 2, 5, 5)), abs=1e-9)
    assert math.isclose(report.delta1, 1.0, abs_tol=1e-9)
