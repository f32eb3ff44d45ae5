"""
Invariant suite behind the ``verify`` subcommand.

Properties checked:
  - operator-norm axioms on random complex matrices
  - walk operator unitarity, shift period and state normalization
  - POVM validity of W and Z
  - trivial overlap c(W, Z) = 1, delta0 = gamma, numeric vs analytic spectra
  - projective reduction on the qubit computational / Hadamard bases
"""

import logging
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from errors import ConsistencyError
from linalg_core import ComplexMatrix, hermitian_eig, identity, operator_norm, unitarity_residual
from povm_lab import (
    Povm,
    basis_overlap,
    build_w_povm,
    build_z_povm,
    computational_basis,
    hadamard_basis,
    overlap_report,
    pair_overlap,
    povm_validate,
    projective_povm,
)
from sweeps.spec import SweepSpec
from walk_engine import evolve, gamma, shift_operator, walk_operator

logger = logging.getLogger(__name__)

NORM_TOL = 1e-9
WALK_TOL = 1e-10
OVERLAP_TOL = 1e-9
PROJECTIVE_TOL = 1e-12

EffectHook = Callable[[Povm], Povm]


class VerifyGrid(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: list[tuple[int, int]] = Field(default_factory=list)
    matrix_samples: int = Field(default=200, ge=0)
    seed: int = 0

    @classmethod
    def default(cls) -> "VerifyGrid":
        points = [(P, P) for P in (2, 3, 5, 11, 21, 51, 101)]
        points += [(101, T) for T in range(1, 101, 9)]
        return cls(points=points)

    @classmethod
    def from_spec(cls, spec: SweepSpec, matrix_samples: int = 200) -> "VerifyGrid":
        if spec.kind == "overlap-time":
            points = [(P, T) for P in spec.p_values for T in spec.t_values]
        else:
            points = [(P, spec.time_for(P)) for P in spec.p_values]
        return cls(points=points, matrix_samples=matrix_samples, seed=spec.seed)


class PropertyResult(BaseModel):
    name: str
    passed: bool
    checks: int
    worst_residual: float
    tolerance: float
    detail: str = ""


class VerifyVerdict(BaseModel):
    properties: list[PropertyResult]

    @computed_field
    @property
    def total_checks(self) -> int:
        return sum(p.checks for p in self.properties)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    @computed_field
    @property
    def vacuous(self) -> bool:
        return self.total_checks == 0

    def failed(self) -> list[PropertyResult]:
        return [p for p in self.properties if not p.passed]


class _Tracker:
    """Accumulates residuals for one property."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.checks = 0
        self.worst = 0.0
        self.failures: list[str] = []

    def record(self, residual: float, where: str = "", ok: Optional[bool] = None) -> None:
        self.checks += 1
        self.worst = max(self.worst, residual)
        passed = residual <= self.tolerance if ok is None else ok
        if not passed and len(self.failures) < 5:
            self.failures.append(f"{where}: residual {residual:.3e}" if where else f"residual {residual:.3e}")

    def result(self) -> PropertyResult:
        return PropertyResult(
            name=self.name,
            passed=not self.failures,
            checks=self.checks,
            worst_residual=self.worst,
            tolerance=self.tolerance,
            detail="; ".join(self.failures),
        )


def _random_matrix(rng: np.random.Generator, n: int) -> ComplexMatrix:
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    """Eigenvectors of a random Hermitian matrix."""
    a = _random_matrix(rng, n)
    return hermitian_eig((a + a.conj().T) / 2).eigenvectors


def _check_norm_axioms(samples: int, seed: int) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    positivity = _Tracker("norm-positivity", NORM_TOL)
    homogeneity = _Tracker("norm-homogeneity", NORM_TOL)
    subadditivity = _Tracker("norm-subadditivity", NORM_TOL)
    submultiplicativity = _Tracker("norm-submultiplicativity", NORM_TOL)
    unitary = _Tracker("norm-unitary-invariance", NORM_TOL)

    if samples:
        positivity.record(abs(operator_norm(np.zeros((3, 3)))), "zero matrix")
    for i in range(samples):
        n = int(rng.integers(2, 7))
        a, b = _random_matrix(rng, n), _random_matrix(rng, n)
        lam = complex(rng.normal(), rng.normal())
        na, nb = operator_norm(a), operator_norm(b)
        positivity.record(0.0 if na > 0 else 1.0, f"sample {i}")
        homogeneity.record(abs(operator_norm(lam * a) - abs(lam) * na), f"sample {i}")
        subadditivity.record(max(operator_norm(a + b) - na - nb, 0.0), f"sample {i}")
        submultiplicativity.record(max(operator_norm(a @ b) - na * nb, 0.0), f"sample {i}")
        u, v = random_unitary(rng, n), random_unitary(rng, n)
        unitary.record(abs(operator_norm(u @ a @ v) - na), f"sample {i}")

    projective = _Tracker("projective-reduction", PROJECTIVE_TOL)
    if samples:
        comp, had = computational_basis(2), hadamard_basis()
        c = pair_overlap(projective_povm(comp), projective_povm(had))
        projective.record(abs(c - 0.5), "qubit Z vs X")
        projective.record(abs(c - basis_overlap(comp, had)), "max |<x|z>|^2")

    return [t.result() for t in (positivity, homogeneity, subadditivity, submultiplicativity, unitary, projective)]


def verify(grid: VerifyGrid, effect_hook: Optional[EffectHook] = None) -> VerifyVerdict:
    """Run the invariant suite over the grid; failures go in the verdict, never raise."""
    hook = effect_hook or (lambda p: p)
    logger.info(f"Verifying {len(grid.points)} grid points, {grid.matrix_samples} random matrices")

    properties = _check_norm_axioms(grid.matrix_samples, grid.seed)

    unitarity = _Tracker("walk-unitarity", WALK_TOL)
    normalization = _Tracker("walk-normalization", WALK_TOL)
    validity = _Tracker("povm-validity", 1e-9)
    trivial = _Tracker("trivial-bound", OVERLAP_TOL)
    delta_gamma = _Tracker("delta0-equals-gamma", OVERLAP_TOL)
    analytic = _Tracker("numeric-vs-analytic", OVERLAP_TOL)

    for P in sorted({P for P, _ in grid.points}):
        s = shift_operator(P)
        unitarity.record(unitarity_residual(s), f"S(P={P})")
        unitarity.record(unitarity_residual(walk_operator(P)), f"W(P={P})")
        period = np.linalg.matrix_power(s, P)
        unitarity.record(float(np.max(np.abs(period - identity(2 * P)))), f"S^P(P={P})")

    for P, T in grid.points:
        where = f"P={P}, T={T}"
        state = evolve(0, 0, P, T)
        normalization.record(state.norm_residual, where)

        for povm in (build_w_povm(state), build_z_povm(P)):
            verdict = povm_validate(hook(povm))
            validity.record(verdict.worst_magnitude, f"{povm.label}", ok=verdict.valid)

        try:
            report = overlap_report(P, T)
        except ConsistencyError as e:
            logger.error(f"Overlap report failed at {where}: {e}")
            for tracker in (trivial, delta_gamma, analytic):
                tracker.record(float("inf"), where)
            continue
        trivial.record(abs(report.overlap_c - 1.0), where)
        delta_gamma.record(abs(report.delta0 - gamma(state)), where)
        analytic.record(report.max_abs_disagreement, where)

    properties += [t.result() for t in (unitarity, normalization, validity, trivial, delta_gamma, analytic)]
    verdict = VerifyVerdict(properties=properties)

    for p in verdict.properties:
        status = "PASS" if p.passed else "FAIL"
        logger.info(f"{status} {p.name}: {p.checks} checks, worst residual {p.worst_residual:.3e}")
    if verdict.vacuous:
        logger.warning("Verification grid is empty: verdict passes vacuously")
    return verdict
