import numpy as np
import pytest
from scipy import optimize

from twisted_yangian import bae
from twisted_yangian.errors import (
    ContractError,
    ConvergenceError,
    DegenerateEquationError,
    PoleError,
)
from twisted_yangian.kernels import AlgebraSpec
from twisted_yangian.scattering import DefectSpec


def single_root_residual(spec, L, J):
    def f(u):
        st = bae.BetheState(spec, L, (np.array([u]),) + ((np.zeros(0),) * (spec.n - 1)),
                            (np.array([J]),) + ((np.zeros(0),) * (spec.n - 1)))
        return bae.bae_residual(st).residuals[0]
    return f


def test_even_n1_L5_single_root_matches_bisection():
    spec = AlgebraSpec("even", 1)
    J = 1.0 if bae.branch_is_integer(spec, 5, 1) else 0.5
    oracle = optimize.brentq(single_root_residual(spec, 5, J), 1e-6, 50, xtol=1e-15)
    st = bae.solve(spec, 5, seed=[[J]])
    assert abs(st.roots[0][0] - oracle) < 1e-9
    assert oracle == pytest.approx(1 / (2 * np.sqrt(3)), abs=1e-12)


def test_even_n1_L2_single_root_equation_is_degenerate():
    # e_1^L e_{-1} = e_2^2 on one root reduces to e_1^(L-2) = 1
    spec = AlgebraSpec("even", 1)
    J = 1.0 if bae.branch_is_integer(spec, 2, 1) else 0.5
    with pytest.raises(DegenerateEquationError):
        bae.solve(spec, 2, seed=[[J]])


@pytest.mark.parametrize("parity,n", [("odd", 1), ("odd", 2), ("even", 1), ("even", 2), ("odd", 3), ("even", 3)])
def test_ground_state_converges(parity, n):
    spec = AlgebraSpec(parity, n)
    st = bae.solve(spec, 32)
    assert st.report.max_residual < 1e-10
    assert bae.multiplicative_check(st) < 1e-8
    assert st.M == bae.ground_state_counts(spec, 32)
    st.validate()


def test_json_round_trip_is_bitwise(tmp_path):
    st = bae.solve(AlgebraSpec("odd", 2), 16)
    path = tmp_path / "state.json"
    st.to_json(str(path))
    back = bae.BetheState.from_json(str(path))
    for a, b in zip(st.roots, back.roots):
        assert np.array_equal(a, b)
    assert np.array_equal(bae.bae_residual(back).residuals, st.report.residuals)


def test_trivial_defect_changes_nothing():
    spec = AlgebraSpec("odd", 2)
    plain = bae.solve(spec, 16)
    triv = bae.BetheState(spec, 16, plain.roots, plain.branches, DefectSpec(0.7, (0,) * 5))
    assert np.array_equal(bae.bae_residual(triv).residuals, plain.report.residuals)
    assert triv.sites == 17


@pytest.mark.parametrize("variant", ["plus", "conjugate"])
def test_fundamental_defect_solves(variant):
    spec = AlgebraSpec("odd", 2)
    d = DefectSpec(0.3, (1, 0, 0, 0, 0))
    st = bae.solve(spec, 12, defect=d, variant=variant)
    assert st.report.max_residual < 1e-10
    assert bae.multiplicative_check(st) < 1e-8


def test_non_unimodular_defect_rejected():
    with pytest.raises(ContractError):
        bae.solve(AlgebraSpec("odd", 1), 8, defect=DefectSpec(0.0, (2, 0, 0)))


def test_empty_state():
    st = bae.solve(AlgebraSpec("odd", 1), 8, M=(0,))
    assert st.M == (0,)
    assert st.report.max_residual == 0.0


def test_root_at_origin_is_a_pole():
    st = bae.BetheState(AlgebraSpec("odd", 1), 4, (np.array([0.0]),), (np.array([1.0]),))
    with pytest.raises(PoleError):
        bae.bae_residual(st)


def test_branch_validation():
    spec = AlgebraSpec("odd", 1)
    with pytest.raises(ContractError):
        bae.solve(spec, 8, seed=[[1.0, 1.0]])
    wrong = 0.5 if bae.branch_is_integer(spec, 8, 1) else 1.0
    with pytest.raises(ContractError):
        bae.solve(spec, 8, seed=[[wrong]])


def test_overfilled_sea_fails_loudly():
    with pytest.raises(ConvergenceError) as info:
        bae.solve(AlgebraSpec("odd", 1), 8, M=(30,))
    assert info.value.history


def test_hole_insertion():
    spec = AlgebraSpec("odd", 1)
    st = bae.solve(spec, 32)
    new, lam_h = bae.hole_insert(st, 1, 5)
    assert new.M[0] == st.M[0] - 1
    assert bae.hole_count(new, 1) == bae.hole_count(st, 1) + 1
    r = np.sort(new.roots[0])
    assert r[4] < lam_h < r[5]
    assert new.report.max_residual < 1e-10


@pytest.mark.parametrize("parity", ["odd", "even"])
@pytest.mark.parametrize("sea", [1, 2])
def test_hole_lands_in_requested_sea_only(parity, sea):
    spec = AlgebraSpec(parity, 2)
    st = bae.solve(spec, 24)
    new, lam_h = bae.hole_insert(st, sea, 2)
    counts = [bae.hole_count(new, l) for l in (1, 2)]
    assert counts == [int(l == sea) for l in (1, 2)]
    r = np.sort(new.roots[sea - 1])
    assert r[1] < lam_h < r[2]
    assert new.report.max_residual < 1e-10


def test_hole_position_out_of_range():
    st = bae.solve(AlgebraSpec("even", 1), 12)
    with pytest.raises(ContractError):
        bae.hole_insert(st, 1, 50)


def test_histogram_tracks_thermodynamic_density():
    st = bae.solve(AlgebraSpec("odd", 1), 128)
    h = bae.density_histogram(st, 1, bins=8)
    assert np.max(h.relative_deviation[:5]) < 0.05
    with pytest.raises(ContractError):
        bae.density_histogram(st, 2)


def test_thermodynamic_density_normalisation():
    # int sigma = sigma_hat(0) / 2 on the half line
    spec = AlgebraSpec("odd", 2)
    lam = np.linspace(0, 80, 8001)
    for level in (1, 2):
        dens = bae.thermodynamic_density(spec, level, lam)
        assert np.trapezoid(dens, lam) == pytest.approx(0.5, abs=1e-3)


def test_quantum_numbers_and_labels():
    st = bae.solve(AlgebraSpec("odd", 2), 16)
    q = bae.quantum_numbers(st)
    assert q.M == st.M and q.L == 16
    assert bae.branch_label(1.5) == "3/2"
