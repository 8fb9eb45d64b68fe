"""Worked examples for the operator map, measures and families."""
from fractions import Fraction

import numpy as np
import pytest

from multient import catalog, chmap, permlab, weylfam
from multient.measures import gme_ame, measure_report, scott
from multient.permlab import PermutationSpec, exact_record_values
from multient.polygon import entropy_vector, polygon_measure
from multient.statecore import partial_trace, purity

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)
BELL_PROJ = np.outer(BELL, BELL)


def test_identity_state_pairs_13():
    s = chmap.op_to_state(chmap.identity_op(2))
    assert np.abs(partial_trace(s, [1, 3]).mat - BELL_PROJ).max() < 1e-12


def test_swap_state_pairs_14():
    s = chmap.op_to_state(chmap.swap_op(2))
    assert np.abs(partial_trace(s, [1, 4]).mat - BELL_PROJ).max() < 1e-12


def test_cnot_state_amplitudes():
    expect = np.zeros(16)
    expect[[0b0000, 0b0101, 0b1011, 0b1110]] = 0.5
    assert np.abs(chmap.op_to_state(chmap.cnot_op()).amps - expect).max() < 1e-15


@pytest.mark.parametrize("d", [2, 3])
def test_identity_realigned_and_swap_transposed(d):
    omega = np.zeros(d * d)
    omega[:: d + 1] = 1
    assert np.array_equal(chmap.reshape(chmap.identity_op(d), "R2"), np.outer(omega, omega))
    assert np.array_equal(chmap.reshape(chmap.swap_op(d), "T2"), np.outer(omega, omega))


def test_unitary_and_cnot_marginals():
    u = chmap.dcnot_op()
    r12, _, _ = chmap.pair_marginals(u)
    assert np.abs(r12 - np.eye(4) / 4).max() < 1e-15
    _, r13, r14 = chmap.pair_marginals(chmap.cnot_op())
    assert purity(r13) == pytest.approx(0.5, abs=1e-15)
    assert np.abs(r14 - np.eye(4) / 4).max() < 1e-15
    assert chmap.is_dual_unitary(chmap.cnot_op()) == (False, True)


def test_measure_examples():
    ident2 = chmap.op_to_state(chmap.identity_op(2))
    ident3 = chmap.op_to_state(chmap.identity_op(3))
    assert gme_ame(ident2) == 0.0
    assert gme_ame(chmap.op_to_state(chmap.swap_op(2))) == 0.0
    assert scott(ident3, 2) == pytest.approx(2 / 3, abs=1e-12)
    assert scott(catalog.ghz(4), 2) == pytest.approx(2 / 3, abs=1e-12)
    assert "ame" in measure_report(catalog.ghz(3)).flags
    rep = measure_report(catalog.ame43())
    assert rep.scott[1] == pytest.approx(1) and rep.scott[2] == pytest.approx(1)


def test_qutrit_shear_permutation():
    spec = PermutationSpec.from_map(3, lambda i, j: (i, i + j))
    assert exact_record_values(spec)["gme_ame"] == Fraction(3, 4)
    s = permlab.perm_state(spec)
    assert purity(partial_trace(s, [1, 3])) == pytest.approx(1 / 3, abs=1e-12)
    assert purity(partial_trace(s, [1, 4])) == pytest.approx(1 / 9, abs=1e-12)


def test_single_pi_on_identity():
    spec = PermutationSpec(2, (0, 1, 2, 3), phases=(np.pi, 0.0, 0.0, 0.0))
    assert exact_record_values(spec)["gme_ame"] == Fraction(2, 3)


def test_entropy_vector_of_identity_state():
    ev = entropy_vector(chmap.op_to_state(chmap.identity_op(2)))
    assert np.allclose(ev.singles, 1, atol=1e-12)
    assert ev.pairs[1] < 1e-12


def test_polygon_at_identity_and_swap_points():
    q = weylfam.QUARTER
    for p in (weylfam.WeylPoint(0, 0, 0), weylfam.WeylPoint(q, q, q)):
        assert polygon_measure(chmap.op_to_state(weylfam.cartan_unitary(p))) == 0.0


def test_cartan_vertices_and_scott():
    q = weylfam.QUARTER
    assert np.abs(weylfam.cartan_unitary(weylfam.WeylPoint(0, 0, 0)) - np.eye(4)).max() < 1e-15
    cn = weylfam.WeylPoint(q, 0, 0)
    assert gme_ame(chmap.op_to_state(weylfam.cartan_unitary(cn))) == pytest.approx(2 / 3, abs=1e-12)
    assert weylfam.scott_f(q, 0, 0) == pytest.approx(8) and weylfam.scott_f_published(q, 0, 0) == pytest.approx(8)
    assert weylfam.scott_closed_form(cn) == pytest.approx(8 / 9, abs=1e-12)
    assert scott(chmap.op_to_state(chmap.cnot_op()), 2) == pytest.approx(8 / 9, abs=1e-12)
    assert weylfam.edge_formula(weylfam.LOCAL_CNOT, 0) == 0
    assert weylfam.edge_formula(weylfam.SWAP_DCNOT, 0) == pytest.approx(2 / 3)


def test_gabcd_single_parameter_point_is_biseparable():
    # with only a nonzero the printed family gives |Phi+>_12 |Phi+>_34
    s = catalog.named_state("g_abcd", a=1, b=0, c=0, d=0)
    assert gme_ame(s) == 0.0
    assert gme_ame(catalog.named_state("g_abcd", a=1, b=0, c=0, d=1)) == pytest.approx(8 / 27, abs=1e-12)
