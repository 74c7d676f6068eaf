from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from decodoku.errors import InvalidCoordinateError
from decodoku.lattice import (
    HORIZONTAL,
    VERTICAL,
    CorrectionLedger,
    ErrorEvent,
    LatticeSpec,
    QuditId,
    SyndromeState,
    all_cut_fluxes,
    all_qudits,
    apply_shift,
    bordering_plaquettes,
    cut_flux,
    defects,
    qudit_between,
    sign_on,
)
from conftest import build_state, random_events
from oracles import region_flux

SPEC = LatticeSpec(8, 8, 10)


def test_bordering_interior_horizontal():
    assert bordering_plaquettes(QuditId(HORIZONTAL, 2, 2), SPEC) == [((2, 1), +1), ((2, 2), -1)]


def test_bordering_left_absorbing():
    assert bordering_plaquettes(QuditId(HORIZONTAL, 3, 0), SPEC) == [((3, 0), +1)]


def test_bordering_right_absorbing():
    assert bordering_plaquettes(QuditId(HORIZONTAL, 3, 8), SPEC) == [((3, 7), -1)]


def test_bordering_interior_vertical():
    assert bordering_plaquettes(QuditId(VERTICAL, 1, 4), SPEC) == [((0, 4), +1), ((1, 4), -1)]


@pytest.mark.parametrize(
    "q",
    [
        QuditId(HORIZONTAL, 8, 0),
        QuditId(HORIZONTAL, 0, 9),
        QuditId(VERTICAL, 0, 0),
        QuditId(VERTICAL, 8, 0),
        QuditId(VERTICAL, 1, 8),
        QuditId("X", 1, 1),
    ],
)
def test_bordering_rejects_bad_coordinates(q):
    with pytest.raises(InvalidCoordinateError):
        bordering_plaquettes(q, SPEC)


def test_qudit_counts():
    # H*(W+1) horizontal edges plus (H-1)*W vertical ones
    assert len(all_qudits(SPEC)) == 8 * 9 + 7 * 8


def test_apply_shift_interior():
    s = apply_shift(SyndromeState(), QuditId(HORIZONTAL, 2, 2), 3, SPEC)
    assert s.values == {(2, 1): 3, (2, 2): 7}
    assert s.absorbed_left == s.absorbed_right == 0


def test_apply_shift_left_edge_books_absorbed_charge():
    s = apply_shift(SyndromeState(), QuditId(HORIZONTAL, 3, 0), 4, SPEC)
    assert s.values == {(3, 0): 4}
    assert s.absorbed_left == 6
    assert s.total_charge(10) == 0


def test_apply_shift_cancels_to_zero():
    s = SyndromeState(values={(2, 1): 7})
    apply_shift(s, QuditId(HORIZONTAL, 2, 2), 3, SPEC)
    assert s.values == {(2, 2): 7}


def test_apply_shift_rejects_zero_magnitude():
    with pytest.raises(ValueError):
        apply_shift(SyndromeState(), QuditId(HORIZONTAL, 2, 2), 0, SPEC)


def test_defects_row_major():
    s = SyndromeState()
    apply_shift(s, QuditId(HORIZONTAL, 2, 2), 3, SPEC)
    assert defects(s) == [((2, 1), 3), ((2, 2), 7)]
    assert defects(SyndromeState()) == []


def test_defects_omit_cancelled_plaquette():
    s = SyndromeState()
    apply_shift(s, QuditId(HORIZONTAL, 2, 2), 3, SPEC)
    apply_shift(s, QuditId(HORIZONTAL, 2, 3), 3, SPEC)  # adds 3 to (2,2): 7+3 = 0
    assert (2, 2) not in dict(defects(s))
    assert dict(defects(s)) == {(2, 1): 3, (2, 3): 7}


@settings(max_examples=150, derandomize=True, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 40))
def test_charge_conservation_random_sequences(seed, n):
    rng = random.Random(seed)
    s = SyndromeState()
    for e in random_events(SPEC, rng, n):
        apply_shift(s, e.qudit, e.magnitude, SPEC)
        assert s.total_charge(SPEC.d) == 0


@settings(max_examples=150, derandomize=True, deadline=None)
@given(st.integers(0, 10**6))
def test_apply_then_inverse_restores_state(seed):
    rng = random.Random(seed)
    s = build_state(random_events(SPEC, rng, 10), SPEC)
    before = (dict(s.values), s.absorbed_left, s.absorbed_right)
    q = rng.choice(all_qudits(SPEC))
    k = rng.randrange(1, SPEC.d)
    apply_shift(s, q, k, SPEC)
    apply_shift(s, q, SPEC.d - k, SPEC)
    assert (s.values, s.absorbed_left, s.absorbed_right) == before


def test_interior_shift_leaves_absorbed_untouched():
    s = SyndromeState()
    apply_shift(s, QuditId(VERTICAL, 3, 3), 5, SPEC)
    apply_shift(s, QuditId(HORIZONTAL, 3, 3), 5, SPEC)
    assert s.absorbed_left == s.absorbed_right == 0


def test_cut_flux_single_error():
    e = ErrorEvent(QuditId(HORIZONTAL, 2, 2), 3, 0)
    assert cut_flux([e], CorrectionLedger(), 2, SPEC) == 3


def test_cut_flux_with_exact_inverse_correction():
    e = ErrorEvent(QuditId(HORIZONTAL, 2, 2), 3, 0)
    ledger = CorrectionLedger()
    ledger.add(QuditId(HORIZONTAL, 2, 2), 7, SPEC.d)
    assert cut_flux([e], ledger, 2, SPEC) == 0


def test_cut_flux_full_chain_reads_one_everywhere():
    # A chain that carries one unit of charge across row 0: interior links
    # at k=1, boundary links at the complementary magnitude so the syndrome
    # cancels along the whole row.
    events = [ErrorEvent(QuditId(HORIZONTAL, 0, 0), 9, 0)]
    events += [ErrorEvent(QuditId(HORIZONTAL, 0, c), 1, c) for c in range(1, 8)]
    events += [ErrorEvent(QuditId(HORIZONTAL, 0, 8), 9, 8)]
    s = build_state(events, SPEC)
    assert not s.values, "chain must clear the syndrome"
    for cut in range(SPEC.width + 1):
        assert cut_flux(events, CorrectionLedger(), cut, SPEC) == 1


def test_cut_flux_out_of_range():
    with pytest.raises(InvalidCoordinateError):
        cut_flux([], CorrectionLedger(), 9, SPEC)


def test_all_cut_fluxes_matches_cut_flux():
    rng = random.Random(5)
    events = random_events(SPEC, rng, 12)
    ledger = CorrectionLedger()
    for e in random_events(SPEC, rng, 6, id_start=50):
        ledger.add(e.qudit, e.magnitude, SPEC.d)
    fluxes = all_cut_fluxes(events, ledger, SPEC)
    assert fluxes == [cut_flux(events, ledger, c, SPEC) for c in range(SPEC.width + 1)]


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 25))
def test_cut_flux_agrees_with_region_accounting(seed, n):
    rng = random.Random(seed)
    events = random_events(SPEC, rng, n)
    shifts = [(e.qudit, e.magnitude) for e in events]
    for cut in range(SPEC.width + 1):
        assert cut_flux(events, CorrectionLedger(), cut, SPEC) == region_flux(shifts, cut, SPEC)


def test_cleared_syndrome_makes_all_cuts_agree():
    from decodoku.hdrg import hdrg_decode

    rng = random.Random(11)
    for trial in range(30):
        events = random_events(SPEC, rng, rng.randrange(1, 15))
        s = build_state(events, SPEC)
        ledger = hdrg_decode(s.copy(), SPEC)
        for q, k in ledger.net_shift.items():
            apply_shift(s, q, k, SPEC)
        assert not s.values
        fluxes = all_cut_fluxes(events, ledger, SPEC)
        assert len(set(fluxes)) == 1


def test_qudit_between_and_sign():
    q = qudit_between((3, 3), (3, 4))
    assert q == QuditId(HORIZONTAL, 3, 4)
    assert sign_on(q, (3, 3), SPEC) == +1
    assert sign_on(q, (3, 4), SPEC) == -1
    with pytest.raises(InvalidCoordinateError):
        qudit_between((0, 0), (5, 5))
