"""Gate protocols: table fidelity, thresholds, variation, device cross-check."""

import numpy as np
import pytest

from fehdc.device import FerroParams, VtClass
from fehdc.gates import (
    MAJ_YZ_LOW,
    MAJORITY_TABLE,
    READ_PULSE,
    XOR_TABLE,
    GateKind,
    decision_threshold,
    majority_gate,
    monte_carlo,
    scale_current,
    table_for,
    verify_against_device,
    xor_gate,
)
from fehdc.hv import make_rng

# Nominal measured rows: (op label, vt state, current A, output).
EXPECTED_MAJORITY = {
    (0, 0, 0): ("Drain-erase", "HighVt", 0.34e-9, 0),
    (0, 0, 1): ("Partial drain-erase", "HighVt", 10.5e-9, 0),
    (0, 1, 0): ("Partial drain-erase", "HighVt", 5.62e-9, 0),
    (0, 1, 1): ("No operation", "LowVt", 95.7e-9, 1),
    (1, 0, 0): ("Drain-erase", "HighVt", 15.8e-9, 0),
    (1, 0, 1): ("Erase inhibition", "LowVt", 0.11e-6, 1),
    (1, 1, 0): ("Erase inhibition", "LowVt", 85.9e-9, 1),
    (1, 1, 1): ("Program", "LowVt", 0.58e-6, 1),
}
EXPECTED_XOR = {
    (0, 0): ("No operation", "HighVt", 4.6e-12, 0),
    (0, 1): ("Partial drain-erase", "LowVt", 0.38e-6, 1),
    (1, 0): ("Partial drain-erase", "LowVt", 0.23e-6, 1),
    (1, 1): ("Drain-erase", "HighVt", 29.1e-9, 0),
}


class TestTableFidelity:
    @pytest.mark.parametrize("inputs,expected", sorted(EXPECTED_MAJORITY.items()))
    def test_majority_rows_exact(self, inputs, expected):
        res = majority_gate(*inputs)
        op, vt, current, output = expected
        assert res.op_label == op
        assert res.vt_class.value == vt
        assert res.current == current  # data, bit-exact
        assert res.logic_out == output == int(sum(inputs) >= 2)

    @pytest.mark.parametrize("inputs,expected", sorted(EXPECTED_XOR.items()))
    def test_xor_rows_exact(self, inputs, expected):
        res = xor_gate(*inputs)
        op, vt, current, output = expected
        assert res.op_label == op
        assert res.vt_class.value == vt
        assert res.current == current
        assert res.logic_out == output == inputs[0] ^ inputs[1]

    def test_input_validation(self):
        with pytest.raises(ValueError):
            majority_gate(0, 2, 0)
        with pytest.raises(ValueError):
            xor_gate(1, -1)


class TestDecisionThreshold:
    def test_xor_geometric_mean(self):
        assert decision_threshold(GateKind.XOR2) == pytest.approx(81.8e-9, abs=0.1e-9)

    def test_majority_geometric_mean(self):
        assert decision_threshold(GateKind.MAJORITY3) == pytest.approx(36.8e-9, abs=0.1e-9)

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_separates_every_nominal_row(self, kind):
        threshold = decision_threshold(kind)
        for row in table_for(kind).values():
            if row.output == 1:
                assert row.current > threshold
            else:
                assert row.current < threshold


class TestVariationScaling:
    @pytest.mark.parametrize("kind", list(GateKind))
    def test_strictly_decreasing_in_offset(self, kind):
        offsets = np.linspace(-0.12, 0.12, 49)
        for row in table_for(kind).values():
            currents = [scale_current(row, dv) for dv in offsets]
            assert all(b < a for a, b in zip(currents, currents[1:])), row.inputs

    def test_zero_offset_is_identity(self):
        for row in list(MAJORITY_TABLE.values()) + list(XOR_TABLE.values()):
            assert scale_current(row, 0.0) == row.current

    def test_subthreshold_rows_scale_per_decade(self):
        row = XOR_TABLE[(1, 1)]  # high-Vt
        assert scale_current(row, 0.08) == pytest.approx(row.current / 10, rel=1e-9)

    def test_on_state_rows_scale_linearly(self):
        row = XOR_TABLE[(0, 1)]  # low-Vt
        assert scale_current(row, 0.05) == pytest.approx(row.current * 0.9, rel=1e-9)


class TestPulseTraces:
    def test_majority_trace_mixed_logic(self):
        trace = majority_gate(1, 0, 1).pulse_trace
        init, inputs, read = trace
        assert (init.vg, init.vd, init.vs) == (3.0, 0.0, 0.0)
        # X=1 -> 3 V gate; Y=0 -> 1.5 V drain; Z=1 -> 0 V source
        assert (inputs.vg, inputs.vd, inputs.vs) == (3.0, MAJ_YZ_LOW, 0.0)
        assert read == READ_PULSE

    def test_xor_trace_five_cycles(self):
        trace = xor_gate(1, 0).pulse_trace
        assert len(trace) == 5
        init, cx, cy, sd, read = trace
        assert init.vg == -3.0
        assert (cx.vg, cy.vg) == (4.0, 0.0)
        # cycle 4: X on source, Y on drain
        assert (sd.vd, sd.vs) == (0.0, 4.0)
        assert read == READ_PULSE
        assert read.duration == pytest.approx(10e-9)


class TestMonteCarlo:
    @pytest.mark.parametrize("kind", list(GateKind))
    def test_margins_non_overlapping_at_40mv(self, kind):
        report = monte_carlo(kind, 1000, 0.04, make_rng(8))
        assert report.n_samples == 1000
        assert report.margin_ratio > 1.0
        assert report.min_logic1_current > report.max_logic0_current

    def test_zero_variation_matches_nominal_worst_case(self):
        report = monte_carlo(GateKind.XOR2, 100, 0.0, make_rng(0))
        assert report.margin_ratio == pytest.approx(0.23e-6 / 29.1e-9, rel=1e-9)
        assert report.margin_ratio == pytest.approx(7.9, abs=0.01)

    def test_deterministic_under_seed(self):
        a = monte_carlo(GateKind.MAJORITY3, 200, 0.04, make_rng(3))
        b = monte_carlo(GateKind.MAJORITY3, 200, 0.04, make_rng(3))
        assert a.margin_ratio == b.margin_ratio
        for combo in a.histograms:
            assert np.array_equal(a.histograms[combo], b.histograms[combo])

    def test_histograms_cover_all_combinations(self):
        report = monte_carlo(GateKind.MAJORITY3, 50, 0.04, make_rng(1))
        assert set(report.histograms) == set(MAJORITY_TABLE)
        assert all(h.shape == (50,) for h in report.histograms.values())

    def test_sensed_logic_correct_at_nominal_and_small_offsets(self):
        # Fixed-threshold sensing equals the Boolean function at nominal and
        # for modest per-device offsets (the weakest majority logic-0 row
        # first crosses the nominal threshold near -29 mV).
        for dv in np.linspace(-0.02, 0.02, 9):
            for x, y, z in MAJORITY_TABLE:
                assert majority_gate(x, y, z, dv).logic_out == int(x + y + z >= 2)
            for x, y in XOR_TABLE:
                assert xor_gate(x, y, dv).logic_out == x ^ y

    def test_rejects_zero_samples(self):
        with pytest.raises(ValueError):
            monte_carlo(GateKind.XOR2, 0, 0.04, make_rng(0))


class TestDeviceCrossCheck:
    @pytest.mark.parametrize("kind", list(GateKind))
    def test_all_rows_match(self, kind):
        report = verify_against_device(kind)
        assert report.all_match, [r.inputs for r in report.failures]
        assert len(report.rows) == len(table_for(kind))

    def test_xor_00_never_programmed(self):
        report = verify_against_device(GateKind.XOR2)
        row = next(r for r in report.rows if r.inputs == (0, 0))
        assert row.simulated is VtClass.HIGH

    def test_xor_11_program_then_full_erase(self):
        report = verify_against_device(GateKind.XOR2)
        row = next(r for r in report.rows if r.inputs == (1, 1))
        assert row.simulated is VtClass.HIGH

    def test_majority_011_retains_low_vt(self):
        report = verify_against_device(GateKind.MAJORITY3)
        row = next(r for r in report.rows if r.inputs == (0, 1, 1))
        assert row.op_label == "No operation"
        assert row.simulated is VtClass.LOW

    def test_custom_params_still_checks(self):
        report = verify_against_device(GateKind.XOR2, FerroParams(n_hysterons=200))
        assert report.all_match
