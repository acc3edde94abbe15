import numpy as np
import pytest

from jcentropy.exc import ArgumentError, NumericError
from jcentropy.infomeasures import (
    CLASSICALLY_CORRELATED,
    DEGENERATE,
    INDEPENDENT,
    SUPERCORRELATED,
    EntropyReport,
    classify,
    conditional_entropies,
    entropy_report,
    is_maximally_classical,
    mutual_entropy,
)

LN2 = np.log(2)


class TestConditionalEntropies():

    def test_product(self):
        assert conditional_entropies(0.9, 0.4, 0.5) == pytest.approx((0.4, 0.5))

    def test_entangled_pair(self):
        assert conditional_entropies(0.0, LN2, LN2) == (-LN2, -LN2)

    def test_negative_input(self):
        with pytest.raises(ArgumentError):
            conditional_entropies(-0.1, 0.5, 0.5)


class TestMutualEntropy():

    def test_independent(self):
        assert mutual_entropy(0.9, 0.4, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_quantum_bound(self):
        assert mutual_entropy(0.0, LN2, LN2) == 2 * LN2

    def test_classical_bound(self):
        assert mutual_entropy(0.7, 0.7, 0.7) == pytest.approx(0.7)

    def test_subadditivity_violated(self):
        with pytest.raises(NumericError):
            mutual_entropy(1.5, 0.5, 0.5)

    def test_araki_lieb_violated(self):
        with pytest.raises(NumericError):
            mutual_entropy(0.0, 0.1, 1.0)

    def test_rounding_tolerated(self):
        assert mutual_entropy(1.0 + 1e-8, 0.5, 0.5) < 0


class TestEntropyReport():

    def test_ratio(self):
        report = EntropyReport(0.7, 0.5, 1.0)
        assert report.ratio == pytest.approx(-0.6)
        assert report.ratio_atom == pytest.approx(0.2)
        report.check()

    def test_ratio_undefined(self):
        report = EntropyReport(0.5, 0.0, 0.5)
        assert report.ratio is None
        report.check()

    def test_as_dict(self):
        report = entropy_report(0.7, 0.5, 1.0)
        assert report.as_dict() == {
            'S_joint': 0.7,
            'S_A': 0.5,
            'S_R': 1.0,
            'cond_R': report.cond_given_rad,
            'cond_A': report.cond_given_atom,
            'mutual': report.mutual,
            'ratio': report.ratio,
            'ratio_A': report.ratio_atom,
            'regime': SUPERCORRELATED,
        }


class TestClassify():

    def test_independent(self):
        assert classify(EntropyReport(0.9, 0.4, 0.5)) == INDEPENDENT

    def test_supercorrelated(self):
        report = EntropyReport(0.7, 0.5, 1.0)
        assert report.cond_given_rad == pytest.approx(-0.3)
        assert classify(report) == SUPERCORRELATED

    def test_classically_correlated(self):
        report = EntropyReport(1.2, 0.5, 1.0)
        assert 0 < report.ratio < 1
        assert classify(report) == CLASSICALLY_CORRELATED

    def test_degenerate(self):
        assert classify(EntropyReport(0.5, 1e-8, 0.5)) == DEGENERATE

    def test_tolerance(self):
        report = EntropyReport(0.5 - 1e-7, 0.5, 0.5)
        assert classify(report) == CLASSICALLY_CORRELATED
        assert classify(report, tol=1e-9) == SUPERCORRELATED

    @pytest.mark.parametrize('s_joint', [0.0, 0.3, 0.7, 1.0, 1.4])
    def test_swap_equal_marginals(self, s_joint):
        report = EntropyReport(s_joint, 0.7, 0.7)
        swapped = EntropyReport(s_joint, report.s_rad, report.s_atom)
        assert classify(report) == classify(swapped)
        assert report.cond_given_rad == report.cond_given_atom
        assert report.ratio == report.ratio_atom

    @pytest.mark.parametrize('s_joint, s_atom, s_rad', [
        (0.2, 0.5, 1.0),
        (1.2, 0.5, 1.0),
        (1.5, 0.5, 1.0),
        (0.5, 1e-8, 0.5),
    ])
    def test_swap_labels(self, s_joint, s_atom, s_rad):
        report = EntropyReport(s_joint, s_atom, s_rad)
        swapped = EntropyReport(s_joint, s_rad, s_atom)
        assert classify(report) == classify(swapped)
        assert report.ratio == swapped.ratio_atom


class TestMaximallyClassical():

    def test_saturated(self):
        report = entropy_report(0.7, 0.7, 0.7)
        assert report.regime == CLASSICALLY_CORRELATED
        assert report.maximal
        assert is_maximally_classical(report)

    def test_not_saturated(self):
        report = entropy_report(1.2, 0.5, 1.0)
        assert not report.maximal

    def test_degenerate_never_maximal(self):
        report = entropy_report(0.5, 0.0, 0.5)
        assert report.regime == DEGENERATE
        assert not report.maximal
