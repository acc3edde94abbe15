""" This module defines the information measures built on top of the three
entropies ``S_{A+R}`` (joint), ``S_A`` (two-level system) and ``S_R``
(radiation): conditional entropies, mutual entropy, and the classification
of a state into one of the correlation regimes.

The mutual entropy ``S(A:R) = S_A + S_R - S_{A+R}`` is nonnegative
(subadditivity) and bounded above by ``2 min(S_A, S_R)`` (Araki-Lieb).
Classically it cannot exceed ``min(S_A, S_R)``; a state above that bound has
a negative conditional entropy and is called supercorrelated.

Reference
---------
"""
from .exc import ArgumentError, NumericError


BOUND_TOL = 1e-9
""" Tolerance on entropy bounds and on the presence of a ratio. """

REGIME_TOL = 1e-6
""" Tolerance on regime boundaries. """

BUG_TOL = 1e-6
""" Bound violations beyond this raise :class:`jcentropy.exc.NumericError`. """

INPUT_TOL = 1e-12

DEGENERATE = 'degenerate'
INDEPENDENT = 'independent'
CLASSICALLY_CORRELATED = 'classically_correlated'
SUPERCORRELATED = 'supercorrelated'

REGIMES = (DEGENERATE, INDEPENDENT, CLASSICALLY_CORRELATED, SUPERCORRELATED)


def _check_inputs(s_joint, s_atom, s_rad):
    if min(s_joint, s_atom, s_rad) < -INPUT_TOL:
        raise ArgumentError('entropies must be nonnegative, got ({!r}, {!r}, {!r})'.format(
            s_joint, s_atom, s_rad))


def conditional_entropies(s_joint, s_atom, s_rad):
    """
    ``(S(A+R|R), S(A+R|A)) = (S_{A+R} - S_R, S_{A+R} - S_A)``.

    Either may be negative for entangled states.
    """
    _check_inputs(s_joint, s_atom, s_rad)
    return s_joint - s_rad, s_joint - s_atom


def mutual_entropy(s_joint, s_atom, s_rad):
    """
    ``S(A:R) = S_A + S_R - S_{A+R}``.

    A result below zero or above ``2 min(S_A, S_R)`` by more than
    ``BUG_TOL`` cannot come from a density matrix and raises
    :class:`jcentropy.exc.NumericError`.
    """
    _check_inputs(s_joint, s_atom, s_rad)
    mutual = s_atom + s_rad - s_joint
    if mutual < -BUG_TOL:
        raise NumericError('mutual entropy {!r} is negative'.format(mutual))
    if mutual > 2 * min(s_atom, s_rad) + BUG_TOL:
        raise NumericError('mutual entropy {!r} exceeds 2 min(S_A, S_R) = {!r}'.format(
            mutual, 2 * min(s_atom, s_rad)))
    return mutual


class EntropyReport(object):
    """
    All entropy functionals at one parameter point.

    ``ratio`` is ``S(A+R|R) / S_A`` and is ``None`` when ``S_A`` is below
    ``BOUND_TOL``; ``ratio_atom`` is the companion ``S(A+R|A) / S_R``.
    ``regime`` is one of ``REGIMES`` and ``maximal`` flags states on the
    classical upper bound ``S(A:R) = min(S_A, S_R)``.

    Reports are built with :func:`entropy_report`.
    """

    def __init__(self, s_joint, s_atom, s_rad, bound_tol=BOUND_TOL):
        self.s_joint = float(s_joint)
        self.s_atom = float(s_atom)
        self.s_rad = float(s_rad)
        self.cond_given_rad, self.cond_given_atom = conditional_entropies(
            self.s_joint, self.s_atom, self.s_rad)
        self.mutual = mutual_entropy(self.s_joint, self.s_atom, self.s_rad)
        self.ratio = self.cond_given_rad / self.s_atom if self.s_atom >= bound_tol else None
        self.ratio_atom = self.cond_given_atom / self.s_rad if self.s_rad >= bound_tol else None
        self.regime = None
        self.maximal = False

    def check(self):
        """
        Assert the identity ``ratio = 1 - mutual / S_A``.
        """
        if self.ratio is None:
            return
        expected = 1.0 - self.mutual / self.s_atom
        scale = max(1.0, (self.s_joint + self.s_rad) / self.s_atom)
        if abs(self.ratio - expected) > 1e-10 * scale:
            raise NumericError('ratio {!r} differs from 1 - mutual/S_A = {!r}'.format(
                self.ratio, expected))

    def as_dict(self):
        return {
            'S_joint': self.s_joint,
            'S_A': self.s_atom,
            'S_R': self.s_rad,
            'cond_R': self.cond_given_rad,
            'cond_A': self.cond_given_atom,
            'mutual': self.mutual,
            'ratio': self.ratio,
            'ratio_A': self.ratio_atom,
            'regime': self.regime,
        }

    def __repr__(self):
        return "<EntropyReport S=(%r, %r, %r) ratio=%r regime=%s>" % (
            self.s_joint, self.s_atom, self.s_rad, self.ratio, self.regime)


def classify(report, tol=REGIME_TOL):
    """
    The correlation regime of ``report``:

    * ``degenerate`` when ``min(S_A, S_R) < tol``,
    * ``supercorrelated`` when ``S(A:R) > min(S_A, S_R) + tol``,
    * ``independent`` when ``S(A:R) < tol``,
    * ``classically_correlated`` otherwise.
    """
    smallest = min(report.s_atom, report.s_rad)
    if smallest < tol:
        return DEGENERATE
    if report.mutual > smallest + tol:
        return SUPERCORRELATED
    if report.mutual < tol:
        return INDEPENDENT
    return CLASSICALLY_CORRELATED


def is_maximally_classical(report, tol=REGIME_TOL):
    """ Whether ``S(A:R)`` sits on the classical bound ``min(S_A, S_R)``. """
    return abs(report.mutual - min(report.s_atom, report.s_rad)) <= tol


def entropy_report(s_joint, s_atom, s_rad, bound_tol=BOUND_TOL, regime_tol=REGIME_TOL):
    """
    Build a checked and classified :class:`EntropyReport`.
    """
    report = EntropyReport(s_joint, s_atom, s_rad, bound_tol=bound_tol)
    report.check()
    report.regime = classify(report, regime_tol)
    report.maximal = report.regime != DEGENERATE and is_maximally_classical(report, regime_tol)
    return report
