""" This module defines the unitary quench ensemble: the two-level system
starts excited, the field starts in a photon-number mixture ``p(n)``, and
the joint state evolves under the model Hamiltonian.

The initial state ``|e><e| (x) sum_n p(n) |n><n|`` decomposes on the dressed
blocks because ``|n, e> = sin(theta_n) phi(n, 1) + cos(theta_n) phi(n, 2)``.
Each block therefore stays rank one::

    a = p(n) sin^2(theta_n)
    b = p(n) cos^2(theta_n)
    c = p(n) sin(theta_n) cos(theta_n) exp(-2i lambda_n t)

The coherence ``c`` is complex. Its real part is the cosine term often
quoted for this state; keeping the phase is what makes the blocks positive
semidefinite and the joint entropy exactly conserved.

Two photon sources are built in, a blackbody-like (geometric) source and a
coherent (Poissonian) source, both parameterized by their mean photon
number ``nbar``; any :class:`jcentropy.densops.ProbDist` can be used as a
custom source.

Times are raw times ``t`` (so that ``kappa * t`` is dimensionless).
:class:`QuenchConfig` converts from and to the scaled axis
``tau = kappa t / (pi sqrt(nbar))``.

Reference
---------
"""
import logging

import numpy as np
from scipy import stats
from scipy.special import gammaln, xlogy

from .densops import (
    BlockDensity,
    NORM_TOL,
    ProbDist,
    QubitMarginal,
    shannon_entropy,
)
from .exc import ArgumentError, TruncationError
from .infomeasures import BOUND_TOL, REGIME_TOL, entropy_report
from .spectrum import lambda_n, theta_n


log = logging.getLogger(__name__)

DEFAULT_TRUNC_TOL = 1e-14
DEFAULT_N_CAP = 20000
SERIES_TOL = 1e-16

GEOMETRIC = 'geometric'
POISSON = 'poisson'
CUSTOM = 'custom'

SOURCE_KINDS = (GEOMETRIC, POISSON, CUSTOM)


class SourceModel(object):
    """
    A photon source.

    Constructor arguments:

    ``kind``

        One of ``"geometric"`` (blackbody-like,
        ``p(n) = nbar**n / (1 + nbar)**(n + 1)``), ``"poisson"`` (coherent,
        ``p(n) = nbar**n exp(-nbar) / n!``) or ``"custom"``.

    ``nbar``

        The mean photon number. Required and positive for the built-in
        kinds.

    ``custom``

        A :class:`jcentropy.densops.ProbDist`. Required for ``"custom"``.

    Usage examples::

        SourceModel.geometric(1.0)
        SourceModel.poisson(50)
        SourceModel.from_custom(ProbDist([1.0]))
    """

    def __init__(self, kind, nbar=None, custom=None):
        self.kind, self.nbar, self.custom = self.check_ctor_args(kind, nbar, custom)

    @classmethod
    def geometric(cls, nbar):
        return cls(GEOMETRIC, nbar=nbar)

    @classmethod
    def poisson(cls, nbar):
        return cls(POISSON, nbar=nbar)

    @classmethod
    def from_custom(cls, dist):
        return cls(CUSTOM, custom=dist)

    @staticmethod
    def check_ctor_args(kind, nbar, custom):
        if kind not in SOURCE_KINDS:
            raise ArgumentError('unknown source kind {!r}'.format(kind))
        if kind == CUSTOM:
            if not isinstance(custom, ProbDist):
                raise ArgumentError('a custom source needs a ProbDist')
            if nbar is not None:
                raise ArgumentError('nbar is implied by a custom distribution')
            return kind, None, custom
        if custom is not None:
            raise ArgumentError('custom distribution given for a {} source'.format(kind))
        try:
            nbar = float(nbar)
        except (TypeError, ValueError):
            raise ArgumentError('nbar must be a real number')
        if not nbar > 0 or not np.isfinite(nbar):
            raise ArgumentError('nbar must be positive, got {!r}'.format(nbar))
        return kind, nbar, None

    def frozen(self):
        """ The matching frozen :mod:`scipy.stats` distribution. """
        if self.kind == GEOMETRIC:
            # scipy's geometric law counts trials from 1
            return stats.geom(1.0 / (1.0 + self.nbar), loc=-1)
        if self.kind == POISSON:
            return stats.poisson(self.nbar)
        raise ArgumentError('a custom source has no scipy counterpart')

    def mean(self):
        if self.kind == CUSTOM:
            return self.custom.mean()
        return self.nbar

    def __repr__(self):
        if self.kind == CUSTOM:
            return "SourceModel(%r, custom=%r)" % (self.kind, self.custom)
        return "SourceModel(%r, nbar=%r)" % (self.kind, self.nbar)


def photon_dist(source, trunc_tol=DEFAULT_TRUNC_TOL, n_cap=DEFAULT_N_CAP):
    """
    The truncated photon-number distribution of ``source``: the smallest
    ``n_max`` whose tail mass is below ``trunc_tol``, recorded as the
    distribution's ``tail_bound``. A custom distribution is returned as is.
    """
    if source.kind == CUSTOM:
        return source.custom
    frozen = source.frozen()
    ns = np.arange(n_cap + 1)
    below = frozen.sf(ns) < trunc_tol
    if not below.any():
        raise TruncationError(
            'truncation exceeds cap: {!r} keeps tail mass above {!r} at n_cap={}'.format(
                source, trunc_tol, n_cap))
    n_max = int(np.argmax(below))
    log.debug('resolved n_max=%d for %r', n_max, source)
    return ProbDist(frozen.pmf(ns[:n_max + 1]), tail_bound=float(frozen.sf(n_max)))


class QuenchConfig(object):
    """
    The quench ensemble for one parameter set and one source.

    Constructor arguments:

    ``params``

        The :class:`jcentropy.spectrum.ModelParams`.

    ``source``

        The :class:`SourceModel`.

    ``trunc_tol``

        Tail-mass tolerance of the source truncation. Must lie in
        ``(0, 1e-6]``. Default is ``1e-14``.

    ``n_cap``

        Hard ceiling on the photon truncation. Default is ``20000``.
    """

    def __init__(self, params, source, trunc_tol=DEFAULT_TRUNC_TOL, n_cap=DEFAULT_N_CAP):
        if not 0 < trunc_tol <= 1e-6:
            raise ArgumentError('trunc_tol must lie in (0, 1e-6], got {!r}'.format(trunc_tol))
        self.params = params
        self.source = source
        self.trunc_tol = float(trunc_tol)
        self.n_cap = int(n_cap)
        self.dist = photon_dist(source, trunc_tol, n_cap)

        ns = np.arange(self.dist.n_max + 1)
        self.thetas = np.atleast_1d(theta_n(params, ns))
        self.lambdas = np.atleast_1d(lambda_n(params, ns))
        self._s_joint = None

    @property
    def nbar(self):
        return self.source.mean()

    def time_from_tau(self, tau):
        """ Raw time ``t`` for the scaled axis value ``tau = kappa t / (pi sqrt(nbar))``. """
        if tau < 0:
            raise ArgumentError('tau must be nonnegative')
        if self.params.kappa == 0:
            raise ArgumentError('the scaled time axis needs kappa > 0')
        return tau * np.pi * np.sqrt(self.nbar) / self.params.kappa

    def tau_from_time(self, t):
        return self.params.kappa * t / (np.pi * np.sqrt(self.nbar))

    @property
    def s_joint(self):
        if self._s_joint is None:
            self._s_joint = joint_entropy_closed_form(self.source, self.trunc_tol, self.n_cap)
        return self._s_joint

    def rabi_weights(self, t):
        _check_time(t)
        return np.sin(2 * self.thetas) ** 2 * np.sin(self.lambdas * t) ** 2

    def __repr__(self):
        return "QuenchConfig(%r, %r)" % (self.params, self.source)


def _check_time(t):
    if not t >= 0 or not np.isfinite(t):
        raise ArgumentError('time must be nonnegative and finite, got {!r}'.format(t))


def rabi_weight(params, n, t):
    """
    The probability ``W_n(t) = sin^2(2 theta_n) sin^2(lambda_n t)`` that
    ``|n, e>`` has emitted into ``|n+1, g>`` at time ``t``. At resonance
    ``lambda_n = kappa sqrt(n + 1)``.
    """
    _check_time(t)
    w = np.sin(2 * np.asarray(theta_n(params, n))) ** 2 * \
        np.sin(np.asarray(lambda_n(params, n)) * t) ** 2
    return float(w) if np.ndim(w) == 0 else w


def atom_marginal_t(cfg, t):
    """ ``w_g(t) = sum_n p(n) W_n(t)``, ``w_e(t) = 1 - w_g(t)``. """
    return QubitMarginal.from_ground(np.dot(cfg.dist.weights, cfg.rabi_weights(t)))


def radiation_marginal_t(cfg, t):
    """
    ``P_n(t) = p(n) (1 - W_n(t)) + p(n - 1) W_{n-1}(t)`` with ``p(-1) = 0``.
    The vector is one entry longer than the source distribution.
    """
    p = cfg.dist.weights
    emitted = p * cfg.rabi_weights(t)
    dist = np.zeros(p.size + 1)
    dist[:-1] += p - emitted
    dist[1:] += emitted
    return ProbDist(dist, tail_bound=cfg.dist.tail_bound)


def photon_mean_t(cfg, t):
    """
    ``sum_n n P_n(t)``; excitation conservation makes it equal to the
    initial mean plus ``w_g(t)``.
    """
    return radiation_marginal_t(cfg, t).mean()


def joint_density_t(cfg, t):
    """
    The rank-one-per-block :class:`jcentropy.densops.BlockDensity` at time
    ``t``; the phase of block ``n`` rotates at ``Omega(n, 1) - Omega(n, 2)
    = 2 lambda_n``.
    """
    _check_time(t)
    p = cfg.dist.weights
    sin, cos = np.sin(cfg.thetas), np.cos(cfg.thetas)
    coherence = p * sin * cos * np.exp(-2j * cfg.lambdas * t)
    return BlockDensity(p * sin ** 2, p * cos ** 2, cfg.params, c=coherence,
                        tol=max(NORM_TOL, cfg.dist.tail_bound))


def joint_entropy_closed_form(source, trunc_tol=DEFAULT_TRUNC_TOL, n_cap=DEFAULT_N_CAP):
    """
    The conserved joint entropy, i.e. the entropy of the initial field:

    * geometric: ``(nbar + 1) ln(nbar + 1) - nbar ln(nbar)``,
    * poisson: ``nbar - nbar ln(nbar) + sum_n p(n) ln(n!)``, the series
      being summed until its terms drop below ``1e-16``,
    * custom: the Shannon entropy of the distribution.
    """
    if source.kind == GEOMETRIC:
        nbar = source.nbar
        return float(xlogy(nbar + 1, nbar + 1) - xlogy(nbar, nbar))
    if source.kind == POISSON:
        nbar = source.nbar
        frozen = source.frozen()
        ns = np.arange(n_cap + 1)
        terms = frozen.pmf(ns) * gammaln(ns + 1)
        if terms[-1] >= SERIES_TOL:
            raise TruncationError('truncation exceeds cap: log-factorial series not converged')
        return float(nbar - xlogy(nbar, nbar) + terms.sum())
    return shannon_entropy(source.custom)


def small_time_ratio(cfg, t):
    """
    The leading small-time behaviour of ``(S_{A+R} - S_R) / S_A``::

        sum_n (n + 1) p(n) ln(p(n) / p(n + 1))
        --------------------------------------------------
        (nbar + 1) (ln(kappa^2 t^2) - 1 + ln(nbar + 1))

    The numerator is positive for both built-in sources and the denominator
    tends to minus infinity, so the ratio approaches zero from below.

    ``t`` must be positive. The built-in sources use their exact ratios
    ``p(n) / p(n + 1)`` (``(nbar + 1) / nbar`` and ``(n + 1) / nbar``), so
    underflowed weights are harmless; for a custom source every populated
    photon number must have a populated successor.
    """
    kt = cfg.params.kappa * t
    if not kt > 0:
        raise ArgumentError('the small-time law is undefined at kappa t = {!r}'.format(kt))
    p = cfg.dist.weights
    ns = np.arange(p.size)
    if cfg.source.kind == CUSTOM:
        head, succ = p, np.append(p[1:], 0.0)
        if np.any((head > 0) != (succ > 0)):
            raise ArgumentError('small-time law needs finite log-ratios p(n) / p(n + 1)')
        mask = head > 0
        log_ratio = np.zeros(p.size)
        log_ratio[mask] = np.log(head[mask] / succ[mask])
    elif cfg.source.kind == GEOMETRIC:
        log_ratio = np.full(p.size, np.log1p(1.0 / cfg.nbar))
    else:
        log_ratio = np.log((ns + 1.0) / cfg.nbar)
    # underflowed weights contribute nothing
    numerator = np.sum((ns + 1) * p * log_ratio)
    nbar = cfg.nbar
    denominator = (nbar + 1) * (np.log(kt * kt) - 1 + np.log(nbar + 1))
    if denominator == 0:
        raise ArgumentError('kappa t = {!r} is outside the small-time regime'.format(kt))
    return float(numerator / denominator)


def dynamics_report(cfg, t, bound_tol=BOUND_TOL, regime_tol=REGIME_TOL):
    """
    The :class:`jcentropy.infomeasures.EntropyReport` at time ``t``, using
    the closed-form joint entropy. At ``t = 0`` the two-level system is
    pure and the report is ``degenerate``.
    """
    return entropy_report(
        cfg.s_joint,
        atom_marginal_t(cfg, t).entropy(),
        shannon_entropy(radiation_marginal_t(cfg, t)),
        bound_tol=bound_tol, regime_tol=regime_tol)
