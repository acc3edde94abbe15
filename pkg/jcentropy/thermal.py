""" This module defines the equilibrium (canonical) ensemble of the model at
a dimensionless temperature ``inv_beta = 1 / (beta * omega)``.

The equilibrium density matrix is diagonal in the dressed basis, with
weights ``w(0) = exp(beta * omega0 / 2) / Z`` on ``|0, g>`` and
``w(n, s) = exp(-beta * Omega(n, s)) / Z`` on ``phi(n, s)``. The sum over
``n`` is truncated at ``n_max`` (see :func:`resolve_truncation`) and the
partition function is evaluated in log space, since ``Omega(n, 2)`` is
negative for strong coupling and ``exp(-beta * Omega)`` overflows at low
temperature.

Example::

    cfg = ThermalConfig(ModelParams.resonant(2.5), inv_beta=1.0)
    report = thermal_report(cfg)
    report.ratio, report.regime

Reference
---------
"""
import logging

import numpy as np

from .densops import BlockDensity, ProbDist, QubitMarginal, shannon_entropy
from .exc import ArgumentError, TruncationError
from .infomeasures import BOUND_TOL, REGIME_TOL, entropy_report
from .spectrum import ground_level, lambda_n, negative_branch_set, omega_ns, theta_n


log = logging.getLogger(__name__)

DEFAULT_TRUNC_TOL = 1e-14
DEFAULT_N_CAP = 20000
NEGATIVE_BRANCH_MARGIN = 5

LOW_TEMPERATURE_LADDER = (0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001)


class ThermalConfig(object):
    """
    One point of the equilibrium ensemble.

    Constructor arguments:

    ``params``

        The :class:`jcentropy.spectrum.ModelParams`.

    ``inv_beta``

        The dimensionless temperature ``1 / (beta * omega)``. Must be
        positive.

    ``trunc_tol``

        Bound on the omitted Boltzmann mass relative to the retained
        partition function. Must lie in ``(0, 1e-6]``. Default is
        ``1e-14``.

    ``n_cap``

        Hard ceiling on the photon truncation. Default is ``20000``.

    ``n_max``

        Force the truncation instead of resolving it. Default is ``None``.
    """

    def __init__(self, params, inv_beta, trunc_tol=DEFAULT_TRUNC_TOL,
                 n_cap=DEFAULT_N_CAP, n_max=None):
        self.check_ctor_args(inv_beta, trunc_tol, n_cap, n_max)
        self.params = params
        self.inv_beta = float(inv_beta)
        self.trunc_tol = float(trunc_tol)
        self.n_cap = int(n_cap)
        self.n_max = n_max

    @staticmethod
    def check_ctor_args(inv_beta, trunc_tol, n_cap, n_max):
        if not inv_beta > 0 or not np.isfinite(inv_beta):
            raise ArgumentError('inv_beta must be positive and finite, got {!r}'.format(inv_beta))
        if not 0 < trunc_tol <= 1e-6:
            raise ArgumentError('trunc_tol must lie in (0, 1e-6], got {!r}'.format(trunc_tol))
        if n_cap < 1:
            raise ArgumentError('n_cap must be positive')
        if n_max is not None and not 0 <= n_max <= n_cap:
            raise ArgumentError('n_max must lie in [0, n_cap]')

    @property
    def beta(self):
        return 1.0 / (self.inv_beta * self.params.omega)

    def __repr__(self):
        return "ThermalConfig(%r, inv_beta=%r)" % (self.params, self.inv_beta)


class BoltzmannWeights(object):
    """
    Normalized equilibrium weights over the truncated level set:
    ``singlet`` for ``|0, g>``, and arrays ``branch1``, ``branch2`` indexed
    by ``n``. ``log_z`` is the log of the retained partition function and
    ``tail_bound`` bounds the omitted mass relative to it.
    """

    def __init__(self, singlet, branch1, branch2, log_z, tail_bound):
        self.singlet = singlet
        self.branch1 = branch1
        self.branch2 = branch2
        self.log_z = log_z
        self.tail_bound = tail_bound

    @property
    def n_max(self):
        return self.branch1.size - 1

    @property
    def partition_function(self):
        return float(np.exp(self.log_z))

    @property
    def dist(self):
        """
        The weights as one :class:`jcentropy.densops.ProbDist`, ordered
        ``[w(0), w(0,1), w(0,2), w(1,1), w(1,2), ...]``.
        """
        pairs = np.column_stack([self.branch1, self.branch2]).ravel()
        return ProbDist(np.concatenate([[self.singlet], pairs]), tail_bound=self.tail_bound)


def _tail_terms(params, beta, m):
    # per-level bound exp(log_head - rate * (n - m)) for n >= m, from the
    # tangent of the concave lambda_n at m; rate <= 0 means no bound
    m = np.asarray(m, dtype=float)
    lam = np.asarray(lambda_n(params, m))
    with np.errstate(divide='ignore', invalid='ignore'):
        slope = np.where(lam > 0, params.kappa ** 2 / (2 * lam), 0.0)
    rate = beta * (params.omega - slope)
    log_head = -beta * (params.omega * (m + 0.5) - lam)
    return log_head, rate


def _log_tail_bound(params, beta, m):
    # log of sum_{n >= m} 2 exp(-beta * Omega(n, 2)); infinite when the
    # tangent slope reaches omega
    log_head, rate = _tail_terms(params, beta, m)
    with np.errstate(divide='ignore', invalid='ignore'):
        bound = np.log(2.0) + log_head - np.log(-np.expm1(-rate))
    return np.where(rate > 0, bound, np.inf)


def _entropy_error_bound(params, beta, m, log_z):
    """
    Bound on the change of any reported entropy when the levels ``n >= m``
    are dropped from a partition function ``exp(log_z)``: the omitted
    ``sum -w ln w`` plus the renormalisation shift ``eps (1 + ln(levels))``
    of the retained part, ``eps`` being the omitted mass.
    """
    log_head, rate = _tail_terms(params, beta, m)
    a = log_head - log_z
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        mass = np.exp(np.log(2.0) + a - np.log(-np.expm1(-rate)))
        # sum_j (c - rate j) exp(-c - rate j) with c = -a, over both branches
        spread = -a + rate / np.expm1(rate)
        levels = 2.0 * np.asarray(m, dtype=float) + 1.0
        bound = mass * (spread + 1.0 + np.log(levels))
    # -x ln x is increasing only below 1/e
    return np.where((rate > 0) & (a < -1.0), bound, np.inf)


def _level_log_weights(params, beta, n_last):
    ns = np.arange(n_last + 1)
    log_w1 = -beta * np.atleast_1d(omega_ns(params, ns, 1))
    log_w2 = -beta * np.atleast_1d(omega_ns(params, ns, 2))
    log_singlet = beta * params.omega0 / 2.0
    log_z = np.logaddexp(log_singlet, np.logaddexp.accumulate(np.logaddexp(log_w1, log_w2)))
    return log_singlet, log_w1, log_w2, log_z


def _resolve(cfg):
    params, beta = cfg.params, cfg.beta
    negative = negative_branch_set(params, cfg.n_cap)
    if negative and negative[-1] >= cfg.n_cap - NEGATIVE_BRANCH_MARGIN:
        raise TruncationError(
            'truncation exceeds cap: negative branch reaches n={} with n_cap={}'.format(
                negative[-1], cfg.n_cap))
    floor = (negative[-1] if negative else 0) + NEGATIVE_BRANCH_MARGIN

    if cfg.n_max is not None:
        n_max = cfg.n_max
        log_singlet, log_w1, log_w2, log_z = _level_log_weights(params, beta, n_max)
        log_tail = _log_tail_bound(params, beta, n_max + 1)
        return n_max, log_z[-1], float(np.exp(log_tail - log_z[-1]))

    log_singlet, log_w1, log_w2, log_z = _level_log_weights(params, beta, cfg.n_cap - 1)
    candidates = np.arange(floor, cfg.n_cap)
    log_tail = _log_tail_bound(params, beta, candidates + 1)
    error = _entropy_error_bound(params, beta, candidates + 1, log_z[candidates])
    accepted = error < cfg.trunc_tol
    if not accepted.any():
        raise TruncationError(
            'truncation exceeds cap: entropy tail above {!r} at n_cap={} '
            '(inv_beta={!r}, kappa/omega={!r})'.format(
                cfg.trunc_tol, cfg.n_cap, cfg.inv_beta, params.kappa_ratio))
    n_max = int(candidates[np.argmax(accepted)])
    tail = float(np.exp(log_tail[n_max - floor] - log_z[n_max]))
    log.debug('resolved n_max=%d for %r (tail %.3g)', n_max, cfg, tail)
    return n_max, float(log_z[n_max]), tail


def resolve_truncation(cfg):
    """
    The smallest ``n_max`` that covers the negative branch
    ``{n: Omega(n, 2) < 0}`` plus a margin of ``5`` for which the omitted
    levels can shift no reported entropy by more than ``trunc_tol``. The omitted weights are
    bounded by a geometric series::

        sum_{n > n_max} 2 exp(-beta * Omega(n, 2))

    and the bound covers both their own ``-w ln w`` and the renormalisation
    of the retained weights. Doubling the resolved ``n_max`` therefore moves
    every entropy of :func:`thermal_report` by about ``trunc_tol`` at most.

    :class:`jcentropy.exc.TruncationError` is raised when ``n_cap`` is
    reached first. A forced ``cfg.n_max`` is returned as is.
    """
    return _resolve(cfg)[0]


def partition_function(cfg):
    """ ``(log Z, n_max)`` over the truncated level set. """
    n_max, log_z, _ = _resolve(cfg)
    return log_z, n_max


def boltzmann_weights(cfg):
    """
    The normalized :class:`BoltzmannWeights` of ``cfg``. ``w(n, 2) >= w(n, 1)``
    for every ``n`` since ``Omega(n, 2) <= Omega(n, 1)``.
    """
    n_max, _, tail = _resolve(cfg)
    log_singlet, log_w1, log_w2, log_z = _level_log_weights(cfg.params, cfg.beta, n_max)
    log_z = log_z[-1]
    return BoltzmannWeights(
        singlet=float(np.exp(log_singlet - log_z)),
        branch1=np.exp(log_w1 - log_z),
        branch2=np.exp(log_w2 - log_z),
        log_z=float(log_z),
        tail_bound=min(tail, 1.0))


def _mixing(params, n_max):
    thetas = np.atleast_1d(theta_n(params, np.arange(n_max + 1)))
    return np.cos(thetas) ** 2, np.sin(thetas) ** 2


def joint_entropy(cfg, weights=None):
    """
    ``S_{A+R}``: the equilibrium state is diagonal in the dressed basis, so
    this is the Shannon entropy of the Boltzmann weights.
    """
    if weights is None:
        weights = boltzmann_weights(cfg)
    return shannon_entropy(weights.dist)


def atom_marginal(cfg, weights=None):
    """
    The two-level marginal, with ground occupation::

        f_minus = w(0) + sum_m (w(m,1) cos^2(theta_m) + w(m,2) sin^2(theta_m))
    """
    if weights is None:
        weights = boltzmann_weights(cfg)
    cos2, sin2 = _mixing(cfg.params, weights.n_max)
    f_minus = weights.singlet + np.sum(weights.branch1 * cos2 + weights.branch2 * sin2)
    return QubitMarginal.from_ground(f_minus)


def radiation_marginal(cfg, weights=None):
    """
    The photon-number distribution of the field. Level ``n`` feeds ``|n>``
    through its ``|n, e>`` component and ``|n+1>`` through its
    ``|n+1, g>`` component::

        p_n = w(n,1) sin^2 + w(n,2) cos^2 (theta_n)
              + w(n-1,1) cos^2 + w(n-1,2) sin^2 (theta_{n-1})

    with ``w(0)`` added to ``p_0``. The vector has ``n_max + 2`` entries.
    """
    if weights is None:
        weights = boltzmann_weights(cfg)
    cos2, sin2 = _mixing(cfg.params, weights.n_max)
    p = np.zeros(weights.n_max + 2)
    p[:-1] += weights.branch1 * sin2 + weights.branch2 * cos2
    p[1:] += weights.branch1 * cos2 + weights.branch2 * sin2
    p[0] += weights.singlet
    return ProbDist(p, tail_bound=weights.tail_bound)


def joint_density(cfg, weights=None):
    """
    The equilibrium :class:`jcentropy.densops.BlockDensity`: diagonal
    dressed blocks ``(w(n,1), w(n,2))`` and singlet weight ``w(0)``. Its
    product-basis coherences are ``(w(n,1) - w(n,2)) cos(theta_n) sin(theta_n)``.
    """
    if weights is None:
        weights = boltzmann_weights(cfg)
    return BlockDensity(weights.branch1, weights.branch2, cfg.params,
                        singlet_weight=weights.singlet)


def thermal_report(cfg, bound_tol=BOUND_TOL, regime_tol=REGIME_TOL):
    """
    The :class:`jcentropy.infomeasures.EntropyReport` at ``cfg``. The
    regime is ``degenerate`` (and the ratio undefined) when ``S_A``
    vanishes, as it does in the zero-temperature limit of weak coupling.
    """
    weights = boltzmann_weights(cfg)
    return entropy_report(
        joint_entropy(cfg, weights),
        atom_marginal(cfg, weights).entropy(),
        shannon_entropy(radiation_marginal(cfg, weights)),
        bound_tol=bound_tol, regime_tol=regime_tol)


class LowTemperatureDiagnostic(object):
    """
    Result of :func:`low_temperature_limit`.

    ``expected_ratio`` is the zero-temperature limit of
    ``(S_{A+R} - S_R) / S_A`` implied by the ground level: ``1`` for
    ``|0, g>`` (the leading logarithms of the first thermal admixture
    cancel), ``-1`` for a non-degenerate entangled dressed level (pure joint
    state with equal marginal entropies), ``None`` for a degenerate ground.
    ``ratios`` holds the ratios computed along ``inv_betas``.
    """

    def __init__(self, params, ground, expected_ratio, inv_betas, ratios):
        self.params = params
        self.ground = ground
        self.expected_ratio = expected_ratio
        self.inv_betas = tuple(inv_betas)
        self.ratios = tuple(ratios)

    @property
    def observed_ratio(self):
        """ The ratio at the coldest point of the ladder. """
        return self.ratios[-1]

    def __repr__(self):
        return "<LowTemperatureDiagnostic %r ground=%s expected=%r observed=%r>" % (
            self.params, self.ground.level.label, self.expected_ratio, self.observed_ratio)


def low_temperature_limit(params, inv_betas=LOW_TEMPERATURE_LADDER,
                          trunc_tol=DEFAULT_TRUNC_TOL, n_cap=DEFAULT_N_CAP):
    """
    Zero-temperature diagnostic: the ground level, the limit it implies for
    the ratio, and the ratios actually computed while cooling down through
    ``inv_betas`` (sorted hottest first).
    """
    negative = negative_branch_set(params, n_cap)
    ground = ground_level(params, (negative[-1] if negative else 0) + NEGATIVE_BRANCH_MARGIN)
    if ground.degenerate:
        expected = None
    elif ground.level.is_singlet:
        expected = 1.0
    elif 0 < ground.level.theta < np.pi / 2:
        expected = -1.0
    else:
        expected = None

    inv_betas = sorted(inv_betas, reverse=True)
    ratios = [thermal_report(ThermalConfig(params, ib, trunc_tol=trunc_tol, n_cap=n_cap)).ratio
              for ib in inv_betas]
    diagnostic = LowTemperatureDiagnostic(params, ground, expected, inv_betas, ratios)
    log.info('%r', diagnostic)
    return diagnostic
