""" This module defines the dressed-state eigensystem of the Jaynes-Cummings
Hamiltonian in the rotating wave approximation.

Units are such that ``hbar = 1``. Energies, couplings and the detuning share
the unit of the field frequency ``omega``; with the default ``omega=1`` every
energy is expressed in units of ``omega``.

The dressed states are::

    |phi(n, 1)> =  cos(theta_n) |n+1, g> + sin(theta_n) |n, e>
    |phi(n, 2)> = -sin(theta_n) |n+1, g> + cos(theta_n) |n, e>

with energies ``Omega(n, s) = omega * (n + 1/2) + (3 - 2s) * lambda_n``. The
uncoupled ground state ``|0, g>`` has energy ``-omega0 / 2``.

Functions taking a photon index ``n`` accept either an integer or an integer
array; in the latter case they return arrays of the same shape.

Reference
---------
"""
import logging
import warnings

import numpy as np

from .exc import ArgumentError, TruncationError


log = logging.getLogger(__name__)

ENERGY_TIE_TOL = 1e-12


class ModelParams(object):
    """
    Physical constants of the model.

    Constructor arguments:

    ``omega``

        The field frequency. Must be positive. Default is ``1.0``.

    ``omega0``

        The splitting of the two-level system. Must be positive. Default is
        ``None``, meaning resonance (``omega0 = omega``).

    ``kappa``

        The dipole coupling strength. Must be nonnegative. Default is
        ``0.0``.

    Usage examples::

        params = ModelParams(kappa=2.5)
        params = ModelParams.resonant(kappa_ratio=0.5, omega=2.0)
        params = ModelParams(omega=1.0, omega0=0.8, kappa=0.1)
    """

    def __init__(self, omega=1.0, omega0=None, kappa=0.0):
        if omega0 is None:
            omega0 = omega
        self.omega, self.omega0, self.kappa = self.check_ctor_args(
            omega, omega0, kappa)

    @classmethod
    def resonant(cls, kappa_ratio, omega=1.0):
        """
        Build resonant parameters from the dimensionless coupling
        ``kappa / omega``.
        """
        return cls(omega=omega, omega0=omega, kappa=kappa_ratio * omega)

    @staticmethod
    def check_ctor_args(omega, omega0, kappa):
        try:
            omega, omega0, kappa = float(omega), float(omega0), float(kappa)
        except (TypeError, ValueError):
            raise ArgumentError('omega, omega0 and kappa must be real numbers')
        if not all(np.isfinite([omega, omega0, kappa])):
            raise ArgumentError('omega, omega0 and kappa must be finite')
        if omega <= 0:
            raise ArgumentError('omega must be positive, got {!r}'.format(omega))
        if omega0 <= 0:
            raise ArgumentError('omega0 must be positive, got {!r}'.format(omega0))
        if kappa < 0:
            raise ArgumentError('kappa must be nonnegative, got {!r}'.format(kappa))
        return omega, omega0, kappa

    @property
    def kappa_ratio(self):
        """ The dimensionless coupling ``kappa / omega``. """
        return self.kappa / self.omega

    def detuning(self):
        """ The detuning ``omega - omega0``. """
        return self.omega - self.omega0

    def is_resonant(self):
        return self.detuning() == 0

    def warn_if_detuned(self):
        if not self.is_resonant():
            warnings.warn('detuned parameters (detuning={!r}); only the '
                          'resonant case is validated'.format(self.detuning()))

    def __eq__(self, other):
        try:
            return (self.omega, self.omega0, self.kappa) == \
                (other.omega, other.omega0, other.kappa)
        except AttributeError:
            return False

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.omega, self.omega0, self.kappa))

    def __repr__(self):
        return "ModelParams(omega=%r, omega0=%r, kappa=%r)" % (
            self.omega, self.omega0, self.kappa)


class DressedLevel(object):
    """
    One dressed eigenpair ``phi(n, s)``: photon index ``n``, branch ``s``,
    energy ``Omega(n, s)`` and mixing angle ``theta_n`` (radians).

    ``theta`` lies in ``[0, pi / 2)`` except for an uncoupled red-detuned
    model, where it is exactly ``pi / 2``; see :func:`theta_n`.
    """

    is_singlet = False

    def __init__(self, n, s, energy, theta):
        self.n = n
        self.s = s
        self.energy = energy
        self.theta = theta

    @property
    def label(self):
        return 'phi(%d,%d)' % (self.n, self.s)

    def __eq__(self, other):
        try:
            return (self.n, self.s, self.energy, self.theta) == \
                (other.n, other.s, other.energy, other.theta)
        except AttributeError:
            return False

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.n, self.s, self.energy, self.theta))

    def __repr__(self):
        return "<DressedLevel %s energy=%r theta=%r>" % (
            self.label, self.energy, self.theta)


class SingletLevel(object):
    """
    The uncoupled state ``|0, g>``, which the interaction leaves alone.
    """

    is_singlet = True
    n = 0
    s = None
    theta = 0.0
    label = '|0,g>'

    def __init__(self, energy):
        self.energy = energy

    def __eq__(self, other):
        return getattr(other, 'is_singlet', False) and self.energy == other.energy

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(('singlet', self.energy))

    def __repr__(self):
        return "<SingletLevel energy=%r>" % (self.energy,)


class GroundLevel(object):
    """
    Result of :func:`ground_level`. ``levels`` holds every level whose
    energy ties with the minimum; ``level`` is the first of them.
    """

    def __init__(self, levels):
        self.levels = tuple(levels)

    @property
    def level(self):
        return self.levels[0]

    @property
    def energy(self):
        return self.levels[0].energy

    @property
    def degenerate(self):
        return len(self.levels) > 1

    def __repr__(self):
        return "<GroundLevel %s energy=%r>" % (
            ', '.join(lvl.label for lvl in self.levels), self.energy)


def _result(value):
    if np.ndim(value) == 0:
        return float(value)
    return value


def _check_n(n):
    n = np.asarray(n)
    if np.any(n < 0):
        raise ArgumentError('photon index must be nonnegative')
    return n


def lambda_n(params, n):
    """
    Half the Rabi splitting, ``sqrt((detuning / 2)**2 + kappa**2 * (n + 1))``.
    """
    n = _check_n(n)
    half = params.detuning() / 2.0
    return _result(np.sqrt(half * half + params.kappa ** 2 * (n + 1.0)))


def theta_n(params, n):
    """
    The mixing angle ``theta_n`` defined by
    ``tan(theta_n) = kappa * sqrt(n + 1) / (detuning / 2 + lambda_n)``.

    ``theta_n`` is ``pi / 4`` at resonance for any ``kappa > 0``. The range is
    ``[0, pi / 2)`` with one exception: without coupling the angle is ``0``
    for a detuning ``>= 0`` but ``pi / 2`` for a negative detuning. The
    latter is the limit ``kappa -> 0`` at fixed red detuning, so ``theta_n``
    stays continuous in ``kappa``. For a negative detuning the quotient is
    evaluated in its reciprocal form, which avoids the cancellation in
    ``detuning / 2 + lambda_n``.
    """
    n = _check_n(n)
    half = params.detuning() / 2.0
    coupling = params.kappa * np.sqrt(n + 1.0)
    lam = np.sqrt(half * half + coupling * coupling)
    if half >= 0:
        theta = np.arctan2(coupling, half + lam)
    else:
        theta = np.arctan2(lam - half, coupling)
    return _result(theta)


def omega_ns(params, n, s):
    """
    The dressed energy ``Omega(n, s) = omega * (n + 1/2) + (3 - 2s) * lambda_n``.
    """
    if s not in (1, 2):
        raise ArgumentError('branch must be 1 or 2, got {!r}'.format(s))
    n = _check_n(n)
    return _result(params.omega * (n + 0.5) + (3 - 2 * s) * np.asarray(lambda_n(params, n)))


def singlet_energy(params):
    """ Energy of ``|0, g>``, i.e. ``-omega0 / 2``. """
    return -params.omega0 / 2.0


def level_table(params, n_max):
    """
    Every dressed level with ``n <= n_max``, ordered by ``(n, s)``.
    """
    if n_max < 0:
        raise ArgumentError('n_max must be nonnegative')
    ns = np.arange(n_max + 1)
    thetas = np.atleast_1d(theta_n(params, ns))
    e1 = np.atleast_1d(omega_ns(params, ns, 1))
    e2 = np.atleast_1d(omega_ns(params, ns, 2))
    levels = []
    for n in ns:
        levels.append(DressedLevel(int(n), 1, float(e1[n]), float(thetas[n])))
        levels.append(DressedLevel(int(n), 2, float(e2[n]), float(thetas[n])))
    return levels


def negative_branch_set(params, n_max):
    """
    The photon indices ``n <= n_max`` with ``Omega(n, 2) < 0``, sorted.

    The inequality is strict: a level at exactly zero energy is not
    negative.
    """
    if n_max < 0:
        raise ArgumentError('n_max must be nonnegative')
    ns = np.arange(n_max + 1)
    energies = np.atleast_1d(omega_ns(params, ns, 2))
    return [int(n) for n in ns[energies < 0]]


def ground_level(params, n_max):
    """
    The lowest-energy state among ``|0, g>`` and ``phi(n, s)`` for
    ``n <= n_max``.

    ``Omega(n, 2)`` is convex in ``n``, so the search is complete once the
    lower branch is rising at ``n_max`` and lies above the current minimum.
    :class:`jcentropy.exc.TruncationError` is raised otherwise.

    Ties within ``1e-12`` (relative) are all reported.
    """
    levels = [SingletLevel(singlet_energy(params))] + level_table(params, n_max)
    energies = np.array([lvl.energy for lvl in levels])
    e_min = energies.min()

    last = omega_ns(params, n_max, 2)
    slope = omega_ns(params, n_max + 1, 2) - last
    if not (slope > 0 and last > e_min):
        raise TruncationError(
            'truncation too small: n_max={} does not bracket the ground level '
            '(Omega(n_max,2)={!r}, minimum so far {!r})'.format(n_max, last, e_min))

    tie_tol = ENERGY_TIE_TOL * max(1.0, abs(e_min))
    ground = [lvl for lvl, e in zip(levels, energies) if e - e_min <= tie_tol]
    log.debug('ground level of %r: %r', params, ground)
    return GroundLevel(ground)
