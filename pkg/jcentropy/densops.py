""" This module defines the probability-vector and density-operator algebra
used by the ensembles: Shannon and von Neumann entropies, the closed-form
spectrum of the ``2x2`` dressed blocks, and a dense product-basis oracle used
to validate the closed forms.

Every joint state handled here is block diagonal in the dressed basis: an
optional weight on ``|0, g>`` plus one ``2x2`` Hermitian block per photon
index ``n``, acting on ``span{phi(n, 1), phi(n, 2)}``. Block entries are
stored in the dressed basis::

    | a   c |        a = <phi(n,1)| rho |phi(n,1)>
    | c*  b |        b = <phi(n,2)| rho |phi(n,2)>
                     c = <phi(n,1)| rho |phi(n,2)>

The dense oracle orders the product basis as ``|n> (x) |g>``,
``|n> (x) |e>`` for ``n = 0 .. n_max``, i.e. index ``2n`` for ``g`` and
``2n + 1`` for ``e``.

All entropies are in nats.

Reference
---------
"""
import numpy as np
from scipy import linalg
from scipy.special import entr

from .exc import InvalidDistributionError, NumericError, TruncationError
from .spectrum import theta_n


PSD_TOL = 1e-12
NORM_TOL = 1e-10
COHERENCE_TOL = 1e-12


class ProbDist(object):
    """
    A truncated probability vector over ``0 .. n_max``.

    ``tail_bound`` is an upper bound on the probability mass left out by
    the truncation. Weights below ``-PSD_TOL`` are rejected; smaller
    negative noise is clamped to zero.

    Usage examples::

        ProbDist([0.5, 0.5])
        ProbDist(weights, tail_bound=1e-15)
    """

    def __init__(self, weights, tail_bound=0.0):
        weights = np.array(weights, dtype=float, ndmin=1)
        if weights.ndim != 1 or weights.size == 0:
            raise InvalidDistributionError('weights must be a nonempty vector')
        if not np.all(np.isfinite(weights)):
            raise InvalidDistributionError('weights must be finite')
        if weights.min() < -PSD_TOL:
            raise InvalidDistributionError(
                'negative weight {!r} in distribution'.format(weights.min()))
        if tail_bound < 0:
            raise InvalidDistributionError('tail_bound must be nonnegative')
        total = weights.sum()
        if not (1.0 - tail_bound - NORM_TOL <= total <= 1.0 + NORM_TOL):
            raise InvalidDistributionError(
                'weights sum to {!r}, outside [1 - {!r}, 1]'.format(total, tail_bound))
        self.weights = np.clip(weights, 0.0, None)
        self.tail_bound = float(tail_bound)

    @property
    def n_max(self):
        return self.weights.size - 1

    def __len__(self):
        return self.weights.size

    def __getitem__(self, n):
        return self.weights[n]

    def mean(self):
        """ The mean index ``sum(n * w_n)``. """
        return float(np.dot(np.arange(self.weights.size), self.weights))

    def __repr__(self):
        return "<ProbDist n_max=%d tail_bound=%r>" % (self.n_max, self.tail_bound)


class HermBlock2(object):
    """
    One ``2x2`` Hermitian block in the dressed basis: real diagonal entries
    ``a`` (branch 1) and ``b`` (branch 2), complex coherence ``c``.
    """

    def __init__(self, a, b, c=0.0):
        self.a = float(a)
        self.b = float(b)
        self.c = complex(c)
        if self.a < -PSD_TOL or self.b < -PSD_TOL or \
                self.a * self.b - abs(self.c) ** 2 < -PSD_TOL:
            raise InvalidDistributionError(
                'block ({!r}, {!r}, {!r}) is not positive semidefinite'.format(
                    self.a, self.b, self.c))

    def trace(self):
        return self.a + self.b

    def __repr__(self):
        return "HermBlock2(a=%r, b=%r, c=%r)" % (self.a, self.b, self.c)


class QubitMarginal(object):
    """
    The reduced state of the two-level system, diagonal in ``{g, e}``.
    """

    def __init__(self, p_g, p_e):
        if p_g < -PSD_TOL or p_e < -PSD_TOL or abs(p_g + p_e - 1.0) > NORM_TOL:
            raise InvalidDistributionError(
                'invalid qubit occupations ({!r}, {!r})'.format(p_g, p_e))
        self.p_g = min(max(float(p_g), 0.0), 1.0)
        self.p_e = min(max(float(p_e), 0.0), 1.0)

    @classmethod
    def from_ground(cls, p_g):
        p_g = min(max(float(p_g), 0.0), 1.0)
        return cls(p_g, 1.0 - p_g)

    def entropy(self):
        return float(entr(self.p_g) + entr(self.p_e))

    def __repr__(self):
        return "QubitMarginal(p_g=%r, p_e=%r)" % (self.p_g, self.p_e)


class BlockDensity(object):
    """
    A joint density operator block diagonal in the dressed basis.

    Constructor arguments:

    ``a``, ``b``, ``c``

        Arrays indexed by ``n`` holding the entries of every block (see the
        module documentation). ``c`` may be omitted for diagonal blocks.

    ``params``

        The :class:`jcentropy.spectrum.ModelParams` defining the dressed
        basis, needed for product-basis transforms.

    ``singlet_weight``

        Weight of ``|0, g>``, or ``None`` when the state has no such
        component.

    ``tol``

        Normalization tolerance. Default is ``NORM_TOL``.
    """

    def __init__(self, a, b, params, c=None, singlet_weight=None, tol=NORM_TOL):
        self.a = np.array(a, dtype=float, ndmin=1)
        self.b = np.array(b, dtype=float, ndmin=1)
        if c is None:
            c = np.zeros(self.a.shape)
        self.c = np.array(c, dtype=complex, ndmin=1)
        if not (self.a.shape == self.b.shape == self.c.shape) or self.a.ndim != 1:
            raise InvalidDistributionError('block arrays must be 1-d of equal length')
        self.params = params
        self.singlet_weight = None if singlet_weight is None else float(singlet_weight)

        det = self.a * self.b - np.abs(self.c) ** 2
        if self.a.min() < -PSD_TOL or self.b.min() < -PSD_TOL or det.min() < -PSD_TOL:
            raise InvalidDistributionError('block density has a non-PSD block')
        if self.singlet_weight is not None and self.singlet_weight < -PSD_TOL:
            raise InvalidDistributionError('negative singlet weight')
        total = self.trace()
        if not (1.0 - tol <= total <= 1.0 + NORM_TOL):
            raise InvalidDistributionError(
                'block density has trace {!r}, outside [1 - {!r}, 1]'.format(total, tol))

    @classmethod
    def from_blocks(cls, blocks, params, singlet_weight=None, tol=NORM_TOL):
        """ Build from a sequence of :class:`HermBlock2`. """
        blocks = list(blocks)
        return cls([blk.a for blk in blocks], [blk.b for blk in blocks], params,
                   c=[blk.c for blk in blocks], singlet_weight=singlet_weight, tol=tol)

    @property
    def n_blocks(self):
        return self.a.size

    @property
    def blocks(self):
        return [HermBlock2(a, b, c) for a, b, c in zip(self.a, self.b, self.c)]

    def trace(self):
        total = float(self.a.sum() + self.b.sum())
        if self.singlet_weight is not None:
            total += self.singlet_weight
        return total

    def eigenvalues(self):
        """
        Every eigenvalue of the operator: the singlet weight (if any) and the
        pair of each block, flattened.
        """
        lam_p, lam_m = _block_eigvals(self.a, self.b, self.c)
        values = np.concatenate([lam_p, lam_m])
        if self.singlet_weight is not None:
            values = np.concatenate([[self.singlet_weight], values])
        return values

    def __repr__(self):
        return "<BlockDensity n_blocks=%d singlet=%r>" % (self.n_blocks, self.singlet_weight)


def shannon_entropy(dist):
    """
    ``-sum(w ln w)`` with ``0 ln 0 = 0``.
    """
    if not isinstance(dist, ProbDist):
        dist = ProbDist(dist)
    return float(entr(dist.weights).sum())


def _block_eigvals(a, b, c):
    # closed form, clamped to [0, a + b] so that the pair sums to the trace
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    half_trace = 0.5 * (a + b)
    radius = np.hypot(0.5 * (a - b), np.abs(c))
    trace = np.clip(a + b, 0.0, None)
    lam_p = np.clip(half_trace + radius, 0.0, trace)
    lam_m = trace - lam_p
    return lam_p, lam_m


def block_eigvals(block):
    """
    The eigenvalues ``(lambda_plus, lambda_minus)`` of a
    :class:`HermBlock2`::

        (a + b) / 2 +- sqrt(((a - b) / 2)**2 + |c|**2)

    clamped to ``[0, a + b]``.
    """
    lam_p, lam_m = _block_eigvals(block.a, block.b, block.c)
    return float(lam_p), float(lam_m)


def von_neumann_entropy(rho):
    """
    ``-Tr(rho ln rho)`` of a :class:`BlockDensity`, from the closed-form
    block spectra.
    """
    return float(entr(rho.eigenvalues()).sum())


def dense_embed(rho, n_max):
    """
    The dense ``2 (n_max + 1)`` square matrix of ``rho`` in the product
    basis. Block ``n`` lives on ``{|n+1, g>, |n, e>}``, so ``n_max`` must be
    at least the number of blocks.

    The dressed-to-product rotation of block ``n`` is::

        | cos(theta_n)  -sin(theta_n) |
        | sin(theta_n)   cos(theta_n) |
    """
    if n_max < rho.n_blocks:
        raise TruncationError(
            'truncation too small: n_max={} cannot hold {} blocks'.format(n_max, rho.n_blocks))
    dim = 2 * (n_max + 1)
    dense = np.zeros((dim, dim), dtype=complex)
    if rho.singlet_weight is not None:
        dense[0, 0] = rho.singlet_weight

    ns = np.arange(rho.n_blocks)
    thetas = np.atleast_1d(theta_n(rho.params, ns))
    cos, sin = np.cos(thetas), np.sin(thetas)
    rot = np.empty((rho.n_blocks, 2, 2))
    rot[:, 0, 0], rot[:, 0, 1] = cos, -sin
    rot[:, 1, 0], rot[:, 1, 1] = sin, cos
    dressed = np.empty((rho.n_blocks, 2, 2), dtype=complex)
    dressed[:, 0, 0], dressed[:, 0, 1] = rho.a, rho.c
    dressed[:, 1, 0], dressed[:, 1, 1] = np.conj(rho.c), rho.b
    product = np.einsum('nij,njk,nlk->nil', rot, dressed, rot)

    idx_g = 2 * (ns + 1)
    idx_e = 2 * ns + 1
    dense[idx_g, idx_g] += product[:, 0, 0].real
    dense[idx_g, idx_e] += product[:, 0, 1]
    dense[idx_e, idx_g] += product[:, 1, 0]
    dense[idx_e, idx_e] += product[:, 1, 1].real
    return dense


def dense_entropy(dense):
    """
    Entropy of a dense density matrix through a full Hermitian
    eigendecomposition.
    """
    values = linalg.eigvalsh(dense)
    return float(entr(np.clip(values, 0.0, None)).sum())


def _split_indices(dense):
    dim = dense.shape[0]
    if dense.ndim != 2 or dense.shape[1] != dim or dim % 2:
        raise NumericError('dense matrix must be square with even dimension')
    return dense.reshape(dim // 2, 2, dim // 2, 2)


def partial_trace_radiation(dense):
    """
    Trace out the field; returns the :class:`QubitMarginal` of the
    two-level system.
    """
    rho_a = np.einsum('nanb->ab', _split_indices(dense))
    if abs(rho_a[0, 1]) > COHERENCE_TOL:
        raise NumericError(
            'atomic marginal has coherence {!r}'.format(abs(rho_a[0, 1])))
    return QubitMarginal(rho_a[0, 0].real, rho_a[1, 1].real)


def partial_trace_atom(dense):
    """
    Trace out the two-level system; returns the photon-number
    :class:`ProbDist` of the field. Coherences between photon numbers are
    checked to vanish rather than assumed to.
    """
    rho_r = np.einsum('nama->nm', _split_indices(dense))
    off_diagonal = rho_r - np.diag(np.diag(rho_r))
    if off_diagonal.size and np.abs(off_diagonal).max() > COHERENCE_TOL:
        raise NumericError(
            'radiation marginal has photon-number coherence {!r}'.format(
                np.abs(off_diagonal).max()))
    weights = np.diag(rho_r).real
    return ProbDist(weights, tail_bound=max(0.0, 1.0 - weights.sum()))
