""" Exceptions used with jcentropy.
"""


class JCEntropyError(Exception):
    """ Generic error class. """


class ArgumentError(JCEntropyError):
    """ Raised when an invalid or conflicting function argument is
    supplied.
    """


class TruncationError(ArgumentError):
    """ Raised when a photon-number truncation cannot be resolved, either
    because the requested cutoff is too small for the data it must hold or
    because the tail tolerance is not reached before the hard cap.
    """


class InvalidDistributionError(ArgumentError):
    """ Raised when a probability vector or a density block is not a valid
    (nonnegative, normalized, positive semidefinite) object.
    """


class NumericError(JCEntropyError):
    """ Raised when an internal consistency check fails, e.g. an entropy
    bound that holds for every density matrix is violated.
    """
