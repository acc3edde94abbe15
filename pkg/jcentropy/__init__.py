from .spectrum import (  # NOQA
    ModelParams,
    DressedLevel,
    SingletLevel,
    GroundLevel,
    lambda_n,
    theta_n,
    omega_ns,
    singlet_energy,
    level_table,
    negative_branch_set,
    ground_level,
    )

from .densops import (  # NOQA
    ProbDist,
    HermBlock2,
    QubitMarginal,
    BlockDensity,
    shannon_entropy,
    block_eigvals,
    von_neumann_entropy,
    dense_embed,
    dense_entropy,
    partial_trace_radiation,
    partial_trace_atom,
    )

from .infomeasures import (  # NOQA
    EntropyReport,
    conditional_entropies,
    mutual_entropy,
    classify,
    is_maximally_classical,
    entropy_report,
    )

from .thermal import (  # NOQA
    ThermalConfig,
    BoltzmannWeights,
    resolve_truncation,
    partition_function,
    boltzmann_weights,
    thermal_report,
    low_temperature_limit,
    )

from .dynamics import (  # NOQA
    SourceModel,
    QuenchConfig,
    photon_dist,
    rabi_weight,
    joint_entropy_closed_form,
    small_time_ratio,
    dynamics_report,
    )

from .sweep import (  # NOQA
    SweepSpec,
    CrossoverRecord,
    run_thermal_sweep,
    run_quench_sweep,
    find_crossovers,
    spectrum_listing,
    write_table,
    read_table,
    )

from .exc import (  # NOQA
    ArgumentError,
    InvalidDistributionError,
    JCEntropyError,
    NumericError,
    TruncationError,
    )

from . import thermal  # NOQA
from . import dynamics  # NOQA


# Get version number
__version__ = "UNKNOWN VERSION"
try:
    from pkg_resources import get_distribution, DistributionNotFound
    try:
        __version__ = get_distribution('jcentropy').version
    except DistributionNotFound:  # pragma: no cover
        pass  # pragma: no cover
except ImportError:  # pragma: no cover
    pass  # pragma: no cover
