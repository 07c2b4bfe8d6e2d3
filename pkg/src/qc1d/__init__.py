"""qc1d: quasicrystal measure potentials on the line.

Finitely-represented atom+step measures with exact positions, decidable
local-complexity properties on windows, symbolic words and their
suspensions, and transfer-matrix spectral probes (Floquet bands, Lyapunov
growth, eigenvalue counts) for the associated Schrödinger operators.
"""

__version__ = "0.1.0"

from .exact import (
    AmbiguousOrderError,
    Basis,
    BasisMismatchError,
    ExactLength,
    as_length,
    golden_basis,
    sort_lengths,
    unit_basis,
)
from .measures import (
    ColoredDeloneSet,
    EMPTY_CONTENT,
    MeasureWindow,
    OccurrenceInterval,
    OccurrenceSet,
    Piece,
    PieceContent,
    PointSetReport,
    analyze_point_set,
    check_translation_bound,
    concat,
    convolve,
    occurrences,
    restrict,
)
from .flc import (
    AccumulatingOccurrencesError,
    Decomposition,
    FepReport,
    FlpReport,
    NoDecompositionError,
    NotRelativelyDenseError,
    PieceSet,
    SfdpCounterexample,
    WindowTooShortError,
    build_delone_decomposition,
    check_delone_measure_flc,
    check_fep,
    check_flp,
    check_sfdp,
    check_udp,
    decompose,
    detect_eventual_period,
    recode_by_occurrences,
)
from .surds import QuadSurd, golden, parse_number
from .words import (
    AmbiguousSymbolError,
    GordonReport,
    RationalRotationWarning,
    Word,
    bernoulli_word,
    circle_map_word,
    count_occurrences,
    factor_complexity,
    gordon_scan,
    load_word,
    save_word,
    substitution_word,
)
from .cf import (
    CFExpansion,
    CoefficientBoundReport,
    PrecisionExhaustedError,
    coefficient_bound_report,
    continued_fraction,
)
from .suspension import (
    AmbiguousProfilesWarning,
    SuspensionParams,
    cell_boundaries,
    suspend,
    suspend_with_profiles,
)
from .transfer import (
    AtomFactor,
    GridTransfer,
    ScaledMat2,
    SegmentFactor,
    compile_factors,
    factor_matrix,
    factor_span,
    matrix_power,
    propagate,
    propagate_grid,
    transfer_matrix,
)
from .bands import (
    Band,
    BandReport,
    SpectralScan,
    floquet_bands,
    floquet_discriminant,
    kronig_penney_discriminant,
    spectral_scan,
)
from .lyapunov import (
    LyapunovSample,
    lyapunov_periodic,
    lyapunov_samples,
    lyapunov_window,
)
from .eigencount import dirichlet_eigencount
from .tracemap import (
    TraceSequence,
    fibonacci_kp_trace_sequence,
    fibonacci_trace_sequence,
)
from .models import (
    comb_cell,
    comb_period_piece,
    fibonacci_comb_params,
    fibonacci_kp_params,
    fibonacci_kp_period_piece,
    fibonacci_kp_window,
    fibonacci_word,
    lattice_comb,
    mixed_silent_word,
    silent_block_word,
    silent_two_cell_params,
)
from . import serialize
