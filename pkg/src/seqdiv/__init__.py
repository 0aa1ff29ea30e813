"""Process monitoring over symbolic sequences.

Numeric streams are discretized into symbols, each equally-sized window of
symbols is summarized as a steady-state distribution of a damped Markov
chain, and windows are compared with the generalized Jensen-Shannon
divergence against a chi-square significance threshold.
"""

from seqdiv.discretize import (
    CutPointConfig,
    SaxConfig,
    cutpoint_discretize,
    normal_quantile,
    paa,
    sax_breakpoints,
    sax_discretize,
    znormalize,
)
from seqdiv.divergence import (
    ThresholdParams,
    WeightVector,
    chi_square_quantile,
    cosine_distance,
    entropy_k,
    gjs,
    gjs_threshold,
    kl,
    regularized_gamma_p,
)
from seqdiv.errors import (
    DegenerateInputError,
    InvalidInputError,
    InvalidParameterError,
    NumericFailureError,
    SeqDivError,
)
from seqdiv.evalgen import (
    GeneratedDataset,
    LabeledScoreSeries,
    RocResult,
    auc_table,
    gen_dc,
    gen_jm,
    roc_auc,
    score_dataset,
)
from seqdiv.markov import (
    GoogleMatrix,
    ProbDist,
    TransitionMatrix,
    count_transitions,
    frequency_vector,
    google_matrix,
    steady_state,
    steady_state_vector,
)
from seqdiv.monitor import (
    DeltaWindow,
    DivergenceReport,
    Monitor,
    MonitorConfig,
    change_boundaries,
    label_distances,
    run_monitor,
)
from seqdiv.seqdist import (
    jukes_cantor,
    lcs_length,
    levenshtein,
    nlevd,
    one_minus_nlcs,
    p_distance,
    pairwise_sum,
)
from seqdiv.symbolic import (
    Alphabet,
    Segmenter,
    SymbolSequence,
    map_point_to_symbol_index,
    segment_stream,
)

__version__ = "0.1.0"
