"""Integer factorization by interference of truncated exponential sums.

Library surface:

    sums        exact evaluation of the normalized sums A(l)
    factorizer  trial-factor scans, ghost elimination, factorization
    optics      four physical setups realizing the same scan
    report      deterministic CSV / JSON / SVG emission
    cli         the `wavefactor` command
"""

from .factorizer import (
    Classification,
    FactorizationResult,
    NotSeparatedError,
    ScanParams,
    ScanRow,
    Verdict,
    choose_truncation,
    classify,
    factorize,
    min_discriminating_terms,
    oracle_factorize,
    scan,
)
from .optics import (
    BeatConfig,
    CanonicalMapping,
    DetectorReading,
    FaradayConfig,
    InterferometerConfig,
    PulseTrainConfig,
    beat_reading,
    faraday_reading,
    map_to_canonical,
    mzi_reading,
    pulse_train_reading,
    sweep,
    uniform_jitter_weights,
)
from .report import emit_report
from .sums import (
    FOURIER,
    GAUSS,
    KUMMER,
    SELF_EXPONENTIAL,
    SumKind,
    SumSpec,
    SumValue,
    TermSelection,
    evaluate_sum,
    evaluate_sum_float,
    parse_kind,
    phase_fraction,
    power_kind,
    sum_magnitudes,
)

__version__ = "0.1.0"

__all__ = [
    "BeatConfig",
    "CanonicalMapping",
    "Classification",
    "DetectorReading",
    "FactorizationResult",
    "FaradayConfig",
    "FOURIER",
    "GAUSS",
    "InterferometerConfig",
    "KUMMER",
    "NotSeparatedError",
    "PulseTrainConfig",
    "ScanParams",
    "ScanRow",
    "SELF_EXPONENTIAL",
    "SumKind",
    "SumSpec",
    "SumValue",
    "TermSelection",
    "Verdict",
    "beat_reading",
    "choose_truncation",
    "classify",
    "emit_report",
    "evaluate_sum",
    "evaluate_sum_float",
    "factorize",
    "faraday_reading",
    "map_to_canonical",
    "min_discriminating_terms",
    "mzi_reading",
    "oracle_factorize",
    "parse_kind",
    "phase_fraction",
    "power_kind",
    "pulse_train_reading",
    "scan",
    "sum_magnitudes",
    "sweep",
    "uniform_jitter_weights",
]
