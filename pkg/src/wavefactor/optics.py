"""Four classical-interference setups that realize the truncated-sum scan.

Each simulator superposes M equal-amplitude complex oscillations whose
phases grow as m^k times a physical ratio, and reports the detected
intensity.  The setups differ only in which physical knob encodes the
number under test and which encodes the trial factor:

    multi-arm interferometer   number = b*L      trial = wavelength
    pulse train                number = nu       trial = 1/delay
    harmonic beats             number = nu0      trial = 1/detection-time
    polarization rotators      number = b*L      trial = 1/base-field

Detector readings are normalized so that a perfectly constructive
superposition gives 1, matching the unit magnitude of the canonical sum.

Phase bookkeeping: the per-term cycle counts (phase / 2*pi) are formed in
exact rational arithmetic from the binary values of the float parameters
and reduced modulo 1 before any trigonometry.  A cycle count like
m^k * 999999 / l is far too large for a double to keep its fractional
part, and it is only the fractional part the detector can see; reducing
exactly keeps every reading within ~1e-15 of the canonical sum whenever
the underlying ratio is an exact rational.  Inputs and outputs remain
ordinary floats.
"""

from __future__ import annotations

import cmath
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .sums import FOURIER, GAUSS, KUMMER, TWO_PI, SumKind, TermSelection, power_kind

_NAMED_BY_POWER = {1: FOURIER, 2: GAUSS, 3: KUMMER}


def _kind_for_power(k: int) -> SumKind:
    return _NAMED_BY_POWER.get(k, power_kind(k))


def _rat(x: float | int) -> Fraction:
    """Exact rational value of a finite float (floats are dyadic rationals)."""
    if not math.isfinite(x):
        raise ValueError(f"parameter must be finite, got {x!r}")
    return Fraction(x)


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


def uniform_jitter_weights(count: int, amplitude: float, seed: int = 0) -> list[float]:
    """Per-term amplitude weights 1 + U(-amplitude, amplitude), for robustness runs."""
    if not 0.0 <= amplitude < 1.0:
        raise ValueError(f"jitter amplitude must be in [0, 1), got {amplitude}")
    rng = random.Random(seed)
    return [1.0 + rng.uniform(-amplitude, amplitude) for _ in range(count)]


def _superpose(
    cycles: Sequence[Fraction],
    sign: int = 1,
    weights: Sequence[float] | None = None,
) -> complex:
    """Sum of unit phasors exp(sign * 2*pi*i * c) with exact mod-1 reduction."""
    if weights is not None and len(weights) != len(cycles):
        raise ValueError("one weight per term required")
    total = 0.0 + 0.0j
    for i, c in enumerate(cycles):
        frac = float(c % 1)
        w = 1.0 if weights is None else weights[i]
        total += w * cmath.exp(complex(0.0, sign * TWO_PI * frac))
    return total


@dataclass(frozen=True)
class InterferometerConfig:
    """Multi-arm interferometer: arm m has refractive index a + b*m^k."""

    arm_count: int
    arm_length: float          # meters
    wavelength: float          # meters
    index_offset: float = 1.0  # a, dimensionless
    index_scale: float = 0.0   # b, dimensionless
    exponent: int = 2
    base_amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.arm_count < 1:
            raise ValueError(f"arm_count must be >= 1, got {self.arm_count}")
        _require_positive("arm_length", self.arm_length)
        _require_positive("wavelength", self.wavelength)
        _require_positive("base_amplitude", self.base_amplitude)
        if self.exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exponent}")
        if self.index_offset < 1.0:
            raise ValueError(f"index_offset must be >= 1, got {self.index_offset}")
        if self.index_scale < 0.0:
            raise ValueError(f"index_scale must be >= 0, got {self.index_scale}")


@dataclass(frozen=True)
class PulseTrainConfig:
    """Train of pulses where pulse m is delayed by m^k times the unit delay."""

    pulse_count: int
    unit_delay: float         # seconds
    optical_frequency: float  # hertz
    exponent: int = 1
    base_amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.pulse_count < 1:
            raise ValueError(f"pulse_count must be >= 1, got {self.pulse_count}")
        _require_positive("unit_delay", self.unit_delay)
        _require_positive("optical_frequency", self.optical_frequency)
        _require_positive("base_amplitude", self.base_amplitude)
        if self.exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exponent}")


@dataclass(frozen=True)
class BeatConfig:
    """Superposed harmonics at m^k times a base frequency.

    `mode_count` counts the oscillators actually present.  With ODD_ONLY
    the modes sit at the first `mode_count` odd multiples (1, 3, 5, ...),
    e.g. the harmonic ladder nu0, 3*nu0, 5*nu0, 7*nu0 for mode_count 4.
    """

    mode_count: int
    base_frequency: float  # hertz
    exponent: int = 1
    selection: TermSelection = TermSelection.ALL
    base_amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.mode_count < 1:
            raise ValueError(f"mode_count must be >= 1, got {self.mode_count}")
        _require_positive("base_frequency", self.base_frequency)
        _require_positive("base_amplitude", self.base_amplitude)
        if self.exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exponent}")

    def mode_indices(self) -> list[int]:
        if self.selection is TermSelection.ODD_ONLY:
            return [2 * j - 1 for j in range(1, self.mode_count + 1)]
        return list(range(1, self.mode_count + 1))

    def canonical_truncation(self) -> int:
        return self.mode_indices()[-1]


@dataclass(frozen=True)
class FaradayConfig:
    """Split beam through rotator cells with field B0*m^k on path m.

    `verdet_scale` is the rotation constant divided by 2*pi, so the
    rotation on path m is 2*pi * verdet_scale * path_length * B0 * m^k.
    """

    path_count: int
    path_length: float    # meters
    verdet_scale: float   # (rad per tesla-meter) / (2*pi)
    base_field: float     # tesla
    exponent: int = 2
    base_amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.path_count < 1:
            raise ValueError(f"path_count must be >= 1, got {self.path_count}")
        _require_positive("path_length", self.path_length)
        _require_positive("base_field", self.base_field)
        _require_positive("base_amplitude", self.base_amplitude)
        if self.verdet_scale < 0.0:
            raise ValueError(f"verdet_scale must be >= 0, got {self.verdet_scale}")
        if self.exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exponent}")


OpticalConfig = InterferometerConfig | PulseTrainConfig | BeatConfig | FaradayConfig


@dataclass(frozen=True)
class DetectorReading:
    """What the detector sees: raw intensity plus the unit-normalized magnitude."""

    raw_intensity: float
    normalized_magnitude: float
    terms: int

    def __post_init__(self) -> None:
        if self.raw_intensity < 0.0:
            raise ValueError("intensity cannot be negative")
        if not -1e-9 <= self.normalized_magnitude <= 1.0 + 1e-9:
            raise ValueError(
                f"normalized magnitude {self.normalized_magnitude} outside [0, 1]"
            )


@dataclass(frozen=True)
class CanonicalMapping:
    """Reduction of a physical setup to the canonical sum parameters."""

    effective_number: float
    effective_trial: float
    ratio: float
    truncation: int
    kind: SumKind
    selection: TermSelection


def _mzi_cycles(config: InterferometerConfig, wavelength: Fraction) -> list[Fraction]:
    a = _rat(config.index_offset)
    b = _rat(config.index_scale)
    scale = _rat(config.arm_length) / wavelength
    k = config.exponent
    return [(a + b * m**k) * scale for m in range(1, config.arm_count + 1)]


def mzi_reading(
    config: InterferometerConfig,
    amplitude_weights: Sequence[float] | None = None,
) -> DetectorReading:
    """Field at the recombined output of the multi-arm interferometer.

    The common index offset contributes the same phase to every arm and
    drops out of the intensity.
    """
    s = _superpose(_mzi_cycles(config, _rat(config.wavelength)), 1, amplitude_weights)
    e0 = config.base_amplitude
    field = e0 * s
    return DetectorReading(
        raw_intensity=abs(field) ** 2,
        normalized_magnitude=abs(s) / config.arm_count,
        terms=config.arm_count,
    )


def _pulse_cycles(config: PulseTrainConfig, delay: Fraction) -> list[Fraction]:
    nu_tau = _rat(config.optical_frequency) * delay
    k = config.exponent
    return [m**k * nu_tau for m in range(1, config.pulse_count + 1)]


def pulse_train_reading(
    config: PulseTrainConfig,
    amplitude_weights: Sequence[float] | None = None,
) -> DetectorReading:
    """Intensity where all delayed pulses collide on the detector."""
    s = _superpose(_pulse_cycles(config, _rat(config.unit_delay)), 1, amplitude_weights)
    field = config.base_amplitude * s
    return DetectorReading(
        raw_intensity=abs(field) ** 2,
        normalized_magnitude=abs(s) / config.pulse_count,
        terms=config.pulse_count,
    )


def _beat_cycles(config: BeatConfig, t: Fraction) -> list[Fraction]:
    nu_t = _rat(config.base_frequency) * t
    k = config.exponent
    return [m**k * nu_t for m in config.mode_indices()]


def beat_reading(
    config: BeatConfig,
    detection_time: float,
    amplitude_weights: Sequence[float] | None = None,
) -> DetectorReading:
    """Superposed harmonics sampled at the detection time.

    The reading peaks at 1 exactly when detection_time times the base
    frequency is an integer (a beat).
    """
    _require_positive("detection_time", detection_time)
    s = _superpose(_beat_cycles(config, _rat(detection_time)), -1, amplitude_weights)
    field = config.base_amplitude * s
    return DetectorReading(
        raw_intensity=abs(field) ** 2,
        normalized_magnitude=abs(s) / config.mode_count,
        terms=config.mode_count,
    )


def _faraday_cycles(config: FaradayConfig, base_field: Fraction) -> list[Fraction]:
    blb = _rat(config.verdet_scale) * _rat(config.path_length) * base_field
    k = config.exponent
    return [m**k * blb for m in range(1, config.path_count + 1)]


def faraday_reading(
    config: FaradayConfig,
    amplitude_weights: Sequence[float] | None = None,
) -> DetectorReading:
    """Recombined rotated components; the 1/M split is part of the field."""
    s = _superpose(_faraday_cycles(config, _rat(config.base_field)), 1, amplitude_weights)
    e0 = config.base_amplitude
    field = e0 / config.path_count * s
    return DetectorReading(
        raw_intensity=abs(field) ** 2,
        normalized_magnitude=abs(s) / config.path_count,
        terms=config.path_count,
    )


def map_to_canonical(
    setup: OpticalConfig,
    detection_time: float | None = None,
) -> CanonicalMapping:
    """Effective (number, trial, ratio, M, kind, selection) of a setup.

    The ratio is the dimensionless multiplier that plays N/l in the
    canonical sum; it is computed through exact rationals of the float
    parameters and rounded once.
    """
    if isinstance(setup, InterferometerConfig):
        number = _rat(setup.index_scale) * _rat(setup.arm_length)
        trial = _rat(setup.wavelength)
        truncation, selection = setup.arm_count, TermSelection.ALL
    elif isinstance(setup, PulseTrainConfig):
        number = _rat(setup.optical_frequency)
        trial = 1 / _rat(setup.unit_delay)
        truncation, selection = setup.pulse_count, TermSelection.ALL
    elif isinstance(setup, BeatConfig):
        if detection_time is None:
            raise ValueError("beat setups need a detection_time to map")
        _require_positive("detection_time", detection_time)
        number = _rat(setup.base_frequency)
        trial = 1 / _rat(detection_time)
        truncation, selection = setup.canonical_truncation(), setup.selection
    elif isinstance(setup, FaradayConfig):
        number = _rat(setup.verdet_scale) * _rat(setup.path_length)
        trial = 1 / _rat(setup.base_field)
        truncation, selection = setup.path_count, TermSelection.ALL
    else:
        raise TypeError(f"not an optical setup: {setup!r}")
    if trial == 0 or number == 0:
        raise ValueError("setup maps to a zero number or trial parameter")
    return CanonicalMapping(
        effective_number=float(number),
        effective_trial=float(trial),
        ratio=float(number / trial),
        truncation=truncation,
        kind=_kind_for_power(setup.exponent),
        selection=selection,
    )


SWEEP_VARIABLES = {
    InterferometerConfig: "wavelength",
    PulseTrainConfig: "unit_delay",
    BeatConfig: "detection_time",
    FaradayConfig: "base_field",
}


def _sweep_cycles(setup: OpticalConfig, trial: int) -> list[Fraction]:
    if isinstance(setup, InterferometerConfig):
        # Trial l means a wavelength of l grid units, the grid unit being
        # the configured wavelength; the phase ratio becomes (bL/grid)/l.
        return _mzi_cycles(setup, _rat(setup.wavelength) * trial)
    if isinstance(setup, PulseTrainConfig):
        return _pulse_cycles(setup, Fraction(1, trial))
    if isinstance(setup, BeatConfig):
        return _beat_cycles(setup, Fraction(1, trial))
    return _faraday_cycles(setup, Fraction(1, trial))


def sweep(
    setup: OpticalConfig,
    variable: str,
    trial_integers: Sequence[int],
    parallel: int = 1,
) -> list[tuple[int, float]]:
    """Readings at the physical settings encoding each integer trial factor.

    For trial l the swept parameter is placed exactly at the point where
    the canonical ratio equals effective_number / l: wavelength = l grid
    units for the interferometer, delay/time/field = 1/l for the others.
    Points are independent; output order follows the input order.
    """
    expected = SWEEP_VARIABLES[type(setup)]
    if variable != expected:
        raise ValueError(
            f"{type(setup).__name__} sweeps {expected!r}, not {variable!r}"
        )
    if not trial_integers:
        raise ValueError("at least one trial factor required")
    trials = [int(l) for l in trial_integers]
    if any(l < 1 for l in trials):
        raise ValueError("trial factors must be >= 1")
    sign = -1 if isinstance(setup, BeatConfig) else 1
    if isinstance(setup, BeatConfig):
        count = setup.mode_count
    elif isinstance(setup, InterferometerConfig):
        count = setup.arm_count
    elif isinstance(setup, PulseTrainConfig):
        count = setup.pulse_count
    else:
        count = setup.path_count

    def point(l: int) -> tuple[int, float]:
        s = _superpose(_sweep_cycles(setup, l), sign)
        return (l, abs(s) / count)

    if parallel > 1 and len(trials) > 1:
        with ThreadPoolExecutor(max_workers=min(parallel, len(trials))) as pool:
            return list(pool.map(point, trials))
    return [point(l) for l in trials]
