"""Trial-factor scans, ghost elimination, and full prime factorization.

A scan walks every candidate l in [2, floor(sqrt(N))], evaluates the
truncated-sum magnitude |A(l)| and classifies each row against a
threshold.  Candidates at or above the threshold are then verified by an
exact divisibility check: true divisors become factors (|A| = 1 exactly
guarantees they always clear any threshold < 1), while high-magnitude
non-divisors are marked as ghosts and never reported as factors.  The
classic ghost is |A| = 1/sqrt(2) at l = 4 for the quadratic phase law,
which no amount of extra terms suppresses; the default threshold 0.75
sits above that plateau.

`factorize` applies the scan recursively: peel off the smallest factor
found (necessarily prime), divide it out, and rescan the cofactor until a
scan comes back with no factor rows, which certifies the remaining part
prime.  `oracle_factorize` is an independent trial-division oracle used by
the test suite to pin the scan-based path down.

`min_discriminating_terms` measures how many terms a given phase law needs
before every non-divisor falls below the threshold while every divisor
stays at unity; some law/number combinations never separate (for example
the cubic law holds a plateau of (1 + 2*cos(2*pi/9))/3 ~ 0.844 at l = 9
whenever N = +-1 mod 9), which surfaces as NotSeparatedError.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .sums import GAUSS, SumKind, TermSelection, sum_magnitudes


class Verdict(Enum):
    FACTOR = "Factor"
    GHOST = "Ghost"
    NON_FACTOR = "NonFactor"


class Classification(Enum):
    ABOVE_THRESHOLD = "AboveThreshold"
    BELOW_THRESHOLD = "BelowThreshold"


def classify(magnitude: float, threshold: float) -> Classification:
    """Threshold cut with an inclusive boundary: magnitude >= threshold is above."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be strictly between 0 and 1, got {threshold}")
    if magnitude >= threshold:
        return Classification.ABOVE_THRESHOLD
    return Classification.BELOW_THRESHOLD


class ScanRow(NamedTuple):
    """Verdict for one trial factor.

    `complement` is N // trial for factor rows and None otherwise.
    """

    trial: int
    magnitude: float
    verdict: Verdict
    complement: int | None


@dataclass(frozen=True)
class ScanParams:
    """Scan configuration: truncation (None = automatic), phase law, cut.

    `trial_range` is an inclusive (lo, hi) pair; None means the default
    [2, floor(sqrt(N))] resolved per scanned number.
    """

    truncation: int | None = None
    kind: SumKind = GAUSS
    selection: TermSelection = TermSelection.ALL
    threshold: float = 0.75
    trial_range: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(
                f"threshold must be strictly between 0 and 1, got {self.threshold}"
            )
        if self.truncation is not None and self.truncation < 1:
            raise ValueError(f"truncation must be >= 1, got {self.truncation}")
        if self.trial_range is not None and self.trial_range[0] < 2:
            raise ValueError(
                f"trial range must start at 2 or above, got {self.trial_range[0]}"
            )


@dataclass
class FactorizationResult:
    """Full decomposition with the per-level scan evidence."""

    number: int
    prime_factors: list[int]
    scan_trace: list[list[ScanRow]] = field(repr=False)
    terms_used_per_level: list[int]

    def as_multiset(self) -> Counter:
        return Counter(self.prime_factors)


class NotSeparatedError(Exception):
    """Raised when no truncation up to the cap separates factors from ghosts."""

    def __init__(self, number: int, kind: SumKind, threshold: float, cap: int, trial: int):
        self.number = number
        self.kind = kind
        self.threshold = threshold
        self.cap = cap
        self.trial = trial
        super().__init__(
            f"no truncation <= {cap} separates N={number} at threshold "
            f"{threshold} with kind {kind}: trial {trial} stays above the cut"
        )


def choose_truncation(number: int, kind: SumKind = GAUSS) -> int:
    """Automatic truncation: max(4, ceil(N^(1/4))), identical for all kinds.

    The quartic-root scale keeps scans cheap while the known quadratic-law
    ghost plateaus stay below the default threshold at desk scale.
    """
    if number < 2:
        raise ValueError(f"number must be >= 2, got {number}")
    root = math.isqrt(math.isqrt(number))
    if root**4 < number:
        root += 1
    return max(4, root)


def _resolve_range(number: int, params: ScanParams) -> tuple[int, int]:
    if params.trial_range is None:
        return 2, math.isqrt(number)
    lo, hi = params.trial_range
    if hi > number - 1:
        raise ValueError(
            f"trial range upper bound {hi} exceeds N-1 = {number - 1}"
        )
    return lo, hi


def scan(number: int, params: ScanParams, parallel: int = 1) -> list[ScanRow]:
    """Scan all trial factors in range, one row per candidate, ascending.

    Magnitudes come from the core sum evaluator; rows at or above the
    threshold are split into Factor/Ghost by exact divisibility, so a
    non-divisor can never be reported as a factor.  An empty range (N < 4
    with the default bounds) yields an empty list.
    """
    if number < 2:
        raise ValueError(f"number must be >= 2, got {number}")
    lo, hi = _resolve_range(number, params)
    if lo > hi:
        return []
    truncation = params.truncation or choose_truncation(number, params.kind)
    ls = np.arange(lo, hi + 1, dtype=np.int64)
    mags = sum_magnitudes(
        number, ls, truncation, params.kind, params.selection, parallel=parallel
    )
    threshold = params.threshold
    rows = []
    for l, mag in zip(ls.tolist(), mags.tolist()):
        if mag >= threshold:
            if number % l == 0:
                rows.append(ScanRow(l, mag, Verdict.FACTOR, number // l))
            else:
                rows.append(ScanRow(l, mag, Verdict.GHOST, None))
        else:
            rows.append(ScanRow(l, mag, Verdict.NON_FACTOR, None))
    return rows


def factorize(number: int, params: ScanParams | None = None, parallel: int = 1) -> FactorizationResult:
    """Complete prime factorization by repeated interference scans.

    Each level scans the current part over [2, floor(sqrt(part))] and peels
    the smallest factor row.  The smallest factor of any integer is prime,
    so it goes straight into the result and only the cofactor is rescanned.
    A level with no factor rows certifies the part prime.  Any explicit
    trial_range in `params` is ignored here; every level uses its own full
    default range.
    """
    if number < 2:
        raise ValueError(f"number must be >= 2, got {number}")
    params = params or ScanParams()
    level_params = ScanParams(
        truncation=params.truncation,
        kind=params.kind,
        selection=params.selection,
        threshold=params.threshold,
    )
    primes: list[int] = []
    trace: list[list[ScanRow]] = []
    terms_per_level: list[int] = []
    part = number
    while True:
        rows = scan(part, level_params, parallel=parallel)
        trace.append(rows)
        terms_per_level.append(
            level_params.truncation or choose_truncation(part, level_params.kind)
        )
        smallest = next((r for r in rows if r.verdict is Verdict.FACTOR), None)
        if smallest is None:
            primes.append(part)
            break
        primes.append(smallest.trial)
        part = smallest.complement
    primes.sort()
    result = FactorizationResult(
        number=number,
        prime_factors=primes,
        scan_trace=trace,
        terms_used_per_level=terms_per_level,
    )
    assert math.prod(result.prime_factors) == number
    return result


ORACLE_LIMIT = 10**12


def oracle_factorize(number: int) -> list[int]:
    """Ground-truth factorization by trial division (desk scale, N <= 1e12)."""
    if number < 2:
        raise ValueError(f"number must be >= 2, got {number}")
    if number > ORACLE_LIMIT:
        raise ValueError(f"oracle limited to N <= {ORACLE_LIMIT}, got {number}")
    primes = []
    part = number
    while part % 2 == 0:
        primes.append(2)
        part //= 2
    d = 3
    while d * d <= part:
        while part % d == 0:
            primes.append(d)
            part //= d
        d += 2
    if part > 1:
        primes.append(part)
    return primes


def min_discriminating_terms(
    number: int,
    kind: SumKind = GAUSS,
    threshold: float = 0.75,
    cap: int = 10_000,
    selection: TermSelection = TermSelection.ALL,
) -> int:
    """Smallest truncation that pushes every non-divisor below the threshold.

    Divisors sit at magnitude 1 for any truncation, so separation only
    requires the non-divisors in [2, floor(sqrt(N))] to drop below the cut.
    Searches M = 1, 2, 3, ... incrementally; raises NotSeparatedError with
    the stubborn trial factor if the cap is reached (persistent ghost).
    """
    if number < 2:
        raise ValueError(f"number must be >= 2, got {number}")
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be strictly between 0 and 1, got {threshold}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if number >= 2**63:
        raise ValueError(f"number must fit in 63 bits, got {number}")
    nonfactors = np.array(
        [l for l in range(2, math.isqrt(number) + 1) if number % l != 0],
        dtype=np.int64,
    )
    if nonfactors.size == 0:
        return 1
    max_l = int(nonfactors.max())
    n_mods = np.int64(number) % nonfactors
    ls_list = nonfactors.tolist()
    sums = np.zeros(nonfactors.shape[0], dtype=np.complex128)
    count = 0
    for m in range(1, cap + 1):
        if selection is TermSelection.ODD_ONLY and m % 2 == 0:
            continue
        k_eff = kind.exponent_for(m)
        # m^k * (N mod l) must stay inside int64 for the fused reduction.
        if k_eff * m.bit_length() <= 62 and m**k_eff * max_l < 2**63:
            residues = (m**k_eff) * n_mods % nonfactors
        else:
            residues = (
                np.array([pow(m, k_eff, l) for l in ls_list], dtype=np.int64)
                * n_mods
                % nonfactors
            )
        frac = residues / nonfactors.astype(np.float64)
        ang = 2.0 * math.pi * frac
        sums += np.cos(ang) - 1j * np.sin(ang)
        count += 1
        if np.all(np.abs(sums) / count < threshold):
            return m
    worst = int(nonfactors[int(np.argmax(np.abs(sums)))])
    raise NotSeparatedError(number, kind, threshold, cap, worst)
