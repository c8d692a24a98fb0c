"""Truncated exponential sums with exact integer phase reduction.

The central object is the normalized sum

    A(l) = (1/M') * sum_{selected m <= M} exp(-2*pi*i * m^k * N / l)

over term indices m = 1..M (optionally odd indices only), where N is the
number under test and l a trial factor.  When l divides N every phase is a
whole number of turns, the terms add up coherently and |A(l)| = 1 exactly.
For most non-divisors the phases spread around the unit circle and |A(l)|
is small, although a handful of stable plateaus exist (see the factorizer
module for how those "ghosts" are eliminated).

Phases are reduced with exact modular integer arithmetic before any float
is produced: the fractional part of m^k N / l is ((m^k mod l)(N mod l) mod
l) / l, computed with arbitrary-precision integers.  This keeps the
divisor-unity property exact for any N, M, k, including the
self-exponential law k = m where m^m overflows any fixed-width type
almost immediately.

`evaluate_sum` is the scalar reference implementation.  `sum_magnitudes`
is the batched kernel used by trial-factor scans: same integer reduction,
vectorized trig, processed in fixed-size tiles so results are bit-for-bit
independent of how the work is chunked across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# Largest integer exactly representable in a float64.
FLOAT_EXACT_MAX = 2**53

# int64-safe bound for the modular kernel: residues below l are multiplied
# pairwise, so l*l must stay under 2^63.
_INT64_SAFE_MODULUS = 3_037_000_499

# Trial-axis tile width for the batched kernel.  Work is always processed
# in these fixed slices, so splitting a scan across workers cannot change
# which elements share a vectorized trig call (keeps reports byte-identical
# at any parallelism).
_TILE = 4096

# Phasor lookup table: exp(-2*pi*i*k/l) for all 0 <= k < l <= _TABLE_MAX_L,
# grown lazily in a flat triangular layout.  Trial factors in scans are
# small and recur constantly, so the table replaces per-cell trig with a
# gather.  Entries are pure functions of (k, l); growth order cannot change
# any value.
_TABLE_MAX_L = 2048
_phasor_flat = np.empty(0, dtype=np.complex128)
_phasor_limit = 0  # largest l currently tabulated
_ls_range = np.arange(_TABLE_MAX_L + 1, dtype=np.int64)
_PHASOR_OFFSETS = _ls_range * (_ls_range - 1) // 2
del _ls_range


def _phasor_table(up_to: int) -> np.ndarray:
    """Flat table of exp(-2*pi*i*k/l) for l <= up_to, indexed by offset[l]+k."""
    global _phasor_flat, _phasor_limit
    if up_to > _phasor_limit:
        new = np.empty(int(_PHASOR_OFFSETS[up_to] + up_to), dtype=np.complex128)
        new[: _phasor_flat.shape[0]] = _phasor_flat
        for l in range(_phasor_limit + 1, up_to + 1):
            frac = np.arange(l, dtype=np.float64) / l
            ang = TWO_PI * frac
            start = int(_PHASOR_OFFSETS[l])
            new[start : start + l].real = np.cos(ang)
            new[start : start + l].imag = -np.sin(ang)
        _phasor_flat = new
        _phasor_limit = up_to
    return _phasor_flat


class TermSelection(Enum):
    """Which term indices participate in the sum."""

    ALL = "all"
    ODD_ONLY = "odd"

    def indices(self, truncation: int) -> range:
        if self is TermSelection.ODD_ONLY:
            return range(1, truncation + 1, 2)
        return range(1, truncation + 1)

    def count(self, truncation: int) -> int:
        return len(self.indices(truncation))


@dataclass(frozen=True)
class SumKind:
    """Phase law of the sum: the exponent applied to the term index.

    `power` is the fixed exponent k; `power=None` means the exponent is the
    term index itself (the self-exponential law).  The classical names are
    provided as module constants: FOURIER (k=1), GAUSS (k=2), KUMMER (k=3),
    SELF_EXPONENTIAL (k=m).  `power_kind(k)` builds an arbitrary fixed law
    and agrees exactly with the named constants for k = 1, 2, 3.
    """

    name: str
    power: int | None

    def __post_init__(self) -> None:
        if self.power is not None:
            if not isinstance(self.power, int) or isinstance(self.power, bool):
                raise ValueError(f"sum-kind power must be an integer, got {self.power!r}")
            if self.power < 1:
                raise ValueError(f"sum-kind power must be >= 1, got {self.power}")

    def exponent_for(self, m: int) -> int:
        return m if self.power is None else self.power

    def __str__(self) -> str:
        if self.name == "powerk":
            return f"powerk:{self.power}"
        return self.name


FOURIER = SumKind("fourier", 1)
GAUSS = SumKind("gauss", 2)
KUMMER = SumKind("kummer", 3)
SELF_EXPONENTIAL = SumKind("selfexp", None)

_NAMED_KINDS = {k.name: k for k in (FOURIER, GAUSS, KUMMER, SELF_EXPONENTIAL)}


def power_kind(k: int) -> SumKind:
    """Sum kind with fixed exponent k (k=1/2/3 match the named laws exactly)."""
    return SumKind("powerk", k)


def parse_kind(text: str) -> SumKind:
    """Parse a kind spelled as on the command line: gauss, powerk:5, selfexp..."""
    text = text.strip().lower()
    if text in _NAMED_KINDS:
        return _NAMED_KINDS[text]
    if text.startswith("powerk:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad power in sum kind {text!r}") from None
        return power_kind(k)
    raise ValueError(f"unknown sum kind {text!r}")


@dataclass(frozen=True)
class SumSpec:
    """One sum instance: the number under test, truncation, law, selection."""

    number: int
    truncation: int
    kind: SumKind = GAUSS
    selection: TermSelection = TermSelection.ALL

    def __post_init__(self) -> None:
        if not isinstance(self.number, int) or isinstance(self.number, bool):
            raise ValueError(f"number must be an integer, got {self.number!r}")
        if self.number < 2:
            raise ValueError(f"number must be >= 2, got {self.number}")
        if not isinstance(self.truncation, int) or isinstance(self.truncation, bool):
            raise ValueError(f"truncation must be an integer, got {self.truncation!r}")
        if self.truncation < 1:
            raise ValueError(f"truncation must be >= 1, got {self.truncation}")

    def term_indices(self) -> range:
        return self.selection.indices(self.truncation)

    def term_count(self) -> int:
        return self.selection.count(self.truncation)


@dataclass(frozen=True)
class SumValue:
    """Value of one evaluated sum: complex mean, its magnitude, term count."""

    value: complex
    magnitude: float
    terms_used: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ValueError(f"non-finite sum value {self.value!r}")
        if abs(self.magnitude - abs(self.value)) > 1e-12:
            raise ValueError("magnitude inconsistent with value")
        if self.magnitude > 1.0 + 1e-12:
            raise ValueError(f"normalized magnitude {self.magnitude} exceeds 1")
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")


def phase_fraction(m: int, k_eff: int, number: int, l: int) -> float:
    """Fractional part of m^k_eff * number / l, reduced exactly.

    Computed as ((m^k_eff mod l) * (number mod l) mod l) / l with integer
    modular exponentiation, so the result is an exact ratio of integers
    below l for inputs of any size.
    """
    if l < 1:
        raise ValueError(f"trial factor must be >= 1, got {l}")
    if m < 1:
        raise ValueError(f"term index must be >= 1, got {m}")
    if k_eff < 1:
        raise ValueError(f"exponent must be >= 1, got {k_eff}")
    if number < 1:
        raise ValueError(f"number must be >= 1, got {number}")
    return ((pow(m, k_eff, l) * (number % l)) % l) / l


def evaluate_sum(spec: SumSpec, l: int) -> SumValue:
    """Evaluate the truncated sum at trial factor l (exact phase path).

    Deterministic scalar reference: phases are reduced exactly in integer
    arithmetic, then each term contributes cos/-sin of the reduced angle.
    """
    if l < 1:
        raise ValueError(f"trial factor must be >= 1, got {l}")
    n_mod = spec.number % l
    re = 0.0
    im = 0.0
    count = 0
    for m in spec.term_indices():
        num = (pow(m, spec.kind.exponent_for(m), l) * n_mod) % l
        ang = TWO_PI * (num / l)
        re += math.cos(ang)
        im -= math.sin(ang)
        count += 1
    if count == 0:
        raise ValueError("no terms selected")
    value = complex(re / count, im / count)
    return SumValue(value=value, magnitude=abs(value), terms_used=count)


def evaluate_sum_float(spec: SumSpec, l: int) -> SumValue:
    """Floating-point cross-check path: phases as raw m^k * N / l.

    No modular reduction is performed, so this is only trustworthy while
    the unreduced phase m^k*N/l is small enough for a double to resolve its
    fractional part; it exists to cross-validate the exact path on
    desk-scale inputs.  Raises OverflowError once m^k*N leaves the exact
    integer range of a float64, which is the signal to use `evaluate_sum`.
    """
    if l < 1:
        raise ValueError(f"trial factor must be >= 1, got {l}")
    terms = list(spec.term_indices())
    if not terms:
        raise ValueError("no terms selected")
    worst = max(m ** spec.kind.exponent_for(m) for m in terms) * spec.number
    if worst > FLOAT_EXACT_MAX:
        raise OverflowError(
            f"m^k*N = {worst} exceeds the exact float64 integer range; "
            "use the exact evaluator"
        )
    re = 0.0
    im = 0.0
    for m in terms:
        ang = TWO_PI * ((m ** spec.kind.exponent_for(m)) * spec.number / l)
        re += math.cos(ang)
        im -= math.sin(ang)
    count = len(terms)
    value = complex(re / count, im / count)
    return SumValue(value=value, magnitude=abs(value), terms_used=count)


def _residue_rows(
    number: int,
    ls: np.ndarray,
    ms: Sequence[int],
    kind: SumKind,
) -> np.ndarray:
    """Exact residues (m^k mod l) * (N mod l) mod l as an int64 grid."""
    n_mod = np.int64(number) % ls
    max_l = int(ls.max())
    if kind.power is not None:
        k = kind.power
        mk = [m**k for m in ms]
        if mk[-1] * max_l < 2**63:
            # One fused modular reduction: m^k * (N mod l) stays in int64.
            return np.array(mk, dtype=np.int64)[:, None] * n_mod[None, :] % ls[None, :]
        if mk[-1] < 2**63:
            grid = np.array(mk, dtype=np.int64)[:, None] % ls[None, :]
        else:
            grid = _powmod(np.array(ms, dtype=np.int64)[:, None] % ls, k, ls)
    else:
        # Self-exponential: the exponent varies per row.
        grid = np.empty((len(ms), ls.shape[0]), dtype=np.int64)
        if len(ms) * ls.shape[0] <= 2048:
            # Tiny grids: scalar pow beats vectorized square-and-multiply.
            ls_list = ls.tolist()
            for i, m in enumerate(ms):
                grid[i, :] = [pow(m, m, l) for l in ls_list]
        else:
            for i, m in enumerate(ms):
                grid[i, :] = _powmod(np.int64(m) % ls, m, ls)
    return grid * n_mod[None, :] % ls[None, :]


def _powmod(base: np.ndarray, exponent: int, mod: np.ndarray) -> np.ndarray:
    """Square-and-multiply base^exponent mod `mod`, elementwise (int64-safe)."""
    result = np.ones_like(base)
    b = base.copy()
    e = exponent
    while True:
        if e & 1:
            result = result * b % mod
        e >>= 1
        if not e:
            return result
        b = b * b % mod


def _magnitudes_tile(number: int, ls: np.ndarray, ms: Sequence[int], kind: SumKind) -> np.ndarray:
    num = _residue_rows(number, ls, ms, kind)
    count = len(ms)
    max_l = int(ls.max())
    if max_l <= _TABLE_MAX_L:
        table = _phasor_table(max_l)
        phasors = table[_PHASOR_OFFSETS[ls][None, :] + num]
        s = phasors.sum(axis=0)
        return np.abs(s) / count
    # num/l in [0,1) first, then scale: same rounding as the scalar path.
    frac = num / ls[None, :].astype(np.float64)
    ang = TWO_PI * frac
    re = np.cos(ang).sum(axis=0)
    im = -np.sin(ang).sum(axis=0)
    return np.hypot(re / count, im / count)


def _magnitudes_python(number: int, ls: Iterable[int], truncation: int,
                       kind: SumKind, selection: TermSelection) -> np.ndarray:
    out = [
        evaluate_sum(SumSpec(number, truncation, kind, selection), int(l)).magnitude
        for l in ls
    ]
    return np.asarray(out, dtype=np.float64)


def sum_magnitudes(
    number: int,
    trials: Sequence[int] | np.ndarray,
    truncation: int,
    kind: SumKind = GAUSS,
    selection: TermSelection = TermSelection.ALL,
    parallel: int = 1,
) -> np.ndarray:
    """Magnitudes |A(l)| for many trial factors at once.

    Produces the same numbers as `evaluate_sum` per trial (same exact
    integer reduction; vectorized trig may differ in the last ulp).  The
    trial axis is processed in fixed tiles of 256, and parallel workers are
    assigned whole tiles, so output is identical for any `parallel`.
    """
    ls = np.asarray(trials, dtype=np.int64)
    if ls.ndim != 1:
        raise ValueError("trials must be one-dimensional")
    if ls.size == 0:
        return np.empty(0, dtype=np.float64)
    if int(ls.min()) < 1:
        raise ValueError("trial factors must be >= 1")
    spec = SumSpec(number, truncation, kind, selection)  # validates inputs
    if int(ls.max()) > _INT64_SAFE_MODULUS or number >= 2**63:
        # Outside the int64-safe window: fall back to the scalar path.
        return _magnitudes_python(number, ls.tolist(), truncation, kind, selection)
    ms = list(spec.term_indices())

    tiles = [ls[i : i + _TILE] for i in range(0, ls.shape[0], _TILE)]
    if parallel > 1 and len(tiles) > 1:
        workers = min(parallel, len(tiles))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda t: _magnitudes_tile(number, t, ms, kind), tiles))
    else:
        parts = [_magnitudes_tile(number, t, ms, kind) for t in tiles]
    return np.concatenate(parts) if len(parts) > 1 else parts[0]
