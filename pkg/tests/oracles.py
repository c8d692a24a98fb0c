"""Independent oracles used across the test suite.

These deliberately avoid the package's own computation paths: sums are
evaluated by direct complex summation with `fractions.Fraction` phase
reduction, and factorizations come from plain trial division written
here.  Expected values in the tests are frozen from these functions.
"""

import cmath
import math
from fractions import Fraction


def oracle_sum(number, truncation, k, l, odd_only=False, self_exp=False):
    """Direct summation oracle: mean of exp(-2*pi*i * m^k * N / l)."""
    total = 0j
    count = 0
    for m in range(1, truncation + 1):
        if odd_only and m % 2 == 0:
            continue
        exponent = m if self_exp else k
        cycles = Fraction(m**exponent * number, l) % 1
        total += cmath.exp(-2j * math.pi * float(cycles))
        count += 1
    return total / count


def oracle_trial_division(number):
    """Prime factor list by the most naive possible sieve-free division."""
    assert number >= 2
    out = []
    part = number
    d = 2
    while d * d <= part:
        while part % d == 0:
            out.append(d)
            part //= d
        d += 1
    if part > 1:
        out.append(part)
    return out


def divisors_up_to_sqrt(number):
    """All divisors of `number` that are <= floor(sqrt(number)), ascending."""
    out = []
    for l in range(1, math.isqrt(number) + 1):
        if number % l == 0:
            out.append(l)
    return out
