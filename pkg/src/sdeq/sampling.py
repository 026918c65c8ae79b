"""Seeded rational sampling shared by the differential driver and tests.

Distribution: numerators uniform in [-9, 9], denominators uniform in
[1, 9].  Draws that violate a constraint (zero where nonzero is required,
a forbidden initial condition, a parameter predicate) are redrawn up to a
documented retry cap; the small magnitudes keep the product formulas fast
while still exercising every sign case.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .closed_form import case_a_applies, case_b_applies
from .forbidden import check_forbidden_a, check_forbidden_b
from .systems import SystemAInitial, SystemAParams, SystemBInitial, SystemBParams

RETRY_CAP = 1000

DISTRIBUTION_NOTE = (
    "numerators uniform in [-9, 9], denominators uniform in [1, 9]; "
    "redraw on constraint violation (retry cap %d)" % RETRY_CAP
)


def draw_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def draw_nonzero(rng: random.Random) -> Fraction:
    for _ in range(RETRY_CAP):
        value = draw_rational(rng)
        if value != 0:
            return value
    raise RuntimeError("retry cap exhausted drawing a nonzero rational")


def draw_ics_a(rng: random.Random) -> SystemAInitial:
    """All four components nonzero, so both seed products are nonzero."""
    return SystemAInitial(*(draw_nonzero(rng) for _ in range(4)))


def draw_ics_b(rng: random.Random) -> SystemBInitial:
    return SystemBInitial(*(draw_nonzero(rng) for _ in range(6)))


def draw_params_a(rng: random.Random) -> SystemAParams:
    return SystemAParams(draw_rational(rng), draw_rational(rng))


def draw_params_b(rng: random.Random) -> SystemBParams:
    return SystemBParams(*(draw_rational(rng) for _ in range(4)))


def draw_params_a_for_case(rng: random.Random, tag: str) -> SystemAParams:
    """Parameters on which the given System A case formula is valid."""
    fixed = {
        "OnesOnes": SystemAParams(1, 1),
        "NegNeg": SystemAParams(-1, -1),
        "Aeq1Bneg1": SystemAParams(1, -1),
        "Beq1Aneg1": SystemAParams(-1, 1),
    }
    if tag in fixed:
        return fixed[tag]
    for _ in range(RETRY_CAP):
        if tag == "Aeq1":
            params = SystemAParams(1, draw_rational(rng))
        elif tag == "Beq1":
            params = SystemAParams(draw_rational(rng), 1)
        else:  # ABneq1 or Product
            params = draw_params_a(rng)
        if case_a_applies(tag, params):
            return params
    raise RuntimeError(f"retry cap exhausted drawing parameters for case {tag}")


def draw_params_b_for_case(rng: random.Random, tag: str) -> SystemBParams:
    """Parameters on which the given System B case formula is valid."""
    if tag == "AllOnes":
        return SystemBParams(1, 1, 1, 1)
    if tag == "UnitBD":
        return SystemBParams(1, 1, -1, 1)
    for _ in range(RETRY_CAP):
        if tag == "ACeq1":
            a = draw_nonzero(rng)
            params = SystemBParams(a, draw_rational(rng), 1 / a, draw_rational(rng))
        else:  # ACneq1 or Product
            params = draw_params_b(rng)
        if case_b_applies(tag, params):
            return params
    raise RuntimeError(f"retry cap exhausted drawing parameters for case {tag}")


def draw_admissible_a(
    rng: random.Random, n_max: int, tag: str | None = None
) -> tuple[SystemAParams, SystemAInitial]:
    """A (params, ics) pair whose restriction check is clean up to n_max."""
    horizon = max(0, (n_max - 1) // 2)
    for _ in range(RETRY_CAP):
        params = draw_params_a(rng) if tag is None else draw_params_a_for_case(rng, tag)
        ics = draw_ics_a(rng)
        if check_forbidden_a(params, ics, horizon).clean:
            return params, ics
    raise RuntimeError("retry cap exhausted drawing admissible System A input")


def draw_admissible_b(
    rng: random.Random, n_max: int, tag: str | None = None
) -> tuple[SystemBParams, SystemBInitial]:
    horizon = max(0, (n_max - 1) // 4)
    for _ in range(RETRY_CAP):
        params = draw_params_b(rng) if tag is None else draw_params_b_for_case(rng, tag)
        ics = draw_ics_b(rng)
        if check_forbidden_b(params, ics, horizon).clean:
            return params, ics
    raise RuntimeError("retry cap exhausted drawing admissible System B input")
