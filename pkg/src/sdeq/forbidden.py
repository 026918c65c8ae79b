"""Forbidden initial conditions and singular-step prediction.

The closed forms break down exactly where an auxiliary value S[m] or T[m]
vanishes, and the iteration denominators factor through the same values:

  System A:  a + u[n]*v[n+1] = S[n+1]/T[n],  b + v[n]*u[n+1] = T[n+1]/S[n]
  System B:  a + b*x[n]*y[n+1] = T[n+2]/S[n],  c + d*y[n]*x[n+1] = S[n+2]/T[n]

so with admissible (all-nonzero-product) initial conditions the first
vanishing auxiliary index m forces the first iteration singularity at step
m + 1 (S-side zeros break the first component for System A and the second
for System B; T-side the other one).  The checker evaluates every
restriction family by direct exact comparison for each r up to the
horizon; ``predict_vs_observe`` closes the loop against the iterator.

Zero invariant products (for System A, a zero among u0*v1, v0*u1) make the
closed forms inadmissible without forcing any iteration singularity; they
are reported as their own violations with no predicted step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .reduction import solve_linear_a, solve_linear_b
from .systems import (
    SystemAInitial,
    SystemAParams,
    SystemBInitial,
    SystemBParams,
    Trajectory,
    iterate_a,
    iterate_b,
)


@dataclass(frozen=True)
class Violation:
    restriction_id: str
    r: int


@dataclass(frozen=True)
class ForbiddenReport:
    violated: tuple[Violation, ...]
    predicted_singular_step: Optional[int]

    @property
    def closed_form_inadmissible(self) -> bool:
        return any(v.restriction_id.endswith("_zero") for v in self.violated)

    @property
    def clean(self) -> bool:
        return not self.violated


@dataclass(frozen=True)
class PredictVerdict:
    kind: str  # "agree-regular" | "agree-singular" | "mismatch"
    step: Optional[int] = None
    details: Optional[dict] = None


def _scan(S, T, horizon: int, period: int, ids_s, ids_t) -> ForbiddenReport:
    violated: list[Violation] = []
    predicted: Optional[int] = None
    for r in range(horizon + 1):
        for offset in range(period):
            m = period * r + offset
            if m >= len(S):
                break
            if S[m] == 0:
                violated.append(Violation(ids_s[offset], r))
                if predicted is None or m + 1 < predicted:
                    predicted = m + 1
            if T[m] == 0:
                violated.append(Violation(ids_t[offset], r))
                if predicted is None or m + 1 < predicted:
                    predicted = m + 1
    return ForbiddenReport(tuple(violated), predicted)


def check_forbidden_a(
    params: SystemAParams, ics: SystemAInitial, horizon: int
) -> ForbiddenReport:
    """Evaluate the four restriction families (S and T, even and odd
    indices) for every r <= horizon; flag zero seed products separately."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    violated: list[Violation] = []
    if ics.v0 * ics.u1 == 0:
        violated.append(Violation("w0_zero", 0))
    if ics.u0 * ics.v1 == 0:
        violated.append(Violation("z0_zero", 0))
    if violated:
        return ForbiddenReport(tuple(violated), None)
    s_seed = 1 / (ics.v0 * ics.u1)
    t_seed = 1 / (ics.u0 * ics.v1)
    lin = solve_linear_a(params, s_seed, t_seed, 2 * horizon + 1)
    return _scan(lin.S, lin.T, horizon, 2, ("S_even", "S_odd"), ("T_even", "T_odd"))


def check_forbidden_b(
    params: SystemBParams, ics: SystemBInitial, horizon: int
) -> ForbiddenReport:
    """Evaluate the eight mod-4 restriction families for every r <= horizon
    plus the four nonzero-product admissibility conditions."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    violated: list[Violation] = []
    products = (
        ("w0_zero", ics.x0 * ics.y1),
        ("w1_zero", ics.x1 * ics.y2),
        ("z0_zero", ics.y0 * ics.x1),
        ("z1_zero", ics.y1 * ics.x2),
    )
    for name, value in products:
        if value == 0:
            violated.append(Violation(name, 0))
    if violated:
        return ForbiddenReport(tuple(violated), None)
    lin = solve_linear_b(
        params,
        1 / products[0][1],
        1 / products[1][1],
        1 / products[2][1],
        1 / products[3][1],
        4 * horizon + 3,
    )
    return _scan(
        lin.S,
        lin.T,
        horizon,
        4,
        ("S_mod4_0", "S_mod4_1", "S_mod4_2", "S_mod4_3"),
        ("T_mod4_0", "T_mod4_1", "T_mod4_2", "T_mod4_3"),
    )


def _observe(trajectory: Trajectory) -> Optional[int]:
    return None if trajectory.singular is None else trajectory.singular.step


def predict_vs_observe(
    system: str,
    params,
    ics,
    n_max: int,
) -> PredictVerdict:
    """Compare the restriction-based singularity prediction with iteration.

    System B (and the System A prediction machinery) requires nonzero seed
    products.  For a System A input with a zero seed product no prediction
    exists; the verdict is agree-regular when iteration stays regular and a
    mismatch (the restrictions are silent) when it does not.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if system == "A":
        horizon = max(0, (n_max - 1) // 2)
        report = check_forbidden_a(params, ics, horizon)
        trajectory = iterate_a(params, ics, n_max)
    elif system == "B":
        if n_max < 2:
            raise ValueError("n_max must be >= 2 for System B")
        horizon = max(0, (n_max - 1) // 4)
        report = check_forbidden_b(params, ics, horizon)
        trajectory = iterate_b(params, ics, n_max)  # rejects zero initials
    else:
        raise ValueError(f"unknown system {system!r}")
    predicted = report.predicted_singular_step
    if predicted is not None and predicted > n_max:
        predicted = None  # not reachable within the queried horizon
    observed = _observe(trajectory)
    if predicted == observed:
        if observed is None:
            return PredictVerdict("agree-regular")
        return PredictVerdict("agree-singular", observed)
    details = {
        "system": system,
        "params": params,
        "ics": ics,
        "n_max": n_max,
        "predicted": predicted,
        "observed": observed,
        "violations": report.violated,
    }
    return PredictVerdict("mismatch", None, details)
