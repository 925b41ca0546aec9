"""Ladder operators of the minus sector and their nonlinear algebras.

The oscillator ladders (a/a^dag for the linear family, c/c^dag for the
radial ones) are transplanted onto H_- by sandwiching with the SUSY
operators: X = A^dag a A or A^dag c A. On eigenstates the action reduces to
closed-form coefficients; together with H_- the pair (X, X^dag) closes a
quadratic (linear family) or cubic (radial families) algebra.

Grid applications compose the first-order factors through jets on the
analytic eigenfunctions, giving an oracle for the closed-form coefficients
that does not assume any of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidParameterError, GridMismatchError
from .families import (
    Family,
    FamilySpec,
    check_admissibility,
    energy_minus,
    energy_plus,
    psi_minus,
    superpotential,
)
from .errors import InadmissibleSpecError
from .numerics import (
    DifferentiableFunction,
    Grid,
    GridFunction,
    apply_first_order,
)
from .specfun import pochhammer

__all__ = [
    "Direction",
    "LadderCoefficient",
    "AlgebraSignature",
    "ladder_coefficient",
    "algebra_signature",
    "commutator_eigenvalue",
    "minus_state_function",
    "ladder_operator",
    "apply_ladder_grid",
    "reconstruct_broken_state",
]


class Direction(Enum):
    LOWER = "lower"
    RAISE = "raise"


@dataclass(frozen=True)
class LadderCoefficient:
    """Action X psi_n = value * psi_to on a minus-sector eigenstate."""

    from_index: int
    direction: Direction
    value: float
    to_index: int


@dataclass(frozen=True)
class AlgebraSignature:
    """[X, X^dag] = sum_k coeffs[k] H_-^(degree-k); constant term is 0."""

    degree: int
    coeffs: tuple[float, ...]

    def evaluate(self, energy: float) -> float:
        acc = 0.0
        for c in self.coeffs:
            acc = acc * energy + c
        return acc


def _require_admissible(spec: FamilySpec) -> None:
    adm = check_admissibility(spec)
    if not adm.admissible:
        raise InadmissibleSpecError("; ".join(adm.reasons) or "inadmissible spec")


def ladder_coefficient(spec: FamilySpec, n: int, direction: Direction) -> LadderCoefficient:
    """Closed-form ladder action on psi_n^-.

    Unbroken families annihilate the isolated ground state in both
    directions. The broken family lowers to zero only at n = 0; its raise
    coefficient is derived from the strict SUSY map plus the c-action with
    Laguerre index gamma + 1/2 (validated against the grid oracle).
    Coefficients are signed: the radial ones carry the explicit -2 prefactor.
    """
    if n < 0:
        raise InvalidParameterError("state index must be non-negative")
    _require_admissible(spec)
    gam = spec.gamma
    lower = direction is Direction.LOWER
    to = n - 1 if lower else n + 1

    if spec.family is Family.RADIAL_BROKEN:
        e_n = energy_minus(spec, n)
        if lower:
            value = (
                0.0
                if n == 0
                else -2.0 * math.sqrt(e_n * n * (n + gam + 0.5) * energy_plus(spec, n - 1))
            )
        else:
            value = -2.0 * math.sqrt(
                e_n * (n + 1) * (n + gam + 1.5) * energy_plus(spec, n + 1)
            )
        return LadderCoefficient(n, direction, value, to)

    if n == 0:  # isolated zero mode: annihilated both ways
        return LadderCoefficient(n, direction, 0.0, to)
    m = n - 1  # offset into the plus-sector tower
    e_n = energy_minus(spec, n)
    if spec.family is Family.LINEAR_UNBROKEN:
        if lower:
            value = 0.0 if m == 0 else math.sqrt(energy_plus(spec, m - 1) * m * e_n)
        else:
            value = math.sqrt(energy_plus(spec, m + 1) * (m + 1) * e_n)
    else:
        if lower:
            value = (
                0.0
                if m == 0
                else -2.0
                * math.sqrt(energy_plus(spec, m - 1) * m * (m + gam + 1.5) * e_n)
            )
        else:
            value = -2.0 * math.sqrt(
                energy_plus(spec, m + 1) * (m + 1) * (m + gam + 2.5) * e_n
            )
    return LadderCoefficient(n, direction, value, to)


def algebra_signature(spec: FamilySpec) -> AlgebraSignature:
    """Polynomial coefficients of [X, X^dag] in H_-, highest power first.

    The broken signature is the unbroken one with gamma replaced by
    -gamma - 2 (tested coefficient-wise).
    """
    eps, gam = spec.epsilon, spec.gamma
    if spec.family is Family.LINEAR_UNBROKEN:
        return AlgebraSignature(2, (3.0, -(2.0 * eps - 1.0), 0.0))
    if spec.family is Family.RADIAL_UNBROKEN:
        return AlgebraSignature(
            3,
            (
                8.0,
                12.0 * (gam - eps + 1.5),
                -4.0 * (2.0 * eps * gam - eps**2 + 3.0 * eps - 1.0),
                0.0,
            ),
        )
    return AlgebraSignature(
        3,
        (
            8.0,
            -12.0 * (gam + eps + 0.5),
            4.0 * (2.0 * eps * gam + eps**2 + eps + 1.0),
            0.0,
        ),
    )


def commutator_eigenvalue(spec: FamilySpec, n: int) -> tuple[float, float]:
    """(lhs, rhs) for [X, X^dag] on psi_n^-.

    lhs multiplies ladder coefficients (raise-then-lower minus
    lower-then-raise); rhs evaluates the algebra signature at E_n^-. The two
    must agree to 1e-9 relative for every admissible spec.
    """
    _require_admissible(spec)
    up = ladder_coefficient(spec, n, Direction.RAISE)
    down = ladder_coefficient(spec, n, Direction.LOWER)
    raise_lower = up.value * ladder_coefficient(spec, n + 1, Direction.LOWER).value
    lower_raise = (
        down.value * ladder_coefficient(spec, n - 1, Direction.RAISE).value
        if n >= 1
        else 0.0
    )
    lhs = raise_lower - lower_raise
    rhs = algebra_signature(spec).evaluate(energy_minus(spec, n))
    return lhs, rhs


def minus_state_function(spec: FamilySpec, n: int) -> DifferentiableFunction:
    """psi_n^- as a jet-capable callable."""
    return DifferentiableFunction(lambda x: psi_minus(spec, n, x))


def _centrifugal_constant(spec: FamilySpec) -> float:
    # matches the centrifugal term of the family's V_+
    if spec.family is Family.RADIAL_UNBROKEN:
        return (spec.gamma + 1.0) * (spec.gamma + 2.0)
    return spec.gamma * (spec.gamma + 1.0)


def ladder_operator(
    spec: FamilySpec, direction: Direction, f: DifferentiableFunction
) -> DifferentiableFunction:
    """Compose A^dag (a or c) A on a differentiable function.

    The middle factor is a = (d/dx + x)/sqrt(2) (linear family) or
    c = a^2 - kappa/(2 x^2) with the family's centrifugal constant kappa;
    Direction.RAISE uses the daggered versions.
    """
    w_susy = DifferentiableFunction(lambda x: superpotential(spec, x))
    sign = 1.0 if direction is Direction.LOWER else -1.0
    inner = apply_first_order(1.0, w_susy, f)  # A
    if spec.family is Family.LINEAR_UNBROKEN:
        mid = apply_first_order(sign, lambda x: x, inner)
    else:
        kappa = _centrifugal_constant(spec)
        second = apply_first_order(
            sign, lambda x: x, apply_first_order(sign, lambda x: x, inner)
        )
        mid = DifferentiableFunction(
            lambda x: second(x) - (0.5 * kappa) * inner(x) / (x * x)
        )
    return apply_first_order(-1.0, w_susy, mid)  # A^dag


def _check_grid_domain(spec: FamilySpec, grid: Grid) -> None:
    if spec.is_radial and grid.x_min <= 0.0:
        raise GridMismatchError("radial families need a grid with x_min > 0")


def apply_ladder_grid(
    spec: FamilySpec, n: int, direction: Direction, grid: Grid
) -> GridFunction:
    """Evaluate X psi_n^- on a grid through exact jet composition."""
    _require_admissible(spec)
    _check_grid_domain(spec, grid)
    op = ladder_operator(spec, direction, minus_state_function(spec, n))
    return op.on_grid(grid)


def reconstruct_broken_state(spec: FamilySpec, n: int, grid: Grid) -> GridFunction:
    """Rebuild psi_n^- of the broken family as scaled (X^dag)^n psi_0^-.

    The scale is (-1/4)^n [n! (g+3/2)_n (g+1+eps/2)_n (g+2+eps/2)_n]^(-1/2)
    with g = gamma, Pochhammer symbols rising. Each raise application adds
    four jet orders, so keep n small (capped at 4).
    """
    if spec.family is not Family.RADIAL_BROKEN:
        raise InvalidParameterError("reconstruction applies to the broken family")
    if not 0 <= n <= 4:
        raise InvalidParameterError("reconstruction is capped at n <= 4")
    _require_admissible(spec)
    _check_grid_domain(spec, grid)
    fn: DifferentiableFunction = minus_state_function(spec, 0)
    for _ in range(n):
        fn = ladder_operator(spec, Direction.RAISE, fn)
    values = fn.on_grid(grid).values
    gam, eps = spec.gamma, spec.epsilon
    scale = (-0.25) ** n / math.sqrt(
        math.factorial(n)
        * pochhammer(gam + 1.5, n)
        * pochhammer(gam + 1.0 + eps / 2.0, n)
        * pochhammer(gam + 2.0 + eps / 2.0, n)
    )
    return GridFunction(grid, scale * values)
