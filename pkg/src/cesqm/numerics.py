"""Independent verification kernel: grids, finite-difference Hamiltonians,
tridiagonal eigensolves, quadrature, and exact first-order operator
application through jets.

Nothing in here knows about the closed forms; this layer is what the
family-specific claims are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, GridMismatchError, InvalidParameterError
from .jets import Jet

__all__ = [
    "Boundary",
    "Grid",
    "GridFunction",
    "TridiagonalOperator",
    "discretize_hamiltonian",
    "lowest_eigenpairs",
    "inner_product",
    "norm",
    "DifferentiableFunction",
    "apply_first_order",
]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# eigenpair quality gate: ||H psi - E psi|| <= RESIDUAL_FACTOR * ||H||_inf
RESIDUAL_FACTOR = 1e-8


class Boundary(Enum):
    DIRICHLET_BOTH = "dirichlet-both"
    DIRICHLET_RIGHT_ORIGIN_REGULAR = "dirichlet-right-origin-regular"


@dataclass(frozen=True)
class Grid:
    """Uniform 1-D grid. Radial grids start one spacing off the origin, so
    the Dirichlet ghost node of the discrete Laplacian sits exactly at x=0,
    matching the psi(0) = 0 Hilbert-space condition."""

    x_min: float
    x_max: float
    n_points: int
    boundary: Boundary = Boundary.DIRICHLET_BOTH

    def __post_init__(self):
        if self.n_points < 3:
            raise InvalidParameterError("grids need at least 3 points")
        if not self.x_max > self.x_min:
            raise InvalidParameterError("x_max must exceed x_min")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @cached_property
    def quadrature_weights(self) -> np.ndarray:
        """Composite Simpson weights; a trapezoid patch covers the last
        interval when the interval count is odd."""
        n, h = self.n_points, self.h
        w = np.zeros(n)
        m = n if n % 2 == 1 else n - 1  # largest odd point count
        w[0] = 1.0
        w[m - 1] = 1.0
        w[1:m - 1:2] = 4.0
        w[2:m - 1:2] = 2.0
        w[:m] *= h / 3.0
        if m < n:
            w[-2] += 0.5 * h
            w[-1] += 0.5 * h
        return w

    @classmethod
    def linear(cls, half_width: float = 12.0, n_points: int = 6001) -> "Grid":
        return cls(-half_width, half_width, n_points, Boundary.DIRICHLET_BOTH)

    @classmethod
    def radial(cls, x_max: float = 12.0, n_points: int = 6000) -> "Grid":
        return cls(
            x_max / n_points,
            x_max,
            n_points,
            Boundary.DIRICHLET_RIGHT_ORIGIN_REGULAR,
        )

    def compatible_with(self, other: "Grid") -> bool:
        return (
            self.n_points == other.n_points
            and self.x_min == other.x_min
            and self.x_max == other.x_max
        )


@dataclass
class GridFunction:
    """Real-valued samples on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"expected {self.grid.n_points} values, got shape {self.values.shape}"
            )

    def norm(self) -> float:
        return math.sqrt(inner_product(self, self))


@dataclass
class TridiagonalOperator:
    """Symmetric tridiagonal matrix stored as diagonal + one off-diagonal."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        self.diagonal = np.asarray(self.diagonal, dtype=float)
        self.off_diagonal = np.asarray(self.off_diagonal, dtype=float)
        if self.off_diagonal.shape != (self.diagonal.shape[0] - 1,):
            raise InvalidParameterError("off-diagonal must be one shorter than diagonal")

    @property
    def size(self) -> int:
        return self.diagonal.shape[0]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out

    def inf_norm(self) -> float:
        row = np.abs(self.diagonal)
        row[:-1] += np.abs(self.off_diagonal)
        row[1:] += np.abs(self.off_diagonal)
        return float(row.max())


def discretize_hamiltonian(potential, grid: Grid) -> TridiagonalOperator:
    """Three-point discretization of -1/2 d^2/dx^2 + V with Dirichlet ends.

    potential may be vectorized over arrays or a plain scalar callable.
    """
    xs = grid.points
    try:
        vals = np.asarray(potential(xs), dtype=float)
        if vals.shape != xs.shape:
            raise TypeError
    except TypeError:
        vals = np.array([float(potential(x)) for x in xs])
    if not np.all(np.isfinite(vals)):
        raise InvalidParameterError("potential is not finite on the grid")
    inv_h2 = 1.0 / grid.h**2
    diag = inv_h2 + vals
    off = np.full(grid.n_points - 1, -0.5 * inv_h2)
    return TridiagonalOperator(diag, off)


def lowest_eigenpairs(
    op: TridiagonalOperator, k: int, grid: Grid
) -> list[tuple[float, GridFunction]]:
    """k smallest eigenvalues with quadrature-normalized eigenvectors.

    Eigensolve is LAPACK bisection + inverse iteration
    (scipy.linalg.eigh_tridiagonal with an index range). Each pair must meet
    the residual gate; the sign convention makes the first component whose
    magnitude exceeds 1e-12 of the peak positive, so repeated runs are
    bitwise reproducible.
    """
    if not 1 <= k <= op.size:
        raise InvalidParameterError(f"k must be in [1, {op.size}]")
    if op.size != grid.n_points:
        raise GridMismatchError("operator size does not match grid")
    energies, vectors = scipy.linalg.eigh_tridiagonal(
        op.diagonal, op.off_diagonal, select="i", select_range=(0, k - 1)
    )
    gate = RESIDUAL_FACTOR * op.inf_norm()
    out: list[tuple[float, GridFunction]] = []
    for i in range(k):
        vec = vectors[:, i]
        resid = np.linalg.norm(op.matvec(vec) - energies[i] * vec) / np.linalg.norm(vec)
        if resid > gate:
            raise ConvergenceError(
                f"eigenpair {i} residual {resid:.3e} exceeds gate {gate:.3e}"
            )
        peak = np.abs(vec).max()
        first = np.argmax(np.abs(vec) > 1e-12 * peak)
        if vec[first] < 0.0:
            vec = -vec
        gf = GridFunction(grid, vec)
        gf.values = gf.values / gf.norm()
        out.append((float(energies[i]), gf))
    return out


def inner_product(f: GridFunction, g: GridFunction) -> float:
    """Simpson-weighted inner product of two grid functions."""
    if f.grid is not g.grid and not f.grid.compatible_with(g.grid):
        raise GridMismatchError("grid functions live on different grids")
    return float(np.sum(f.grid.quadrature_weights * f.values * g.values))


def norm(f: GridFunction) -> float:
    return f.norm()


class DifferentiableFunction:
    """A function of one coordinate with exact derivative access via jets.

    Wraps any jet-capable callable; first-order operator applications
    compose lazily, raising the internal jet order as needed, so the result
    of A^dag a A on an analytic state carries no finite-difference noise.
    """

    def __init__(self, fn):
        self._fn = fn

    def __call__(self, x):
        return self._fn(x)

    def derivative(self, x, order: int = 1):
        if order == 0:
            return self._fn(x)
        return self._fn(Jet.variable(x, order)).derivative(order)

    def on_grid(self, grid: Grid) -> GridFunction:
        return GridFunction(grid, np.asarray(self._fn(grid.points), dtype=float))


def apply_first_order(coeff_d: float, w, f) -> DifferentiableFunction:
    """Apply (coeff_d * d/dx + w(x)) / sqrt(2) to a differentiable function.

    coeff_d = +1 with w = W gives the SUSY operator A, coeff_d = -1 gives
    A^dag; w(x) = x gives the oscillator ladder a / a^dag. The returned
    object is again differentiable, so compositions like A^dag a A are
    exact: each layer bumps the jet order of the inner evaluation by one.
    """
    fn = f._fn if isinstance(f, DifferentiableFunction) else f
    wf = w._fn if isinstance(w, DifferentiableFunction) else w

    def applied(x):
        if isinstance(x, Jet):
            if not x.is_seed():
                raise InvalidParameterError(
                    "first-order operators accept plain coordinates or seed jets"
                )
            x0, order = x.value, x.order
        else:
            x0, order = x, 0
        inner = fn(Jet.variable(x0, order + 1))
        if not isinstance(inner, Jet):
            inner = Jet.constant(inner, order + 1)
        dval = inner.differentiate()
        val = inner.truncate(order)
        wx = wf(Jet.variable(x0, order)) if order > 0 else wf(x0)
        res = (coeff_d * dval + wx * val) * _INV_SQRT2
        return res if order > 0 else res.value

    return DifferentiableFunction(applied)
