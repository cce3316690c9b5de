"""Uniform 1D meshes, cell-average fields with ghost layers and boundary fill."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "Grid1D",
    "CellField",
    "BoundaryCondition",
    "make_grid",
    "ghost_width_for_order",
    "gauss_legendre_points",
    "cell_average_init",
    "cell_averages",
    "apply_boundary",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform tessellation of ``[x_left, x_right]`` into ``n_cells`` cells.

    Cells are numbered ``0 .. n_cells - 1``; face ``k`` sits at ``faces[k]`` so
    that cell ``i`` spans ``[faces[i], faces[i + 1]]``.
    """

    x_left: float
    x_right: float
    n_cells: int

    def __post_init__(self):
        if not isinstance(self.n_cells, (int, np.integer)) or self.n_cells < 1:
            raise ConfigurationError(f"n_cells must be a positive integer, got {self.n_cells!r}")
        if not (math.isfinite(self.x_left) and math.isfinite(self.x_right)):
            raise ConfigurationError("grid bounds must be finite")
        if not self.x_right > self.x_left:
            raise ConfigurationError(
                f"x_right must exceed x_left, got [{self.x_left}, {self.x_right}]"
            )

    @property
    def length(self) -> float:
        return self.x_right - self.x_left

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def faces(self) -> np.ndarray:
        # linspace pins both endpoints, so the last face is x_right exactly
        return np.linspace(self.x_left, self.x_right, self.n_cells + 1)

    @property
    def centers(self) -> np.ndarray:
        return self.x_left + (np.arange(self.n_cells) + 0.5) * self.dx

    def cell_center(self, i: int) -> float:
        return self.x_left + (i + 0.5) * self.dx

    def cell_face(self, k: int) -> float:
        """Coordinate of face ``k`` (``k = 0`` is ``x_left``, ``k = n_cells`` is ``x_right``)."""
        if k == self.n_cells:
            return self.x_right
        return self.x_left + k * self.dx


def make_grid(x_left: float, x_right: float, n_cells: int) -> Grid1D:
    return Grid1D(float(x_left), float(x_right), n_cells)


def ghost_width_for_order(order: int) -> int:
    """Ghost cells per side needed by a WENO scheme of odd ``order``.

    The face between the last ghost-free cell and the first ghost cell is
    reconstructed from both sides, so the ghost cell's own ``2r - 1`` window
    must also be available: ``r`` layers are required.
    """
    return (order + 1) // 2


@dataclass
class CellField:
    """Cell averages stored with ``ghost_width`` ghost layers on each side.

    ``values`` has shape ``(n_cells + 2 * ghost_width, n_comp)``.
    """

    values: np.ndarray
    ghost_width: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.ghost_width < 0:
            raise ConfigurationError("ghost_width must be non-negative")
        if self.values.shape[0] <= 2 * self.ghost_width:
            raise ConfigurationError("field has no interior cells")

    @classmethod
    def from_interior(cls, interior: np.ndarray, ghost_width: int) -> "CellField":
        interior = np.asarray(interior, dtype=float)
        if interior.ndim == 1:
            interior = interior[:, None]
        n, m = interior.shape
        values = np.zeros((n + 2 * ghost_width, m))
        values[ghost_width : ghost_width + n] = interior
        return cls(values, ghost_width)

    @property
    def n_comp(self) -> int:
        return self.values.shape[1]

    @property
    def n_cells(self) -> int:
        return self.values.shape[0] - 2 * self.ghost_width

    @property
    def interior(self) -> np.ndarray:
        g = self.ghost_width
        return self.values[g : g + self.n_cells]

    def copy(self) -> "CellField":
        return CellField(self.values.copy(), self.ghost_width)


_BC_KINDS = ("periodic", "transmissive", "inflow")


@dataclass(frozen=True)
class BoundaryCondition:
    """Boundary treatment for one side (or both sides) of the domain.

    ``inflow`` holds a fixed conserved state copied into every ghost cell.
    """

    kind: str
    state: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in _BC_KINDS:
            raise ConfigurationError(f"unknown boundary condition kind {self.kind!r}")
        if self.kind == "inflow":
            if self.state is None:
                raise ConfigurationError("inflow boundary needs a fixed state")
            state = np.atleast_1d(np.asarray(self.state, dtype=float))
            if not np.all(np.isfinite(state)):
                raise ConfigurationError("inflow state must be finite")
            if state.size == 3:
                # conserved Euler state; positive pressure iff positive internal energy
                if not state[0] > 0.0:
                    raise ConfigurationError("inflow state must have positive density")
                if not state[2] - 0.5 * state[1] ** 2 / state[0] > 0.0:
                    raise ConfigurationError("inflow state must have positive pressure")
            object.__setattr__(self, "state", state)

    @classmethod
    def periodic(cls) -> "BoundaryCondition":
        return cls("periodic")

    @classmethod
    def transmissive(cls) -> "BoundaryCondition":
        return cls("transmissive")

    @classmethod
    def inflow(cls, state: Sequence[float]) -> "BoundaryCondition":
        return cls("inflow", np.asarray(state, dtype=float))


BoundarySpec = Union[BoundaryCondition, tuple]


def _sides(bc: BoundarySpec) -> tuple[BoundaryCondition, BoundaryCondition]:
    if isinstance(bc, BoundaryCondition):
        return bc, bc
    if isinstance(bc, str):
        b = BoundaryCondition(bc)
        return b, b
    try:
        left, right = bc
    except (TypeError, ValueError):
        raise ConfigurationError(f"cannot interpret boundary condition {bc!r}") from None
    left = left if isinstance(left, BoundaryCondition) else BoundaryCondition(left)
    right = right if isinstance(right, BoundaryCondition) else BoundaryCondition(right)
    if (left.kind == "periodic") != (right.kind == "periodic"):
        raise ConfigurationError("periodic boundaries must be applied on both sides")
    return left, right


def apply_boundary(field: CellField | np.ndarray, bc: BoundarySpec, ghost_width: int | None = None):
    """Fill the ghost layers of ``field`` in place and return it.

    ``field`` is either a :class:`CellField` or a raw ``(n + 2g, n_comp)``
    array, in which case ``ghost_width`` must be given.  ``bc`` is a single
    condition applied on both sides or a ``(left, right)`` pair.
    """
    if isinstance(field, CellField):
        values, g = field.values, field.ghost_width
    else:
        values = field
        if ghost_width is None:
            raise ConfigurationError("ghost_width is required for raw arrays")
        g = ghost_width
    if g < 1:
        raise ConfigurationError("apply_boundary needs at least one ghost layer")
    left, right = _sides(bc)
    n = values.shape[0] - 2 * g
    if n < 1:
        raise ConfigurationError("field has no interior cells")

    if left.kind == "periodic":
        if n < g:
            raise ConfigurationError("periodic fill needs at least ghost_width interior cells")
        values[:g] = values[n : n + g]
        values[n + g :] = values[g : 2 * g]
        return field

    if left.kind == "transmissive":
        values[:g] = values[g]
    else:
        values[:g] = left.state
    if right.kind == "transmissive":
        values[n + g :] = values[n + g - 1]
    else:
        values[n + g :] = right.state
    return field


def gauss_legendre_points(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on ``[-1/2, 1/2]`` and weights summing to one for an order-``order`` scheme.

    Uses the minimal Gauss-Legendre rule whose error matches the order,
    i.e. ``ceil(order / 2)`` points.
    """
    n = max(1, math.ceil(order / 2))
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * x, 0.5 * w


def cell_averages(grid: Grid1D, func: Callable, order: int) -> np.ndarray:
    """Quadrature approximation of every cell average of ``func``.

    ``func`` maps an array of coordinates to values of shape ``(npts,)`` or
    ``(npts, n_comp)``.  Returns ``(n_cells, n_comp)``.
    """
    xi, wi = gauss_legendre_points(order)
    pts = grid.centers[:, None] + grid.dx * xi[None, :]
    vals = np.asarray(func(pts.ravel()), dtype=float)
    if vals.ndim == 1:
        vals = vals[:, None]
    vals = vals.reshape(grid.n_cells, xi.size, -1)
    # sum deviations from the first node so constant data are reproduced exactly
    base = vals[:, 0, :]
    return base + np.einsum("q,nqc->nc", wi, vals - base[:, None, :])


def cell_average_init(
    grid: Grid1D, pointwise_ic: Callable, order: int, ghost_width: int | None = None
) -> CellField:
    """Gauss-Legendre cell averages of ``pointwise_ic``; ghost cells are left at zero."""
    if ghost_width is None:
        ghost_width = ghost_width_for_order(order)
    return CellField.from_interior(cell_averages(grid, pointwise_ic, order), ghost_width)
