"""Outcome families that depend polynomially on a coupling strength g.

A measurement here is a finite set of Hermitian matrix polynomials
E_j(g) = sum_k C_jk g^k that is complete coefficient-wise (the C_j0 sum to
the identity and every higher order sums to zero) and positive semidefinite
on a validated range (0, g_max].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstantOutcome,
    DimensionError,
    NonUniformOrder,
    NotMonomialGap,
    OutOfValidityRange,
    TruncationNotPositive,
)
from .linalg import psd_sqrt

#: coefficient matrices with no entry above this are treated as zero
COEFF_ZERO_TOL = 1e-12
COMPLETENESS_TOL = 1e-12
HERMITIAN_TOL = 1e-12
#: minimum eigenvalue allowed on the positivity grid
PSD_GRID_TOL = -1e-10


def _freeze(M: np.ndarray) -> np.ndarray:
    out = np.array(M, dtype=complex)
    out.setflags(write=False)
    return out


class PolyMatrix:
    """Matrix-valued polynomial, stored by coefficient order.

    coefficients[k] multiplies g**k.  Trailing all-zero coefficients are
    trimmed on construction; evaluation uses Horner's scheme.
    """

    def __init__(self, coefficients):
        coeffs = [np.asarray(c, dtype=complex) for c in coefficients]
        if not coeffs:
            raise DimensionError("need at least one coefficient")
        shape = coeffs[0].shape
        if len(shape) != 2:
            raise DimensionError(f"coefficients must be matrices, got shape {shape}")
        for c in coeffs:
            if c.shape != shape:
                raise DimensionError("all coefficients must share one shape")
            if not np.all(np.isfinite(c)):
                raise DimensionError("coefficient contains non-finite entries")
        while len(coeffs) > 1 and np.abs(coeffs[-1]).max() <= COEFF_ZERO_TOL:
            coeffs.pop()
        self.coefficients: tuple[np.ndarray, ...] = tuple(_freeze(c) for c in coeffs)
        self.shape = shape

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def dim(self) -> int:
        if self.shape[0] != self.shape[1]:
            raise DimensionError(f"matrix family is not square: {self.shape}")
        return self.shape[0]

    def coefficient(self, k: int) -> np.ndarray:
        if 0 <= k <= self.max_degree:
            return self.coefficients[k]
        return np.zeros(self.shape, dtype=complex)

    def __call__(self, g: float) -> np.ndarray:
        acc = np.array(self.coefficients[-1])
        for c in self.coefficients[-2::-1]:
            acc = acc * g + c
        return acc

    def nonzero_orders(self, tol: float = COEFF_ZERO_TOL) -> list[int]:
        return [
            k for k, c in enumerate(self.coefficients) if np.abs(c).max() > tol
        ]

    def keep_orders(self, orders) -> "PolyMatrix":
        """New family retaining only the listed orders (others zeroed)."""
        keep = set(orders)
        coeffs = [
            c if k in keep else np.zeros(self.shape, dtype=complex)
            for k, c in enumerate(self.coefficients)
        ]
        return PolyMatrix(coeffs)

    def truncate_prefix(self, n: int) -> "PolyMatrix":
        """Expansion through order n: drop every coefficient above g**n."""
        return PolyMatrix(list(self.coefficients[: n + 1]))

    def __repr__(self) -> str:
        return f"PolyMatrix(shape={self.shape}, max_degree={self.max_degree})"


@dataclass(frozen=True)
class ParamPovm:
    """Complete outcome family parameterized by coupling strength."""

    elements: tuple[PolyMatrix, ...]
    g_max: float

    def __post_init__(self):
        if not self.elements:
            raise DimensionError("a measurement needs at least one outcome")
        object.__setattr__(self, "elements", tuple(self.elements))
        d = self.elements[0].shape
        if d[0] != d[1]:
            raise DimensionError(f"outcome matrices must be square, got {d}")
        for e in self.elements:
            if e.shape != d:
                raise DimensionError("outcomes must share one dimension")
        if not (self.g_max > 0):
            raise OutOfValidityRange(f"g_max must be positive, got {self.g_max}")

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    @property
    def n_out(self) -> int:
        return len(self.elements)

    @property
    def max_degree(self) -> int:
        return max(e.max_degree for e in self.elements)


def default_grid(g_max: float, points: int = 20) -> np.ndarray:
    """Logarithmically spaced positivity-check grid in (0, g_max]."""
    if not (g_max > 0):
        raise OutOfValidityRange(f"g_max must be positive, got {g_max}")
    return np.geomspace(g_max * 1e-3, g_max, points)


@dataclass
class ValidationReport:
    """Outcome of checking one measurement family against its invariants."""

    grid: np.ndarray
    min_eigenvalues: np.ndarray  # (n_out, n_grid)
    completeness_residuals: np.ndarray  # per coefficient order
    hermiticity_residual: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def validate(
    povm: ParamPovm,
    grid: np.ndarray | None = None,
) -> ValidationReport:
    """Check Hermiticity, coefficient-wise completeness and grid positivity."""
    if grid is None:
        grid = default_grid(povm.g_max)
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(grid > povm.g_max * (1 + 1e-12)):
        raise OutOfValidityRange("validation grid must lie in (0, g_max]")

    failures: list[str] = []
    herm = 0.0
    for j, e in enumerate(povm.elements):
        for k, c in enumerate(e.coefficients):
            r = float(np.abs(c - c.conj().T).max())
            herm = max(herm, r)
            if r > HERMITIAN_TOL:
                failures.append(
                    f"coefficient {k} of outcome {j} is not Hermitian (residual {r:.3e})"
                )

    degree = povm.max_degree
    comp = np.zeros(degree + 1)
    eye = np.eye(povm.dim)
    for k in range(degree + 1):
        total = sum(e.coefficient(k) for e in povm.elements)
        target = eye if k == 0 else 0.0
        comp[k] = float(np.abs(total - target).max())
        if comp[k] > COMPLETENESS_TOL:
            failures.append(
                f"completeness fails at order {k} (residual {comp[k]:.3e})"
            )

    mins = np.empty((povm.n_out, len(grid)))
    for j, e in enumerate(povm.elements):
        for i, g in enumerate(grid):
            Eg = e(g)
            Eg = 0.5 * (Eg + Eg.conj().T)
            mins[j, i] = float(np.linalg.eigvalsh(Eg)[0])
            if mins[j, i] < PSD_GRID_TOL:
                failures.append(
                    f"outcome {j} has eigenvalue {mins[j, i]:.3e} at g={g:.6g}"
                )

    return ValidationReport(
        grid=grid,
        min_eigenvalues=mins,
        completeness_residuals=comp,
        hermiticity_residual=herm,
        failures=failures,
    )


def evaluate(povm: ParamPovm, g: float) -> list[np.ndarray]:
    """Outcome matrices at coupling g, for |g| <= g_max."""
    if abs(g) > povm.g_max * (1 + 1e-12):
        raise OutOfValidityRange(
            f"g={g} outside validated range (0, {povm.g_max}]"
        )
    return [e(g) for e in povm.elements]


@dataclass(frozen=True)
class MinOrderResult:
    n: int
    per_outcome_orders: tuple[int, ...]


def minimum_nonzero_order(povm: ParamPovm) -> MinOrderResult:
    """Smallest order k >= 1 with a nonzero coefficient, shared by all outcomes.

    Raises ConstantOutcome if some outcome has no coupling dependence, and
    NonUniformOrder (with the per-outcome orders attached) if outcomes
    disagree.
    """
    orders = []
    constant = []
    for j, e in enumerate(povm.elements):
        ks = [k for k in e.nonzero_orders() if k >= 1]
        if not ks:
            constant.append(j)
            orders.append(0)
        else:
            orders.append(min(ks))
    if constant:
        raise ConstantOutcome(
            f"outcomes {constant} have no g-dependence; minimum order undefined"
        )
    if len(set(orders)) != 1:
        raise NonUniformOrder(tuple(orders))
    return MinOrderResult(n=orders[0], per_outcome_orders=tuple(orders))


def truncate(
    povm: ParamPovm,
    n: int,
    mode: str = "eq13",
    grid: np.ndarray | None = None,
) -> ParamPovm:
    """Truncate every outcome to low order in g and re-validate positivity.

    mode "eq13" keeps exactly the orders {0, n} (intermediate orders are
    dropped); mode "prefix" keeps the full expansion through order n.
    Completeness survives either way since it holds coefficient-wise.  If
    positivity fails at the large end of the grid the validity range shrinks
    to the largest all-good prefix; failure everywhere raises
    TruncationNotPositive.
    """
    if n < 1:
        raise ValueError(f"truncation order must be >= 1, got {n}")
    if mode not in ("eq13", "prefix"):
        raise ValueError(f"unknown truncation mode {mode!r}")
    if mode == "eq13":
        elements = tuple(e.keep_orders([0, n]) for e in povm.elements)
    else:
        elements = tuple(e.truncate_prefix(n) for e in povm.elements)

    candidate = ParamPovm(elements=elements, g_max=povm.g_max)
    if grid is None:
        grid = default_grid(povm.g_max)
    report = validate(candidate, grid)
    if report.passed:
        return candidate

    point_ok = np.all(report.min_eigenvalues >= PSD_GRID_TOL, axis=0)
    good = np.nonzero(~point_ok)[0]
    first_bad = int(good[0]) if good.size else len(grid)
    if first_bad == 0:
        raise TruncationNotPositive(
            f"truncation to order {n} ({mode}) is not positive anywhere on the grid"
        )
    shrunk = ParamPovm(elements=elements, g_max=float(grid[first_bad - 1]))
    # the shrunk range must itself validate (guards non-monotone failures)
    sub = validate(shrunk, grid[:first_bad])
    if not sub.passed:
        raise TruncationNotPositive(
            f"truncation to order {n} ({mode}) fails inside the shrunk range"
        )
    return shrunk


def reparameterize_linear(povm: ParamPovm) -> ParamPovm:
    """Rewrite a monomial-gap family E0 + g^n En in the variable h = g^n.

    Requires every outcome to have coefficients only at orders 0 and n;
    otherwise raises NotMonomialGap.
    """
    n = minimum_nonzero_order(povm).n
    for j, e in enumerate(povm.elements):
        extra = [k for k in e.nonzero_orders() if k not in (0, n)]
        if extra:
            raise NotMonomialGap(
                f"outcome {j} has coefficients at orders {extra} besides {{0, {n}}}"
            )
    elements = tuple(
        PolyMatrix([e.coefficient(0), e.coefficient(n)]) for e in povm.elements
    )
    return ParamPovm(elements=elements, g_max=float(povm.g_max) ** n)


def measurement_operators(povm: ParamPovm, g: float) -> list[np.ndarray]:
    """Positive square roots M_j = E_j(g)^(1/2) (the minimally disturbing choice)."""
    return [psd_sqrt(E) for E in evaluate(povm, g)]
