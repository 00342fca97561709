"""Truncated Fock-space states and density matrices.

State constructors evaluate amplitudes in log space (log-gamma instead of
factorials), so coherent amplitudes up to |alpha| ~ 10 and photon numbers in
the hundreds stay finite.  Every value is immutable after construction and
every function here is pure, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from .errors import (
    DimMismatch,
    InvalidCat,
    InvalidDim,
    TruncationTooSmall,
    WeightMismatch,
)

#: Default bound on the photon-number probability a truncation may discard.
DEFAULT_TAIL_TOL = 1e-12

_NORM_ATOL = 1e-12
_HERMITICITY_ATOL = 1e-12
_TRACE_ATOL = 1e-10


def default_dim(alpha) -> int:
    """Truncation dimension comfortably holding a coherent state of amplitude alpha.

    Sized so the discarded Poisson tail stays below 1e-12 for |alpha| <= 7,
    with a spare level for the photon-adding branch of the evolution.
    """
    nbar = abs(alpha) ** 2
    return math.ceil(nbar + 10.0 * math.sqrt(nbar + 1.0)) + 2


def poisson_tail(mean: float, dim: int) -> float:
    """Probability that a Poisson(mean) photon number is >= dim."""
    if mean == 0.0:
        return 0.0
    return float(poisson.sf(dim - 1, mean))


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state over Fock levels |0> .. |dim-1>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size < 1:
            raise InvalidDim("state vector must be a non-empty 1-D array")
        norm_sq = float(np.vdot(amp, amp).real)
        if abs(norm_sq - 1.0) > _NORM_ATOL:
            raise ValueError(f"state vector is not normalized: |psi|^2 = {norm_sq!r}")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def normalized(cls, amplitudes) -> "StateVector":
        """Build a StateVector from arbitrary amplitudes, rescaling to unit norm."""
        amp = np.asarray(amplitudes, dtype=complex)
        norm = float(np.linalg.norm(amp))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amp / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace field state on a truncated Fock basis.

    Hermiticity and trace are validated on construction.  Positive
    semidefiniteness is not (an O(dim^3) eigendecomposition per operation
    would dominate the cost, and the evolution map preserves positivity
    structurally); call :meth:`min_eigenvalue` to check it explicitly.
    """

    elements: np.ndarray

    def __post_init__(self):
        el = np.array(self.elements, dtype=complex)
        if el.ndim != 2 or el.shape[0] != el.shape[1] or el.shape[0] < 1:
            raise InvalidDim("density matrix must be square and non-empty")
        herm = float(np.max(np.abs(el - el.conj().T)))
        if herm > _HERMITICITY_ATOL:
            raise ValueError(f"density matrix is not Hermitian: max deviation {herm!r}")
        tr = complex(np.trace(el))
        if abs(tr - 1.0) > _TRACE_ATOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        el.flags.writeable = False
        object.__setattr__(self, "elements", el)

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue; >= -1e-10 for a physically valid state."""
        return float(np.linalg.eigvalsh(self.elements)[0])


@dataclass(frozen=True)
class CatSpec:
    """Parameters of the superposition |alpha> + r |-alpha>.

    parity_r = +1 selects the even superposition (support on even photon
    numbers only), -1 the odd one, 0 a plain coherent state.  alpha is
    accepted complex but the usual choice is real.
    """

    alpha: complex
    parity_r: int = 1

    def __post_init__(self):
        if self.parity_r not in (-1, 0, 1):
            raise InvalidCat(f"parity_r must be -1, 0 or +1, got {self.parity_r!r}")
        alpha = complex(self.alpha)
        if self.parity_r == -1 and alpha == 0:
            raise InvalidCat("odd superposition with alpha = 0 is the null vector")
        object.__setattr__(self, "alpha", alpha)

    @property
    def norm_const(self) -> float:
        """Normalization constant: 1 / (1 + r^2 + 2 r exp(-2 |alpha|^2))."""
        r = self.parity_r
        return 1.0 / (1.0 + r * r + 2.0 * r * math.exp(-2.0 * abs(self.alpha) ** 2))


def _coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Untruncated coherent amplitudes exp(-|a|^2/2) a^n / sqrt(n!) for n < dim."""
    if alpha == 0:
        amp = np.zeros(dim, dtype=complex)
        amp[0] = 1.0
        return amp
    n = np.arange(dim)
    log_mag = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * np.exp(1j * n * np.angle(alpha))


def _check_truncation(alpha: complex, dim: int, tail_tol: float) -> None:
    if dim < 1:
        raise InvalidDim(f"dim must be >= 1, got {dim}")
    tail = poisson_tail(abs(alpha) ** 2, dim)
    if not tail < tail_tol:
        raise TruncationTooSmall(
            f"photon-number tail beyond dim={dim} is {tail:.3e} for "
            f"|alpha|^2 = {abs(alpha) ** 2:g} (tolerance {tail_tol:.1e})"
        )


def make_coherent(alpha, dim: int | None = None,
                  tail_tol: float = DEFAULT_TAIL_TOL) -> StateVector:
    """Coherent state truncated to dim levels and renormalized.

    dim=None applies :func:`default_dim`.  Raises TruncationTooSmall when the
    discarded Poisson tail would exceed tail_tol; renormalization then keeps
    truncation errors confined to that declared budget.
    """
    alpha = complex(alpha)
    if dim is None:
        dim = default_dim(alpha)
    _check_truncation(alpha, dim, tail_tol)
    return StateVector.normalized(_coherent_amplitudes(alpha, dim))


def make_cat(spec: CatSpec, dim: int | None = None,
             tail_tol: float = DEFAULT_TAIL_TOL) -> StateVector:
    """Normalized |alpha> + r |-alpha> on a truncated basis.

    The two coherent branches are combined through the factor 1 + r(-1)^n,
    which vanishes identically on the opposite parity sector, so for
    r = +1 (-1) the odd (even) amplitudes are exact zeros, not merely small.
    """
    alpha = complex(spec.alpha)
    if dim is None:
        dim = default_dim(alpha)
    _check_truncation(alpha, dim, tail_tol)
    base = _coherent_amplitudes(alpha, dim)
    parity_factor = 1.0 + spec.parity_r * (-1.0) ** np.arange(dim)
    return StateVector.normalized(base * parity_factor)


def pure_density(psi: StateVector) -> DensityMatrix:
    """Rank-one projector |psi><psi|."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))


def mix(components) -> DensityMatrix:
    """Convex combination of density matrices.

    components: sequence of (weight, DensityMatrix) pairs; weights must be
    nonnegative and sum to one within 1e-12, all matrices of equal dim.
    """
    components = list(components)
    if not components:
        raise WeightMismatch("mix() needs at least one component")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights < 0.0):
        raise WeightMismatch(f"negative weight in {weights.tolist()}")
    total = float(weights.sum())
    if abs(total - 1.0) > 1e-12:
        raise WeightMismatch(f"weights sum to {total!r}, expected 1")
    dims = {rho.dim for _, rho in components}
    if len(dims) != 1:
        raise DimMismatch(f"components have differing dims {sorted(dims)}")
    out = components[0][0] * components[0][1].elements
    for w, rho in components[1:]:
        out += w * rho.elements
    return DensityMatrix(out)


def purity_defect(rho: DensityMatrix) -> float:
    """1 - Tr[rho^2]: zero iff pure, at most 1 - 1/dim."""
    return 1.0 - float(np.vdot(rho.elements, rho.elements).real)


def fidelity_with_pure(rho: DensityMatrix, psi: StateVector) -> float:
    """<psi| rho |psi>."""
    if rho.dim != psi.dim:
        raise DimMismatch(f"rho dim {rho.dim} != psi dim {psi.dim}")
    amp = psi.amplitudes
    return float(np.vdot(amp, rho.elements @ amp).real)


def photon_distribution(rho: DensityMatrix) -> np.ndarray:
    """Diagonal of rho as a real probability vector over photon number."""
    return np.real(np.diag(rho.elements)).copy()
