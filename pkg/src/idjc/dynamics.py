"""Exact reduced-field evolution for a resonant two-level atom in a cavity.

On resonance the interaction-picture propagator splits into two branches
acting on the field alone: a photon-number-diagonal branch (the atom keeps
its state) and a one-step shift branch (the atom flips, exchanging one
photon).  With the intensity-dependent coupling a (a^dag a)^(1/2) the pair
Rabi frequency at photon number n is proportional to the integer n+1, so
every matrix element of the map is periodic in tau = lambda*t with period
2*pi, and with period pi on a single parity sector.  The ordinary linear
coupling (sqrt(n+1) frequencies) is available for contrast.

Free-field phases are dropped deliberately: populations, purity and photon
statistics do not depend on them, and phase-space pictures then stay put
instead of rigidly rotating at the cavity frequency.  The cavity frequency
therefore appears nowhere in this module.

Time sweeps are embarrassingly parallel: all functions are pure and inputs
immutable, so different tau values may be evaluated concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, TailLeak
from .fock import DensityMatrix

INTENSITY_DEPENDENT = "intensity_dependent"
ORDINARY = "ordinary"
ATOM_EXCITED = "excited"
ATOM_GROUND = "ground"

#: Default bound on initial population in the top two Fock levels; the
#: photon-adding branch shifts population up one level per application, so
#: anything sitting there would leak out of the truncated basis.
DEFAULT_TAIL_LEAK_TOL = 1e-10


@dataclass(frozen=True)
class EvolutionParams:
    """Evolution inputs: dimensionless time tau = lambda*t plus mode switches.

    The coupling constant lam only sets the physical time scale; the
    dynamics is expressed entirely in tau.  atom selects the initial atomic
    state; the ground-state case is the mirror map with the roles of the
    two branches swapped (pair frequencies n instead of n+1).
    """

    tau: float
    dim: int
    coupling: str = INTENSITY_DEPENDENT
    atom: str = ATOM_EXCITED
    lam: float = 1.0

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError(f"coupling constant must be positive, got {self.lam!r}")
        if self.tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {self.tau!r}")
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim!r}")
        if self.coupling not in (INTENSITY_DEPENDENT, ORDINARY):
            raise ValueError(f"unknown coupling mode {self.coupling!r}")
        if self.atom not in (ATOM_EXCITED, ATOM_GROUND):
            raise ValueError(f"unknown atom state {self.atom!r}")

    @property
    def time(self) -> float:
        """Physical interaction time t = tau / lam."""
        return self.tau / self.lam


def _pair_phases(params: EvolutionParams) -> np.ndarray:
    """Accumulated Rabi phase of the pair containing Fock level n.

    Excited atom: level n pairs upward, phase tau*(n+1) in the
    intensity-dependent mode or tau*sqrt(n+1) in the ordinary one.
    Ground atom: level n pairs downward, n in place of n+1.
    """
    offset = 1.0 if params.atom == ATOM_EXCITED else 0.0
    n = np.arange(params.dim, dtype=float) + offset
    if params.coupling == INTENSITY_DEPENDENT:
        return params.tau * n
    return params.tau * np.sqrt(n)


def kraus_diag(params: EvolutionParams) -> np.ndarray:
    """Diagonal entries <n|K|n> of the atom-unchanged branch (a cosine)."""
    return np.cos(_pair_phases(params))


def kraus_shift(params: EvolutionParams) -> np.ndarray:
    """Per-level amplitudes of the atom-flip branch.

    For an excited atom entry n maps |n> to |n+1> (one photon emitted) with
    amplitude -i sin(tau*(n+1)); the intensity-dependent ladder factor n+1
    cancels exactly against the sinc denominator, which is what makes the
    amplitudes free of square roots.  The top entry would land outside the
    truncated basis and is dropped by the propagation; initial states must
    keep the top levels empty (see TailLeak).  For a ground atom entry n
    maps |n> to |n-1> with amplitude -i sin(tau*n); entry 0 is zero.
    """
    return -1j * np.sin(_pair_phases(params))


def _shift_direction(params: EvolutionParams) -> int:
    return +1 if params.atom == ATOM_EXCITED else -1


def _flip_branch(el: np.ndarray, shift_amp: np.ndarray, direction: int) -> np.ndarray:
    """K rho K^dag for the shift branch, K|n> = shift_amp[n] |n+direction>."""
    out = np.zeros_like(el)
    if direction == +1:
        b = shift_amp[:-1]
        out[1:, 1:] = (b[:, None] * el[:-1, :-1]) * b.conj()[None, :]
    else:
        b = shift_amp[1:]
        out[:-1, :-1] = (b[:, None] * el[1:, 1:]) * b.conj()[None, :]
    return out


def _check_inputs(rho0: DensityMatrix, params: EvolutionParams, tail_tol: float) -> None:
    if rho0.dim != params.dim:
        raise DimMismatch(f"rho dim {rho0.dim} != params dim {params.dim}")
    if params.atom == ATOM_EXCITED:
        top = float(np.real(rho0.elements[-1, -1] + rho0.elements[-2, -2]))
        if not top < tail_tol:
            raise TailLeak(
                f"population {top:.3e} in the top two Fock levels exceeds "
                f"{tail_tol:.1e}; increase dim"
            )


def evolve_field(rho0: DensityMatrix, params: EvolutionParams,
                 tail_tol: float = DEFAULT_TAIL_LEAK_TOL) -> DensityMatrix:
    """Reduced field state after interaction time tau.

    Applies the two Kraus branches; the map is trace preserving as long as
    the initial state keeps the top of the truncated basis empty, which is
    enforced against tail_tol.
    """
    _check_inputs(rho0, params, tail_tol)
    stay = kraus_diag(params)
    flip = kraus_shift(params)
    el = rho0.elements
    out = (stay[:, None] * el) * stay[None, :]
    out += _flip_branch(el, flip, _shift_direction(params))
    return DensityMatrix(out)


def excited_population(rho0: DensityMatrix, params: EvolutionParams,
                       tail_tol: float = DEFAULT_TAIL_LEAK_TOL) -> float:
    """Probability of finding the atom excited at time tau.

    Only the photon-number populations of rho0 enter (both branches are
    diagonal-to-diagonal in that respect).
    """
    _check_inputs(rho0, params, tail_tol)
    pops = np.real(np.diag(rho0.elements))
    if params.atom == ATOM_EXCITED:
        weights = kraus_diag(params) ** 2
    else:
        weights = np.abs(kraus_shift(params)) ** 2
    return float(np.sum(weights * pops))


def atomic_inversion(rho0: DensityMatrix, params: EvolutionParams,
                     tail_tol: float = DEFAULT_TAIL_LEAK_TOL) -> float:
    """Population inversion <sigma_z> = 2 P_excited - 1."""
    return 2.0 * excited_population(rho0, params, tail_tol) - 1.0


@dataclass(frozen=True)
class JointBlocks:
    """Atom-field state in 2x2 atomic block form (atom index outermost).

    ee and gg are the field blocks with the atom excited resp. ground; eg
    and ge carry the atomic coherences.  Block traces of ee and gg add to
    one; individually they are not density matrices.
    """

    ee: np.ndarray
    eg: np.ndarray
    ge: np.ndarray
    gg: np.ndarray

    def assemble(self) -> np.ndarray:
        """Full (2 dim) x (2 dim) joint density matrix."""
        return np.block([[self.ee, self.eg], [self.ge, self.gg]])


def joint_state_blocks(rho0: DensityMatrix, params: EvolutionParams,
                       tail_tol: float = DEFAULT_TAIL_LEAK_TOL) -> JointBlocks:
    """All four atomic blocks of the evolved joint state.

    The joint evolution is unitary, so the purity of the assembled matrix
    equals that of rho0 at every tau; this is the main consistency handle
    on the reduced map.
    """
    _check_inputs(rho0, params, tail_tol)
    stay = kraus_diag(params)
    flip = kraus_shift(params)
    el = rho0.elements
    diag_block = (stay[:, None] * el) * stay[None, :]
    if params.atom == ATOM_EXCITED:
        gg = _flip_branch(el, flip, +1)
        ge = np.zeros_like(el)
        ge[1:, :] = (flip[:-1, None] * el[:-1, :]) * stay[None, :]
        return JointBlocks(ee=diag_block, eg=ge.conj().T, ge=ge, gg=gg)
    ee = _flip_branch(el, flip, -1)
    eg = np.zeros_like(el)
    eg[:-1, :] = (flip[1:, None] * el[1:, :]) * stay[None, :]
    return JointBlocks(ee=ee, eg=eg, ge=eg.conj().T, gg=diag_block)
