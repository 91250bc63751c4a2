"""
Grand-system construction and the interaction-picture factorization.

The joint evolution is factored as ``U_t = (U_S (x) U_R) U_int`` and the
interaction unitary is cut into the reservoir-space blocks
``V_ki = <psi_k| U_int |psi_i>``.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from htheorem import numkernel
from htheorem.exceptions import (
    InconsistentInputError,
    NotAStateError,
    ShapeError,
    ValidationError,
)
from htheorem.numkernel import as_matrix, dagger, kron

logger = logging.getLogger(__name__)

__all__ = (
    "GrandSystem",
    "HamiltonianSystem",
    "UnitarySystem",
    "InteractionBlocks",
    "ReservoirState",
    "total_hamiltonian",
    "interaction_unitary",
    "evolution_unitary",
    "free_unitaries",
    "extract_blocks",
)

COMPLETENESS_TOL = 1e-6
RESERVOIR_TRACE_TOL = 1e-10
RESERVOIR_EIGENVALUE_FLOOR = -1e-12


def _frozen(m, name):
    m = as_matrix(m, name).copy()
    m.flags.writeable = False
    return m


def _check_dim(m, dim, name):
    if m.shape != (dim, dim):
        raise ShapeError("%s must be %d x %d, got %s" % (name, dim, dim, m.shape))
    return m


class GrandSystem:
    """
    System plus reservoir, in one of two variants.

    :class:`HamiltonianSystem` carries the three Hamiltonians and an
    evolution time, :class:`UnitarySystem` carries the evolution operators
    directly. Both expose the same unitaries to the rest of the pipeline.
    """

    @property
    def composite_dim(self):
        return self.d_sys * self.d_res

    def _freeze_basis(self):
        if self.basis_psi is None:
            basis = np.eye(self.d_sys, dtype=np.complex128)
        else:
            basis = _check_dim(as_matrix(self.basis_psi, "basis"), self.d_sys, "basis")
            numkernel.check_unitary(basis, "basis", tol=1e-10)
        object.__setattr__(self, "basis_psi", _frozen(basis, "basis"))

    def free_unitaries(self):
        raise NotImplementedError

    def evolution_unitary(self):
        raise NotImplementedError

    def interaction_unitary(self):
        raise NotImplementedError


@dataclass(frozen=True)
class HamiltonianSystem(GrandSystem):
    d_sys: int
    d_res: int
    h_sys: np.ndarray
    h_res: np.ndarray
    h_int: np.ndarray
    t: float = 1.0
    basis_psi: np.ndarray = None

    def __post_init__(self):
        for name, dim in (
            ("h_sys", self.d_sys),
            ("h_res", self.d_res),
            ("h_int", self.d_sys * self.d_res),
        ):
            h = _check_dim(as_matrix(getattr(self, name), name), dim, name)
            numkernel.check_hermitian(h, name)
            object.__setattr__(self, name, _frozen(h, name))
        if not np.isfinite(self.t):
            raise ValidationError("evolution time must be finite")
        self._freeze_basis()

    def free_unitaries(self):
        return (
            numkernel.unitary_exp(self.h_sys, self.t),
            numkernel.unitary_exp(self.h_res, self.t),
        )

    def evolution_unitary(self):
        return numkernel.unitary_exp(total_hamiltonian(self), self.t)

    def interaction_unitary(self):
        u_s, u_r = self.free_unitaries()
        return dagger(kron(u_s, u_r)) @ self.evolution_unitary()


@dataclass(frozen=True)
class UnitarySystem(GrandSystem):
    """
    Evolution given at the unitary level.

    Exactly one of ``u_t`` and ``u_int`` is given; the free evolutions
    ``u_sys`` and ``u_res`` default to the identity.
    """

    d_sys: int
    d_res: int
    u_t: np.ndarray = None
    u_int: np.ndarray = None
    u_sys: np.ndarray = None
    u_res: np.ndarray = None
    basis_psi: np.ndarray = None

    def __post_init__(self):
        if (self.u_t is None) == (self.u_int is None):
            raise ValidationError("exactly one of u_t and u_int must be given")
        dims = {
            "u_t": self.composite_dim,
            "u_int": self.composite_dim,
            "u_sys": self.d_sys,
            "u_res": self.d_res,
        }
        for name, dim in dims.items():
            u = getattr(self, name)
            if u is None:
                if name in ("u_sys", "u_res"):
                    object.__setattr__(self, name, _frozen(np.eye(dim), name))
                continue
            u = _check_dim(as_matrix(u, name), dim, name)
            numkernel.check_unitary(u, name)
            object.__setattr__(self, name, _frozen(u, name))
        self._freeze_basis()

    def free_unitaries(self):
        return self.u_sys, self.u_res

    def evolution_unitary(self):
        if self.u_t is not None:
            return self.u_t
        return kron(self.u_sys, self.u_res) @ self.u_int

    def interaction_unitary(self):
        if self.u_int is not None:
            return self.u_int
        return dagger(kron(self.u_sys, self.u_res)) @ self.u_t


def total_hamiltonian(g):
    "``H_S (x) 1 + 1 (x) H_R + H_int`` on the composite space."
    if not isinstance(g, HamiltonianSystem):
        raise ValidationError("only a Hamiltonian-specified system has a Hamiltonian")
    h = (
        kron(g.h_sys, np.eye(g.d_res))
        + kron(np.eye(g.d_sys), g.h_res)
        + as_matrix(g.h_int, "h_int")
    )
    return 0.5 * (h + dagger(h))


def interaction_unitary(g):
    return g.interaction_unitary()


def evolution_unitary(g):
    return g.evolution_unitary()


def free_unitaries(g):
    return g.free_unitaries()


@dataclass(frozen=True)
class InteractionBlocks:
    """
    The ``d_sys x d_sys`` grid of reservoir operators.

    ``blocks[k, i]`` is the ``d_res x d_res`` operator ``V_ki``.
    """

    d_sys: int
    d_res: int
    blocks: np.ndarray
    left_residual: float = 0.0
    right_residual: float = 0.0

    def __post_init__(self):
        self.blocks.flags.writeable = False

    def __getitem__(self, key):
        return self.blocks[key]


def completeness_residuals(blocks):
    """
    Return the deviations of ``sum_k V_ki^dagger V_kj`` from ``delta_ij 1``
    and of ``sum_i V_ki V_k'i^dagger`` from ``delta_kk' 1`` (max entry).
    """
    d_sys, _, d_res, _ = blocks.shape
    target = np.einsum("ij,ab->ijab", np.eye(d_sys), np.eye(d_res))
    left = np.einsum("kiba,kjbc->ijac", blocks.conj(), blocks)
    right = np.einsum("kiab,licb->klac", blocks, blocks.conj())
    return (
        float(np.max(np.abs(left - target))),
        float(np.max(np.abs(right - target))),
    )


def extract_blocks(u_int, basis_psi, d_sys, d_res):
    u_int = _check_dim(as_matrix(u_int, "u_int"), d_sys * d_res, "u_int")
    basis = _check_dim(as_matrix(basis_psi, "basis"), d_sys, "basis")
    lift = kron(basis, np.eye(d_res))
    rotated = dagger(lift) @ u_int @ lift
    blocks = rotated.reshape(d_sys, d_res, d_sys, d_res).transpose(0, 2, 1, 3).copy()
    left, right = completeness_residuals(blocks)
    logger.debug("block completeness residuals: left=%g right=%g", left, right)
    if max(left, right) > COMPLETENESS_TOL:
        raise InconsistentInputError(
            "interaction blocks violate completeness (left %g, right %g)"
            % (left, right)
        )
    return InteractionBlocks(d_sys, d_res, blocks, left, right)


@dataclass(frozen=True)
class ReservoirState:
    "Initial reservoir state ``pi_0`` together with its spectrum."

    pi0: np.ndarray
    spectrum: numkernel.HermitianSpectrum = field(repr=False)

    @classmethod
    def from_density(cls, pi0):
        pi0 = numkernel.as_density(pi0, name="reservoir state")
        spectrum = numkernel.eig_hermitian(pi0)
        weights = spectrum.eigenvalues
        if weights[0] < RESERVOIR_EIGENVALUE_FLOOR:
            raise NotAStateError(
                "reservoir state has negative eigenvalue %g" % weights[0]
            )
        if abs(np.sum(weights) - 1.0) > RESERVOIR_TRACE_TOL:
            raise NotAStateError("reservoir eigenvalues do not sum to 1")
        return cls(_frozen(pi0, "reservoir state"), spectrum)

    @property
    def dim(self):
        return self.pi0.shape[0]

    def retained(self, cutoff=1e-12):
        """
        Yield ``(n, pi_n, |n>)`` for every eigenvalue above ``cutoff``.
        """
        for n, weight in enumerate(self.spectrum.eigenvalues):
            if weight > cutoff:
                yield n, float(weight), self.spectrum.eigenvectors[:, n]
