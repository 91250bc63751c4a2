"""
Quantum channels induced by a joint system-reservoir evolution.

A channel is kept as a set of Kraus operators. The Choi matrix
``J = sum_ij Phi(|i><j|) (x) |i><j|`` is the representation-independent
fingerprint used to compare channels.
"""
import logging
from dataclasses import dataclass

import numpy as np

from htheorem import numkernel
from htheorem.exceptions import (
    InconsistentInputError,
    NumericalInconsistencyError,
    ShapeError,
    ValidationError,
)
from htheorem.numkernel import as_matrix, dagger, fro

logger = logging.getLogger(__name__)

__all__ = (
    "ChannelKraus",
    "ChoiMatrix",
    "UnitalityCertificate",
    "EntropyGain",
    "identity_channel",
    "free_channel",
    "channel_from_evolution",
    "apply",
    "unitality",
    "entropy_gain",
    "compose",
    "iterate",
    "entropy_trajectory",
    "choi",
    "channel_distance",
    "channels_equal",
)

COMPLETENESS_TOL = 1e-9
KRAUS_WEIGHT_CUTOFF = 1e-12
CHOI_EIGENVALUE_CUTOFF = 1e-12
SUPPORT_CUTOFF = 1e-12
SUPPORT_LEAK_TOL = 1e-9
BOUND_TOL = 1e-9
CHOI_POSITIVITY_TOL = 1e-9
AGREEMENT_TOL = 1e-6
EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class ChannelKraus:
    d_sys: int
    kraus_ops: np.ndarray

    def __post_init__(self):
        ops = self.kraus_ops
        if ops.ndim != 3 or ops.shape[1:] != (self.d_sys, self.d_sys):
            raise ShapeError(
                "Kraus operators must have shape (n, %d, %d), got %s"
                % (self.d_sys, self.d_sys, ops.shape)
            )
        residual = self.completeness_residual()
        if residual > COMPLETENESS_TOL:
            raise ValidationError(
                "Kraus operators are not trace preserving (residual %g)" % residual
            )
        ops.flags.writeable = False

    @classmethod
    def from_operators(cls, operators, d_sys=None):
        """
        Build a channel from an iterable of Kraus operators, dropping those
        with Frobenius weight below the cutoff.
        """
        ops = [as_matrix(op, "Kraus operator") for op in operators]
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        if d_sys is None:
            d_sys = ops[0].shape[0]
        kept = [op for op in ops if fro(op) >= KRAUS_WEIGHT_CUTOFF]
        if not kept:
            kept = ops[:1]
        for op in kept:
            if op.shape != (d_sys, d_sys):
                raise ShapeError("Kraus operator of shape %s in a %d-dimensional channel" % (op.shape, d_sys))
        return cls(d_sys, np.array(kept, dtype=np.complex128))

    def __len__(self):
        return self.kraus_ops.shape[0]

    def completeness_residual(self):
        total = np.einsum("kba,kbc->ac", self.kraus_ops.conj(), self.kraus_ops)
        return fro(total - np.eye(self.d_sys))


@dataclass(frozen=True)
class ChoiMatrix:
    """
    ``J = (Phi (x) id)(|Omega><Omega|)`` with the unnormalized maximally
    entangled vector ``|Omega> = sum_i |i>|i>``; the first slot is the
    channel output.
    """

    d_sys: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.flags.writeable = False

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(0.5 * (self.matrix + dagger(self.matrix)))[0])

    def trace_preservation_residual(self):
        reduced = numkernel.partial_trace(self.matrix, self.d_sys, self.d_sys, "system")
        return fro(reduced - np.eye(self.d_sys))

    def validate(self):
        if numkernel.hermiticity_residual(self.matrix) > 1e-9 * (1.0 + fro(self.matrix)):
            raise ValidationError("Choi matrix is not Hermitian")
        if self.min_eigenvalue() < -CHOI_POSITIVITY_TOL:
            raise ValidationError("channel is not completely positive")
        if self.trace_preservation_residual() > COMPLETENESS_TOL:
            raise ValidationError("channel is not trace preserving")
        return self

    def apply(self, rho):
        "``Phi(rho) = Tr_2[J (1 (x) rho^T)]``."
        rho = as_matrix(rho, "state")
        product = self.matrix @ numkernel.kron(np.eye(self.d_sys), rho.T)
        return numkernel.partial_trace(product, self.d_sys, self.d_sys, "reservoir")

    def distance(self, other):
        if self.d_sys != other.d_sys:
            raise ShapeError("cannot compare channels of different dimension")
        return fro(self.matrix - other.matrix)

    def to_kraus(self, cutoff=CHOI_EIGENVALUE_CUTOFF):
        """
        Canonical Kraus form from the eigendecomposition of ``J``: every
        eigenvalue above ``cutoff`` gives the operator ``sqrt(lambda) unvec(v)``,
        so there are at most ``d**2`` of them.
        """
        spectrum = numkernel.eig_hermitian(self.matrix)
        kept = spectrum.eigenvalues > cutoff
        weights = np.sqrt(spectrum.eigenvalues[kept])
        vectors = spectrum.eigenvectors[:, kept]
        operators = (weights * vectors).T.reshape(-1, self.d_sys, self.d_sys)
        return ChannelKraus.from_operators(operators, self.d_sys)


@dataclass(frozen=True)
class UnitalityCertificate:
    """
    ``phi_of_one`` is ``Phi(1)`` in the computational basis. When the
    interaction blocks are known, ``commutator_matrix`` holds the right hand
    side ``sum_i Tr{pi_0 [V_k'i^dagger, V_ki]}`` of the unitality criterion,
    whose entries refer to ``basis`` (the columns ``|psi~_k>``).
    """

    phi_of_one: np.ndarray
    defect_fro: float
    basis: np.ndarray = None
    commutator_matrix: np.ndarray = None
    agreement_residual: float = None

    def is_unital(self, tol):
        return self.defect_fro <= tol


@dataclass(frozen=True)
class EntropyGain:
    gain: float
    holevo_bound: float

    @property
    def gap(self):
        return self.gain - self.holevo_bound


def identity_channel(d_sys):
    return ChannelKraus.from_operators([np.eye(d_sys)], d_sys)


def free_channel(u_s):
    "The non-interacting evolution ``rho -> U_S rho U_S^dagger``."
    u_s = numkernel.check_unitary(u_s, "free evolution")
    return ChannelKraus.from_operators([u_s], u_s.shape[0])


def channel_from_evolution(u_t, res, d_sys, d_res, cutoff=1e-12):
    """
    Kraus form of ``Phi(rho) = Tr_R{U_t (rho (x) pi_0) U_t^dagger}``.

    The operators are ``K_mn = sqrt(pi_n) (1 (x) <m|) U_t (1 (x) |n>)`` with
    ``|n>`` the eigenvectors of ``pi_0`` and ``|m>`` the computational basis
    of the reservoir.
    """
    u_t = as_matrix(u_t, "evolution")
    if u_t.shape != (d_sys * d_res, d_sys * d_res):
        raise ShapeError("evolution does not act on a %d x %d space" % (d_sys, d_res))
    numkernel.check_unitary(u_t, "evolution")
    if res.dim != d_res:
        raise ShapeError("reservoir state has dimension %d, expected %d" % (res.dim, d_res))

    tensor = u_t.reshape(d_sys, d_res, d_sys, d_res)
    operators = []
    for _, weight, vector in res.retained(cutoff):
        operators.extend(np.sqrt(weight) * np.einsum("iajb,b->aij", tensor, vector))
    channel = ChannelKraus.from_operators(operators, d_sys)
    logger.debug("derived channel with %d Kraus operators", len(channel))
    return channel


def apply(ch, rho):
    rho = as_matrix(rho, "state")
    if rho.shape != (ch.d_sys, ch.d_sys):
        raise ShapeError("state of shape %s for a %d-dimensional channel" % (rho.shape, ch.d_sys))
    ops = ch.kraus_ops
    return np.einsum("kij,jl,kml->im", ops, rho, ops.conj())


def commutator_matrix(blocks, res):
    "``M_kk' = sum_i Tr{pi_0 (V_k'i^dagger V_ki - V_ki V_k'i^dagger)}``."
    v = blocks.blocks
    pi0 = res.pi0
    forward = np.einsum("ab,licb,kica->kl", pi0, v.conj(), v)
    backward = np.einsum("ab,kibc,liac->kl", pi0, v, v.conj())
    return forward - backward


def unitality(ch, blocks=None, res=None, basis=None):
    phi_of_one = np.einsum("kij,kmj->im", ch.kraus_ops, ch.kraus_ops.conj())
    identity = np.eye(ch.d_sys)
    defect = fro(phi_of_one - identity)
    if blocks is None:
        return UnitalityCertificate(phi_of_one, defect)

    if res is None:
        raise InconsistentInputError("the unitality criterion needs the reservoir state")
    if blocks.d_sys != ch.d_sys or blocks.d_res != res.dim:
        raise InconsistentInputError("interaction blocks do not match the channel")
    if basis is None:
        basis = identity.astype(np.complex128)
    basis = as_matrix(basis, "basis")
    commutators = commutator_matrix(blocks, res)
    in_basis = dagger(basis) @ phi_of_one @ basis
    agreement = float(np.max(np.abs(in_basis - identity - commutators)))
    if agreement > AGREEMENT_TOL:
        raise InconsistentInputError(
            "interaction blocks are not those of the channel (residual %g)" % agreement
        )
    return UnitalityCertificate(phi_of_one, defect, basis, commutators, agreement)


def entropy_gain(ch, rho):
    """
    Entropy gain ``S(Phi(rho)) - S(rho)`` and its lower bound
    ``-Tr{Phi(rho) ln Phi(1)}``, evaluated on the support of ``Phi(1)``.
    """
    out = apply(ch, rho)
    gain = numkernel.entropy_vn(out) - numkernel.entropy_vn(rho)

    phi_of_one = unitality(ch).phi_of_one
    spectrum = numkernel.eig_hermitian(phi_of_one)
    support = spectrum.eigenvalues > SUPPORT_CUTOFF
    q = spectrum.eigenvectors
    populations = np.real(np.einsum("ia,ij,ja->a", q.conj(), out, q))
    leak = float(np.sum(populations[~support]))
    if leak > SUPPORT_LEAK_TOL:
        raise NumericalInconsistencyError(
            "output state has weight %g outside the support of Phi(1)" % leak
        )
    bound = float(-np.sum(populations[support] * np.log(spectrum.eigenvalues[support])))
    if gain < bound - BOUND_TOL:
        raise NumericalInconsistencyError(
            "entropy gain %r is below its lower bound %r" % (gain, bound)
        )
    return EntropyGain(float(gain), bound + 0.0)


def compose(later, earlier):
    "``later o earlier``: apply ``earlier`` first."
    if later.d_sys != earlier.d_sys:
        raise ShapeError("cannot compose channels of different dimension")
    operators = np.einsum("aij,bjk->abik", later.kraus_ops, earlier.kraus_ops)
    composed = ChannelKraus.from_operators(
        operators.reshape(-1, later.d_sys, later.d_sys), later.d_sys
    )
    if len(composed) > later.d_sys ** 2:
        composed = choi(composed).to_kraus()
    return composed


def iterate(ch, steps):
    """
    ``ch`` composed with itself ``steps`` times (a collision model). Each
    composition is kept in canonical Kraus form, so no product carries more
    than ``d**2`` operators.
    """
    if steps < 1:
        raise ValidationError("steps must be at least 1")
    result = ch
    for _ in range(steps - 1):
        result = compose(ch, result)
    return result


def entropy_trajectory(ch, rho, steps):
    "Entropies of ``rho, Phi(rho), ..., Phi^steps(rho)``."
    entropies = [numkernel.entropy_vn(rho)]
    for _ in range(steps):
        rho = apply(ch, rho)
        entropies.append(numkernel.entropy_vn(rho))
    return entropies


def choi(ch):
    d = ch.d_sys
    vectors = ch.kraus_ops.reshape(-1, d * d)
    matrix = np.einsum("ka,kb->ab", vectors, vectors.conj())
    return ChoiMatrix(d, matrix)


def channel_distance(a, b):
    return choi(a).distance(choi(b))


def channels_equal(a, b, tol=EQUALITY_TOL):
    return channel_distance(a, b) <= tol
