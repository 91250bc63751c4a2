"""
Diagonal invariance implies unitality.

If, in a basis ``|psi~_k> = U_S |psi_k>``, the diagonal of the system's
density matrix after the evolution is the same with and without the
reservoir for every initial state, the induced channel is unital. The
pipeline here checks that statement on a concrete grand system:

1. cut ``U_int`` into the blocks ``V_ki``;
2. build ``H_k[i, j] = Tr{pi_0 V_kj^dagger V_ki}`` and test ``H_k = E_kk``;
3. test unitality directly and through the commutator criterion;
4. check that ``U_int`` maps ``|psi_k>|n>`` to ``|psi_k>|phi_nk>``;
5. rebuild the channel as ``U_S (sum_n pi_n Phi_n) U_S^dagger`` with the
   dephasing channels ``Phi_n`` given by the Gram matrices of ``phi_nk``.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from htheorem import channels, numkernel
from htheorem import settings
from htheorem.exceptions import PreconditionError, ShapeError
from htheorem.numkernel import as_matrix, dagger
from htheorem.signals import theorem_checked
from htheorem.system_builder import extract_blocks

logger = logging.getLogger(__name__)

__all__ = (
    "HMatrixSet",
    "FactorizationWitness",
    "GramSet",
    "Reconstruction",
    "TheoremReport",
    "h_matrices",
    "diagonal_invariance",
    "spectral_conditions",
    "sampled_diagonal_check",
    "factorization_check",
    "dephase",
    "gram_and_reconstruct",
    "verify_theorem",
)


@dataclass(frozen=True)
class HMatrixSet:
    "``matrices[k]`` is ``H_k``."

    matrices: np.ndarray

    def __post_init__(self):
        self.matrices.flags.writeable = False

    def __len__(self):
        return self.matrices.shape[0]

    def __getitem__(self, k):
        return self.matrices[k]

    def hermiticity_residual(self):
        return max(numkernel.hermiticity_residual(h) for h in self.matrices)

    def min_eigenvalue(self):
        return min(float(np.linalg.eigvalsh(0.5 * (h + dagger(h)))[0]) for h in self.matrices)

    def trace_residual(self):
        return float(np.max(np.abs(np.einsum("kii->k", self.matrices) - 1.0)))


def h_matrices(blocks, res):
    if blocks.d_res != res.dim:
        raise ShapeError(
            "blocks act on a %d-dimensional reservoir, state has dimension %d"
            % (blocks.d_res, res.dim)
        )
    v = blocks.blocks
    matrices = np.einsum("ab,kjcb,kica->kij", res.pi0, v.conj(), v)
    return HMatrixSet(matrices)


def diagonal_invariance(hset, tol=None):
    """
    ``H_k = E_kk`` for all ``k``, which is equivalent to the diagonal being
    unchanged by the interaction for every initial state.
    """
    if tol is None:
        tol = settings.TOL_DIAG
    d = len(hset)
    units = np.einsum("ki,kj->kij", np.eye(d), np.eye(d))
    residual = float(np.max(np.abs(hset.matrices - units)))
    return residual <= tol, residual


def spectral_conditions(hset):
    """
    Worst deviation from ``h_alpha = |xi_alpha,k|^2`` and from
    ``sum_alpha h_alpha = 1`` over all ``H_k``; both vanish on
    diagonal-invariant instances.
    """
    worst = 0.0
    for k, h in enumerate(hset.matrices):
        spectrum = numkernel.eig_hermitian(h)
        weights = np.abs(spectrum.eigenvectors[k, :]) ** 2
        worst = max(
            worst,
            float(np.max(np.abs(spectrum.eigenvalues - weights))),
            abs(float(np.sum(spectrum.eigenvalues)) - 1.0),
        )
    return worst


def sampled_diagonal_check(channel, free, basis, states):
    """
    Largest difference of ``<psi~_k|Phi(rho)|psi~_k>`` and
    ``<psi~_k|Phi_0(rho)|psi~_k>`` over the given states.
    """
    basis = as_matrix(basis, "basis")
    worst = 0.0
    for rho in states:
        interacting = dagger(basis) @ channels.apply(channel, rho) @ basis
        isolated = dagger(basis) @ channels.apply(free, rho) @ basis
        worst = max(worst, float(np.max(np.abs(np.diag(interacting - isolated)))))
    return worst


@dataclass(frozen=True)
class FactorizationWitness:
    """
    Per retained reservoir eigenvector ``n`` and system index ``k``:
    ``phi_states[n, k] = V_kk |n>``, the largest leaked norm
    ``max_{i != k} |V_ik |n>|`` and ``| |phi_nk| - 1 |``.
    """

    phi_states: dict
    off_block_norms: dict
    norm_defects: dict
    weights: dict = field(default_factory=dict)

    def worst_off_block_norm(self):
        return max(self.off_block_norms.values(), default=0.0)

    def worst_norm_defect(self):
        return max(self.norm_defects.values(), default=0.0)

    def worst(self):
        return max(self.worst_off_block_norm(), self.worst_norm_defect())

    def passes(self, tol=None):
        if tol is None:
            tol = settings.TOL_FACTORIZATION
        return self.worst() <= tol

    @property
    def indices(self):
        return sorted({n for n, _ in self.phi_states})

    @property
    def d_sys(self):
        return len({k for _, k in self.phi_states})


def factorization_check(blocks, res, cutoff=None):
    """
    Evaluate the factorization ``U_int |psi_k>|n> = |psi_k>|phi_nk>`` on the
    eigenbasis of ``pi_0`` returned by the eigensolver. For degenerate
    eigenvalues any orthonormal choice of ``|n>`` is as good as another.
    """
    if cutoff is None:
        cutoff = settings.EIGENVALUE_CUTOFF
    if blocks.d_res != res.dim:
        raise ShapeError("blocks and reservoir state dimensions differ")
    v = blocks.blocks
    phi_states, off_block_norms, norm_defects, weights = {}, {}, {}, {}
    for n, weight, vector in res.retained(cutoff):
        weights[n] = weight
        # images[i, k] = V_ik |n>
        images = np.einsum("ikab,b->ika", v, vector)
        for k in range(blocks.d_sys):
            phi = images[k, k].copy()
            phi.flags.writeable = False
            leaked = [np.linalg.norm(images[i, k]) for i in range(blocks.d_sys) if i != k]
            phi_states[n, k] = phi
            off_block_norms[n, k] = float(max(leaked, default=0.0))
            norm_defects[n, k] = abs(float(np.linalg.norm(phi)) - 1.0)
    return FactorizationWitness(phi_states, off_block_norms, norm_defects, weights)


@dataclass(frozen=True)
class GramSet:
    "``gamma[n][k, k'] = <phi_nk'|phi_nk>`` and the weights ``pi_n``."

    gamma: dict
    weights: dict

    def mixture(self):
        "``sum_n pi_n gamma_n``, the entrywise damping of the mixed channel."
        return sum(self.weights[n] * g for n, g in self.gamma.items())


def dephase(rho, damping, basis):
    """
    Entrywise weighting of ``rho`` in the columns of ``basis``:
    ``sum_kk' |psi_k><psi_k'| rho_kk' damping_kk'``.
    """
    basis = as_matrix(basis, "basis")
    return basis @ (damping * (dagger(basis) @ rho @ basis)) @ dagger(basis)


@dataclass(frozen=True)
class Reconstruction:
    """
    ``Phi(rho) = U_S (sum_n pi_n Phi_n(rho)) U_S^dagger`` as a Kraus channel,
    together with the data needed to apply it in Hadamard form.
    """

    gram: GramSet
    channel: channels.ChannelKraus
    u_s: np.ndarray
    basis: np.ndarray
    dephasing_residual: float = None

    def apply(self, rho):
        inner = dephase(rho, self.gram.mixture(), self.basis)
        return self.u_s @ inner @ dagger(self.u_s)


def gram_and_reconstruct(witness, res, u_s, basis_psi, direct=None, tol=None):
    if not witness.passes(tol):
        raise PreconditionError(
            "factorization witness fails (worst bound %g)" % witness.worst()
        )
    u_s = as_matrix(u_s, "free evolution")
    basis = as_matrix(basis_psi, "basis")
    d_sys = basis.shape[0]

    weights = {n: float(res.spectrum.eigenvalues[n]) for n in witness.indices}
    gamma, operators = {}, []
    for n in witness.indices:
        # rows of ``states`` are |phi_nk>
        states = np.array([witness.phi_states[n, k] for k in range(d_sys)])
        gamma[n] = states @ states.conj().T
        root = np.sqrt(weights[n])
        for m in range(states.shape[1]):
            operators.append(
                root * u_s @ basis @ np.diag(states[:, m]) @ dagger(basis)
            )
    gram = GramSet(gamma, weights)
    channel = channels.ChannelKraus.from_operators(operators, d_sys)

    residual = None
    if direct is not None:
        residual = channels.channel_distance(channel, direct)
    return Reconstruction(gram, channel, u_s, basis, residual)


@dataclass(frozen=True)
class TheoremReport:
    diag_invariant: bool
    diag_residual: float
    unital: bool
    unitality_defect: float
    agreement_residual: float
    factorization_ok: bool
    worst_off_block_norm: float
    worst_norm_defect: float
    dephasing_residual: float
    reconstruction_defect: float
    spectral_residual: float
    implication_consistent: bool
    certificate: channels.UnitalityCertificate = field(default=None, repr=False)
    channel: channels.ChannelKraus = field(default=None, repr=False)


def verify_theorem(
    g, res, tol_diag=None, tol_unital=None, tol_factorization=None, cutoff=None
):
    if tol_diag is None:
        tol_diag = settings.TOL_DIAG
    if tol_unital is None:
        tol_unital = settings.TOL_UNITAL
    if tol_factorization is None:
        tol_factorization = settings.TOL_FACTORIZATION
    if cutoff is None:
        cutoff = settings.EIGENVALUE_CUTOFF

    u_s, _ = g.free_unitaries()
    basis = g.basis_psi
    blocks = extract_blocks(g.interaction_unitary(), basis, g.d_sys, g.d_res)
    hset = h_matrices(blocks, res)
    diag_invariant, diag_residual = diagonal_invariance(hset, tol_diag)

    channel = channels.channel_from_evolution(
        g.evolution_unitary(), res, g.d_sys, g.d_res, cutoff
    )
    certificate = channels.unitality(channel, blocks, res, basis=u_s @ basis)
    unital = certificate.is_unital(tol_unital)

    witness = factorization_check(blocks, res, cutoff)
    factorization_ok = witness.passes(tol_factorization)
    dephasing_residual = reconstruction_defect = spectral_residual = None
    if factorization_ok:
        reconstruction = gram_and_reconstruct(
            witness, res, u_s, basis, direct=channel, tol=tol_factorization
        )
        dephasing_residual = reconstruction.dephasing_residual
        reconstruction_defect = channels.unitality(reconstruction.channel).defect_fro
    if diag_invariant:
        spectral_residual = spectral_conditions(hset)

    report = TheoremReport(
        diag_invariant=diag_invariant,
        diag_residual=diag_residual,
        unital=unital,
        unitality_defect=certificate.defect_fro,
        agreement_residual=certificate.agreement_residual,
        factorization_ok=factorization_ok,
        worst_off_block_norm=witness.worst_off_block_norm(),
        worst_norm_defect=witness.worst_norm_defect(),
        dephasing_residual=dephasing_residual,
        reconstruction_defect=reconstruction_defect,
        spectral_residual=spectral_residual,
        implication_consistent=(not diag_invariant) or unital,
        certificate=certificate,
        channel=channel,
    )
    logger.debug(
        "diag_invariant=%s (%g) unital=%s (%g)",
        diag_invariant,
        diag_residual,
        unital,
        certificate.defect_fro,
    )
    theorem_checked.send(sender=verify_theorem, report=report, system=g)
    return report
