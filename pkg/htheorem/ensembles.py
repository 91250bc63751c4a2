"""
Seeded instance generators.

Every draw comes from a numpy ``Philox`` counter-based bit generator keyed
by ``SeedSequence(master_seed, spawn_key=(stream_id, *path))``, so a trial's
instance depends only on its seeds and never on scheduling. Complex normal
variates are produced with the Box-Muller transform from the uniform
stream; other implementations reproduce the distributions, not the bits.
"""
import logging
from dataclasses import dataclass

import numpy as np

from htheorem import numkernel
from htheorem.exceptions import ValidationError
from htheorem.numkernel import dagger, kron
from htheorem.system_builder import ReservoirState, UnitarySystem

logger = logging.getLogger(__name__)

__all__ = (
    "SeededGenerator",
    "FAMILIES",
    "complex_normal",
    "haar_unitary",
    "random_density",
    "random_hermitian",
    "controlled_interaction",
    "swap_unitary",
    "demon_instance",
    "build_instance",
)

FAMILIES = ("haar", "controlled", "demon")

_UINT64 = (1 << 64) - 1


@dataclass(frozen=True)
class SeededGenerator:
    master_seed: int
    stream_id: int = 0
    path: tuple = ()

    def substream(self, *keys):
        "An independent generator for a named sub-draw of this stream."
        return SeededGenerator(self.master_seed, self.stream_id, self.path + keys)

    def rng(self):
        seed = np.random.SeedSequence(
            self.master_seed & _UINT64,
            spawn_key=(self.stream_id & _UINT64,) + tuple(k & _UINT64 for k in self.path),
        )
        return np.random.Generator(np.random.Philox(seed))


def complex_normal(rng, shape):
    "Standard complex normal variates, ``E|z|^2 = 1``, via Box-Muller."
    size = int(np.prod(shape))
    u1 = 1.0 - rng.random(size)
    u2 = rng.random(size)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = (radius * np.cos(angle) + 1j * radius * np.sin(angle)) / np.sqrt(2.0)
    return z.reshape(shape)


def haar_unitary(gen, d):
    """
    Haar-distributed unitary from the QR decomposition of a complex Gaussian
    matrix, with the phases of ``diag(R)`` moved into ``Q``.
    """
    if d < 1:
        raise ValidationError("dimension must be at least 1")
    z = complex_normal(gen.rng(), (d, d))
    q, r = np.linalg.qr(z)
    diagonal = np.diagonal(r)
    return q * (diagonal / np.abs(diagonal))


def random_density(gen, d, rank=None, equal_weights=False):
    if rank is None:
        rank = d
    if not 1 <= rank <= d:
        raise ValidationError("rank must be between 1 and %d, got %d" % (d, rank))
    if equal_weights:
        columns = haar_unitary(gen, d)[:, :rank]
        rho = columns @ dagger(columns) / rank
    else:
        g = complex_normal(gen.rng(), (d, rank))
        rho = g @ dagger(g)
        rho = rho / np.trace(rho).real
    return 0.5 * (rho + dagger(rho))


def random_hermitian(gen, d, scale=1.0):
    g = complex_normal(gen.rng(), (d, d))
    return scale * 0.5 * (g + dagger(g))


def controlled_interaction(gen, d_sys, d_res, basis_psi=None, unitaries=None):
    """
    ``sum_k |psi_k><psi_k| (x) W_k`` with independent Haar ``W_k`` (or the
    given ``unitaries``); such an interaction never changes the diagonal.
    """
    if basis_psi is None:
        basis_psi = np.eye(d_sys, dtype=np.complex128)
    if unitaries is None:
        unitaries = [haar_unitary(gen.substream(k), d_res) for k in range(d_sys)]
    if len(unitaries) != d_sys:
        raise ValidationError("need one reservoir unitary per system basis state")
    u_int = np.zeros((d_sys * d_res, d_sys * d_res), dtype=np.complex128)
    for k, w in enumerate(unitaries):
        u_int += kron(numkernel.basis_projector(basis_psi, k), w)
    return u_int


def swap_unitary(d):
    "Exchange of two ``d``-level systems."
    u = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for a in range(d):
            u[a * d + i, i * d + a] = 1.0
    return u


def demon_instance(d=2, reservoir_state=None):
    """
    The minimal Maxwell demon: the system is swapped with a reservoir in a
    pure state (``|0>`` by default), which resets any system state to it.
    """
    if reservoir_state is None:
        reservoir_state = np.zeros(d, dtype=np.complex128)
        reservoir_state[0] = 1.0
    vector = np.asarray(reservoir_state, dtype=np.complex128)
    vector = vector / np.linalg.norm(vector)
    pi0 = np.outer(vector, vector.conj())
    return swap_unitary(d), ReservoirState.from_density(pi0)


def _free_parts(gen, d_sys, d_res):
    t = 1.0
    return {
        "u_sys": numkernel.unitary_exp(random_hermitian(gen.substream(1), d_sys), t),
        "u_res": numkernel.unitary_exp(random_hermitian(gen.substream(2), d_res), t),
        "basis_psi": haar_unitary(gen.substream(3), d_sys),
    }


def build_instance(family, gen, d_sys, d_res):
    """
    One ``(GrandSystem, ReservoirState)`` instance of the named family.

    ``haar`` draws a Haar interaction and a full-rank reservoir state,
    ``controlled`` a diagonal-preserving interaction with a reservoir state
    of random rank, ``demon`` a swap with a random pure reservoir state
    (``d_res`` is ignored and set to ``d_sys``).
    """
    if family == "haar":
        system = UnitarySystem(
            d_sys,
            d_res,
            u_int=haar_unitary(gen.substream(0), d_sys * d_res),
            **_free_parts(gen, d_sys, d_res)
        )
        res = ReservoirState.from_density(random_density(gen.substream(4), d_res))
    elif family == "controlled":
        parts = _free_parts(gen, d_sys, d_res)
        u_int = controlled_interaction(gen.substream(0), d_sys, d_res, parts["basis_psi"])
        system = UnitarySystem(d_sys, d_res, u_int=u_int, **parts)
        rank = int(gen.substream(5).rng().integers(1, d_res + 1))
        res = ReservoirState.from_density(random_density(gen.substream(4), d_res, rank))
    elif family == "demon":
        vector = complex_normal(gen.substream(4).rng(), (d_sys,))
        u_t, res = demon_instance(d_sys, vector)
        system = UnitarySystem(d_sys, d_sys, u_t=u_t)
    else:
        raise ValidationError(
            "unknown family %r, expected one of %s" % (family, ", ".join(FAMILIES))
        )
    return system, res
