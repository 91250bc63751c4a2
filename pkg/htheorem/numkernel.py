"""
Dense complex linear algebra used by every other module.

Operators are plain ``numpy`` arrays of dtype ``complex128``. Composite
spaces are always ordered system first, reservoir second, with row-major
(system-major) flattening: the basis state ``|i> (x) |a>`` has index
``i * d_res + a``. Units are hbar = 1 and k_B = 1, entropies are in nats.
"""
import logging
from dataclasses import dataclass

import numpy as np

from htheorem.exceptions import NotAStateError, ShapeError, ValidationError

logger = logging.getLogger(__name__)

__all__ = (
    "HermitianSpectrum",
    "as_matrix",
    "as_density",
    "dagger",
    "fro",
    "matmul",
    "kron",
    "partial_trace",
    "hermiticity_residual",
    "unitarity_residual",
    "eig_hermitian",
    "spectral_function",
    "unitary_exp",
    "entropy_vn",
    "basis_projector",
)

HERMITIAN_TOL = 1e-9
UNITARY_TOL = 1e-9
TRACE_TOL = 1e-9
NEGATIVE_EIGENVALUE_TOL = 1e-9


def _freeze(array):
    array.flags.writeable = False
    return array


def as_matrix(m, name="matrix"):
    """
    Coerce ``m`` into a finite 2-d complex array.

    >>> as_matrix([[1, 0], [0, 1]]).dtype
    dtype('complex128')
    >>> as_matrix([1, 2])
    Traceback (most recent call last):
    ...
    htheorem.exceptions.ShapeError: matrix must be 2-dimensional, got shape (2,)
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeError("%s must be 2-dimensional, got shape %s" % (name, a.shape))
    if a.size == 0:
        raise ShapeError("%s must not be empty" % name)
    if not np.all(np.isfinite(a)):
        raise ValidationError("%s contains non-finite entries" % name)
    return a


def _as_square(m, name="matrix"):
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ShapeError("%s must be square, got shape %s" % (name, a.shape))
    return a


def dagger(m):
    return np.conj(m).T


def fro(m):
    return float(np.linalg.norm(m))


def matmul(a, b):
    a = as_matrix(a, "left factor")
    b = as_matrix(b, "right factor")
    if a.shape[1] != b.shape[0]:
        raise ShapeError("cannot multiply %s by %s" % (a.shape, b.shape))
    return a @ b


def kron(a, b):
    """
    Tensor product with the first factor as the major index.

    >>> kron([[1, 0], [0, 2]], [[1, 0], [0, 1]]).real.diagonal()
    array([1., 1., 2., 2.])
    """
    return np.kron(as_matrix(a, "left factor"), as_matrix(b, "right factor"))


def partial_trace(m, d_sys, d_res, which="reservoir"):
    """
    Trace out one factor of a ``d_sys * d_res`` dimensional operator.

    ``which="reservoir"`` keeps the (first) system factor, ``which="system"``
    keeps the (second) reservoir factor.
    """
    m = _as_square(m)
    dim = d_sys * d_res
    if m.shape != (dim, dim):
        raise ShapeError(
            "a %s matrix does not factor into %d x %d" % (m.shape, d_sys, d_res)
        )
    blocks = m.reshape(d_sys, d_res, d_sys, d_res)
    if which == "reservoir":
        return np.einsum("iaja->ij", blocks)
    if which == "system":
        return np.einsum("iaib->ab", blocks)
    raise ValueError("which must be 'system' or 'reservoir', not %r" % which)


def hermiticity_residual(m):
    return fro(m - dagger(m))


def unitarity_residual(u):
    u = _as_square(u, "unitary")
    return fro(dagger(u) @ u - np.eye(u.shape[0]))


def check_hermitian(m, name="matrix", tol=HERMITIAN_TOL):
    m = _as_square(m, name)
    if hermiticity_residual(m) > tol * (1.0 + fro(m)):
        raise ValidationError("%s is not Hermitian" % name)
    return m


def check_unitary(u, name="unitary", tol=UNITARY_TOL):
    u = _as_square(u, name)
    if unitarity_residual(u) > tol * np.sqrt(u.shape[0]):
        raise ValidationError("%s is not unitary" % name)
    return u


@dataclass(frozen=True)
class HermitianSpectrum:
    """Ascending real eigenvalues and the matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        _freeze(self.eigenvalues)
        _freeze(self.eigenvectors)

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        q = self.eigenvectors
        return (q * self.eigenvalues) @ dagger(q)

    def apply(self, func):
        "Evaluate ``func`` on the spectrum and return ``Q f(diag) Q^dagger``."
        q = self.eigenvectors
        return (q * func(self.eigenvalues)) @ dagger(q)

    def orthonormality_residual(self):
        q = self.eigenvectors
        return fro(dagger(q) @ q - np.eye(self.dim))


def eig_hermitian(m):
    m = check_hermitian(m)
    # symmetrize so eigh never sees the round-off in the upper triangle
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (m + dagger(m)))
    return HermitianSpectrum(eigenvalues, eigenvectors)


def spectral_function(m, func):
    return eig_hermitian(m).apply(func)


def unitary_exp(h, t):
    "``exp(-i t h)`` of a Hermitian generator, computed on its spectrum."
    return eig_hermitian(h).apply(lambda w: np.exp(-1j * t * w))


def as_density(rho, dim=None, name="density matrix"):
    rho = check_hermitian(rho, name)
    if dim is not None and rho.shape != (dim, dim):
        raise ShapeError("%s must be %d x %d, got %s" % (name, dim, dim, rho.shape))
    trace = np.trace(rho)
    if abs(trace - 1.0) > TRACE_TOL:
        raise NotAStateError("%s has trace %r instead of 1" % (name, complex(trace)))
    lowest = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))[0]
    if lowest < -NEGATIVE_EIGENVALUE_TOL:
        raise NotAStateError("%s has negative eigenvalue %g" % (name, lowest))
    return rho


def entropy_vn(rho):
    """
    Von Neumann entropy ``-Tr rho ln rho`` in nats.

    >>> round(entropy_vn(np.eye(2) / 2), 6)
    0.693147
    >>> entropy_vn([[1, 0], [0, 0]])
    0.0
    """
    rho = as_density(rho)
    weights = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))
    weights = weights[weights > 0.0]
    return float(-np.sum(weights * np.log(weights))) + 0.0


def basis_projector(basis, k):
    "``|psi_k><psi_k|`` for the k-th column of ``basis``."
    column = basis[:, k : k + 1]
    return column @ dagger(column)
