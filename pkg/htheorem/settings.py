"""
All htheorem settings are defined in :mod:`htheorem.settings`.

To set these settings in you django `settings.py` file, prefix them with
`HTHEOREM_`. So :const:`htheorem.settings.TOL_DIAG` becomes:
`HTHEOREM_TOL_DIAG`
"""

from htheorem.utils.settings import overridable

#: Maximal entrywise deviation ``max_k |H_k - E_kk|`` for which the diagonal
#: of the system's density matrix counts as invariant under the interaction.
TOL_DIAG = overridable("HTHEOREM_TOL_DIAG", 1e-9)

#: Maximal Frobenius norm of ``Phi(1) - 1`` for which a channel is unital.
TOL_UNITAL = overridable("HTHEOREM_TOL_UNITAL", 1e-8)

#: Bound on the off-block norms and normalization defects of the
#: factorization witness.
TOL_FACTORIZATION = overridable("HTHEOREM_TOL_FACTORIZATION", 1e-8)

#: Reservoir eigenvalues ``pi_n`` at or below this value are treated as zero.
EIGENVALUE_CUTOFF = overridable("HTHEOREM_EIGENVALUE_CUTOFF", 1e-12)

#: Master seed of the built-in demo scenarios.
DEMO_SEED = overridable("HTHEOREM_DEMO_SEED", 20190518)

#: Number of worker processes a sweep uses when ``--workers`` is not given.
SWEEP_WORKERS = overridable("HTHEOREM_SWEEP_WORKERS", 1)

#: Indentation of rendered JSON reports.
REPORT_INDENT = overridable("HTHEOREM_REPORT_INDENT", 2)

#: Version of the system description and report schemas.
SPEC_VERSION = overridable("HTHEOREM_SPEC_VERSION", 1)
