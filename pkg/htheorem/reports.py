"This module contains the analysis, sweep and demo pipelines and their reports"
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from io import BytesIO

import numpy as np
from rest_framework import serializers
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from htheorem import channels, ensembles, settings, theorem
from htheorem.exceptions import SpecificationError, ValidationError
from htheorem.serializers.report import (
    AnalysisReportSerializer,
    SweepReportSerializer,
)
from htheorem.serializers.system import SystemDescription, SystemSpecSerializer
from htheorem.system_builder import HamiltonianSystem, ReservoirState, UnitarySystem
from htheorem.utils.digest import digest

__all__ = (
    "DEMOS",
    "flatten_errors",
    "read_system_description",
    "analyze",
    "run_trial",
    "sweep",
    "demo",
    "render",
    "load_report",
)

logger = logging.getLogger(__name__)

DEMOS = ("identity", "controlled", "demon", "collision")

TRIAL_FIELDS = (
    "diag_invariant",
    "diag_residual",
    "unital",
    "unitality_defect",
    "agreement_residual",
    "factorization_ok",
    "worst_off_block_norm",
    "worst_norm_defect",
    "dephasing_residual",
    "reconstruction_defect",
    "spectral_residual",
    "implication_consistent",
)


def _first(*values):
    return next(value for value in values if value is not None)


def flatten_errors(detail, prefix=""):
    """
    Turn nested serializer errors into ``field.path: message`` lines.

    >>> flatten_errors({"unitary": {"u_t": ["bad"]}, "d_sys": ["worse"]})
    ['unitary.u_t: bad', 'd_sys: worse']
    >>> flatten_errors(["plain"])
    ['plain']
    """
    if isinstance(detail, dict):
        lines = []
        for key, value in detail.items():
            path = key if key != "non_field_errors" else ""
            if prefix:
                path = "%s.%s" % (prefix, path) if path else prefix
            lines.extend(flatten_errors(value, path))
        return lines
    if isinstance(detail, (list, tuple)):
        lines = []
        for index, value in enumerate(detail):
            if isinstance(value, (dict, list, tuple)):
                lines.extend(flatten_errors(value, "%s.%d" % (prefix, index)))
            else:
                lines.extend(flatten_errors(value, prefix))
        return lines
    return ["%s: %s" % (prefix, detail) if prefix else str(detail)]


def read_system_description(stream):
    """
    Parse and validate a JSON system description from a binary stream.

    Returns the :class:`SystemDescription` and the raw parsed document.
    """
    try:
        data = JSONParser().parse(stream)
    except ParseError as e:
        raise SpecificationError([str(e.detail)])
    if not isinstance(data, dict):
        raise SpecificationError(["the system description must be a JSON object"])

    serializer = SystemSpecSerializer(data=data)
    if not serializer.is_valid():
        raise SpecificationError(flatten_errors(serializer.errors))
    try:
        description = serializer.save()
    except serializers.ValidationError as e:
        raise SpecificationError(flatten_errors(e.detail))
    return description, data


def entropy_diagnostics(channel, states):
    rows = []
    for label, rho in states:
        result = channels.entropy_gain(channel, rho)
        rows.append(
            {
                "label": label,
                "gain": result.gain,
                "holevo_bound": result.holevo_bound,
                "gap": result.gap,
            }
        )
    return rows


def _diagnostic_states(description, samples, seed):
    d_sys = description.system.d_sys
    states = [("maximally_mixed", np.eye(d_sys) / d_sys)]
    states.extend(("state_%d" % i, s) for i, s in enumerate(description.states))
    for i in range(samples):
        generator = ensembles.SeededGenerator(seed, i)
        states.append(("sample_%d" % i, ensembles.random_density(generator, d_sys)))
    return states


def analyze(
    description,
    input_digest,
    samples=0,
    seed=0,
    tol_diag=None,
    tol_unital=None,
    timing=True,
    scenario=None,
    trajectory=None,
):
    started = time.perf_counter()
    tol_diag = _first(tol_diag, description.tol_diag, settings.TOL_DIAG)
    tol_unital = _first(tol_unital, description.tol_unital, settings.TOL_UNITAL)

    report = theorem.verify_theorem(
        description.system, description.reservoir, tol_diag, tol_unital
    )
    states = _diagnostic_states(description, samples, seed)
    data = {
        "version": settings.SPEC_VERSION,
        "kind": "analysis",
        "input_digest": input_digest,
        "theorem": report,
        "unitality": report.certificate,
        "entropy": entropy_diagnostics(report.channel, states),
    }
    if scenario is not None:
        data["scenario"] = scenario
    if trajectory is not None:
        data["trajectory"] = trajectory(report.channel)
    if timing:
        data["timing"] = {"elapsed_seconds": time.perf_counter() - started}
    return AnalysisReportSerializer(data).data, report


def run_trial(
    family,
    seed,
    index,
    dsys,
    dres,
    tol_diag,
    tol_unital,
    tol_factorization=None,
    cutoff=None,
):
    """
    Build and verify trial ``index``; the result depends on its arguments only.

    Worker processes need not see the django settings, so ``sweep`` resolves
    every tolerance before handing trials out.
    """
    generator = ensembles.SeededGenerator(seed, index)
    rng = generator.substream(99).rng()
    d_sys = int(rng.choice(dsys))
    d_res = d_sys if family == "demon" else int(rng.choice(dres))
    system, res = ensembles.build_instance(family, generator, d_sys, d_res)
    report = theorem.verify_theorem(
        system, res, tol_diag, tol_unital, tol_factorization, cutoff
    )
    row = {"index": index, "d_sys": d_sys, "d_res": d_res}
    row.update((name, getattr(report, name)) for name in TRIAL_FIELDS)
    return row


def _run_trial(arguments):
    return run_trial(*arguments)


def _max(values):
    values = [value for value in values if value is not None]
    return max(values) if values else None


def summarize(rows):
    invariant = [row for row in rows if row["diag_invariant"]]
    return {
        "trials": len(rows),
        "diag_invariant": len(invariant),
        "unital": sum(1 for row in rows if row["unital"]),
        "violations": sum(1 for row in rows if not row["implication_consistent"]),
        "max_diag_residual": _max(row["diag_residual"] for row in rows),
        "max_agreement_residual": _max(row["agreement_residual"] for row in rows),
        "max_unitality_defect_invariant": _max(
            row["unitality_defect"] for row in invariant
        ),
        "max_off_block_norm_invariant": _max(
            row["worst_off_block_norm"] for row in invariant
        ),
        "max_norm_defect_invariant": _max(row["worst_norm_defect"] for row in invariant),
        "max_dephasing_residual": _max(row["dephasing_residual"] for row in rows),
        "max_reconstruction_defect": _max(row["reconstruction_defect"] for row in rows),
    }


def sweep(
    family,
    trials,
    dsys=(2,),
    dres=(2,),
    seed=0,
    tol_diag=None,
    tol_unital=None,
    workers=None,
    timing=True,
):
    if family not in ensembles.FAMILIES:
        raise ValidationError(
            "unknown family %r, expected one of %s" % (family, ", ".join(ensembles.FAMILIES))
        )
    if trials < 1:
        raise ValidationError("a sweep needs at least one trial")
    if min(list(dsys) + list(dres), default=0) < 1:
        raise ValidationError("dimensions must be at least 1")
    started = time.perf_counter()
    tol_diag = _first(tol_diag, settings.TOL_DIAG)
    tol_unital = _first(tol_unital, settings.TOL_UNITAL)
    workers = _first(workers, settings.SWEEP_WORKERS)
    tol_factorization = settings.TOL_FACTORIZATION
    cutoff = settings.EIGENVALUE_CUTOFF
    dsys, dres = list(dsys), list(dres)

    arguments = [
        (family, seed, index, dsys, dres, tol_diag, tol_unital, tol_factorization, cutoff)
        for index in range(trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map keeps trial order whatever the completion order
            rows = list(executor.map(_run_trial, arguments, chunksize=16))
    else:
        rows = [_run_trial(argument) for argument in arguments]

    summary = summarize(rows)
    logger.info(
        "%s sweep: %d trials, %d diagonal-invariant, %d unital, %d violations",
        family,
        summary["trials"],
        summary["diag_invariant"],
        summary["unital"],
        summary["violations"],
    )
    data = {
        "version": settings.SPEC_VERSION,
        "kind": "sweep",
        "config": {
            "family": family,
            "trials": trials,
            "dsys": dsys,
            "dres": dres,
            "seed": seed,
            "tol_diag": tol_diag,
            "tol_unital": tol_unital,
        },
        "summary": summary,
        "trials": rows,
    }
    if timing:
        data["timing"] = {"elapsed_seconds": time.perf_counter() - started}
    return SweepReportSerializer(data).data


def _identity_scenario(generator):
    h_sys = ensembles.random_hermitian(generator.substream(1), 2)
    h_res = ensembles.random_hermitian(generator.substream(2), 2)
    system = HamiltonianSystem(2, 2, h_sys, h_res, np.zeros((4, 4)), t=1.0)
    pi0 = ensembles.random_density(generator.substream(4), 2)
    return system, ReservoirState.from_density(pi0)


def _collision_trajectory(generator, steps=10):
    rho = ensembles.random_density(generator.substream(6), 2, rank=1)
    return lambda channel: channels.entropy_trajectory(channel, rho, steps)


def demo(name, timing=True):
    "Run one of the built-in scenarios with the fixed demo seed."
    if name not in DEMOS:
        raise ValidationError(
            "unknown demo %r, expected one of %s" % (name, ", ".join(DEMOS))
        )
    seed = settings.DEMO_SEED
    generator = ensembles.SeededGenerator(seed, 0)
    trajectory = None
    if name == "identity":
        system, res = _identity_scenario(generator)
    elif name == "demon":
        u_t, res = ensembles.demon_instance(2)
        system = UnitarySystem(2, 2, u_t=u_t)
    else:
        system, res = ensembles.build_instance("controlled", generator, 2, 3 if name == "controlled" else 2)
        if name == "collision":
            trajectory = _collision_trajectory(generator)

    description = SystemDescription(system, res)
    report, _ = analyze(
        description,
        digest({"scenario": name, "seed": seed}),
        timing=timing,
        scenario=name,
        trajectory=trajectory,
    )
    return report


def render(data, indent=None):
    if indent is None:
        indent = settings.REPORT_INDENT
    return JSONRenderer().render(data, renderer_context={"indent": indent})


def load_report(content):
    """
    Parse and validate a rendered report; returns the validated data.
    """
    data = JSONParser().parse(BytesIO(content))
    serializer_class = {
        "analysis": AnalysisReportSerializer,
        "sweep": SweepReportSerializer,
    }.get(data.get("kind"))
    if serializer_class is None:
        raise ValidationError("unknown report kind %r" % data.get("kind"))
    serializer = serializer_class(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data
