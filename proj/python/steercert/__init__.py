"""Certify joint measurability of POVMs and (un)steerability of state and
channel assemblages, with machine-checkable witnesses.

All documents are plain dicts mirroring the JSON schemas of the command-line
tool; reports come back as dicts with ``verdict``, ``robustness``,
``witness`` and solver diagnostics.
"""

import json as _json

try:
    from ._steercert import (
        JsonError,
        busch_pair_margin,
        busch_pair_oracle,
        check_channel_json as _check_channel_json,
        check_joint_measurability_json as _check_jm_json,
        check_steering_json as _check_steering_json,
        constant_psiplus_extension_json as _constant_psiplus_extension_json,
        theorem_json as _theorem_json,
        white_noise_mix_json as _white_noise_mix_json,
    )
except ImportError:  # development layout: compiled module on sys.path
    from _steercert import (
        JsonError,
        busch_pair_margin,
        busch_pair_oracle,
        check_channel_json as _check_channel_json,
        check_joint_measurability_json as _check_jm_json,
        check_steering_json as _check_steering_json,
        constant_psiplus_extension_json as _constant_psiplus_extension_json,
        theorem_json as _theorem_json,
        white_noise_mix_json as _white_noise_mix_json,
    )

__version__ = "0.1.0"

__all__ = [
    "JsonError",
    "busch_pair_margin",
    "busch_pair_oracle",
    "check_joint_measurability",
    "check_steering",
    "check_channel",
    "theorem",
    "white_noise_mix",
    "constant_psiplus_extension",
    "sweep",
]

_SOLVER_DEFAULTS = dict(tol=1e-7, max_iter=50000, seed=0, tol_t=1e-4)


def _solver_kwargs(overrides):
    options = dict(_SOLVER_DEFAULTS)
    options.update(overrides)
    return options


def check_joint_measurability(measurements, **options):
    """Decide whether all POVMs of a measurement assemblage are marginals of
    one parent POVM. Returns a report dict; on the feasible side the witness
    is the parent POVM."""
    args = _solver_kwargs(options)
    return _json.loads(_check_jm_json(_json.dumps(measurements), **args))


def check_steering(assemblage, **options):
    """Decide whether a state assemblage admits a local-hidden-state model."""
    args = _solver_kwargs(options)
    return _json.loads(_check_steering_json(_json.dumps(assemblage), **args))


def check_channel(channel_input, **options):
    """Decide channel steerability. Accepts either a channel-assemblage dict
    or ``{"extension": ..., "measurements": ...}`` to measure here."""
    args = _solver_kwargs(options)
    return _json.loads(_check_channel_json(_json.dumps(channel_input), **args))


def theorem(measurements, extensions=(), **options):
    """Cross-check joint measurability of ``measurements`` against channel
    steering for every extension (the constant maximally-entangled extension
    is always appended). Returns the combined report."""
    document = {"measurements": measurements, "extensions": list(extensions)}
    args = _solver_kwargs(options)
    return _json.loads(_theorem_json(_json.dumps(document), **args))


def white_noise_mix(measurements, t):
    """Mix every POVM element with white noise: (1-t) M + t tr(M) I/dim."""
    return _json.loads(_white_noise_mix_json(_json.dumps(measurements), t))


def constant_psiplus_extension(d, dim_c):
    """Extension that ignores its input and emits a maximally entangled pair;
    measuring it steers exactly when the measurements are incompatible."""
    return _json.loads(_constant_psiplus_extension_json(d, dim_c))


def sweep(measurements, grid=21, **options):
    """Scan the white-noise scale eta over ``grid`` points on [0, 1] and
    return ``[{"eta", "verdict", "robustness"}, ...]`` with eta = 1 the
    assemblage as given."""
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    rows = []
    for i in range(grid):
        eta = i / (grid - 1)
        report = check_joint_measurability(
            white_noise_mix(measurements, 1.0 - eta), **options
        )
        rows.append(
            {
                "eta": eta,
                "verdict": report["verdict"],
                "robustness": report["robustness"],
            }
        )
    return rows
