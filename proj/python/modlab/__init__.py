"""Finite-dimensional modular theory and horizon quasifree-state numerics."""

from ._core import (
    ModlabError,
    araki_relative_entropy,
    bump,
    coherent_relent,
    gns,
    kms_dilation_check,
    kms_smeared_check,
    lambda_1d,
    list_experiments,
    run_experiment,
    tunneling_overlap,
    verify_tomita_takesaki,
)

__all__ = [
    "ModlabError",
    "araki_relative_entropy",
    "bump",
    "coherent_relent",
    "gns",
    "kms_dilation_check",
    "kms_smeared_check",
    "lambda_1d",
    "list_experiments",
    "run_experiment",
    "tunneling_overlap",
    "verify_tomita_takesaki",
]
