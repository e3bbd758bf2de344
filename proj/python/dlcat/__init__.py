"""Exact Kazhdan-Lusztig, torus and Deligne-Lusztig character computations."""

from ._core import (
    DlcatError,
    GatedFeatureError,
    Group,
    IdentityViolation,
    InvalidModulus,
    KLTable,
    UnsupportedError,
    UsageError,
    ValidationError,
    brute_force_fixed_points,
    certificate,
    duality_sign,
    fixed_torus,
    kl_table,
    laurent_bar,
    monodromic_kl,
    presets,
    run_cli,
    series,
    trace_sign,
)

__all__ = [
    "DlcatError",
    "GatedFeatureError",
    "Group",
    "IdentityViolation",
    "InvalidModulus",
    "KLTable",
    "UnsupportedError",
    "UsageError",
    "ValidationError",
    "brute_force_fixed_points",
    "certificate",
    "duality_sign",
    "fixed_torus",
    "kl_table",
    "laurent_bar",
    "monodromic_kl",
    "presets",
    "run_cli",
    "series",
    "trace_sign",
]
