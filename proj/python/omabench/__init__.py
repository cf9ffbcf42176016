"""Noise-robustness benchmark of output-only modal identification on simulated beams."""

from ._omabench import (
    DEFAULT_SEED,
    Method,
    Record,
    SupportCondition,
    analytical_frequencies,
    config_to_json,
    corrupt,
    default_config_json,
    fdd_identify,
    identify_and_pair,
    mac,
    modal_analysis,
    nl_to_snr_db,
    pp_identify,
    run_campaign,
    run_single,
    simulate,
    ssi_identify,
)

__all__ = [
    "DEFAULT_SEED",
    "Method",
    "Record",
    "SupportCondition",
    "analytical_frequencies",
    "config_to_json",
    "corrupt",
    "default_config_json",
    "fdd_identify",
    "identify_and_pair",
    "mac",
    "modal_analysis",
    "nl_to_snr_db",
    "pp_identify",
    "run_campaign",
    "run_single",
    "simulate",
    "ssi_identify",
]
