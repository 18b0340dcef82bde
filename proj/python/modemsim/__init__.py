"""Digital modulation simulator: ask/fsk/bpsk over awgn and bit-flip channels."""

from ._core import (
    BerResult,
    BitStream,
    DecisionTrace,
    DemodResult,
    ModemConfig,
    SweepPoint,
    Waveform,
    apply_awgn,
    apply_bsc,
    binomial_ci95,
    bit_error_rate,
    demodulate,
    generate_bits,
    mean_power,
    modulate,
    noise_sigma_for_ebn0,
    q_function,
    ratio_to_db,
    run_sweep,
    snr_from_powers,
    theoretical_ber,
)

__version__ = "0.1.0"

__all__ = [
    "BerResult",
    "BitStream",
    "DecisionTrace",
    "DemodResult",
    "ModemConfig",
    "SweepPoint",
    "Waveform",
    "apply_awgn",
    "apply_bsc",
    "binomial_ci95",
    "bit_error_rate",
    "demodulate",
    "generate_bits",
    "mean_power",
    "modulate",
    "noise_sigma_for_ebn0",
    "q_function",
    "ratio_to_db",
    "run_sweep",
    "snr_from_powers",
    "theoretical_ber",
]
