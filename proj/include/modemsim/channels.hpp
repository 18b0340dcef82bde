#pragma once
// Channel models: additive white Gaussian noise on waveforms and the binary
// symmetric (bit flip) channel on bit streams.

#include <optional>

#include "modemsim/signal.hpp"

namespace modemsim {

// Per-sample noise level for a target Eb/N0. Eb comes from the measured mean
// power of the waveform (Eb = P / bit_rate), not from nominal amplitude, so
// ASK's half-silent waveforms are handled correctly. sigma = sqrt(N0 * fs / 2).
// Throws "no signal energy" when the waveform power is zero.
double noise_sigma_for_ebn0(const Waveform& w, const ModemConfig& cfg, double ebn0_db);

// Noise strength, given either as an Eb/N0 target or directly as sigma.
// Exactly one of the two must be set.
struct AwgnSpec {
    std::optional<double> ebn0_db;
    std::optional<double> noise_sigma;  // >= 0; 0 passes the waveform through untouched

    static AwgnSpec from_ebn0_db(double db) { return {db, std::nullopt}; }
    static AwgnSpec from_sigma(double sigma) { return {std::nullopt, sigma}; }
    void validate() const;
};

// out[i] = in[i] + sigma * N(0,1). Draws one normal per sample in order, and
// none at all when sigma == 0, so a zero-noise run costs no rng state.
Waveform apply_awgn(const Waveform& w, const AwgnSpec& spec, const ModemConfig& cfg,
                    RandomSource& rng);

// Binary symmetric channel: each bit flips independently with probability p.
struct BscSpec {
    double error_rate_p = 0.0;  // in [0, 1]
    void validate() const;
};

// Consumes one uniform per bit even when p == 0, so the draw count never
// depends on the flip outcomes.
BitStream apply_bsc(const BitStream& bits, const BscSpec& spec, RandomSource& rng);

}  // namespace modemsim
