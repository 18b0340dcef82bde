#pragma once
// Coherent correlation receivers. Each bit window is correlated against
// locally regenerated reference carriers; the references are produced by the
// same sample routine the modulators use, so in a noiseless loopback the
// decision statistics are exact.

#include <cstdint>
#include <span>
#include <vector>

#include "modemsim/modulators.hpp"
#include "modemsim/signal.hpp"

namespace modemsim {

// Plain dot product over one bit window. Throws "streams differ in length"
// when the spans disagree, "empty signal" when both are empty.
double correlate_bit(std::span<const double> segment, std::span<const double> reference);

// Per-bit record of what the receiver saw. stat2 is the second correlator
// (FSK only, 0 elsewhere). Ties decide 1.
struct DecisionTrace {
    double stat1 = 0.0;
    double stat2 = 0.0;
    double threshold = 0.0;
    Bit decision = 0;
};

struct DemodResult {
    BitStream bits;
    std::vector<DecisionTrace> traces;
};

// ASK: correlate against the bit-1 carrier, decide 1 iff stat >= A^2*spb/4
// (halfway between the on and off cluster means).
DemodResult demod_ask(const Waveform& w, const ModemConfig& cfg, std::uint64_t first_bit = 0);

// FSK: two correlators, one per tone; decide 1 iff stat1 >= stat2.
DemodResult demod_fsk(const Waveform& w, const ModemConfig& cfg, std::uint64_t first_bit = 0);

// BPSK: correlate against the carrier, decide 1 iff stat >= 0.
DemodResult demod_bpsk(const Waveform& w, const ModemConfig& cfg, std::uint64_t first_bit = 0);

// Dispatch on scheme. The waveform length must be a whole number of bit
// windows ("length not bit-aligned") and non-empty ("empty signal").
DemodResult demodulate(Scheme scheme, const Waveform& w, const ModemConfig& cfg,
                       std::uint64_t first_bit = 0);

}  // namespace modemsim
