#pragma once
// Bit stream -> passband waveform. All carriers run free on the global time
// axis (t = sample_index / fs), there is no per-bit phase reset. first_bit
// says where the block sits on that axis, which lets callers modulate a long
// stream in chunks and get exactly the samples a single call would produce.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>

#include "modemsim/signal.hpp"

namespace modemsim {

enum class Scheme { ask, fsk, bpsk };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);  // "ask", "fsk", "bpsk"

namespace detail {
// The one place carrier samples are computed. Modulators and demodulators
// both call this so correlation references match transmitted samples bit for
// bit, including chunked processing (global_index keeps the absolute phase).
inline double carrier_sample(double amplitude, double freq_hz, double theta_rad,
                             double sample_rate_hz, std::uint64_t global_index) {
    double t = static_cast<double>(global_index) / sample_rate_hz;
    return amplitude * std::cos(2.0 * std::numbers::pi * freq_hz * t + theta_rad);
}
}  // namespace detail

// On-off keying: bit 1 sends A*cos(2*pi*fc*t), bit 0 sends silence.
Waveform modulate_ask(const BitStream& bits, const ModemConfig& cfg,
                      std::uint64_t first_bit = 0);

// Two switched oscillators: bit 1 -> f1/theta1, bit 0 -> f2/theta2.
Waveform modulate_fsk(const BitStream& bits, const ModemConfig& cfg,
                      std::uint64_t first_bit = 0);

// Antipodal: the carrier multiplied by +1 for bit 1, -1 for bit 0.
Waveform modulate_bpsk(const BitStream& bits, const ModemConfig& cfg,
                       std::uint64_t first_bit = 0);

Waveform modulate(Scheme scheme, const BitStream& bits, const ModemConfig& cfg,
                  std::uint64_t first_bit = 0);

}  // namespace modemsim
