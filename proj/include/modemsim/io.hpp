#pragma once
// File formats. These are the compatibility surface other tooling scripts
// against, so the shapes are fixed:
//   bits     : a single line of '0'/'1' characters, optional trailing newline
//   waveform : CSV, header "t_sec,amplitude", one row per sample
//   sweep    : CSV, header "scheme,ebn0_db,error_rate_p,bits_sent,bit_errors,
//              ber,ci_low,ci_high", scheme spelled ask|fsk|bpsk
//   trace    : CSV, header "bit_index,stat1,stat2,threshold,decision"
// Floats are written with enough digits to round-trip exactly.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "modemsim/demodulators.hpp"
#include "modemsim/metrics.hpp"
#include "modemsim/signal.hpp"

namespace modemsim {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

void write_bits_file(const std::filesystem::path& path, const BitStream& bits);
BitStream read_bits_file(const std::filesystem::path& path);

void write_waveform_csv(const std::filesystem::path& path, const Waveform& w);
// Rate is recovered from the time column; needs at least two rows.
Waveform read_waveform_csv(const std::filesystem::path& path);

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points);
std::vector<SweepPoint> read_sweep_csv(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, std::span<const DecisionTrace> traces);

}  // namespace modemsim
