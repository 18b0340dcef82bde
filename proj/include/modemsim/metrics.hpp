#pragma once
// Error counting, closed-form reference curves and the Monte Carlo sweep
// engine that ties the whole pipeline together.

#include <cstdint>
#include <optional>
#include <vector>

#include "modemsim/modulators.hpp"
#include "modemsim/signal.hpp"

namespace modemsim {

struct BerResult {
    std::size_t total_bits = 0;
    std::size_t error_bits = 0;
    double ber = 0.0;
    std::vector<std::size_t> error_positions;  // 0-based
};

// Position-by-position comparison. Throws "streams differ in length" on a
// size mismatch and "empty signal" when both are empty.
BerResult bit_error_rate(const BitStream& sent, const BitStream& received);

struct SnrResult {
    double ratio = 0.0;
    double db = 0.0;
};

// signal power / noise power, also in dB. Powers must be positive.
SnrResult snr_from_powers(double signal_power, double noise_power);

// Gaussian tail probability Q(x) = P(N(0,1) > x), evaluated as
// 0.5 * erfc(x / sqrt(2)) with the rational-Chebyshev erfc below.
double q_function(double x);

namespace detail {
// Self-contained complementary error function (the classic rational
// Chebyshev approximation; tests hold it to ~1e-14 relative against libm).
// Keeps reference curves identical across platforms and libm versions.
double erfc_cody(double x);
}  // namespace detail

// Closed-form bit error probability over AWGN at the given Eb/N0, optionally
// behind a bit-flip channel with error rate p (applied before modulation):
//   ask  : Q(sqrt(gamma))      average-energy on/off keying, coherent
//   fsk  : Q(sqrt(gamma))      orthogonal tones, coherent
//   bpsk : Q(sqrt(2*gamma))
// where gamma = 10^(ebn0_db/10). The flip channel composes as
// total = p*(1-q) + (1-p)*q.
double theoretical_ber(Scheme scheme, double ebn0_db, double pre_channel_error_rate = 0.0);

struct BinomialCi {
    double low = 0.0;
    double high = 0.0;
};

// 95% confidence interval for an observed error count: normal approximation
// with a 0.5/n continuity guard, clamped to [0, 1]. Cheap, and at the sample
// sizes sweeps use (>= 1e4) indistinguishable from the exact interval.
BinomialCi binomial_ci95(std::size_t errors, std::size_t trials);

// One measured grid point.
struct SweepPoint {
    Scheme scheme = Scheme::ask;
    double ebn0_db = 0.0;
    double pre_channel_error_rate = 0.0;
    std::size_t bits_sent = 0;
    std::size_t bit_errors = 0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Monte Carlo run description. Randomness is derived per point from
// master_seed (master -> scheme stream -> point stream -> bits/flip/noise
// substreams), so every point is reproducible on its own and the result does
// not depend on execution order or thread count.
struct SweepSpec {
    Scheme scheme = Scheme::ask;
    std::vector<double> ebn0_grid_db;
    double pre_channel_error_rate = 0.0;
    std::size_t bits_per_point = 100000;
    ModemConfig cfg{};
    std::uint64_t master_seed = 0;
    std::optional<double> sigma_override;  // bypass Eb/N0 mapping; 0 = noiseless
    unsigned threads = 0;                  // 0 = hardware concurrency
};

// Pipeline per point: generate bits, flip channel, modulate, add noise at the
// sigma that realizes the requested Eb/N0 for the measured waveform power,
// demodulate, count errors against the pre-flip bits. Long streams are
// processed in chunks; results are bit-identical to a single-shot run.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

}  // namespace modemsim
