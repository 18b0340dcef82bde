#pragma once
// Core value types shared by the whole library: bit streams, sampled
// waveforms, modem configuration and the deterministic random source.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace modemsim {

using Bit = std::uint8_t;

// Ordered sequence of 0/1 values. Construction rejects anything else so the
// rest of the library never has to re-check.
class BitStream {
public:
    BitStream() = default;
    explicit BitStream(std::vector<Bit> bits);

    static BitStream from_string(std::string_view text);  // "0101..."
    std::string to_string() const;

    void push_back(Bit b);
    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    Bit operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<Bit>& bits() const noexcept { return bits_; }

    auto begin() const noexcept { return bits_.begin(); }
    auto end() const noexcept { return bits_.end(); }

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<Bit> bits_;
};

// Real-valued sampled signal at a fixed rate.
struct Waveform {
    double sample_rate_hz = 0.0;
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_sec() const noexcept {
        return sample_rate_hz > 0.0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
};

// Average of sample^2 over the whole waveform. Throws std::invalid_argument
// ("empty signal") when there are no samples.
double mean_power(const Waveform& w);

// 10*log10(ratio). Throws std::invalid_argument ("non-positive ratio") for
// ratio <= 0.
double ratio_to_db(double ratio);

// Carrier and timing parameters used by every modulator/demodulator pair.
// The sample clock is locked to the bit clock: sample_rate = bit_rate * spb.
struct ModemConfig {
    double amplitude = 1.0;        // carrier peak A
    double carrier_freq_hz = 4.0;  // fc for ASK and BPSK
    double fsk_f1_hz = 5.0;        // FSK tone for bit 1
    double fsk_f2_hz = 1.0;        // FSK tone for bit 0
    double fsk_theta1_rad = 0.0;
    double fsk_theta2_rad = 0.0;
    double bit_rate_hz = 1.0;
    int samples_per_bit = 64;

    double sample_rate_hz() const noexcept { return bit_rate_hz * samples_per_bit; }
    double bit_period_sec() const noexcept { return 1.0 / bit_rate_hz; }

    // Throws std::invalid_argument on bad values. Messages worth knowing:
    // "undersampled carrier" when samples_per_bit * bit_rate < 4 * max carrier
    // frequency, "degenerate FSK pair" when f1 == f2.
    void validate() const;
};

// Deterministic stream generator: xoshiro256++ seeded through splitmix64.
// Same seed gives the same draw sequence on every platform. derive() makes
// an independent child stream from the parent seed alone, so derived streams
// do not depend on how many draws the parent has made.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next_u64();
    double uniform();  // [0, 1), 53-bit resolution
    double normal();   // standard normal, Box-Muller pair with one cached

    RandomSource derive(std::uint64_t stream) const;

private:
    std::uint64_t seed_ = 0;
    std::array<std::uint64_t, 4> state_{};
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// n independent equiprobable bits drawn from rng.
BitStream generate_bits(std::size_t n, RandomSource& rng);

}  // namespace modemsim
