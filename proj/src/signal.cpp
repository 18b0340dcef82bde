#include "modemsim/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace modemsim {

namespace {

void check_bit(Bit b) {
    if (b > 1) throw std::invalid_argument("bit value out of range");
}

constexpr std::uint64_t GOLDEN_GAMMA = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

BitStream::BitStream(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_) check_bit(b);
}

BitStream BitStream::from_string(std::string_view text) {
    std::vector<Bit> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '0') out.push_back(0);
        else if (c == '1') out.push_back(1);
        else throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
    return BitStream(std::move(out));
}

std::string BitStream::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (Bit b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

void BitStream::push_back(Bit b) {
    check_bit(b);
    bits_.push_back(b);
}

double mean_power(const Waveform& w) {
    if (w.samples.empty()) throw std::invalid_argument("empty signal");
    double acc = 0.0;
    for (double s : w.samples) acc += s * s;
    return acc / static_cast<double>(w.samples.size());
}

double ratio_to_db(double ratio) {
    if (!(ratio > 0.0)) throw std::invalid_argument("non-positive ratio");
    return 10.0 * std::log10(ratio);
}

void ModemConfig::validate() const {
    if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");
    if (!(bit_rate_hz > 0.0)) throw std::invalid_argument("bit rate must be positive");
    if (samples_per_bit < 8) throw std::invalid_argument("samples_per_bit must be at least 8");
    if (!(carrier_freq_hz > 0.0) || !(fsk_f1_hz > 0.0) || !(fsk_f2_hz > 0.0))
        throw std::invalid_argument("carrier frequencies must be positive");
    if (fsk_f1_hz == fsk_f2_hz) throw std::invalid_argument("degenerate FSK pair");
    double fmax = std::max({carrier_freq_hz, fsk_f1_hz, fsk_f2_hz});
    // want at least 4 samples per carrier cycle, i.e. fs >= 4 * fmax
    if (bit_rate_hz * samples_per_bit < 4.0 * fmax)
        throw std::invalid_argument("undersampled carrier");
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
    // splitmix64 expansion of the seed into the xoshiro state
    std::uint64_t x = seed;
    for (auto& s : state_) {
        x += GOLDEN_GAMMA;
        s = splitmix64_mix(x);
    }
}

std::uint64_t RandomSource::next_u64() {
    auto& s = state_;
    std::uint64_t result = std::rotl(s[0] + s[3], 23) + s[0];
    std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    return result;
}

double RandomSource::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // u1 shifted into (0,1] so the log never sees zero
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

RandomSource RandomSource::derive(std::uint64_t stream) const {
    return RandomSource(splitmix64_mix(seed_ + GOLDEN_GAMMA * (stream + 1)));
}

BitStream generate_bits(std::size_t n, RandomSource& rng) {
    std::vector<Bit> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(static_cast<Bit>(rng.next_u64() >> 63));
    return BitStream(std::move(out));
}

}  // namespace modemsim
