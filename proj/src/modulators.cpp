#include "modemsim/modulators.hpp"

#include <stdexcept>

namespace modemsim {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::ask: return "ask";
        case Scheme::fsk: return "fsk";
        case Scheme::bpsk: return "bpsk";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "ask") return Scheme::ask;
    if (name == "fsk") return Scheme::fsk;
    if (name == "bpsk") return Scheme::bpsk;
    return std::nullopt;
}

namespace {

template <class PerBit>
Waveform render(const BitStream& bits, const ModemConfig& cfg, std::uint64_t first_bit,
                PerBit&& sample_for) {
    cfg.validate();
    const auto spb = static_cast<std::uint64_t>(cfg.samples_per_bit);
    const double fs = cfg.sample_rate_hz();
    Waveform w;
    w.sample_rate_hz = fs;
    w.samples.resize(bits.size() * spb);
    std::size_t out = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const std::uint64_t base = (first_bit + k) * spb;
        for (std::uint64_t i = 0; i < spb; ++i)
            w.samples[out++] = sample_for(bits[k], base + i);
    }
    return w;
}

}  // namespace

Waveform modulate_ask(const BitStream& bits, const ModemConfig& cfg, std::uint64_t first_bit) {
    const double fs = cfg.sample_rate_hz();
    return render(bits, cfg, first_bit, [&](Bit b, std::uint64_t idx) {
        return b ? detail::carrier_sample(cfg.amplitude, cfg.carrier_freq_hz, 0.0, fs, idx) : 0.0;
    });
}

Waveform modulate_fsk(const BitStream& bits, const ModemConfig& cfg, std::uint64_t first_bit) {
    const double fs = cfg.sample_rate_hz();
    return render(bits, cfg, first_bit, [&](Bit b, std::uint64_t idx) {
        return b ? detail::carrier_sample(cfg.amplitude, cfg.fsk_f1_hz, cfg.fsk_theta1_rad, fs, idx)
                 : detail::carrier_sample(cfg.amplitude, cfg.fsk_f2_hz, cfg.fsk_theta2_rad, fs, idx);
    });
}

Waveform modulate_bpsk(const BitStream& bits, const ModemConfig& cfg, std::uint64_t first_bit) {
    const double fs = cfg.sample_rate_hz();
    return render(bits, cfg, first_bit, [&](Bit b, std::uint64_t idx) {
        double c = detail::carrier_sample(cfg.amplitude, cfg.carrier_freq_hz, 0.0, fs, idx);
        return b ? c : -c;
    });
}

Waveform modulate(Scheme scheme, const BitStream& bits, const ModemConfig& cfg,
                  std::uint64_t first_bit) {
    switch (scheme) {
        case Scheme::ask: return modulate_ask(bits, cfg, first_bit);
        case Scheme::fsk: return modulate_fsk(bits, cfg, first_bit);
        case Scheme::bpsk: return modulate_bpsk(bits, cfg, first_bit);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace modemsim
