#include "modemsim/demodulators.hpp"

#include <stdexcept>

namespace modemsim {

double correlate_bit(std::span<const double> segment, std::span<const double> reference) {
    if (segment.size() != reference.size())
        throw std::invalid_argument("streams differ in length");
    if (segment.empty()) throw std::invalid_argument("empty signal");
    double acc = 0.0;
    for (std::size_t i = 0; i < segment.size(); ++i) acc += segment[i] * reference[i];
    return acc;
}

namespace {

std::size_t checked_bit_count(const Waveform& w, const ModemConfig& cfg) {
    cfg.validate();
    if (w.samples.empty()) throw std::invalid_argument("empty signal");
    const auto spb = static_cast<std::size_t>(cfg.samples_per_bit);
    if (w.samples.size() % spb != 0) throw std::invalid_argument("length not bit-aligned");
    return w.samples.size() / spb;
}

}  // namespace

DemodResult demod_ask(const Waveform& w, const ModemConfig& cfg, std::uint64_t first_bit) {
    const std::size_t nbits = checked_bit_count(w, cfg);
    const auto spb = static_cast<std::uint64_t>(cfg.samples_per_bit);
    const double fs = cfg.sample_rate_hz();
    const double threshold = cfg.amplitude * cfg.amplitude * cfg.samples_per_bit / 4.0;

    DemodResult r;
    r.traces.reserve(nbits);
    std::vector<double> ref(spb);
    for (std::size_t k = 0; k < nbits; ++k) {
        const std::uint64_t base = (first_bit + k) * spb;
        for (std::uint64_t i = 0; i < spb; ++i)
            ref[i] = detail::carrier_sample(cfg.amplitude, cfg.carrier_freq_hz, 0.0, fs, base + i);
        double stat = correlate_bit({w.samples.data() + k * spb, spb}, ref);
        Bit d = stat >= threshold ? 1 : 0;
        r.bits.push_back(d);
        r.traces.push_back({stat, 0.0, threshold, d});
    }
    return r;
}

DemodResult demod_fsk(const Waveform& w, const ModemConfig& cfg, std::uint64_t first_bit) {
    const std::size_t nbits = checked_bit_count(w, cfg);
    const auto spb = static_cast<std::uint64_t>(cfg.samples_per_bit);
    const double fs = cfg.sample_rate_hz();

    DemodResult r;
    r.traces.reserve(nbits);
    std::vector<double> ref1(spb), ref2(spb);
    for (std::size_t k = 0; k < nbits; ++k) {
        const std::uint64_t base = (first_bit + k) * spb;
        for (std::uint64_t i = 0; i < spb; ++i) {
            ref1[i] = detail::carrier_sample(cfg.amplitude, cfg.fsk_f1_hz, cfg.fsk_theta1_rad,
                                             fs, base + i);
            ref2[i] = detail::carrier_sample(cfg.amplitude, cfg.fsk_f2_hz, cfg.fsk_theta2_rad,
                                             fs, base + i);
        }
        std::span<const double> seg{w.samples.data() + k * spb, spb};
        double s1 = correlate_bit(seg, ref1);
        double s2 = correlate_bit(seg, ref2);
        Bit d = s1 >= s2 ? 1 : 0;
        r.bits.push_back(d);
        r.traces.push_back({s1, s2, 0.0, d});
    }
    return r;
}

DemodResult demod_bpsk(const Waveform& w, const ModemConfig& cfg, std::uint64_t first_bit) {
    const std::size_t nbits = checked_bit_count(w, cfg);
    const auto spb = static_cast<std::uint64_t>(cfg.samples_per_bit);
    const double fs = cfg.sample_rate_hz();

    DemodResult r;
    r.traces.reserve(nbits);
    std::vector<double> ref(spb);
    for (std::size_t k = 0; k < nbits; ++k) {
        const std::uint64_t base = (first_bit + k) * spb;
        for (std::uint64_t i = 0; i < spb; ++i)
            ref[i] = detail::carrier_sample(cfg.amplitude, cfg.carrier_freq_hz, 0.0, fs, base + i);
        double stat = correlate_bit({w.samples.data() + k * spb, spb}, ref);
        Bit d = stat >= 0.0 ? 1 : 0;
        r.bits.push_back(d);
        r.traces.push_back({stat, 0.0, 0.0, d});
    }
    return r;
}

DemodResult demodulate(Scheme scheme, const Waveform& w, const ModemConfig& cfg,
                       std::uint64_t first_bit) {
    switch (scheme) {
        case Scheme::ask: return demod_ask(w, cfg, first_bit);
        case Scheme::fsk: return demod_fsk(w, cfg, first_bit);
        case Scheme::bpsk: return demod_bpsk(w, cfg, first_bit);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace modemsim
