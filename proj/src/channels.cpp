#include "modemsim/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace modemsim {

double noise_sigma_for_ebn0(const Waveform& w, const ModemConfig& cfg, double ebn0_db) {
    cfg.validate();
    double p = mean_power(w);
    if (p <= 0.0) throw std::invalid_argument("no signal energy");
    double eb = p / cfg.bit_rate_hz;
    double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
    return std::sqrt(n0 * cfg.sample_rate_hz() / 2.0);
}

void AwgnSpec::validate() const {
    if (ebn0_db.has_value() == noise_sigma.has_value())
        throw std::invalid_argument("set exactly one of ebn0_db and noise_sigma");
    if (noise_sigma && !(*noise_sigma >= 0.0))
        throw std::invalid_argument("noise sigma must be non-negative");
}

Waveform apply_awgn(const Waveform& w, const AwgnSpec& spec, const ModemConfig& cfg,
                    RandomSource& rng) {
    spec.validate();
    if (w.samples.empty()) throw std::invalid_argument("empty signal");
    double sigma = spec.noise_sigma ? *spec.noise_sigma
                                    : noise_sigma_for_ebn0(w, cfg, *spec.ebn0_db);
    Waveform out = w;
    if (sigma == 0.0) return out;
    for (double& s : out.samples) s += sigma * rng.normal();
    return out;
}

void BscSpec::validate() const {
    if (!(error_rate_p >= 0.0 && error_rate_p <= 1.0))
        throw std::invalid_argument("error rate must be in [0, 1]");
}

BitStream apply_bsc(const BitStream& bits, const BscSpec& spec, RandomSource& rng) {
    spec.validate();
    std::vector<Bit> out;
    out.reserve(bits.size());
    for (Bit b : bits) {
        bool flip = rng.uniform() < spec.error_rate_p;
        out.push_back(flip ? static_cast<Bit>(1 - b) : b);
    }
    return BitStream(std::move(out));
}

}  // namespace modemsim
