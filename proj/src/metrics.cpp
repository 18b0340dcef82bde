#include "modemsim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "modemsim/channels.hpp"
#include "modemsim/demodulators.hpp"

namespace modemsim {

BerResult bit_error_rate(const BitStream& sent, const BitStream& received) {
    if (sent.size() != received.size())
        throw std::invalid_argument("streams differ in length");
    if (sent.empty()) throw std::invalid_argument("empty signal");
    BerResult r;
    r.total_bits = sent.size();
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if (sent[i] != received[i]) {
            ++r.error_bits;
            r.error_positions.push_back(i);
        }
    }
    r.ber = static_cast<double>(r.error_bits) / static_cast<double>(r.total_bits);
    return r;
}

SnrResult snr_from_powers(double signal_power, double noise_power) {
    if (!(signal_power > 0.0) || !(noise_power > 0.0))
        throw std::invalid_argument("non-positive ratio");
    double ratio = signal_power / noise_power;
    return {ratio, ratio_to_db(ratio)};
}

namespace detail {

double erfc_cody(double x) {
    static const double a[5] = {3.1611237438705656, 113.864154151050156,
                                377.485237685302021, 3209.37758913846947,
                                .185777706184603153};
    static const double b[4] = {23.6012909523441209, 244.024637934444173,
                                1282.61652607737228, 2844.23683343917062};
    static const double c[9] = {.564188496988670089, 8.88314979438837594,
                                66.1191906371416295, 298.635138197400131,
                                881.95222124176909,  1712.04761263407058,
                                2051.07837782607147, 1230.33935479799725,
                                2.15311535474403846e-8};
    static const double d[8] = {15.7449261107098347, 117.693950891312499,
                                537.181101862009858, 1621.38957456669019,
                                3290.79923573345963, 4362.61909014324716,
                                3439.36767414372164, 1230.33935480374942};
    static const double p[6] = {.305326634961232344,   .360344899949804439,
                                .125781726111229246,   .0160837851487422766,
                                6.58749161529837803e-4, .0163153871373020978};
    static const double q[5] = {2.56852019228982242,  1.87295284992346047,
                                .527905102951428412,  .0605183413124413191,
                                .00233520497626869185};
    constexpr double thresh = 0.46875;
    constexpr double sqrpi = 5.6418958354775628695e-1;
    constexpr double xsmall = 1.11e-16;
    constexpr double xbig = 26.543;

    const double y = std::fabs(x);
    double result;
    if (y <= thresh) {
        double ysq = y > xsmall ? y * y : 0.0;
        double xnum = a[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + a[i]) * ysq;
            xden = (xden + b[i]) * ysq;
        }
        return 1.0 - x * (xnum + a[3]) / (xden + b[3]);
    }
    if (y <= 4.0) {
        double xnum = c[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + c[i]) * y;
            xden = (xden + d[i]) * y;
        }
        result = (xnum + c[7]) / (xden + d[7]);
        double ysq = std::trunc(y * 16.0) / 16.0;
        double del = (y - ysq) * (y + ysq);
        result = std::exp(-ysq * ysq) * std::exp(-del) * result;
    } else if (y < xbig) {
        double ysq = 1.0 / (y * y);
        double xnum = p[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + p[i]) * ysq;
            xden = (xden + q[i]) * ysq;
        }
        result = ysq * (xnum + p[4]) / (xden + q[4]);
        result = (sqrpi - result) / y;
        double yaint = std::trunc(y * 16.0) / 16.0;
        double del = (y - yaint) * (y + yaint);
        result = std::exp(-yaint * yaint) * std::exp(-del) * result;
    } else {
        result = 0.0;
    }
    return x < 0.0 ? 2.0 - result : result;
}

}  // namespace detail

double q_function(double x) {
    return 0.5 * detail::erfc_cody(x / std::numbers::sqrt2);
}

double theoretical_ber(Scheme scheme, double ebn0_db, double pre_channel_error_rate) {
    const double p = pre_channel_error_rate;
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("error rate must be in [0, 1]");
    double gamma = std::pow(10.0, ebn0_db / 10.0);
    double q = scheme == Scheme::bpsk ? q_function(std::sqrt(2.0 * gamma))
                                      : q_function(std::sqrt(gamma));
    // serial composition of the flip channel and the AWGN decision errors
    return p + q * (1.0 - 2.0 * p);
}

BinomialCi binomial_ci95(std::size_t errors, std::size_t trials) {
    if (trials == 0) throw std::invalid_argument("no trials");
    if (errors > trials) throw std::invalid_argument("more errors than trials");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    constexpr double z975 = 1.959963984540054;
    double half = z975 * std::sqrt(phat * (1.0 - phat) / n) + 0.5 / n;
    return {std::max(0.0, phat - half), std::min(1.0, phat + half)};
}

namespace {

constexpr std::size_t CHUNK_BITS = 4096;

BitStream slice(const BitStream& bits, std::size_t from, std::size_t count) {
    return BitStream(std::vector<Bit>(bits.bits().begin() + from,
                                      bits.bits().begin() + from + count));
}

SweepPoint run_point(const SweepSpec& spec, double ebn0_db, std::uint64_t point_index) {
    const ModemConfig& cfg = spec.cfg;
    const std::size_t n = spec.bits_per_point;

    RandomSource point_rng = RandomSource(spec.master_seed)
                                 .derive(static_cast<std::uint64_t>(spec.scheme) + 1)
                                 .derive(point_index);
    RandomSource bits_rng = point_rng.derive(0);
    RandomSource flip_rng = point_rng.derive(1);
    RandomSource noise_rng = point_rng.derive(2);

    BitStream tx = generate_bits(n, bits_rng);
    BitStream sent = apply_bsc(tx, BscSpec{spec.pre_channel_error_rate}, flip_rng);

    // pass 1: sigma from the measured mean power of the whole transmission.
    // Accumulation runs sample by sample in stream order, which makes it
    // equal to mean_power() over the one-shot waveform down to the last bit.
    double sigma;
    if (spec.sigma_override) {
        sigma = *spec.sigma_override;
        if (!(sigma >= 0.0)) throw std::invalid_argument("noise sigma must be non-negative");
    } else {
        double acc = 0.0;
        std::size_t total_samples = 0;
        for (std::size_t b = 0; b < n; b += CHUNK_BITS) {
            const std::size_t m = std::min(CHUNK_BITS, n - b);
            Waveform w = modulate(spec.scheme, slice(sent, b, m), cfg, b);
            for (double s : w.samples) acc += s * s;
            total_samples += w.samples.size();
        }
        double power = acc / static_cast<double>(total_samples);
        if (power <= 0.0) throw std::invalid_argument("no signal energy");
        double eb = power / cfg.bit_rate_hz;
        double n0 = eb / std::pow(10.0, ebn0_db / 10.0);
        sigma = std::sqrt(n0 * cfg.sample_rate_hz() / 2.0);
    }

    // pass 2: modulate again, add noise, decide, count against pre-flip bits
    std::size_t errors = 0;
    for (std::size_t b = 0; b < n; b += CHUNK_BITS) {
        const std::size_t m = std::min(CHUNK_BITS, n - b);
        Waveform w = modulate(spec.scheme, slice(sent, b, m), cfg, b);
        if (sigma != 0.0)
            for (double& s : w.samples) s += sigma * noise_rng.normal();
        DemodResult rx = demodulate(spec.scheme, w, cfg, b);
        for (std::size_t k = 0; k < m; ++k)
            if (rx.bits[k] != tx[b + k]) ++errors;
    }

    BinomialCi ci = binomial_ci95(errors, n);
    return {spec.scheme,
            ebn0_db,
            spec.pre_channel_error_rate,
            n,
            errors,
            static_cast<double>(errors) / static_cast<double>(n),
            ci.low,
            ci.high};
}

}  // namespace

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
    spec.cfg.validate();
    BscSpec{spec.pre_channel_error_rate}.validate();
    if (spec.bits_per_point == 0)
        throw std::invalid_argument("bits_per_point must be positive");
    if (spec.sigma_override && !(*spec.sigma_override >= 0.0))
        throw std::invalid_argument("noise sigma must be non-negative");

    const std::size_t npts = spec.ebn0_grid_db.size();
    std::vector<SweepPoint> out(npts);
    if (npts == 0) return out;

    unsigned threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(npts)));

    if (threads == 1) {
        for (std::size_t i = 0; i < npts; ++i)
            out[i] = run_point(spec, spec.ebn0_grid_db[i], i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= npts) return;
            try {
                out[i] = run_point(spec, spec.ebn0_grid_db[i], i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace modemsim
