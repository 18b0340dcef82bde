#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "modemsim/channels.hpp"
#include "modemsim/demodulators.hpp"
#include "modemsim/metrics.hpp"

using namespace modemsim;

TEST_CASE("bit error rate counting") {
    BerResult r = bit_error_rate(BitStream::from_string("0101000110"),
                                 BitStream::from_string("0111010011"));
    CHECK(r.total_bits == 10);
    CHECK(r.error_bits == 4);
    CHECK(r.ber == doctest::Approx(0.40).epsilon(1e-12));
    CHECK(r.error_positions == std::vector<std::size_t>{2, 5, 7, 9});

    BerResult same = bit_error_rate(BitStream::from_string("1010"), BitStream::from_string("1010"));
    CHECK(same.error_bits == 0);
    CHECK(same.ber == 0.0);

    CHECK_THROWS_WITH_AS(bit_error_rate(BitStream::from_string("10"), BitStream::from_string("1")),
                         "streams differ in length", std::invalid_argument);
    CHECK_THROWS_WITH_AS(bit_error_rate(BitStream{}, BitStream{}), "empty signal",
                         std::invalid_argument);
}

TEST_CASE("snr from powers") {
    SnrResult r = snr_from_powers(8.0, 2.0);
    CHECK(r.ratio == doctest::Approx(4.0));
    CHECK(r.db == doctest::Approx(6.0206).epsilon(1e-5));
    CHECK_THROWS_WITH_AS(snr_from_powers(0.0, 1.0), "non-positive ratio", std::invalid_argument);
    CHECK_THROWS_WITH_AS(snr_from_powers(1.0, 0.0), "non-positive ratio", std::invalid_argument);
}

TEST_CASE("q function against frozen values") {
    CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q_function(std::sqrt(2.0)) == doctest::Approx(0.0786496035251426).epsilon(1e-12));
    CHECK(q_function(1.0) == doctest::Approx(0.1586552539314571).epsilon(1e-12));
    CHECK(q_function(5.0) == doctest::Approx(2.866515718791939e-7).epsilon(1e-12));
    CHECK(q_function(-1.0) == doctest::Approx(1.0 - 0.1586552539314571).epsilon(1e-12));
}

TEST_CASE("own erfc tracks libm") {
    // both routes must agree or every reference curve is suspect
    for (double x : {-6.0, -3.0, -1.0, -0.4, 0.0, 0.3, 0.46875, 0.5, 1.0, 2.0,
                     3.9, 4.0, 4.5, 8.0, 10.0, 20.0, 26.0}) {
        double ours = detail::erfc_cody(x);
        double libm = std::erfc(x);
        CHECK(ours == doctest::Approx(libm).epsilon(1e-13));
    }
    CHECK(detail::erfc_cody(27.0) == 0.0);
    CHECK(detail::erfc_cody(-27.0) == 2.0);
}

TEST_CASE("closed form reference curves") {
    CHECK(theoretical_ber(Scheme::bpsk, 0.0) == doctest::Approx(0.0786496035251426).epsilon(1e-12));
    CHECK(theoretical_ber(Scheme::ask, 0.0) == doctest::Approx(0.1586552539314571).epsilon(1e-12));
    CHECK(theoretical_ber(Scheme::fsk, 0.0) == doctest::Approx(0.1586552539314571).epsilon(1e-12));
    CHECK(theoretical_ber(Scheme::bpsk, 4.0) == doctest::Approx(0.0125008180407376).epsilon(1e-12));
    CHECK(theoretical_ber(Scheme::bpsk, 10.0) == doctest::Approx(3.87210821552204e-6).epsilon(1e-10));

    SUBCASE("bit flip floor composes serially") {
        CHECK(theoretical_ber(Scheme::ask, 0.0, 0.2) ==
              doctest::Approx(0.2951931523588742).epsilon(1e-12));
        CHECK(theoretical_ber(Scheme::bpsk, 40.0, 0.2) == doctest::Approx(0.2).epsilon(1e-10));
        CHECK(theoretical_ber(Scheme::fsk, 3.0, 0.5) == 0.5);
        CHECK(theoretical_ber(Scheme::bpsk, 0.0, 1.0) ==
              doctest::Approx(1.0 - 0.0786496035251426).epsilon(1e-12));
        CHECK_THROWS_AS(theoretical_ber(Scheme::ask, 0.0, 1.5), std::invalid_argument);
    }

    SUBCASE("curves fall as Eb/N0 rises and bpsk stays ahead") {
        for (Scheme s : {Scheme::ask, Scheme::fsk, Scheme::bpsk}) {
            double prev = 1.0;
            for (double db = -4.0; db <= 12.0; db += 0.5) {
                double q = theoretical_ber(s, db);
                CHECK(q < prev);
                prev = q;
            }
        }
        for (double db = -4.0; db <= 12.0; db += 0.5)
            CHECK(theoretical_ber(Scheme::bpsk, db) < theoretical_ber(Scheme::ask, db));
    }
}

TEST_CASE("binomial confidence interval") {
    BinomialCi mid = binomial_ci95(50, 100);
    CHECK(mid.low == doctest::Approx(0.3970018).epsilon(1e-6));
    CHECK(mid.high == doctest::Approx(0.6029982).epsilon(1e-6));

    BinomialCi zero = binomial_ci95(0, 1000);
    CHECK(zero.low == 0.0);
    CHECK(zero.high == doctest::Approx(0.0005).epsilon(1e-9));

    BinomialCi all = binomial_ci95(1000, 1000);
    CHECK(all.high == 1.0);
    CHECK(all.low == doctest::Approx(0.9995).epsilon(1e-9));

    CHECK_THROWS_AS(binomial_ci95(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(binomial_ci95(5, 4), std::invalid_argument);
}

TEST_CASE("interval covers the truth at typical rates") {
    // 100 repetitions of n=1000 at p=0.1; a 95% interval missing more than
    // a handful of times would mean the width is wrong
    RandomSource rng(99);
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t errs = 0;
        for (int i = 0; i < 1000; ++i)
            if (rng.uniform() < 0.1) ++errs;
        BinomialCi ci = binomial_ci95(errs, 1000);
        if (ci.low <= 0.1 && 0.1 <= ci.high) ++covered;
    }
    CHECK(covered >= 90);
}

namespace {

// the sweep pipeline spelled out with the public pieces, single shot
SweepPoint reference_point(const SweepSpec& spec, double ebn0_db, std::uint64_t index) {
    RandomSource point = RandomSource(spec.master_seed)
                             .derive(static_cast<std::uint64_t>(spec.scheme) + 1)
                             .derive(index);
    RandomSource bits_rng = point.derive(0);
    RandomSource flip_rng = point.derive(1);
    RandomSource noise_rng = point.derive(2);
    BitStream tx = generate_bits(spec.bits_per_point, bits_rng);
    BitStream sent = apply_bsc(tx, BscSpec{spec.pre_channel_error_rate}, flip_rng);
    Waveform w = modulate(spec.scheme, sent, spec.cfg);
    double sigma = spec.sigma_override ? *spec.sigma_override
                                       : noise_sigma_for_ebn0(w, spec.cfg, ebn0_db);
    Waveform noisy = apply_awgn(w, AwgnSpec::from_sigma(sigma), spec.cfg, noise_rng);
    DemodResult rx = demodulate(spec.scheme, noisy, spec.cfg);
    BerResult ber = bit_error_rate(tx, rx.bits);
    BinomialCi ci = binomial_ci95(ber.error_bits, ber.total_bits);
    return {spec.scheme, ebn0_db, spec.pre_channel_error_rate, ber.total_bits,
            ber.error_bits, ber.ber, ci.low, ci.high};
}

}  // namespace

TEST_CASE("sweep equals the pipeline composed by hand") {
    // 6000 bits crosses the internal chunk boundary, so this also proves the
    // chunked processing changes nothing
    for (Scheme s : {Scheme::ask, Scheme::fsk, Scheme::bpsk}) {
        SweepSpec spec;
        spec.scheme = s;
        spec.ebn0_grid_db = {3.0};
        spec.pre_channel_error_rate = 0.1;
        spec.bits_per_point = 6000;
        spec.master_seed = 17;
        auto pts = run_sweep(spec);
        REQUIRE(pts.size() == 1);
        SweepPoint ref = reference_point(spec, 3.0, 0);
        CHECK(pts[0].bit_errors == ref.bit_errors);
        CHECK(pts[0].ber == ref.ber);
        CHECK(pts[0].ci_low == ref.ci_low);
        CHECK(pts[0].ci_high == ref.ci_high);
    }
}

TEST_CASE("sweep is deterministic and seed-sensitive") {
    SweepSpec spec;
    spec.scheme = Scheme::ask;
    spec.ebn0_grid_db = {0.0, 4.0};
    spec.bits_per_point = 20000;
    spec.master_seed = 11;
    auto a = run_sweep(spec);
    auto b = run_sweep(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].bit_errors == b[i].bit_errors);

    spec.master_seed = 12;
    auto c = run_sweep(spec);
    CHECK((a[0].bit_errors != c[0].bit_errors || a[1].bit_errors != c[1].bit_errors));
}

TEST_CASE("sweep results do not depend on thread count") {
    SweepSpec spec;
    spec.scheme = Scheme::bpsk;
    spec.ebn0_grid_db = {0.0, 2.0, 4.0};
    spec.bits_per_point = 5000;
    spec.master_seed = 23;
    spec.threads = 1;
    auto seq = run_sweep(spec);
    spec.threads = 3;
    auto par = run_sweep(spec);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].bit_errors == par[i].bit_errors);
        CHECK(seq[i].ber == par[i].ber);
    }
}

TEST_CASE("sweep with zero sigma sees no errors") {
    for (Scheme s : {Scheme::ask, Scheme::fsk, Scheme::bpsk}) {
        SweepSpec spec;
        spec.scheme = s;
        spec.ebn0_grid_db = {0.0, 20.0};
        spec.bits_per_point = 2000;
        spec.master_seed = 4;
        spec.sigma_override = 0.0;
        for (const auto& p : run_sweep(spec)) {
            CHECK(p.bit_errors == 0);
            CHECK(p.ber == 0.0);
        }
    }
}

TEST_CASE("sweep lands on the closed form curve") {
    SweepSpec spec;
    spec.scheme = Scheme::bpsk;
    spec.ebn0_grid_db = {4.0};
    spec.bits_per_point = 200000;
    spec.master_seed = 31;
    auto pts = run_sweep(spec);
    double theory = theoretical_ber(Scheme::bpsk, 4.0);  // 0.0125
    double halfwidth = (pts[0].ci_high - pts[0].ci_low) / 2.0;
    CHECK(std::abs(pts[0].ber - theory) < 3.0 * halfwidth);
}

TEST_CASE("sweep input validation") {
    SweepSpec spec;
    spec.ebn0_grid_db = {0.0};
    spec.bits_per_point = 0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.bits_per_point = 100;
    spec.pre_channel_error_rate = 2.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.pre_channel_error_rate = 0.0;
    spec.sigma_override = -1.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.sigma_override.reset();
    spec.ebn0_grid_db = {};
    CHECK(run_sweep(spec).empty());
}
