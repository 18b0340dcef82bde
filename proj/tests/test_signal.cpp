#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "modemsim/signal.hpp"

using namespace modemsim;

TEST_CASE("bit stream construction and round trip") {
    BitStream b = BitStream::from_string("0101000110");
    CHECK(b.size() == 10);
    CHECK(b[0] == 0);
    CHECK(b[1] == 1);
    CHECK(b.to_string() == "0101000110");
    CHECK(BitStream::from_string("") == BitStream{});
    CHECK_THROWS_AS(BitStream::from_string("01x"), std::invalid_argument);
    CHECK_THROWS_AS(BitStream(std::vector<Bit>{0, 2}), std::invalid_argument);

    BitStream c;
    c.push_back(1);
    c.push_back(0);
    CHECK(c.to_string() == "10");
    CHECK_THROWS_AS(c.push_back(7), std::invalid_argument);
}

TEST_CASE("mean power") {
    Waveform w{3.0, {1.0, -1.0, 2.0}};
    CHECK(mean_power(w) == doctest::Approx(2.0));
    CHECK_THROWS_WITH_AS(mean_power(Waveform{}), "empty signal", std::invalid_argument);
}

TEST_CASE("ratio to dB") {
    CHECK(ratio_to_db(1.0) == 0.0);
    CHECK(ratio_to_db(4.0) == doctest::Approx(6.0206).epsilon(1e-5));
    CHECK(ratio_to_db(10.0) == doctest::Approx(10.0));
    CHECK_THROWS_WITH_AS(ratio_to_db(0.0), "non-positive ratio", std::invalid_argument);
    CHECK_THROWS_WITH_AS(ratio_to_db(-3.0), "non-positive ratio", std::invalid_argument);
}

TEST_CASE("modem config validation") {
    ModemConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.sample_rate_hz() == doctest::Approx(64.0));
    CHECK(cfg.bit_period_sec() == doctest::Approx(1.0));

    SUBCASE("carrier must fit the sample clock") {
        cfg.samples_per_bit = 16;  // fs = 16 Hz but f1 = 5 Hz needs >= 20
        CHECK_THROWS_WITH_AS(cfg.validate(), "undersampled carrier", std::invalid_argument);
    }
    SUBCASE("fsk tones must differ") {
        cfg.fsk_f2_hz = cfg.fsk_f1_hz;
        CHECK_THROWS_WITH_AS(cfg.validate(), "degenerate FSK pair", std::invalid_argument);
    }
    SUBCASE("samples per bit floor") {
        cfg.samples_per_bit = 7;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SUBCASE("positive parameters") {
        cfg.amplitude = 0.0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
}

// Frozen reference sequences, produced by an independent implementation of
// the same generator (splitmix64-seeded xoshiro256++). These pin the draw
// sequence across platforms and releases.
TEST_CASE("random source matches frozen reference") {
    RandomSource r(42);
    CHECK(r.next_u64() == 0xd0764d4f4476689full);
    CHECK(r.next_u64() == 0x519e4174576f3791ull);
    CHECK(r.next_u64() == 0xfbe07cfb0c24ed8cull);
    CHECK(r.next_u64() == 0xb37d9f600cd835b8ull);
    CHECK(r.next_u64() == 0xcb231c3874846a73ull);

    RandomSource u(42);
    CHECK(u.uniform() == doctest::Approx(0.81430514512290986).epsilon(1e-15));
    CHECK(u.uniform() == doctest::Approx(0.31882104006166112).epsilon(1e-15));
    CHECK(u.uniform() == doctest::Approx(0.98389416817748876).epsilon(1e-15));
    CHECK(u.uniform() == doctest::Approx(0.70113559813475557).epsilon(1e-15));

    RandomSource n(42);
    CHECK(n.normal() == doctest::Approx(-0.26860736946209501).epsilon(1e-14));
    CHECK(n.normal() == doctest::Approx(0.58197105186288278).epsilon(1e-14));
    CHECK(n.normal() == doctest::Approx(-0.054462170108150951).epsilon(1e-14));
    CHECK(n.normal() == doctest::Approx(-0.17177820812195743).epsilon(1e-14));
}

TEST_CASE("derived streams depend only on the parent seed") {
    CHECK(RandomSource(42).derive(0).seed() == 0xbdd732262feb6e95ull);
    CHECK(RandomSource(42).derive(1).seed() == 0x28efe333b266f103ull);
    CHECK(RandomSource(7).derive(3).seed() == 0x953aeb70673e29cbull);

    RandomSource parent(9);
    parent.next_u64();
    parent.next_u64();
    parent.next_u64();
    CHECK(parent.derive(5).seed() == RandomSource(9).derive(5).seed());

    CHECK(RandomSource(9).derive(0).seed() != RandomSource(9).derive(1).seed());
}

TEST_CASE("generate bits") {
    RandomSource rng(1);
    BitStream b = generate_bits(16, rng);
    CHECK(b.to_string() == "1101011100100000");

    RandomSource rng2(1);
    BitStream big = generate_bits(100000, rng2);
    std::size_t ones = 0;
    for (Bit bit : big) ones += bit;
    CHECK(ones == 50189);  // deterministic for the pinned generator
}

TEST_CASE("uniform and normal distribution sanity") {
    RandomSource rng(123);
    double sum = 0.0, sumsq = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sumsq / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.03));

    RandomSource rng2(321);
    double m = 0.0, v = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = rng2.normal();
        m += z;
        v += z * z;
    }
    m /= n;
    v = v / n - m * m;
    CHECK(std::abs(m) < 0.02);
    CHECK(v == doctest::Approx(1.0).epsilon(0.03));
}
