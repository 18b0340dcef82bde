#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "modemsim/channels.hpp"
#include "modemsim/demodulators.hpp"
#include "modemsim/metrics.hpp"
#include "modemsim/modulators.hpp"
#include "modemsim/signal.hpp"

namespace py = pybind11;
using namespace modemsim;

namespace {

Scheme scheme_arg(const std::string& name) {
    auto s = parse_scheme(name);
    if (!s) throw std::invalid_argument("unknown scheme '" + name + "' (valid: ask, fsk, bpsk)");
    return *s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "digital modulation simulator (ask/fsk/bpsk over awgn and bit-flip channels)";

    py::class_<BitStream>(m, "BitStream")
        .def(py::init<>())
        .def(py::init([](const std::string& s) { return BitStream::from_string(s); }))
        .def(py::init([](const std::vector<Bit>& v) { return BitStream(v); }))
        .def("__len__", &BitStream::size)
        .def("__getitem__",
             [](const BitStream& b, std::size_t i) {
                 if (i >= b.size()) throw py::index_error();
                 return b[i];
             })
        .def("__eq__", [](const BitStream& a, const BitStream& b) { return a == b; })
        .def("__str__", &BitStream::to_string)
        .def("__repr__", [](const BitStream& b) { return "BitStream('" + b.to_string() + "')"; })
        .def("to_list", [](const BitStream& b) {
            return std::vector<int>(b.bits().begin(), b.bits().end());
        });

    py::class_<Waveform>(m, "Waveform")
        .def(py::init<>())
        .def(py::init([](double fs, std::vector<double> samples) {
                 return Waveform{fs, std::move(samples)};
             }),
             py::arg("sample_rate_hz"), py::arg("samples"))
        .def_readwrite("sample_rate_hz", &Waveform::sample_rate_hz)
        .def_readwrite("samples", &Waveform::samples)
        .def("__len__", &Waveform::size)
        .def_property_readonly("duration_sec", &Waveform::duration_sec);

    py::class_<ModemConfig>(m, "ModemConfig")
        .def(py::init<>())
        .def_readwrite("amplitude", &ModemConfig::amplitude)
        .def_readwrite("carrier_freq_hz", &ModemConfig::carrier_freq_hz)
        .def_readwrite("fsk_f1_hz", &ModemConfig::fsk_f1_hz)
        .def_readwrite("fsk_f2_hz", &ModemConfig::fsk_f2_hz)
        .def_readwrite("fsk_theta1_rad", &ModemConfig::fsk_theta1_rad)
        .def_readwrite("fsk_theta2_rad", &ModemConfig::fsk_theta2_rad)
        .def_readwrite("bit_rate_hz", &ModemConfig::bit_rate_hz)
        .def_readwrite("samples_per_bit", &ModemConfig::samples_per_bit)
        .def_property_readonly("sample_rate_hz", &ModemConfig::sample_rate_hz)
        .def("validate", &ModemConfig::validate);

    py::class_<DecisionTrace>(m, "DecisionTrace")
        .def_readonly("stat1", &DecisionTrace::stat1)
        .def_readonly("stat2", &DecisionTrace::stat2)
        .def_readonly("threshold", &DecisionTrace::threshold)
        .def_readonly("decision", &DecisionTrace::decision);

    py::class_<DemodResult>(m, "DemodResult")
        .def_readonly("bits", &DemodResult::bits)
        .def_readonly("traces", &DemodResult::traces);

    py::class_<BerResult>(m, "BerResult")
        .def_readonly("total_bits", &BerResult::total_bits)
        .def_readonly("error_bits", &BerResult::error_bits)
        .def_readonly("ber", &BerResult::ber)
        .def_readonly("error_positions", &BerResult::error_positions);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_property_readonly("scheme",
                               [](const SweepPoint& p) { return std::string(to_string(p.scheme)); })
        .def_readonly("ebn0_db", &SweepPoint::ebn0_db)
        .def_readonly("error_rate_p", &SweepPoint::pre_channel_error_rate)
        .def_readonly("bits_sent", &SweepPoint::bits_sent)
        .def_readonly("bit_errors", &SweepPoint::bit_errors)
        .def_readonly("ber", &SweepPoint::ber)
        .def_readonly("ci_low", &SweepPoint::ci_low)
        .def_readonly("ci_high", &SweepPoint::ci_high);

    m.def("generate_bits",
          [](std::size_t n, std::uint64_t seed) {
              RandomSource rng(seed);
              return generate_bits(n, rng);
          },
          py::arg("n"), py::arg("seed"));

    m.def("modulate",
          [](const std::string& scheme, const BitStream& bits, const ModemConfig& cfg) {
              return modulate(scheme_arg(scheme), bits, cfg);
          },
          py::arg("scheme"), py::arg("bits"), py::arg("config") = ModemConfig{});

    m.def("demodulate",
          [](const std::string& scheme, const Waveform& w, const ModemConfig& cfg) {
              return demodulate(scheme_arg(scheme), w, cfg);
          },
          py::arg("scheme"), py::arg("waveform"), py::arg("config") = ModemConfig{});

    m.def("apply_awgn",
          [](const Waveform& w, std::uint64_t seed, std::optional<double> ebn0_db,
             std::optional<double> sigma, const ModemConfig& cfg) {
              AwgnSpec spec{ebn0_db, sigma};
              RandomSource rng(seed);
              return apply_awgn(w, spec, cfg, rng);
          },
          py::arg("waveform"), py::arg("seed"), py::arg("ebn0_db") = std::nullopt,
          py::arg("sigma") = std::nullopt, py::arg("config") = ModemConfig{});

    m.def("apply_bsc",
          [](const BitStream& bits, double p, std::uint64_t seed) {
              RandomSource rng(seed);
              return apply_bsc(bits, BscSpec{p}, rng);
          },
          py::arg("bits"), py::arg("error_rate"), py::arg("seed"));

    m.def("bit_error_rate", &bit_error_rate, py::arg("sent"), py::arg("received"));
    m.def("mean_power", &mean_power, py::arg("waveform"));
    m.def("ratio_to_db", &ratio_to_db, py::arg("ratio"));
    m.def("snr_from_powers",
          [](double sp, double np) {
              SnrResult r = snr_from_powers(sp, np);
              return py::make_tuple(r.ratio, r.db);
          },
          py::arg("signal_power"), py::arg("noise_power"));
    m.def("noise_sigma_for_ebn0", &noise_sigma_for_ebn0, py::arg("waveform"), py::arg("config"),
          py::arg("ebn0_db"));
    m.def("q_function", &q_function, py::arg("x"));
    m.def("theoretical_ber",
          [](const std::string& scheme, double ebn0_db, double p) {
              return theoretical_ber(scheme_arg(scheme), ebn0_db, p);
          },
          py::arg("scheme"), py::arg("ebn0_db"), py::arg("error_rate") = 0.0);
    m.def("binomial_ci95",
          [](std::size_t errors, std::size_t trials) {
              BinomialCi ci = binomial_ci95(errors, trials);
              return py::make_tuple(ci.low, ci.high);
          },
          py::arg("errors"), py::arg("trials"));

    m.def("run_sweep",
          [](const std::string& scheme, const std::vector<double>& grid, double error_rate,
             std::size_t bits_per_point, std::uint64_t seed, std::optional<double> sigma,
             unsigned threads, const ModemConfig& cfg) {
              SweepSpec spec;
              spec.scheme = scheme_arg(scheme);
              spec.ebn0_grid_db = grid;
              spec.pre_channel_error_rate = error_rate;
              spec.bits_per_point = bits_per_point;
              spec.cfg = cfg;
              spec.master_seed = seed;
              spec.sigma_override = sigma;
              spec.threads = threads;
              return run_sweep(spec);
          },
          py::arg("scheme"), py::arg("ebn0_grid_db"), py::arg("error_rate") = 0.0,
          py::arg("bits_per_point") = 100000, py::arg("seed") = 1,
          py::arg("sigma") = std::nullopt, py::arg("threads") = 0,
          py::arg("config") = ModemConfig{});
}
