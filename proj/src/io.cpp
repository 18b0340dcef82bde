#include "modemsim/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace modemsim {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path.string());
    return f;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file for writing: " + path.string());
    return f;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(std::string_view field, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(std::string("bad ") + what + " value: " + std::string(field));
    return v;
}

std::size_t parse_count(std::string_view field, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(std::string("bad ") + what + " value: " + std::string(field));
    return v;
}

void expect_header(std::ifstream& f, std::string_view expected, const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty file: " + path.string());
    strip_cr(line);
    if (line != expected)
        throw std::runtime_error("unexpected header in " + path.string() + ": " + line);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::from_chars(buf, buf + std::strlen(buf), back);
        if (back == v) break;
    }
    return buf;
}

void write_bits_file(const std::filesystem::path& path, const BitStream& bits) {
    auto f = open_out(path);
    f << bits.to_string() << '\n';
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

BitStream read_bits_file(const std::filesystem::path& path) {
    auto f = open_in(path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return BitStream::from_string(text);
}

void write_waveform_csv(const std::filesystem::path& path, const Waveform& w) {
    if (!(w.sample_rate_hz > 0.0)) throw std::invalid_argument("sample rate must be positive");
    auto f = open_out(path);
    f << "t_sec,amplitude\n";
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        double t = static_cast<double>(i) / w.sample_rate_hz;
        f << format_double(t) << ',' << format_double(w.samples[i]) << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

Waveform read_waveform_csv(const std::filesystem::path& path) {
    auto f = open_in(path);
    expect_header(f, "t_sec,amplitude", path);
    std::vector<double> times;
    std::vector<double> samples;
    std::string line;
    while (std::getline(f, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2)
            throw std::runtime_error("bad waveform row in " + path.string() + ": " + line);
        times.push_back(parse_double(fields[0], "time"));
        samples.push_back(parse_double(fields[1], "amplitude"));
    }
    if (samples.size() < 2 || !(times.back() > times.front()))
        throw std::runtime_error("cannot infer sample rate: " + path.string());
    Waveform w;
    w.sample_rate_hz = static_cast<double>(samples.size() - 1) / (times.back() - times.front());
    w.samples = std::move(samples);
    return w;
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points) {
    auto f = open_out(path);
    f << "scheme,ebn0_db,error_rate_p,bits_sent,bit_errors,ber,ci_low,ci_high\n";
    for (const auto& p : points) {
        f << to_string(p.scheme) << ',' << format_double(p.ebn0_db) << ','
          << format_double(p.pre_channel_error_rate) << ',' << p.bits_sent << ','
          << p.bit_errors << ',' << format_double(p.ber) << ',' << format_double(p.ci_low)
          << ',' << format_double(p.ci_high) << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<SweepPoint> read_sweep_csv(const std::filesystem::path& path) {
    auto f = open_in(path);
    expect_header(f, "scheme,ebn0_db,error_rate_p,bits_sent,bit_errors,ber,ci_low,ci_high", path);
    std::vector<SweepPoint> out;
    std::string line;
    while (std::getline(f, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 8)
            throw std::runtime_error("bad sweep row in " + path.string() + ": " + line);
        auto scheme = parse_scheme(fields[0]);
        if (!scheme)
            throw std::runtime_error("unknown scheme in " + path.string() + ": " +
                                     std::string(fields[0]));
        SweepPoint p;
        p.scheme = *scheme;
        p.ebn0_db = parse_double(fields[1], "ebn0_db");
        p.pre_channel_error_rate = parse_double(fields[2], "error_rate_p");
        p.bits_sent = parse_count(fields[3], "bits_sent");
        p.bit_errors = parse_count(fields[4], "bit_errors");
        p.ber = parse_double(fields[5], "ber");
        p.ci_low = parse_double(fields[6], "ci_low");
        p.ci_high = parse_double(fields[7], "ci_high");
        out.push_back(p);
    }
    return out;
}

void write_trace_csv(const std::filesystem::path& path, std::span<const DecisionTrace> traces) {
    auto f = open_out(path);
    f << "bit_index,stat1,stat2,threshold,decision\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& t = traces[i];
        f << i << ',' << format_double(t.stat1) << ',' << format_double(t.stat2) << ','
          << format_double(t.threshold) << ',' << static_cast<int>(t.decision) << '\n';
    }
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace modemsim
