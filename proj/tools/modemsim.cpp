// modemsim: modulate/demodulate bit streams, push them through channel
// models, run BER sweeps and render SVG figures. Every command is
// deterministic for a fixed --seed.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "modemsim/channels.hpp"
#include "modemsim/demodulators.hpp"
#include "modemsim/io.hpp"
#include "modemsim/metrics.hpp"
#include "modemsim/modulators.hpp"
#include "modemsim/signal.hpp"
#include "modemsim/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace modemsim;

namespace {

// bad command line, exit code 2 (runtime failures exit 1)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* VALID_SCHEMES = "ask, fsk, bpsk";

Scheme scheme_from_name(const std::string& name) {
    auto s = parse_scheme(name);
    if (!s) throw UsageError("unknown scheme '" + name + "' (valid: " + std::string(VALID_SCHEMES) + ")");
    return *s;
}

std::vector<Scheme> scheme_list_from_csv(const std::string& csv) {
    std::vector<Scheme> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
        if (!tok.empty()) out.push_back(scheme_from_name(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw UsageError("no schemes given (valid: " + std::string(VALID_SCHEMES) + ")");
    return out;
}

double parse_num(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("bad ") + what + ": '" + text + "'");
    }
}

// "start:step:stop" (inclusive when stop is exactly reachable) or "v1,v2,..."
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (;;) {
            std::size_t colon = text.find(':', start);
            parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos
                                                                          : colon - start));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 3) throw UsageError("grid must be start:step:stop or a comma list");
        double a = parse_num(parts[0], "grid start");
        double s = parse_num(parts[1], "grid step");
        double b = parse_num(parts[2], "grid stop");
        if (s == 0.0) throw UsageError("grid step must be non-zero");
        double tol = std::abs(s) * 1e-9;
        for (std::size_t i = 0;; ++i) {
            double v = a + static_cast<double>(i) * s;
            if (s > 0.0 ? v > b + tol : v < b - tol) break;
            out.push_back(v);
            if (i > 1000000) throw UsageError("grid too long");
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
            if (!tok.empty()) out.push_back(parse_num(tok, "grid value"));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

void validate_cfg(const ModemConfig& cfg) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

struct CfgFlags {
    ModemConfig cfg;
    void attach(CLI::App* cmd) {
        cmd->add_option("--amplitude,-A", cfg.amplitude, "carrier amplitude")
            ->capture_default_str();
        cmd->add_option("--fc", cfg.carrier_freq_hz, "carrier frequency, Hz (ask/bpsk)")
            ->capture_default_str();
        cmd->add_option("--f1", cfg.fsk_f1_hz, "FSK tone for bit 1, Hz")->capture_default_str();
        cmd->add_option("--f2", cfg.fsk_f2_hz, "FSK tone for bit 0, Hz")->capture_default_str();
        cmd->add_option("--theta1", cfg.fsk_theta1_rad, "FSK bit-1 phase, rad")
            ->capture_default_str();
        cmd->add_option("--theta2", cfg.fsk_theta2_rad, "FSK bit-0 phase, rad")
            ->capture_default_str();
        cmd->add_option("--bit-rate", cfg.bit_rate_hz, "bit rate, Hz")->capture_default_str();
        cmd->add_option("--spb", cfg.samples_per_bit, "samples per bit")->capture_default_str();
    }
};

fs::path resolve_out(const std::string& out_dir, const fs::path& p) {
    fs::path full = (!out_dir.empty() && p.is_relative()) ? fs::path(out_dir) / p : p;
    if (full.has_parent_path()) fs::create_directories(full.parent_path());
    return full;
}

BitStream bits_from_source(const std::string& bits_text, const std::string& bits_file,
                           std::int64_t random_n, std::uint64_t seed) {
    int given = (!bits_text.empty()) + (!bits_file.empty()) + (random_n >= 0);
    if (given != 1)
        throw UsageError("give exactly one bit source: --bits, --bits-file or --random");
    if (!bits_text.empty()) {
        try {
            return BitStream::from_string(bits_text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (!bits_file.empty()) return read_bits_file(bits_file);
    if (random_n == 0) throw UsageError("--random needs a positive count");
    RandomSource rng(seed);
    return generate_bits(static_cast<std::size_t>(random_n), rng);
}

void check_sample_rate(const Waveform& w, const ModemConfig& cfg) {
    double expect = cfg.sample_rate_hz();
    if (std::abs(w.sample_rate_hz - expect) > 1e-6 * expect)
        throw std::runtime_error("sample rate mismatch: file has " +
                                 format_double(w.sample_rate_hz) + " Hz, config implies " +
                                 format_double(expect) + " Hz");
}

std::vector<std::string> labels_from_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        out.push_back(csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                   : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file for writing: " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

// ---- subcommand payloads ----

struct ModulateArgs {
    CfgFlags cf;
    std::string scheme, bits_text, bits_file, out, save_bits;
    std::int64_t random_n = -1;
    std::uint64_t seed = 1;
};

struct DemodArgs {
    CfgFlags cf;
    std::string scheme, in, out_bits, trace;
};

struct ChannelArgs {
    CfgFlags cf;
    std::string in, out;
    std::optional<double> ebn0_db, sigma, error_rate;
    std::uint64_t seed = 1;
};

struct SweepArgs {
    CfgFlags cf;
    std::string schemes = "ask,fsk,bpsk";
    std::string grid = "0:1:10";
    std::string out;
    double error_rate = 0.0;
    std::uint64_t bits = 100000;
    std::uint64_t seed = 1;
    std::optional<double> sigma;
    unsigned threads = 0;
};

struct PlotArgs {
    std::string kind, labels, title, out;
    std::vector<std::string> inputs;
};

struct FiguresArgs {
    CfgFlags cf;
    std::string dir = "figures";
    std::string grid = "0:1:10";
    std::uint64_t bits = 20000;
    std::uint64_t seed = 1;
};

int cmd_modulate(const ModulateArgs& a, const std::string& out_dir) {
    validate_cfg(a.cf.cfg);
    Scheme scheme = scheme_from_name(a.scheme);
    BitStream bits = bits_from_source(a.bits_text, a.bits_file, a.random_n, a.seed);
    if (bits.empty()) throw UsageError("no bits to modulate");
    Waveform w = modulate(scheme, bits, a.cf.cfg);
    write_waveform_csv(resolve_out(out_dir, a.out), w);
    if (!a.save_bits.empty()) write_bits_file(resolve_out(out_dir, a.save_bits), bits);
    std::cerr << "wrote " << w.size() << " samples (" << bits.size() << " bits, "
              << format_double(w.sample_rate_hz) << " Hz)\n";
    return 0;
}

int cmd_demodulate(const DemodArgs& a, const std::string& out_dir) {
    validate_cfg(a.cf.cfg);
    Scheme scheme = scheme_from_name(a.scheme);
    Waveform w = read_waveform_csv(a.in);
    check_sample_rate(w, a.cf.cfg);
    DemodResult r = demodulate(scheme, w, a.cf.cfg);
    std::cout << r.bits.to_string() << '\n';
    if (!a.out_bits.empty()) write_bits_file(resolve_out(out_dir, a.out_bits), r.bits);
    if (!a.trace.empty()) write_trace_csv(resolve_out(out_dir, a.trace), r.traces);
    return 0;
}

int cmd_channel(const ChannelArgs& a, const std::string& out_dir) {
    int given = a.ebn0_db.has_value() + a.sigma.has_value() + a.error_rate.has_value();
    if (given != 1)
        throw UsageError("give exactly one of --ebn0-db, --sigma (waveform) or --error-rate (bits)");
    RandomSource rng(a.seed);
    if (a.error_rate) {
        BscSpec spec{*a.error_rate};
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        BitStream out = apply_bsc(read_bits_file(a.in), spec, rng);
        write_bits_file(resolve_out(out_dir, a.out), out);
    } else {
        validate_cfg(a.cf.cfg);
        Waveform w = read_waveform_csv(a.in);
        AwgnSpec spec = a.ebn0_db ? AwgnSpec::from_ebn0_db(*a.ebn0_db)
                                  : AwgnSpec::from_sigma(*a.sigma);
        if (a.sigma && *a.sigma < 0.0) throw UsageError("noise sigma must be non-negative");
        Waveform out = apply_awgn(w, spec, a.cf.cfg, rng);
        write_waveform_csv(resolve_out(out_dir, a.out), out);
    }
    return 0;
}

int cmd_sweep(const SweepArgs& a, const std::string& out_dir) {
    validate_cfg(a.cf.cfg);
    std::vector<Scheme> schemes = scheme_list_from_csv(a.schemes);
    std::vector<double> grid = parse_grid(a.grid);
    if (a.bits == 0) throw UsageError("--bits must be positive");
    if (a.error_rate < 0.0 || a.error_rate > 1.0)
        throw UsageError("error rate must be in [0, 1]");
    if (a.sigma && *a.sigma < 0.0) throw UsageError("noise sigma must be non-negative");

    std::vector<SweepPoint> all;
    for (Scheme s : schemes) {
        SweepSpec spec;
        spec.scheme = s;
        spec.ebn0_grid_db = grid;
        spec.pre_channel_error_rate = a.error_rate;
        spec.bits_per_point = a.bits;
        spec.cfg = a.cf.cfg;
        spec.master_seed = a.seed;
        spec.sigma_override = a.sigma;
        spec.threads = a.threads;
        auto pts = run_sweep(spec);
        all.insert(all.end(), pts.begin(), pts.end());
        std::cerr << to_string(s) << ": " << pts.size() << " points done\n";
    }
    write_sweep_csv(resolve_out(out_dir, a.out), all);
    return 0;
}

int cmd_plot(const PlotArgs& a, const std::string& out_dir) {
    if (a.inputs.empty()) throw UsageError("no input files");
    std::vector<std::string> labels =
        a.labels.empty() ? std::vector<std::string>{} : labels_from_csv(a.labels);

    std::string svg;
    if (a.kind == "waveform-stack") {
        std::vector<PlotSeries> panels;
        for (std::size_t i = 0; i < a.inputs.size(); ++i) {
            Waveform w = read_waveform_csv(a.inputs[i]);
            PlotSeries p;
            p.label = i < labels.size() ? labels[i] : fs::path(a.inputs[i]).stem().string();
            p.x.resize(w.size());
            for (std::size_t k = 0; k < w.size(); ++k)
                p.x[k] = static_cast<double>(k) / w.sample_rate_hz;
            p.y = w.samples;
            panels.push_back(std::move(p));
        }
        svg = render_waveform_stack(panels, a.title.empty() ? "waveforms" : a.title);
    } else if (a.kind == "ber-waterfall") {
        std::vector<WaterfallSeries> series;
        for (std::size_t i = 0; i < a.inputs.size(); ++i) {
            auto rows = read_sweep_csv(a.inputs[i]);
            // one series per scheme found in the file, rows kept in file order
            for (const auto& row : rows) {
                std::string label = std::string(to_string(row.scheme));
                if (a.inputs.size() > 1)
                    label = fs::path(a.inputs[i]).stem().string() + " " + label;
                auto it = std::find_if(series.begin(), series.end(),
                                       [&](const WaterfallSeries& s) { return s.label == label; });
                if (it == series.end()) {
                    series.push_back({label, {}, {}, 0});
                    it = series.end() - 1;
                }
                it->ebn0_db.push_back(row.ebn0_db);
                it->ber.push_back(row.ber);
                it->bits_sent = std::max(it->bits_sent, row.bits_sent);
            }
        }
        if (!labels.empty())
            for (std::size_t i = 0; i < series.size() && i < labels.size(); ++i)
                series[i].label = labels[i];
        svg = render_ber_waterfall(series, a.title.empty() ? "BER vs Eb/N0" : a.title);
    } else {
        throw UsageError("unknown plot kind '" + a.kind +
                         "' (valid: waveform-stack, ber-waterfall)");
    }
    write_text(resolve_out(out_dir, a.out), svg);
    return 0;
}

int cmd_figures(const FiguresArgs& a, const std::string& out_dir) {
    validate_cfg(a.cf.cfg);
    std::vector<double> grid = parse_grid(a.grid);
    if (a.bits == 0) throw UsageError("--bits-per-point must be positive");
    fs::path dir = resolve_out(out_dir, a.dir);
    fs::create_directories(dir);

    const Scheme schemes[] = {Scheme::ask, Scheme::fsk, Scheme::bpsk};
    BitStream demo = BitStream::from_string("1011010");

    std::vector<PlotSeries> panels;
    for (Scheme s : schemes) {
        Waveform w = modulate(s, demo, a.cf.cfg);
        fs::path csv = dir / (std::string("waveform_") + std::string(to_string(s)) + ".csv");
        write_waveform_csv(csv, w);
        PlotSeries p;
        p.label = std::string(to_string(s)) + "  [" + demo.to_string() + "]";
        p.x.resize(w.size());
        for (std::size_t k = 0; k < w.size(); ++k)
            p.x[k] = static_cast<double>(k) / w.sample_rate_hz;
        p.y = w.samples;
        panels.push_back(std::move(p));
        std::cout << csv.string() << '\n';
    }
    write_text(dir / "waveforms.svg", render_waveform_stack(panels, "modulated waveforms"));
    std::cout << (dir / "waveforms.svg").string() << '\n';

    std::vector<SweepPoint> all;
    std::vector<WaterfallSeries> series;
    for (Scheme s : schemes) {
        SweepSpec spec;
        spec.scheme = s;
        spec.ebn0_grid_db = grid;
        spec.bits_per_point = a.bits;
        spec.cfg = a.cf.cfg;
        spec.master_seed = a.seed;
        auto pts = run_sweep(spec);
        WaterfallSeries ws;
        ws.label = std::string(to_string(s));
        ws.bits_sent = a.bits;
        for (const auto& p : pts) {
            ws.ebn0_db.push_back(p.ebn0_db);
            ws.ber.push_back(p.ber);
        }
        series.push_back(std::move(ws));
        all.insert(all.end(), pts.begin(), pts.end());
        std::cerr << to_string(s) << ": sweep done\n";
    }
    write_sweep_csv(dir / "sweep.csv", all);
    std::cout << (dir / "sweep.csv").string() << '\n';
    write_text(dir / "ber_waterfall.svg", render_ber_waterfall(series, "BER vs Eb/N0"));
    std::cout << (dir / "ber_waterfall.svg").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital modulation simulator (ask/fsk/bpsk over awgn and bit-flip channels)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "modemsim 0.1.0");

    std::string out_dir;
    app.add_option("--out-dir", out_dir,
                   "directory for relative output paths (env MODEMSIM_OUT_DIR)")
        ->envname("MODEMSIM_OUT_DIR");

    ModulateArgs mod;
    auto* c_mod = app.add_subcommand("modulate", "bits -> waveform csv");
    mod.cf.attach(c_mod);
    c_mod->add_option("--scheme,-s", mod.scheme, "ask|fsk|bpsk")->required();
    c_mod->add_option("--bits", mod.bits_text, "literal bit string, e.g. 1011010");
    c_mod->add_option("--bits-file", mod.bits_file, "read bits from file");
    c_mod->add_option("--random", mod.random_n, "generate this many random bits");
    c_mod->add_option("--seed", mod.seed, "rng seed for --random")->capture_default_str();
    c_mod->add_option("--save-bits", mod.save_bits, "also write the modulated bits to a file");
    c_mod->add_option("--output,-o", mod.out, "output waveform csv")->required();

    DemodArgs dem;
    auto* c_dem = app.add_subcommand("demodulate", "waveform csv -> bits on stdout");
    dem.cf.attach(c_dem);
    c_dem->add_option("--scheme,-s", dem.scheme, "ask|fsk|bpsk")->required();
    c_dem->add_option("--input,-i", dem.in, "input waveform csv")->required();
    c_dem->add_option("--output,-o", dem.out_bits, "also write decided bits to a file");
    c_dem->add_option("--trace", dem.trace, "write per-bit decision statistics csv");

    ChannelArgs chan;
    auto* c_chan = app.add_subcommand("channel", "apply awgn to a waveform or bit flips to bits");
    chan.cf.attach(c_chan);
    c_chan->add_option("--input,-i", chan.in, "input file (waveform csv or bits)")->required();
    c_chan->add_option("--output,-o", chan.out, "output file")->required();
    c_chan->add_option("--ebn0-db", chan.ebn0_db, "awgn level as Eb/N0 in dB");
    c_chan->add_option("--sigma", chan.sigma, "awgn level as per-sample sigma");
    c_chan->add_option("--error-rate", chan.error_rate, "bit flip probability");
    c_chan->add_option("--seed", chan.seed, "rng seed")->capture_default_str();

    SweepArgs sw;
    auto* c_sw = app.add_subcommand("sweep", "monte carlo BER over an Eb/N0 grid");
    sw.cf.attach(c_sw);
    c_sw->add_option("--schemes", sw.schemes, "comma list of ask,fsk,bpsk")
        ->capture_default_str();
    c_sw->add_option("--ebn0", sw.grid, "grid start:step:stop or comma list, dB")
        ->capture_default_str();
    c_sw->add_option("--error-rate", sw.error_rate, "bit flip probability before modulation")
        ->capture_default_str();
    c_sw->add_option("--bits", sw.bits, "bits per grid point")->capture_default_str();
    c_sw->add_option("--seed", sw.seed, "master rng seed")->capture_default_str();
    c_sw->add_option("--sigma", sw.sigma, "fixed noise sigma instead of the Eb/N0 mapping");
    c_sw->add_option("--threads", sw.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    c_sw->add_option("--output,-o", sw.out, "output sweep csv")->required();

    PlotArgs pl;
    auto* c_pl = app.add_subcommand("plot", "render csv results to svg");
    c_pl->add_option("--kind", pl.kind, "waveform-stack|ber-waterfall")->required();
    c_pl->add_option("--input,-i", pl.inputs, "input csv file(s)")->required();
    c_pl->add_option("--labels", pl.labels, "comma list of series labels");
    c_pl->add_option("--title", pl.title, "figure title");
    c_pl->add_option("--output,-o", pl.out, "output svg")->required();

    FiguresArgs fig;
    auto* c_fig = app.add_subcommand("figures", "generate the standard demo figure set");
    fig.cf.attach(c_fig);
    c_fig->add_option("--dir,-o", fig.dir, "output directory")->capture_default_str();
    c_fig->add_option("--ebn0", fig.grid, "sweep grid, dB")->capture_default_str();
    c_fig->add_option("--bits-per-point", fig.bits, "sweep bits per point")
        ->capture_default_str();
    c_fig->add_option("--seed", fig.seed, "master rng seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }

    try {
        if (*c_mod) return cmd_modulate(mod, out_dir);
        if (*c_dem) return cmd_demodulate(dem, out_dir);
        if (*c_chan) return cmd_channel(chan, out_dir);
        if (*c_sw) return cmd_sweep(sw, out_dir);
        if (*c_pl) return cmd_plot(pl, out_dir);
        if (*c_fig) return cmd_figures(fig, out_dir);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
