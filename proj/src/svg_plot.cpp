#include "modemsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace modemsim {

namespace {

const char* const PALETTE[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int PALETTE_N = 6;

std::string esc(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct LinMap {
    double v0, v1;  // value range
    double p0, p1;  // pixel range
    double operator()(double v) const { return p0 + (v - v0) / (v1 - v0) * (p1 - p0); }
};

void text(std::string& s, double x, double y, std::string_view t, const char* anchor,
          int size, const char* fill = "#333") {
    s += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" +
         esc(t) + "</text>\n";
}

void line(std::string& s, double x1, double y1, double x2, double y2, const char* stroke,
          double width = 1.0, const char* dash = nullptr) {
    s += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"";
    if (dash) s += std::string(" stroke-dasharray=\"") + dash + "\"";
    s += "/>\n";
}

// round a span outward to friendly tick positions
std::vector<double> lin_ticks(double lo, double hi, int want) {
    double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    double raw = span / want;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
        out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    return out;
}

}  // namespace

std::string render_waveform_stack(std::span<const PlotSeries> panels, std::string_view title) {
    if (panels.empty()) throw std::invalid_argument("nothing to plot");
    for (const auto& p : panels) {
        if (p.x.empty() || p.x.size() != p.y.size())
            throw std::invalid_argument("panel data empty or mismatched");
    }

    const double W = 960, PANEL_H = 150, GAP = 10;
    const double L = 70, R = 20, T = 42, B = 48;
    const double H = T + panels.size() * PANEL_H + (panels.size() - 1) * GAP + B;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    for (const auto& p : panels) {
        x_lo = std::min(x_lo, *std::min_element(p.x.begin(), p.x.end()));
        x_hi = std::max(x_hi, *std::max_element(p.x.begin(), p.x.end()));
    }
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) +
         "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(s, W / 2, 24, title, "middle", 16, "#111");

    LinMap mx{x_lo, x_hi, L, W - R};
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& p = panels[pi];
        const double top = T + pi * (PANEL_H + GAP);
        const double bot = top + PANEL_H;

        double y_lo = *std::min_element(p.y.begin(), p.y.end());
        double y_hi = *std::max_element(p.y.begin(), p.y.end());
        if (!(y_hi > y_lo)) {
            y_lo -= 1.0;
            y_hi += 1.0;
        }
        double pad = (y_hi - y_lo) * 0.08;
        LinMap my{y_lo - pad, y_hi + pad, bot, top};

        s += "<rect x=\"" + num(L) + "\" y=\"" + num(top) + "\" width=\"" + num(W - L - R) +
             "\" height=\"" + num(PANEL_H) + "\" fill=\"none\" stroke=\"#bbb\"/>\n";
        if (y_lo < 0.0 && y_hi > 0.0)
            line(s, L, my(0.0), W - R, my(0.0), "#ddd");

        std::string pts;
        for (std::size_t i = 0; i < p.x.size(); ++i)
            pts += num(mx(p.x[i])) + "," + num(my(p.y[i])) + " ";
        s += "<polyline fill=\"none\" stroke=\"" + std::string(PALETTE[pi % PALETTE_N]) +
             "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";

        text(s, L + 6, top + 16, p.label, "start", 12, "#222");
        text(s, L - 6, my(y_hi) + 4, num(y_hi), "end", 10, "#555");
        text(s, L - 6, my(y_lo) + 4, num(y_lo), "end", 10, "#555");
    }

    const double axis_y = H - B;
    for (double t : lin_ticks(x_lo, x_hi, 8)) {
        line(s, mx(t), axis_y, mx(t), axis_y + 5, "#555");
        text(s, mx(t), axis_y + 18, num(t), "middle", 11, "#555");
    }
    text(s, W / 2, H - 10, "time (s)", "middle", 12, "#333");
    s += "</svg>\n";
    return s;
}

std::string render_ber_waterfall(std::span<const WaterfallSeries> series, std::string_view title) {
    if (series.empty()) throw std::invalid_argument("nothing to plot");
    for (const auto& w : series) {
        if (w.ebn0_db.empty() || w.ebn0_db.size() != w.ber.size() || w.bits_sent == 0)
            throw std::invalid_argument("series data empty or mismatched");
    }

    const double W = 780, H = 540;
    const double L = 78, R = 24, T = 48, B = 58, FLOOR_BAND = 34;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double min_pos = 1.0;
    bool any_zero = false;
    std::size_t max_bits = 0;
    for (const auto& w : series) {
        x_lo = std::min(x_lo, *std::min_element(w.ebn0_db.begin(), w.ebn0_db.end()));
        x_hi = std::max(x_hi, *std::max_element(w.ebn0_db.begin(), w.ebn0_db.end()));
        max_bits = std::max(max_bits, w.bits_sent);
        for (double b : w.ber) {
            if (b > 0.0) min_pos = std::min(min_pos, b);
            else any_zero = true;
        }
    }
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
    double resolution = 1.0 / static_cast<double>(max_bits);
    // lowest decade the usable log area needs to show
    int dec_hi = 0;
    int dec_lo = static_cast<int>(std::floor(std::log10(std::min(min_pos, resolution))));
    if (dec_lo >= dec_hi) dec_lo = dec_hi - 1;

    const double plot_bot = H - B - (any_zero ? FLOOR_BAND : 0.0);
    LinMap mx{x_lo, x_hi, L, W - R};
    LinMap my{static_cast<double>(dec_lo), static_cast<double>(dec_hi), plot_bot, T};
    auto ylog = [&](double ber) { return my(std::log10(ber)); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) +
         "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(s, W / 2, 26, title, "middle", 16, "#111");

    for (int d = dec_lo; d <= dec_hi; ++d) {
        double y = my(d);
        line(s, L, y, W - R, y, d == dec_lo || d == dec_hi ? "#999" : "#e2e2e2");
        char lab[16];
        std::snprintf(lab, sizeof lab, "1e%d", d);
        text(s, L - 8, y + 4, lab, "end", 11, "#555");
    }
    for (double t : lin_ticks(x_lo, x_hi, 8)) {
        line(s, mx(t), T, mx(t), plot_bot, "#f0f0f0");
        line(s, mx(t), plot_bot, mx(t), plot_bot + 5, "#555");
        text(s, mx(t), plot_bot + 18, num(t), "middle", 11, "#555");
    }
    line(s, L, T, L, plot_bot, "#999");

    double floor_y = 0.0;
    if (any_zero) {
        floor_y = plot_bot + FLOOR_BAND * 0.62;
        line(s, L, plot_bot + 6, W - R, plot_bot + 6, "#bbb", 1.0, "4 3");
        char lab[40];
        std::snprintf(lab, sizeof lab, "no errors (<1/%zu)", max_bits);
        text(s, W - R, floor_y - 8, lab, "end", 10, "#777");
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& w = series[si];
        const char* color = PALETTE[si % PALETTE_N];
        std::string seg;
        for (std::size_t i = 0; i < w.ber.size(); ++i) {
            if (w.ber[i] > 0.0) {
                seg += num(mx(w.ebn0_db[i])) + "," + num(ylog(w.ber[i])) + " ";
            } else {
                if (!seg.empty())
                    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                         "\" stroke-width=\"1.6\" points=\"" + seg + "\"/>\n";
                seg.clear();
            }
        }
        if (!seg.empty())
            s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                 "\" stroke-width=\"1.6\" points=\"" + seg + "\"/>\n";
        for (std::size_t i = 0; i < w.ber.size(); ++i) {
            double cx = mx(w.ebn0_db[i]);
            if (w.ber[i] > 0.0) {
                s += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(ylog(w.ber[i])) +
                     "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
            } else {
                s += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(floor_y) +
                     "\" r=\"3.5\" fill=\"white\" stroke=\"" + color +
                     "\" stroke-width=\"1.5\"/>\n";
            }
        }
        double ly = T + 16 + 16 * static_cast<double>(si);
        line(s, W - R - 120, ly - 4, W - R - 96, ly - 4, color, 2.5);
        text(s, W - R - 90, ly, w.label, "start", 12, "#222");
    }

    text(s, W / 2, H - 12, "Eb/N0 (dB)", "middle", 12, "#333");
    s += "<text x=\"18\" y=\"" + num((T + plot_bot) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333\" "
         "transform=\"rotate(-90 18 " +
         num((T + plot_bot) / 2) + ")\">BER</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace modemsim
