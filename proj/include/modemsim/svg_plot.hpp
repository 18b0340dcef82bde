#pragma once
// Minimal self-contained SVG charts, two fixed kinds: a stack of time-domain
// panels and a BER waterfall with a log y axis. No styling knobs; callers
// get a reasonable static figure.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modemsim {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// One panel per series, shared time axis.
std::string render_waveform_stack(std::span<const PlotSeries> panels, std::string_view title);

struct WaterfallSeries {
    std::string label;
    std::vector<double> ebn0_db;
    std::vector<double> ber;
    std::size_t bits_sent = 0;
};

// log10 BER against Eb/N0. Zero-error points cannot sit on a log axis, so
// they are drawn as open markers on a separate floor band labelled with the
// resolution limit "<1/bits_sent".
std::string render_ber_waterfall(std::span<const WaterfallSeries> series, std::string_view title);

}  // namespace modemsim
