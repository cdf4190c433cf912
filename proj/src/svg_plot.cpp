// Copyright 2026 The phasebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phasebound/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace phasebound {

namespace {

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#000000", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_line_chart(const std::vector<PlotSeries> &series, const PlotOptions &options) {
    const double left = 70, right = 150, top = 40, bottom = 55;
    const double w = options.width, h = options.height;
    const double plot_w = w - left - right, plot_h = h - top - bottom;

    auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const PlotSeries &s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (options.log_x && s.x[i] <= 0.0)) {
                continue;
            }
            x_lo = std::min(x_lo, tx(s.x[i]));
            x_hi = std::max(x_hi, tx(s.x[i]));
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    }
    if (x_hi == x_lo) {
        x_hi = x_lo + 1;
    }
    y_lo = std::min(y_lo, 0.0);
    if (y_hi <= y_lo) {
        y_hi = y_lo + 1;
    }
    auto px = [&](double x) { return left + (tx(x) - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(options.title)
      << "</text>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(left + plot_w)
      << "\" y2=\"" << num(top + plot_h) << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
      << num(top + plot_h) << "\" stroke=\"black\"/>\n";

    // x ticks: decades on a log axis, five even steps otherwise
    std::vector<double> xticks;
    if (options.log_x) {
        for (double e = std::floor(x_lo); e <= std::ceil(x_hi); e += 1.0) {
            if (e >= x_lo - 1e-9 && e <= x_hi + 1e-9) {
                xticks.push_back(std::pow(10.0, e));
            }
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            xticks.push_back(x_lo + (x_hi - x_lo) * i / 5.0);
        }
    }
    for (double t : xticks) {
        o << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(px(t)) << "\" y2=\""
          << num(top + plot_h + 5) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << num(px(t)) << "\" y=\"" << num(top + plot_h + 18) << "\" text-anchor=\"middle\">"
          << tick_label(t) << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double t = y_lo + (y_hi - y_lo) * i / 5.0;
        o << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(left) << "\" y2=\""
          << num(py(t)) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
          << tick_label(t) << "</text>\n";
    }
    o << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(h - 12) << "\" text-anchor=\"middle\">"
      << escape(options.x_label) << "</text>\n";
    o << "<text x=\"16\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(top + plot_h / 2) << ")\">" << escape(options.y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char *colour = kPalette[s % std::size(kPalette)];
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.8\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
            if (!std::isfinite(series[s].y[i]) || (options.log_x && series[s].x[i] <= 0.0)) {
                continue;
            }
            o << (first ? "" : " ") << num(px(series[s].x[i])) << ',' << num(py(series[s].y[i]));
            first = false;
        }
        o << "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(s);
        o << "<line x1=\"" << num(left + plot_w + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + plot_w + 36)
          << "\" y2=\"" << num(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>";
        o << "<text x=\"" << num(left + plot_w + 42) << "\" y=\"" << num(ly + 4) << "\">" << escape(series[s].label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string render_spokes(const PhaseAlphabet &alphabet, const std::string &title) {
    const double size = 420, c = size / 2, r = size / 2 - 40;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\" font-family=\"sans-serif\" "
         "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"210\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n";
    o << "<circle cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\"" << num(r)
      << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
    for (int k = 0; k < alphabet.bases; ++k) {
        for (int bit = 0; bit <= 1; ++bit) {
            const double phi = signal_phase(bit, k, alphabet);
            o << "<line x1=\"" << num(c) << "\" y1=\"" << num(c) << "\" x2=\"" << num(c + r * std::cos(phi))
              << "\" y2=\"" << num(c - r * std::sin(phi)) << "\" stroke=\"" << (bit == 0 ? kPalette[0] : kPalette[1])
              << "\" stroke-width=\"1\"/>\n";
        }
    }
    o << "<text x=\"12\" y=\"404\" fill=\"" << kPalette[0] << "\">bit 0</text><text x=\"60\" y=\"404\" fill=\""
      << kPalette[1] << "\">bit 1</text>\n</svg>\n";
    return o.str();
}

}  // namespace phasebound
