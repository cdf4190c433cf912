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

#ifndef PHASEBOUND_SVG_PLOT_HPP
#define PHASEBOUND_SVG_PLOT_HPP

#include <string>
#include <vector>

#include "phasebound/encoding.hpp"

namespace phasebound {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    int width = 640;
    int height = 420;
};

/// Self-contained SVG line chart: axes with ticks, optional log-x, legend, one polyline per series.
/// Output depends only on the inputs (no timestamps).
std::string render_line_chart(const std::vector<PlotSeries> &series, const PlotOptions &options);

/// Spoke diagram of an alphabet: bit-0 spokes in one colour, bit-1 spokes in another.
std::string render_spokes(const PhaseAlphabet &alphabet, const std::string &title);

}  // namespace phasebound

#endif
