// Copyright 2026 The unilearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "unilearn_cli/cli.hpp"

namespace unilearn::cli {
namespace {

constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;
constexpr double kFloor = -12.0;

std::string fixed2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

double log_risk(double v) { return v > 0.0 ? std::max(std::log10(v), kFloor) : kFloor; }

} // namespace

std::string loss_curve_svg(const TrainResult& r) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (r.rows.empty()) {
        s << "</svg>\n";
        return s.str();
    }
    double lo = 0.0, hi = kFloor;
    for (const auto& row : r.rows) {
        for (double v : {row.empirical_risk, row.quantum_risk}) {
            lo = std::min(lo, log_risk(v));
            hi = std::max(hi, log_risk(v));
        }
    }
    lo = std::floor(lo);
    hi = std::max(std::ceil(hi), lo + 1.0);
    const double span_x = std::max<double>(1.0, static_cast<double>(r.rows.back().epoch));
    const auto px = [&](double epoch) { return kLeft + epoch / span_x * (kWidth - kLeft - kRight); };
    const auto py = [&](double lg) { return kTop + (hi - lg) / (hi - lo) * (kHeight - kTop - kBottom); };

    s << "<g stroke=\"#999\" stroke-width=\"1\">\n";
    s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom << "\"/>\n";
    s << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
      << kHeight - kBottom << "\"/>\n</g>\n";
    s << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double e = lo; e <= hi; e += 1.0) {
        s << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed2(py(e) + 4) << "\" text-anchor=\"end\">1e"
          << static_cast<int>(e) << "</text>\n";
    }
    s << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16 << "\">0</text>\n";
    s << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"end\">"
      << r.rows.back().epoch << "</text>\n";
    s << "<text x=\"" << (kWidth + kLeft) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">epoch</text>\n";
    s << "</g>\n";

    const auto polyline = [&](auto pick, const char* colour, const char* label, double legend_y) {
        s << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : r.rows) {
            s << fixed2(px(row.epoch)) << ',' << fixed2(py(log_risk(pick(row)))) << ' ';
        }
        s << "\"/>\n";
        s << "<text x=\"" << kWidth - kRight - 150 << "\" y=\"" << legend_y << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
          << colour << "\">" << label << "</text>\n";
    };
    polyline([](const EpochRow& row) { return row.empirical_risk; }, "#1f77b4", "empirical risk", kTop + 14);
    polyline([](const EpochRow& row) { return row.quantum_risk; }, "#d62728", "quantum risk", kTop + 30);
    s << "</svg>\n";
    return s.str();
}

} // namespace unilearn::cli
