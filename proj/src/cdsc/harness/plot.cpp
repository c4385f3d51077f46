// Copyright 2026 The cdsc Authors
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

#include "cdsc/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>

#include "cdsc/error.hpp"

namespace cdsc {

namespace {

constexpr double kW = 680, kH = 440;
constexpr double kLeft = 80, kRight = 190, kTop = 40, kBottom = 56;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

struct Pt {
    double x, y, err;
};

struct Figure {
    std::string title, xlabel, ylabel;
    bool xlog = false, ylog = false;
    bool steps = false;
    std::map<std::string, std::vector<Pt>> series;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v, bool log) {
    char buf[32];
    if (log) {
        std::snprintf(buf, sizeof(buf), "1e%d", static_cast<int>(std::lround(v)));
    } else {
        std::snprintf(buf, sizeof(buf), "%.4g", v);
    }
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') {
            out += "&lt;";
        } else if (c == '>') {
            out += "&gt;";
        } else if (c == '&') {
            out += "&amp;";
        } else {
            out += c;
        }
    }
    return out;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            for (double d = std::ceil(lo - 1e-9); d <= hi + 1e-9; d += 1) t.push_back(d);
            return t;
        }
        const double raw = (hi - lo) / 5;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
            t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
        }
        return t;
    }
};

Axis fit_axis(std::vector<double> vals, bool log) {
    Axis a;
    a.log = log;
    if (vals.empty()) {
        a.lo = log ? -3 : 0;
        a.hi = log ? 0 : 1;
        return a;
    }
    auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    a.lo = *mn;
    a.hi = *mx;
    if (log) {
        a.lo = std::floor(a.lo);
        a.hi = std::ceil(a.hi);
        if (a.hi <= a.lo) a.hi = a.lo + 1;
    } else {
        double pad = a.hi > a.lo ? 0.05 * (a.hi - a.lo) : std::max(0.5, std::abs(a.lo) * 0.1);
        a.lo -= pad;
        a.hi += pad;
    }
    return a;
}

std::string render(const Figure& fig, std::vector<std::string>& warnings) {
    auto tx = [&](double v) { return fig.xlog ? std::log10(v) : v; };
    auto ty = [&](double v) { return fig.ylog ? std::log10(v) : v; };
    std::vector<double> xs, ys;
    size_t dropped = 0;
    std::map<std::string, std::vector<Pt>> shown;
    for (const auto& [name, pts] : fig.series) {
        for (const Pt& p : pts) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || (fig.xlog && p.x <= 0) || (fig.ylog && p.y <= 0)) {
                ++dropped;
                continue;
            }
            shown[name].push_back(p);
            xs.push_back(tx(p.x));
            ys.push_back(ty(p.y));
            if (!fig.ylog && std::isfinite(p.err) && p.err > 0) {
                ys.push_back(p.y - p.err);
                ys.push_back(p.y + p.err);
            }
        }
    }
    if (dropped) warnings.push_back(std::to_string(dropped) + " points cannot be shown on these axes");
    const Axis ax = fit_axis(xs, fig.xlog), ay = fit_axis(ys, fig.ylog);
    const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return kTop + ph - (v - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) + "\" height=\"" + num(kH) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(fig.title) + "</text>\n";
    s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        s += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(px(t)) + "\" y2=\"" +
             num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(px(t)) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
             tick_label(t, ax.log) + "</text>\n";
    }
    for (double t : ay.ticks()) {
        s += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
             num(py(t)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
             tick_label(t, ay.log) + "</text>\n";
    }
    s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kH - 12) + "\" text-anchor=\"middle\">" +
         escape(fig.xlabel) + "</text>\n";
    s += "<text x=\"18\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(kTop + ph / 2) + ")\">" + escape(fig.ylabel) + "</text>\n";
    if (shown.empty()) {
        s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kTop + ph / 2) +
             "\" text-anchor=\"middle\" fill=\"gray\">no data</text>\n";
    }

    size_t k = 0;
    for (const auto& [name, pts0] : shown) {
        auto pts = pts0;
        std::stable_sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
        const std::string color = kColors[k % (sizeof(kColors) / sizeof(kColors[0]))];
        std::string path;
        for (size_t i = 0; i < pts.size(); ++i) {
            double x = px(tx(pts[i].x)), y = py(ty(pts[i].y));
            path += (i ? " L" : "M") + num(x) + " " + num(y);
        }
        s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        if (!fig.steps) {
            for (const Pt& p : pts) {
                double x = px(tx(p.x)), y = py(ty(p.y));
                s += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
                if (std::isfinite(p.err) && p.err > 0 && (!fig.ylog || p.y - p.err > 0)) {
                    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(py(ty(p.y - p.err))) + "\" x2=\"" + num(x) +
                         "\" y2=\"" + num(py(ty(p.y + p.err))) + "\" stroke=\"" + color + "\"/>\n";
                }
            }
        }
        const double ly = kTop + 10 + 18 * static_cast<double>(k);
        s += "<line x1=\"" + num(kW - kRight + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(kW - kRight + 32) +
             "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(kW - kRight + 38) + "\" y=\"" + num(ly + 4) + "\">" + escape(name) + "</text>\n";
        ++k;
    }
    s += "</svg>\n";
    return s;
}

double cell(const CsvTable& t, const std::vector<std::string>& row, const std::string& col) {
    return csv_to_double(row[t.column(col)]);
}

void require_columns(const CsvTable& t, std::initializer_list<const char*> cols, const char* kind) {
    if (t.columns().empty()) return;  // empty file: nothing to check
    for (const char* c : cols) {
        if (!t.has_column(c)) {
            throw ConfigError(std::string("plot ") + kind + ": CSV lacks column '" + c + "'");
        }
    }
}

}  // namespace

PlotKind plot_kind_from_string(std::string_view name) {
    if (name == "subthreshold") return PlotKind::Subthreshold;
    if (name == "threshold") return PlotKind::Threshold;
    if (name == "phase") return PlotKind::Phase;
    if (name == "histogram") return PlotKind::Histogram;
    throw ConfigError("unknown plot kind '" + std::string(name) +
                      "' (expected subthreshold, threshold, phase or histogram)");
}

PlotOutput render_plot(const CsvTable& t, PlotKind kind) {
    PlotOutput out;
    Figure fig;
    if (t.rows().empty()) out.warnings.push_back("CSV has no data rows; writing empty axes");
    switch (kind) {
        case PlotKind::Subthreshold:
            require_columns(t, {"code", "eta", "L", "p_logical", "std_error"}, "subthreshold");
            fig.title = "Subthreshold logical error rate";
            fig.xlabel = "L";
            fig.ylabel = "logical error rate";
            fig.ylog = true;
            for (const auto& r : t.rows()) {
                std::string name = r[t.column("code")] + " eta=" + r[t.column("eta")];
                fig.series[name].push_back({cell(t, r, "L"), cell(t, r, "p_logical"), cell(t, r, "std_error")});
            }
            break;
        case PlotKind::Threshold:
            require_columns(t, {"eta", "L", "p", "p_logical", "std_error"}, "threshold");
            fig.title = "Logical error rate near threshold";
            fig.xlabel = "p";
            fig.ylabel = "logical error rate";
            for (const auto& r : t.rows()) {
                char name[64];
                std::snprintf(name, sizeof(name), "L=%3d eta=%s", static_cast<int>(cell(t, r, "L")),
                              r[t.column("eta")].c_str());
                fig.series[name].push_back({cell(t, r, "p"), cell(t, r, "p_logical"), cell(t, r, "std_error")});
            }
            break;
        case PlotKind::Phase:
            require_columns(t, {"pi_xz", "pi_yz", "L", "p", "p_logical", "std_error"}, "phase");
            fig.title = "Phase scan";
            fig.xlabel = "p";
            fig.ylabel = "logical error rate";
            for (const auto& r : t.rows()) {
                char name[96];
                std::snprintf(name, sizeof(name), "(%s,%s) L=%3d", r[t.column("pi_xz")].c_str(),
                              r[t.column("pi_yz")].c_str(), static_cast<int>(cell(t, r, "L")));
                fig.series[name].push_back({cell(t, r, "p"), cell(t, r, "p_logical"), cell(t, r, "std_error")});
            }
            break;
        case PlotKind::Histogram: {
            require_columns(t, {"eta", "p_fail"}, "histogram");
            fig.title = "3x3 codes: logical failure probability";
            fig.xlabel = "logical failure probability";
            fig.ylabel = "number of codes";
            fig.xlog = true;
            fig.steps = true;
            std::map<std::string, std::vector<double>> by_eta;
            double lo = std::numeric_limits<double>::infinity(), hi = 0;
            for (const auto& r : t.rows()) {
                double v = cell(t, r, "p_fail");
                if (!(v > 0)) continue;
                by_eta["eta=" + r[t.column("eta")]].push_back(v);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (by_eta.empty()) break;
            // 40 log-spaced bins over the observed range, widened when flat.
            double a = std::log10(lo), b = std::log10(hi);
            if (b - a < 1e-6) {
                a -= 0.5;
                b += 0.5;
            }
            constexpr int kBins = 40;
            const double w = (b - a) / kBins;
            for (const auto& [name, vals] : by_eta) {
                std::vector<int> counts(kBins, 0);
                for (double v : vals) {
                    int i = std::clamp(static_cast<int>((std::log10(v) - a) / w), 0, kBins - 1);
                    ++counts[static_cast<size_t>(i)];
                }
                auto& pts = fig.series[name];
                for (int i = 0; i < kBins; ++i) {
                    const double c = counts[static_cast<size_t>(i)];
                    pts.push_back({std::pow(10.0, a + w * i), c, 0.0});
                    pts.push_back({std::pow(10.0, a + w * (i + 1)), c, 0.0});
                }
            }
            break;
        }
    }
    out.svg = render(fig, out.warnings);
    return out;
}

std::vector<std::string> emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
    PlotOutput out = render_plot(CsvTable::read(csv_path), kind);
    if (svg_path == "-") {
        std::cout << out.svg << std::flush;
    } else {
        std::ofstream f(svg_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open '" + svg_path + "' for writing");
        f << out.svg;
    }
    return out.warnings;
}

}  // namespace cdsc
