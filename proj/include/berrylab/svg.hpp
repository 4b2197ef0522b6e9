#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "berrylab/errors.hpp"

namespace berrylab {

// Minimal log-log polyline chart, no dependencies. Curves are named series
// of (x, y) points with y > 0 and x > 0; rendering picks decade ticks and a
// fixed 800x560 canvas. Intended for small verification sweeps, not general
// plotting.
class LogLogSvg {
public:
    LogLogSvg(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)),
          y_label_(std::move(y_label)) {}

    void add_series(std::string name, std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() != ys.size() || xs.empty())
            throw DomainError("LogLogSvg: series needs matching non-empty x/y");
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) ||
                !std::isfinite(ys[i]))
                throw DomainError("LogLogSvg: log-log data must be finite and positive");
        series_.push_back({std::move(name), std::move(xs), std::move(ys)});
    }

    std::string render() const {
        if (series_.empty()) throw DomainError("LogLogSvg: nothing to draw");
        double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
        for (const auto& s : series_) {
            for (double x : s.xs) {
                lx0 = std::min(lx0, std::log10(x));
                lx1 = std::max(lx1, std::log10(x));
            }
            for (double y : s.ys) {
                ly0 = std::min(ly0, std::log10(y));
                ly1 = std::max(ly1, std::log10(y));
            }
        }
        if (lx1 - lx0 < 1e-9) { lx0 -= 0.5; lx1 += 0.5; }
        if (ly1 - ly0 < 1e-9) { ly0 -= 0.5; ly1 += 0.5; }
        lx0 -= 0.04 * (lx1 - lx0); lx1 += 0.04 * (lx1 - lx0);
        ly0 -= 0.06 * (ly1 - ly0); ly1 += 0.06 * (ly1 - ly0);

        const double W = 800, H = 560, ml = 72, mr = 24, mt = 44, mb = 52;
        auto px = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (W - ml - mr); };
        auto py = [&](double ly) { return H - mb - (ly - ly0) / (ly1 - ly0) * (H - mt - mb); };

        std::string out;
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
               "viewBox=\"0 0 800 560\">\n";
        out += "<rect width=\"800\" height=\"560\" fill=\"white\"/>\n";
        out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">" + escape(title_) + "</text>\n";

        // decade grid
        for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
            const double x = px(d);
            out += line(x, mt, x, H - mb, "#dddddd", 1.0);
            out += text(x, H - mb + 18, "1e" + std::to_string(d), "middle", 12);
        }
        for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
            const double y = py(d);
            out += line(ml, y, W - mr, y, "#dddddd", 1.0);
            out += text(ml - 8, y + 4, "1e" + std::to_string(d), "end", 12);
        }
        out += line(ml, H - mb, W - mr, H - mb, "#333333", 1.5);
        out += line(ml, mt, ml, H - mb, "#333333", 1.5);
        out += text(0.5 * (ml + W - mr), H - 14, escape(x_label_), "middle", 13);
        out += "<text x=\"18\" y=\"" + fmt(0.5 * (mt + H - mb)) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 18 " + fmt(0.5 * (mt + H - mb)) + ")\">" +
               escape(y_label_) + "</text>\n";

        static const char* palette[] = {"#1f6fb2", "#c23b22", "#2c8a4b",
                                        "#8050a0", "#b28b1f", "#555555"};
        for (std::size_t i = 0; i < series_.size(); ++i) {
            const auto& s = series_[i];
            const char* color = palette[i % 6];
            std::string pts;
            for (std::size_t j = 0; j < s.xs.size(); ++j) {
                pts += fmt(px(std::log10(s.xs[j]))) + "," + fmt(py(std::log10(s.ys[j])));
                if (j + 1 < s.xs.size()) pts += " ";
            }
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"2\"/>\n";
            for (std::size_t j = 0; j < s.xs.size(); ++j)
                out += "<circle cx=\"" + fmt(px(std::log10(s.xs[j]))) + "\" cy=\"" +
                       fmt(py(std::log10(s.ys[j]))) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
            const double ly = mt + 18.0 + 18.0 * static_cast<double>(i);
            out += line(W - mr - 150, ly - 4, W - mr - 126, ly - 4, color, 3.0);
            out += text(W - mr - 120, ly, escape(s.name), "start", 12);
        }
        out += "</svg>\n";
        return out;
    }

private:
    struct Series {
        std::string name;
        std::vector<double> xs, ys;
    };

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '&') out += "&amp;";
            else if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else out += c;
        }
        return out;
    }
    static std::string line(double x1, double y1, double x2, double y2,
                            const char* color, double width) {
        return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
               "\" y2=\"" + fmt(y2) + "\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"" + fmt(width) + "\"/>\n";
    }
    static std::string text(double x, double y, const std::string& t,
                            const char* anchor, int size) {
        return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor +
               "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\">" +
               t + "</text>\n";
    }

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

} // namespace berrylab
