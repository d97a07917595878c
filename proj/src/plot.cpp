#include "dwsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace dwsim {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg(std::span<const double> x, std::span<const double> y, const PlotSpec& spec) {
    const int left = 80, right = 20, top = 36, bottom = 50;
    const int pw = spec.width - left - right;
    const int ph = spec.height - top - bottom;

    auto ty = [&](double v) {
        return spec.log_y ? std::log10(std::max(v, std::numeric_limits<double>::min())) : v;
    };

    const std::size_t n = std::min(x.size(), y.size());
    double x0 = n ? x[0] : 0.0, x1 = n ? x[n - 1] : 1.0;
    if (x1 <= x0) x1 = x0 + 1.0;
    double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
    for (std::size_t i = 0; i < n; ++i) {
        y0 = std::min(y0, ty(y[i]));
        y1 = std::max(y1, ty(y[i]));
    }
    if (!(y1 > y0)) {
        const double c = std::isfinite(y0) ? y0 : 0.0;
        y0 = c - 1.0;
        y1 = c + 1.0;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return top + (1.0 - (v - y0) / (y1 - y0)) * ph; };

    // min/max per pixel column keeps peaks of long records visible.
    std::vector<double> lo(static_cast<std::size_t>(pw), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(pw), -std::numeric_limits<double>::infinity());
    std::vector<double> first(static_cast<std::size_t>(pw), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(pw), false);
    for (std::size_t i = 0; i < n; ++i) {
        auto col = static_cast<std::size_t>(std::clamp((x[i] - x0) / (x1 - x0) * (pw - 1), 0.0,
                                                       static_cast<double>(pw - 1)));
        const double v = ty(y[i]);
        if (!seen[col]) first[col] = v;
        seen[col] = true;
        lo[col] = std::min(lo[col], v);
        hi[col] = std::max(hi[col], v);
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(spec.title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = x0 + (x1 - x0) * t / 4.0;
        const double fy = y0 + (y1 - y0) * t / 4.0;
        svg << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 16
            << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">"
            << (spec.log_y ? "1e" + num(fy) : num(fy)) << "</text>\n";
        svg << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << py(fy)
            << "\" y2=\"" << py(fy) << "\" stroke=\"#ddd\"/>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << spec.height - 10
        << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    svg << "<text transform=\"translate(16," << top + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (int c = 0; c < pw; ++c) {
        const auto k = static_cast<std::size_t>(c);
        if (!seen[k]) continue;
        const double xc = left + c;
        svg << xc << ',' << py(first[k]) << ' ';
        if (hi[k] > lo[k]) svg << xc << ',' << py(lo[k]) << ' ' << xc << ',' << py(hi[k]) << ' ';
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

}  // namespace dwsim
