#include "lamespec/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lamespec/errors.hpp"

namespace lamespec {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

}  // namespace

std::string trace_fit_svg(std::span<const TraceSample> samples, const FitResult& fit, int n) {
    if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to plot");
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : samples) {
        xs.push_back(std::sqrt(s.t));
        ys.push_back(s.theta * std::pow(s.t, 0.5 * n));
    }
    const double c = fit.c_hat.value_or(0.0);
    auto two_term = [&](double x) { return fit.a0_hat + fit.a1_hat * x; };
    auto full = [&](double x) { return two_term(x) + c * x * x; };

    double x_lo = *std::min_element(xs.begin(), xs.end());
    double x_hi = *std::max_element(xs.begin(), xs.end());
    if (x_hi == x_lo) x_hi = x_lo * 1.1 + 1e-12;
    double y_lo = *std::min_element(ys.begin(), ys.end());
    double y_hi = *std::max_element(ys.begin(), ys.end());
    for (double x : {x_lo, x_hi}) {
        y_lo = std::min({y_lo, two_term(x), full(x)});
        y_hi = std::max({y_hi, two_term(x), full(x)});
    }
    const double pad = 0.05 * (y_hi - y_lo + 1e-300);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
    auto py = [&](double y) { return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kHeight - kMargin) + "\" x2=\"" + fmt(kWidth - kMargin) +
           "\" y2=\"" + fmt(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kMargin) + "\" x2=\"" + fmt(kMargin) + "\" y2=\"" +
           fmt(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / 4.0;
        const double y = y_lo + (y_hi - y_lo) * i / 4.0;
        svg += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(kHeight - kMargin + 18) + "\" text-anchor=\"middle\">" +
               fmt(x) + "</text>\n";
        svg += "<text x=\"" + fmt(kMargin - 6) + "\" y=\"" + fmt(py(y) + 4) + "\" text-anchor=\"end\">" + fmt(y) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight - 15) +
           "\" text-anchor=\"middle\">sqrt(t)</text>\n";
    svg += "<text x=\"15\" y=\"" + fmt(kHeight / 2) + "\" transform=\"rotate(-90 15 " + fmt(kHeight / 2) +
           ")\" text-anchor=\"middle\">theta(t) t^(" + fmt(0.5 * n) + ")</text>\n";

    auto polyline = [&](auto&& f, const char* style) {
        std::string points;
        for (int i = 0; i <= 64; ++i) {
            const double x = x_lo + (x_hi - x_lo) * i / 64.0;
            points += fmt(px(x)) + "," + fmt(py(f(x))) + " ";
        }
        return "<polyline fill=\"none\" " + std::string(style) + " points=\"" + points + "\"/>\n";
    };
    svg += polyline(two_term, "stroke=\"#1f77b4\" stroke-width=\"2\"");
    if (fit.c_hat) svg += polyline(full, "stroke=\"#d62728\" stroke-dasharray=\"6,4\"");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        svg += "<circle cx=\"" + fmt(px(xs[i])) + "\" cy=\"" + fmt(py(ys[i])) + "\" r=\"3\" fill=\"black\"/>\n";
    }
    svg += "<text x=\"" + fmt(kMargin + 10) + "\" y=\"" + fmt(kMargin - 20) + "\">A = " + fmt(fit.a0_hat) +
           ", B = " + fmt(fit.a1_hat) + (fit.c_hat ? ", C = " + fmt(c) : std::string{}) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace lamespec
