#include "fuzzyvis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Mapper {
    double lo, hi, out_lo, out_hi;
    double operator()(double v) const {
        const double span = hi - lo;
        const double t = span > 0 ? (v - lo) / span : 0.5;
        return out_lo + t * (out_hi - out_lo);
    }
};

void open_frame(std::ostringstream& os, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"16\" fill=\"#222222\">" << title
       << "</text>\n";
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
       << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
       << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string scatter_svg(const EmbeddingResult& emb, const std::string& title) {
    if (emb.coords.rows() < 1 || emb.dim < 2) {
        throw ArgumentError("scatter plot needs at least one point in >= 2 dimensions");
    }
    const int n = static_cast<int>(emb.coords.rows());
    double xlo = emb.coords.col(0).minCoeff(), xhi = emb.coords.col(0).maxCoeff();
    double ylo = emb.coords.col(1).minCoeff(), yhi = emb.coords.col(1).maxCoeff();
    const double pad = 0.05 * std::max({xhi - xlo, yhi - ylo, 1e-9});
    xlo -= pad;
    xhi += pad;
    ylo -= pad;
    yhi += pad;
    const Mapper mx{xlo, xhi, kMargin, kWidth - kMargin};
    const Mapper my{ylo, yhi, kHeight - kMargin, kMargin};  // y grows upward

    std::ostringstream os;
    open_frame(os, title);
    for (int i = 0; i < n; ++i) {
        double corr = emb.correlations.size() > i ? emb.correlations[i] : 1.0;
        corr = std::clamp(corr, 0.0, 1.0);
        // interpolate light gray (200,200,200) -> blue (51,102,204)
        const int r = static_cast<int>(std::lround(200 + (51 - 200) * corr));
        const int g = static_cast<int>(std::lround(200 + (102 - 200) * corr));
        const int b = static_cast<int>(std::lround(200 + (204 - 200) * corr));
        os << "<circle cx=\"" << num(mx(emb.coords(i, 0))) << "\" cy=\""
           << num(my(emb.coords(i, 1))) << "\" r=\"4\" fill=\"rgb(" << r << ',' << g << ','
           << b << ")\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string histogram_svg(const Histogram& h, const std::string& title) {
    if (h.counts.empty()) throw ArgumentError("histogram has no bins");
    const int bins = static_cast<int>(h.counts.size());
    const int cmax = *std::max_element(h.counts.begin(), h.counts.end());
    const Mapper mx{h.edges.front(), h.edges.back(), kMargin, kWidth - kMargin};
    const Mapper my{0.0, static_cast<double>(std::max(cmax, 1)), kHeight - kMargin, kMargin};

    std::ostringstream os;
    open_frame(os, title);
    for (int b = 0; b < bins; ++b) {
        const double x0 = mx(h.edges[b]);
        const double x1 = mx(h.edges[b + 1]);
        const double y = my(static_cast<double>(h.counts[b]));
        os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\""
           << num(std::max(x1 - x0 - 1.0, 0.5)) << "\" height=\""
           << num(kHeight - kMargin - y) << "\" fill=\"#6699cc\" stroke=\"#335577\" "
           << "stroke-width=\"0.5\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string curves_svg(const ObservableCurves& curves, double t_d, const std::string& title) {
    if (curves.t.size() < 2) throw ArgumentError("curve plot needs at least two samples");
    const double tlo = std::log10(curves.t.front());
    const double thi = std::log10(curves.t.back());
    double ylo = 0.0, yhi = 0.0;
    for (std::size_t i = 0; i < curves.t.size(); ++i) {
        ylo = std::min({ylo, curves.d_s[i], curves.v_s[i]});
        yhi = std::max({yhi, curves.d_s[i], curves.v_s[i]});
    }
    if (yhi <= ylo) yhi = ylo + 1.0;
    const Mapper mx{tlo, thi, kMargin, kWidth - kMargin};
    const Mapper my{ylo, yhi, kHeight - kMargin, kMargin};

    std::ostringstream os;
    open_frame(os, title);
    auto polyline = [&](const std::vector<double>& ys, const char* color) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curves.t.size(); ++i) {
            os << num(mx(std::log10(curves.t[i]))) << ',' << num(my(ys[i])) << ' ';
        }
        os << "\"/>\n";
    };
    polyline(curves.d_s, "#cc3333");
    polyline(curves.v_s, "#3366cc");
    if (t_d > 0) {
        const double xm = mx(std::log10(t_d));
        os << "<line x1=\"" << num(xm) << "\" y1=\"" << kMargin << "\" x2=\"" << num(xm)
           << "\" y2=\"" << kHeight - kMargin
           << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace fuzzyvis::svg
