#include "waveritz/svg.hpp"
#include "waveritz/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace waveritz {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string num(double v) {
    std::ostringstream os;
    os << static_cast<int>(std::lround(v));
    return os.str();
}

} // namespace

void write_svg_chart(const std::vector<SvgSeries>& series, const SvgOptions& options,
                     const std::filesystem::path& file) {
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const int pw = options.width - ml - mr;
    const int ph = options.height - mt - mb;

    auto tx = [&](double v) { return options.log_x ? std::log10(std::abs(v)) : v; };
    auto ty = [&](double v) { return options.log_y ? std::log10(std::abs(v)) : v; };

    bool first = true;
    Range rx, ry;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if ((options.log_x && s.x[i] == 0.0) || (options.log_y && s.y[i] == 0.0)) continue;
            double x = tx(s.x[i]), y = ty(s.y[i]);
            if (first) {
                rx = {x, x};
                ry = {y, y};
                first = false;
            } else {
                rx.expand(x);
                ry.expand(y);
            }
        }
    if (first) rx = ry = {0.0, 1.0};
    if (rx.hi == rx.lo) rx.hi = rx.lo + 1.0;
    if (ry.hi == ry.lo) ry.hi = ry.lo + 1.0;

    auto px = [&](double x) { return ml + (tx(x) - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double y) { return mt + ph - (ty(y) - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
       << options.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << options.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
       << options.title << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"#333\"/>\n";

    const int nticks = 5;
    for (int t = 0; t <= nticks; ++t) {
        double fx = rx.lo + (rx.hi - rx.lo) * t / nticks;
        double fy = ry.lo + (ry.hi - ry.lo) * t / nticks;
        double xpix = ml + double(pw) * t / nticks;
        double ypix = mt + ph - double(ph) * t / nticks;
        os << "<line x1=\"" << num(xpix) << "\" y1=\"" << mt + ph << "\" x2=\"" << num(xpix)
           << "\" y2=\"" << mt + ph + 4 << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << num(xpix) << "\" y=\"" << mt + ph + 18
           << "\" text-anchor=\"middle\">" << (options.log_x ? "1e" : "") << format_g15(options.log_x ? fx : fx)
           << "</text>\n";
        os << "<line x1=\"" << ml - 4 << "\" y1=\"" << num(ypix) << "\" x2=\"" << ml << "\" y2=\""
           << num(ypix) << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << num(ypix + 4)
           << "\" text-anchor=\"end\">" << (options.log_y ? "1e" : "") << format_g15(fy) << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << options.height - 10
       << "\" text-anchor=\"middle\">" << options.xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << mt + ph / 2 << ")\">" << options.ylabel << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 8];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if ((options.log_x && s.x[i] == 0.0) || (options.log_y && s.y[i] == 0.0)) continue;
            os << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        os << "\"/>\n";
        os << "<text x=\"" << ml + pw - 6 << "\" y=\"" << mt + 16 + 14 * ci
           << "\" text-anchor=\"end\" fill=\"" << color << "\">" << s.label << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
    write_text(os.str(), file);
}

} // namespace waveritz
