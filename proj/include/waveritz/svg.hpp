#ifndef WAVERITZ_SVG_HPP
#define WAVERITZ_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace waveritz {

/// One polyline of an SVG line chart.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgOptions {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_x = false;
    bool log_y = false; ///< plots log10|y|, skipping zeros
    int width = 720;
    int height = 480;
};

/// Minimal self-contained line chart; presentation only, all numbers live in
/// the CSV outputs.
void write_svg_chart(const std::vector<SvgSeries>& series, const SvgOptions& options,
                     const std::filesystem::path& file);

} // namespace waveritz

#endif
