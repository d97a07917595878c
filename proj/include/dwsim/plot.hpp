#pragma once

#include <span>
#include <string>

namespace dwsim {

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 900;
    int height = 420;
};

/// Minimal SVG line plot. Long series are reduced to a min/max envelope per
/// pixel column.
std::string render_svg(std::span<const double> x, std::span<const double> y, const PlotSpec& spec);

}  // namespace dwsim
