#pragma once

// SVG pictures of two-dimensional solution sets.
//
// In the plane a max-plus span { S v : v regular } is the band of points
// whose coordinate difference x2 - x1 lies between the smallest and largest
// difference over the generator columns.  A column with a zero entry pushes
// the corresponding side of the band to infinity.

#include <tropopt/io.hpp>

#include <string>
#include <utility>
#include <vector>

namespace tropopt::plot {

struct Point {
    double x = 0;
    double y = 0;
};

/// (lowest, highest) value of x2 - x1 over the columns of a 2-row matrix,
/// with +-infinity for columns that have a zero entry.
std::pair<double, double> difference_band(const io::Mat& generators);

/// The part of the band  lo <= y - x <= hi  inside the square [-w, w]^2,
/// as a convex polygon (possibly empty).
std::vector<Point> clip_band(double lo, double hi, double window);

std::string render_span(const SpanProblem<io::SF>& prob, const CompleteSolution<io::SF>& sol, double window);

std::string render_schedule(const ScheduleSolution<io::SF>& sol, double window);

} // namespace tropopt::plot
