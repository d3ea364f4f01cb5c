#include <tropopt/plot.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tropopt::plot {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double panel_size = 300.0;
constexpr double margin = 20.0;

double to_double(const io::Scalar& s)
{
    return s.is_zero() ? -inf : s.value().convert_to<double>();
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void require_plane(Index rows)
{
    if (rows != 2) {
        throw Error(ErrorCode::UnsupportedDimension,
            "plots need two variables, got " + std::to_string(rows));
    }
}

// Keeps the part of poly with  sign * (y - x) >= bound.
std::vector<Point> cut(const std::vector<Point>& poly, double sign, double bound)
{
    auto inside = [&](const Point& p) { return sign * (p.y - p.x) >= bound; };
    auto cross = [&](const Point& a, const Point& b) {
        const double fa = sign * (a.y - a.x) - bound;
        const double fb = sign * (b.y - b.x) - bound;
        const double t = fa / (fa - fb);
        return Point { a.x + t * (b.x - a.x), a.y + t * (b.y - a.y) };
    };
    std::vector<Point> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& cur = poly[i];
        const Point& prev = poly[(i + poly.size() - 1) % poly.size()];
        if (inside(cur)) {
            if (!inside(prev)) {
                out.push_back(cross(prev, cur));
            }
            out.push_back(cur);
        } else if (inside(prev)) {
            out.push_back(cross(prev, cur));
        }
    }
    return out;
}

class Panel {
public:
    Panel(double offset, double window, std::string title)
        : offset_(offset)
        , window_(window)
        , title_(std::move(title))
    {
    }

    Point map(Point p) const
    {
        const double scale = (panel_size - 2 * margin) / (2 * window_);
        return { offset_ + margin + (p.x + window_) * scale, margin + (window_ - p.y) * scale };
    }

    void axes(std::ostream& os) const
    {
        const Point l = map({ -window_, 0 });
        const Point r = map({ window_, 0 });
        const Point b = map({ 0, -window_ });
        const Point t = map({ 0, window_ });
        const Point lo = map({ -window_, -window_ });
        const Point hi = map({ window_, window_ });
        os << "  <rect x=\"" << num(lo.x) << "\" y=\"" << num(hi.y) << "\" width=\"" << num(hi.x - lo.x)
           << "\" height=\"" << num(lo.y - hi.y) << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
        os << "  <line x1=\"" << num(l.x) << "\" y1=\"" << num(l.y) << "\" x2=\"" << num(r.x) << "\" y2=\""
           << num(r.y) << "\" stroke=\"#888\"/>\n";
        os << "  <line x1=\"" << num(b.x) << "\" y1=\"" << num(b.y) << "\" x2=\"" << num(t.x) << "\" y2=\""
           << num(t.y) << "\" stroke=\"#888\"/>\n";
        os << "  <text x=\"" << num(r.x - 14) << "\" y=\"" << num(r.y + 14) << "\">x1</text>\n";
        os << "  <text x=\"" << num(t.x + 4) << "\" y=\"" << num(t.y + 12) << "\">x2</text>\n";
        os << "  <text x=\"" << num(offset_ + margin) << "\" y=\"" << num(panel_size + 4) << "\">" << title_
           << "</text>\n";
    }

    // Band lo <= x2 - x1 <= hi; a degenerate band is drawn as one line.
    void band(std::ostream& os, double lo, double hi) const
    {
        if (lo == hi) {
            diagonal(os, lo, "#000", 3);
            return;
        }
        const std::vector<Point> poly = clip_band(lo, hi, window_);
        if (!poly.empty()) {
            os << "  <polygon points=\"";
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Point p = map(poly[i]);
                os << (i == 0 ? "" : " ") << num(p.x) << "," << num(p.y);
            }
            os << "\" fill=\"url(#hatch)\" stroke=\"none\"/>\n";
        }
        if (lo > -inf) {
            diagonal(os, lo, "#000", 3);
        }
        if (hi < inf) {
            diagonal(os, hi, "#000", 3);
        }
    }

    // The 45-degree line x2 = x1 + d.
    void diagonal(std::ostream& os, double d, const char* colour, double width) const
    {
        const double x0 = std::max(-window_, -window_ - d);
        const double x1 = std::min(window_, window_ - d);
        if (x0 > x1) {
            return;
        }
        const Point a = map({ x0, x0 + d });
        const Point b = map({ x1, x1 + d });
        os << "  <line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\""
           << num(b.y) << "\" stroke=\"" << colour << "\" stroke-width=\"" << num(width) << "\"/>\n";
    }

    void segment(std::ostream& os, Point from, Point to) const
    {
        const Point a = map(from);
        const Point b = map(to);
        os << "  <line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\""
           << num(b.y) << "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
    }

    // Arrow from the origin to a regular vector, or a note for a vector with
    // a zero entry, which lies at infinity.
    void vector(std::ostream& os, const io::Vec& v, const std::string& label, int note_line) const
    {
        const double vx = to_double(v(0));
        const double vy = to_double(v(1));
        if (vx == -inf || vy == -inf) {
            os << "  <text x=\"" << num(offset_ + margin + 4) << "\" y=\"" << num(margin + 14.0 * note_line)
               << "\" font-size=\"11\">" << label << " = (" << to_string(v(0)) << ", " << to_string(v(1))
               << ")</text>\n";
            return;
        }
        if (std::abs(vx) > window_ || std::abs(vy) > window_) {
            return;
        }
        const Point o = map({ 0, 0 });
        const Point p = map({ vx, vy });
        os << "  <line x1=\"" << num(o.x) << "\" y1=\"" << num(o.y) << "\" x2=\"" << num(p.x) << "\" y2=\""
           << num(p.y) << "\" stroke=\"#06c\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n";
        os << "  <text x=\"" << num(p.x + 4) << "\" y=\"" << num(p.y - 4) << "\" font-size=\"11\">" << label
           << "</text>\n";
    }

private:
    double offset_;
    double window_;
    std::string title_;
};

void header(std::ostream& os, int panels)
{
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(panels * panel_size) << "\" height=\""
       << num(panel_size + 12) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "  <defs>\n"
       << "    <pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
          "patternTransform=\"rotate(45)\">\n"
       << "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#999\" stroke-width=\"1\"/>\n"
       << "    </pattern>\n"
       << "    <marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
          "orient=\"auto\">\n"
       << "      <path d=\"M0,0 L6,3 L0,6 z\" fill=\"#06c\"/>\n"
       << "    </marker>\n"
       << "  </defs>\n";
}

io::Vec column(const io::Mat& m, Index j)
{
    return m.col(j);
}

} // namespace

std::pair<double, double> difference_band(const io::Mat& generators)
{
    require_plane(generators.rows());
    double lo = inf;
    double hi = -inf;
    for (Index j = 0; j < generators.cols(); ++j) {
        const double a = to_double(generators(0, j));
        const double b = to_double(generators(1, j));
        double d = 0;
        if (a == -inf && b == -inf) {
            continue;
        }
        if (a == -inf) {
            d = inf;
        } else if (b == -inf) {
            d = -inf;
        } else {
            d = b - a;
        }
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return { lo, hi };
}

std::vector<Point> clip_band(double lo, double hi, double window)
{
    std::vector<Point> poly { { -window, -window }, { window, -window }, { window, window }, { -window, window } };
    if (lo > -inf) {
        poly = cut(poly, 1.0, lo);
    }
    if (hi < inf && !poly.empty()) {
        poly = cut(poly, -1.0, -hi);
    }
    return poly;
}

std::string render_span(const SpanProblem<io::SF>& prob, const CompleteSolution<io::SF>& sol, double window)
{
    require_plane(prob.a().cols());
    if (!(window > 0)) {
        throw Error(ErrorCode::ValidationError, "plot window must be positive");
    }
    std::ostringstream os;
    header(os, 3);

    const io::Vec& q = prob.q();
    const double qd = to_double(q(1)) - to_double(q(0));
    const IntervalSet<io::SF> iv = extended_interval(prob);

    Panel partial(0, window, "partial: x = a q");
    partial.axes(os);
    partial.diagonal(os, qd, "#000", 3);
    partial.vector(os, q, "q", 1);

    Panel extended(panel_size, window, "extended");
    extended.axes(os);
    const GeneratorSet<io::SF> ext = extended_solution(prob);
    const auto [elo, ehi] = difference_band(ext.generators);
    extended.band(os, elo, ehi);
    const double lx = to_double(iv.lower()(0));
    const double ly = to_double(iv.lower()(1));
    const double ux = to_double(iv.upper()(0));
    const double uy = to_double(iv.upper()(1));
    if (lx > -inf && ly > -inf) {
        extended.segment(os, { lx, ly }, { ux, uy });
    }
    extended.vector(os, iv.lower(), "x'", 1);
    extended.vector(os, iv.upper(), "x''", 2);
    for (Index j = 0; j < ext.generators.cols(); ++j) {
        extended.vector(os, column(ext.generators, j), "s" + std::to_string(j + 1), 3 + static_cast<int>(j));
    }

    Panel complete(2 * panel_size, window, "complete");
    complete.axes(os);
    const auto [clo, chi] = difference_band(sol.generators.generators);
    complete.band(os, clo, chi);
    for (Index j = 0; j < sol.generators.generators.cols(); ++j) {
        complete.vector(os, column(sol.generators.generators, j), "s" + std::to_string(j + 1), 1 + static_cast<int>(j));
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_schedule(const ScheduleSolution<io::SF>& sol, double window)
{
    require_plane(sol.x_generators.rows());
    if (!(window > 0)) {
        throw Error(ErrorCode::ValidationError, "plot window must be positive");
    }
    std::ostringstream os;
    header(os, 2);

    Panel starts(0, window, "start times x");
    starts.axes(os);
    const auto [xlo, xhi] = difference_band(sol.x_generators);
    starts.band(os, xlo, xhi);
    const auto [x, y] = latest_schedule(sol);
    starts.vector(os, x, "latest", 1);

    Panel finishes(panel_size, window, "finish times y");
    finishes.axes(os);
    const auto [ylo, yhi] = difference_band(sol.y_generators);
    finishes.band(os, ylo, yhi);
    finishes.vector(os, y, "latest", 1);
    os << "</svg>\n";
    return os.str();
}

} // namespace tropopt::plot
