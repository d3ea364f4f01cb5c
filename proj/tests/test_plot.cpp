#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <tropopt/plot.hpp>

#include <cmath>
#include <limits>

using namespace tropopt;
using testing::M;
using testing::V;
using testing::Z;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double area(const std::vector<plot::Point>& poly)
{
    double twice = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const plot::Point& a = poly[i];
        const plot::Point& b = poly[(i + 1) % poly.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return std::abs(twice) / 2;
}

bool inside(const std::vector<plot::Point>& poly, double lo, double hi, double w)
{
    for (const plot::Point& p : poly) {
        const double d = p.y - p.x;
        if (d < lo - 1e-9 || d > hi + 1e-9 || std::abs(p.x) > w + 1e-9 || std::abs(p.y) > w + 1e-9) {
            return false;
        }
    }
    return true;
}

std::size_t count(const std::string& text, const std::string& part)
{
    std::size_t n = 0;
    for (auto at = text.find(part); at != std::string::npos; at = text.find(part, at + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("difference band of generator columns")
{
    CHECK(plot::difference_band(M({ { 0, -1 }, { -2, 0 } })) == std::pair { -2.0, 1.0 });
    CHECK(plot::difference_band(M({ { 0, -1 }, { Z, 0 } })) == std::pair { -inf, 1.0 });
    CHECK(plot::difference_band(M({ { Z }, { 0 } })) == std::pair { inf, inf });
    CHECK(plot::difference_band(M({ { 3 }, { 5 } })) == std::pair { 2.0, 2.0 });
    CHECK_THROWS_AS(plot::difference_band(M({ { 1 }, { 2 }, { 3 } })), Error);
}

TEST_CASE("band clipping")
{
    const double w = 10;
    CHECK(area(plot::clip_band(-inf, inf, w)) == doctest::Approx(400));
    CHECK(area(plot::clip_band(0, inf, w)) == doctest::Approx(200));
    CHECK(area(plot::clip_band(-2, 1, w)) == doctest::Approx(400 - 0.5 * 18 * 18 - 0.5 * 19 * 19));
    CHECK(inside(plot::clip_band(-2, 1, w), -2, 1, w));
    CHECK(plot::clip_band(25, inf, w).empty());
    const auto line = plot::clip_band(1, 1, w);
    CHECK(area(line) == doctest::Approx(0));
    CHECK(inside(line, 1, 1, w));
}

TEST_CASE("span picture")
{
    const SpanProblem<io::SF> prob(M({ { 2, 0 }, { 4, 1 } }), V({ 5, 2 }), V({ 1, 2 }));
    const std::string svg = plot::render_span(prob, complete_solution(prob), 10);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "</svg>") == 1);
    CHECK(count(svg, "<polygon") >= 2);
    CHECK(svg.find("stroke=\"#c00\"") != std::string::npos);
    CHECK(svg == plot::render_span(prob, complete_solution(prob), 10));
    CHECK_THROWS_AS(plot::render_span(prob, complete_solution(prob), 0), Error);

    const SpanProblem<io::SF> three(M({ { 1, 0, 0 }, { 0, 1, 0 }, { 0, 0, 1 } }), V({ 0, 0, 0 }), V({ 0, 0, 0 }));
    try {
        plot::render_span(three, complete_solution(three), 10);
        FAIL("three variables drawn");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedDimension);
    }
}

TEST_CASE("a single-direction set is drawn as a line")
{
    // precedence in both directions pins x2 = x1 + 1
    const auto inst = ScheduleInstance<io::SF>::build(M({ { 0, Z }, { Z, 0 } }), M({ { Z, -1 }, { 1, Z } }),
        M({ { Z, Z }, { Z, Z } }), V({ 6, 6 }));
    const ScheduleSolution<io::SF> sol = solve_schedule(inst);
    CHECK(plot::difference_band(sol.x_generators) == std::pair { 1.0, 1.0 });
    const std::string svg = plot::render_schedule(sol, 10);
    CHECK(count(svg, "<polygon") == 0);
    CHECK(count(svg, "stroke-width=\"3.000\"") >= 2);
}

TEST_CASE("schedule picture")
{
    const auto inst = ScheduleInstance<io::SF>::build(M({ { 0, Z }, { 1, 0 } }), M({ { Z, -1 }, { Z, Z } }),
        M({ { Z, Z }, { Z, Z } }), V({ 6, 6 }));
    const std::string svg = plot::render_schedule(solve_schedule(inst), 10);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "latest") >= 2);
}
