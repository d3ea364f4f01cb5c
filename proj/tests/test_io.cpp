#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace tropopt;
using testing::M;
using testing::s;
using testing::S;
using testing::SF;
using testing::V;
using testing::Z;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string data_dir = TROPOPT_DATA_DIR;

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::ValidationError;
}

std::string message_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("scalar tokens")
{
    CHECK(io::parse_scalar("12") == s(12));
    CHECK(io::parse_scalar(" -3 ") == s(-3));
    CHECK(io::parse_scalar("-inf") == S::zero());
    CHECK(io::parse_scalar("-3/4") == S::finite(Rational(-3, 4)));
    CHECK(io::parse_scalar("6/4") == S::finite(Rational(3, 2)));
    CHECK(io::parse_scalar("2.5") == S::finite(Rational(5, 2)));
    CHECK(io::parse_scalar("-0.25") == S::finite(Rational(-1, 4)));
    CHECK(io::parse_scalar("010") == s(10));
    CHECK(io::parse_scalar("3/010") == S::finite(Rational(3, 10)));
    CHECK(io::parse_scalar("0.0") == s(0));
    CHECK(io::parse_scalar("123456789012345678901234567890") == S::finite(Rational(Integer("123456789012345678901234567890"))));
    for (const char* bad : { "", "abc", "1/0", "1/", "/2", "1.2.3", "inf", "--1", "1e3" }) {
        CAPTURE(bad);
        CHECK(code_of([&] { io::parse_scalar(bad); }) == ErrorCode::ParseError);
    }
}

TEST_CASE("vector text")
{
    CHECK(io::parse_vector("1, 2") == V({ 1, 2 }));
    CHECK(io::parse_vector("1 -inf 3") == V({ 1, Z, 3 }));
    CHECK(code_of([] { io::parse_vector(" , "); }) == ErrorCode::ParseError);
}

TEST_CASE("two-variable fixture")
{
    const io::ProblemDocument doc = io::parse_problem(slurp(data_dir + "/two_by_two_span.json"));
    CHECK(doc.kind == io::ProblemKind::Span);
    CHECK(doc.matrices.at("A") == M({ { 2, 0 }, { 4, 1 } }));
    CHECK(doc.vectors.at("p") == V({ 5, 2 }));
    CHECK(doc.vectors.at("q") == V({ 1, 2 }));
    CHECK(doc.metadata.at("description") == "two-variable instance");
    CHECK(io::to_span_problem(doc).delta() == s(2));
}

TEST_CASE("project fixture")
{
    const io::ProblemDocument doc = io::parse_problem(slurp(data_dir + "/three_activity_project.json"));
    CHECK(doc.kind == io::ProblemKind::Schedule);
    CHECK(doc.matrices.at("A") == M({ { 3, -1, Z }, { -2, 2, 0 }, { -1, Z, 4 } }));
    CHECK(io::to_schedule(doc).precedence_trace() == s(-1));
}

TEST_CASE("malformed documents")
{
    CHECK(code_of([] { io::parse_problem(""); }) == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_problem("   \n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1,2],[3]],"p":[1,1],"q":[1,1]})"); })
        == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1.5]],"p":[1],"q":[1]})"); })
        == ErrorCode::ParseError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[["x"]],"p":[1],"q":[1]})"); })
        == ErrorCode::ParseError);

    const std::string where = message_of([] { io::parse_problem("{\n  \"kind\": \"span\",\n  \"A\": [[1, 2]\n}"); });
    CHECK(where.find("line 4") != std::string::npos);

    const std::string field = message_of([] { io::parse_problem(R"({"kind":"span","A":[[1,2],[3,true]],"p":[1,1],"q":[1,1]})"); });
    CHECK(field.find("/A/1/1") != std::string::npos);
}

TEST_CASE("structural validation")
{
    CHECK(code_of([] { io::parse_problem(R"({"A":[[1]],"p":[1],"q":[1]})"); }) == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"tree","A":[[1]],"p":[1],"q":[1]})"); })
        == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","semifield":"min-plus","A":[[1]],"p":[1],"q":[1]})"); })
        == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1]],"p":[1]})"); }) == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1]],"p":[1],"q":[1],"B":[[1]]})"); })
        == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1]],"p":[1, 2],"q":[1]})"); })
        == ErrorCode::ValidationError);

    const std::string regular = message_of([] {
        io::parse_problem(R"({"kind":"span","A":[[1,"-inf"],["-inf","-inf"]],"p":[1,1],"q":[1,1]})");
    });
    CHECK(regular.find("A not row-regular") != std::string::npos);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1]],"p":["-inf"],"q":[1]})"); })
        == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1]],"p":[1],"q":["-inf"]})"); })
        == ErrorCode::ValidationError);
    CHECK(code_of([] {
        io::parse_problem(R"({"kind":"schedule","A":[[0,"-inf"],["-inf","-inf"]],"B":[[0,0],[0,0]],"C":[[0,0],[0,0]],"f":[1,1]})");
    }) == ErrorCode::ValidationError);
    CHECK(code_of([] {
        io::parse_problem(R"({"kind":"schedule","A":[[0]],"B":[[0,0]],"C":[[0]],"f":[1]})");
    }) == ErrorCode::ValidationError);
    CHECK(code_of([] { io::parse_problem(R"({"kind":"span","A":[[1]],"p":[1],"q":[1],"metadata":{"k":1}})"); })
        == ErrorCode::ValidationError);
}

TEST_CASE("precedence trace is checked when the instance is built")
{
    const io::ProblemDocument doc
        = io::parse_problem(R"({"kind":"schedule","A":[[0]],"B":[[1]],"C":[["-inf"]],"f":[5]})");
    CHECK(code_of([&] { io::to_schedule(doc); }) == ErrorCode::InfeasiblePrecedence);
}

TEST_CASE("problem round trip")
{
    const io::ProblemDocument doc = io::parse_problem(slurp(data_dir + "/three_activity_project.json"));
    const std::string text = io::serialize_problem(doc);
    CHECK(io::parse_problem(text) == doc);
    CHECK(io::serialize_problem(io::parse_problem(text)) == text);

    io::ProblemDocument rational = io::make_span_document(
        M({ { 1, 2 } }), V({ 3 }), V({ 0, 0 }));
    rational.matrices["A"](0, 1) = S::finite(Rational(-7, 3));
    rational.metadata["note"] = "has a fraction";
    const std::string rtext = io::serialize_problem(rational);
    CHECK(rtext.find("\"-7/3\"") != std::string::npos);
    CHECK(io::parse_problem(rtext) == rational);
}

TEST_CASE("random problem round trips")
{
    testing::Random rng(61);
    for (int k = 0; k < 200; ++k) {
        const testing::SpanData d = testing::random_span(rng);
        io::ProblemDocument doc = io::make_span_document(testing::to_trop(d.a), testing::to_trop(d.p), testing::to_trop(d.q));
        doc.matrices["A"](0, 0) = mul(doc.matrices["A"](0, 0), S::finite(Rational(1, rng.uniform(1, 9))));
        CHECK(io::parse_problem(io::serialize_problem(doc)) == doc);
    }
}

TEST_CASE("input hash")
{
    const io::ProblemDocument a = io::make_span_document(M({ { 2, 0 }, { 4, 1 } }), V({ 5, 2 }), V({ 1, 2 }));
    io::ProblemDocument b = a;
    CHECK(io::input_hash(a) == io::input_hash(b));
    CHECK(io::input_hash(a).rfind("fnv1a64:", 0) == 0);
    CHECK(io::input_hash(a).size() == 8 + 16);
    b.vectors["q"](0) = s(2);
    CHECK(io::input_hash(a) != io::input_hash(b));
}

TEST_CASE("solution documents round trip")
{
    SUBCASE("span")
    {
        const io::ProblemDocument doc = io::parse_problem(slurp(data_dir + "/two_by_two_span.json"));
        const SpanProblem<SF> prob = io::to_span_problem(doc);
        const io::SolutionDocument sol = io::make_span_solution(doc, prob, complete_solution(prob), false);
        CHECK(sol.delta == s(2));
        CHECK(sol.matrices.at("generators") == M({ { 0, -1 }, { Z, 0 } }));
        CHECK(sol.vectors.at("lower") == V({ 1, -1 }));
        CHECK(sol.enumeration.visited == 1);
        const std::string text = io::serialize_solution(sol);
        CHECK(io::parse_solution(text) == sol);
        CHECK(io::serialize_solution(io::parse_solution(text)) == text);
    }
    SUBCASE("schedule, compacted")
    {
        const io::ProblemDocument doc = io::parse_problem(slurp(data_dir + "/three_activity_project.json"));
        const ScheduleSolution<SF> sol = compact_generators(solve_schedule(io::to_schedule(doc)));
        const io::SolutionDocument out = io::make_schedule_solution(doc, sol, false);
        CHECK(out.compacted);
        CHECK(out.vectors.at("coeff_bound") == V({ 1, 5 }));
        CHECK(out.vectors.at("latest_x") == V({ 1, 5, 3 }));
        const std::string text = io::serialize_solution(out);
        CHECK(io::parse_solution(text) == out);
    }
    CHECK(code_of([] { io::parse_solution(R"({"kind":"other"})"); }) == ErrorCode::ValidationError);
}
