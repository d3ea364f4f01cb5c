#include <tropopt/io.hpp>

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <limits>

namespace tropopt::io {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg)
{
    throw Error(ErrorCode::ParseError, msg);
}

[[noreturn]] void invalid(const std::string& msg)
{
    throw Error(ErrorCode::ValidationError, msg);
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

// Decimal digits only; cpp_int would read a leading 0 as octal.
Integer decimal_digits(std::string_view s)
{
    const auto first = s.find_first_not_of('0');
    return first == std::string_view::npos ? Integer(0) : Integer{ std::string(s.substr(first)) };
}

Integer parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        parse_fail("malformed integer '" + std::string(s) + "'");
    }
    const Integer v = decimal_digits(s);
    return negative ? Integer(-v) : v;
}

Integer power_of_ten(std::size_t k)
{
    Integer p = 1;
    for (std::size_t i = 0; i < k; ++i) {
        p *= 10;
    }
    return p;
}

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

json scalar_json(const Scalar& s)
{
    if (s.is_zero()) {
        return std::string(SF::zero_token);
    }
    const Rational& v = s.value();
    if (boost::multiprecision::denominator(v) == 1) {
        const Integer num = boost::multiprecision::numerator(v);
        if (num >= std::numeric_limits<std::int64_t>::min()
            && num <= std::numeric_limits<std::int64_t>::max()) {
            return num.convert_to<std::int64_t>();
        }
    }
    return format_rational(v);
}

Scalar scalar_from_json(const json& j, const std::string& where)
{
    try {
        if (j.is_number_integer()) {
            if (j.is_number_unsigned()) {
                return Scalar::finite(Rational(Integer(j.get<std::uint64_t>())));
            }
            return Scalar::finite(Rational(Integer(j.get<std::int64_t>())));
        }
        if (j.is_number_float()) {
            parse_fail("non-integer JSON number; write it as a string such as \"5/2\"");
        }
        if (j.is_string()) {
            return parse_scalar(j.get<std::string>());
        }
        parse_fail("expected a number or a string");
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "at " + where + ": " + e.what());
    }
}

json vector_json(const Vec& v)
{
    json a = json::array();
    for (Index i = 0; i < v.rows(); ++i) {
        a.push_back(scalar_json(v(i)));
    }
    return a;
}

json matrix_json(const Mat& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(scalar_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Vec vector_from_json(const json& j, const std::string& where)
{
    if (!j.is_array()) {
        parse_fail("at " + where + ": expected an array");
    }
    Vec v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Index>(i)) = scalar_from_json(j[i], where + "/" + std::to_string(i));
    }
    return v;
}

Mat matrix_from_json(const json& j, const std::string& where)
{
    if (!j.is_array() || j.empty()) {
        parse_fail("at " + where + ": expected a non-empty array of rows");
    }
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Mat m(static_cast<Index>(j.size()), static_cast<Index>(cols));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string row_where = where + "/" + std::to_string(i);
        if (!j[i].is_array()) {
            parse_fail("at " + row_where + ": expected a row array");
        }
        if (j[i].size() != cols) {
            parse_fail("at " + row_where + ": ragged row of length " + std::to_string(j[i].size())
                + ", expected " + std::to_string(cols));
        }
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Index>(i), static_cast<Index>(k))
                = scalar_from_json(j[i][k], row_where + "/" + std::to_string(k));
        }
    }
    return m;
}

// Arrays of scalars stay on one line, everything else is indented.
void write_json(std::string& out, const json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner_pad(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner_pad + json(key).dump() + ": ";
            write_json(out, value, indent + 2);
        }
        out += "\n" + pad + "}";
        return;
    }
    if (j.is_array()) {
        bool flat = true;
        for (const auto& e : j) {
            flat = flat && e.is_primitive();
        }
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += (i == 0 ? "" : ", ") + j[i].dump();
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += inner_pad;
            write_json(out, j[i], indent + 2);
            out += i + 1 == j.size() ? "\n" : ",\n";
        }
        out += pad + "]";
        return;
    }
    out += j.dump();
}

std::string render(const json& j)
{
    std::string out;
    write_json(out, j, 0);
    out += "\n";
    return out;
}

json parse_json(std::string_view text)
{
    if (trim(text).empty()) {
        parse_fail("empty document");
    }
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        parse_fail("line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
            + e.what());
    }
}

ProblemKind kind_from_string(const std::string& s)
{
    if (s == "span") {
        return ProblemKind::Span;
    }
    if (s == "schedule") {
        return ProblemKind::Schedule;
    }
    invalid("/kind: unknown problem kind '" + s + "' (expected \"span\" or \"schedule\")");
}

const json& require(const json& obj, const std::string& key)
{
    if (!obj.contains(key)) {
        invalid("missing field /" + key);
    }
    return obj.at(key);
}

void validate_span(const ProblemDocument& doc)
{
    const Mat& a = doc.matrices.at("A");
    const Vec& p = doc.vectors.at("p");
    const Vec& q = doc.vectors.at("q");
    if (p.rows() != a.rows()) {
        invalid("/p: length " + std::to_string(p.rows()) + " differs from the "
            + std::to_string(a.rows()) + " rows of A");
    }
    if (q.rows() != a.cols()) {
        invalid("/q: length " + std::to_string(q.rows()) + " differs from the "
            + std::to_string(a.cols()) + " columns of A");
    }
    if (!is_row_regular(a)) {
        invalid("A not row-regular");
    }
    if (is_zero(p)) {
        invalid("p is the zero vector");
    }
    if (!is_regular(q)) {
        invalid("q not regular");
    }
}

void validate_schedule(const ProblemDocument& doc)
{
    const Mat& a = doc.matrices.at("A");
    const Index n = a.rows();
    for (const char* name : { "A", "B", "C" }) {
        const Mat& m = doc.matrices.at(name);
        if (m.rows() != n || m.cols() != n) {
            invalid(std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
        }
    }
    if (doc.vectors.at("f").rows() != n) {
        invalid("/f: length differs from the activity count " + std::to_string(n));
    }
    if (!is_regular(a)) {
        invalid("A not regular");
    }
    if (!is_regular(doc.vectors.at("f"))) {
        invalid("f not regular");
    }
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json stats_json(const EnumerationStats& s, bool exhaustive)
{
    json j = json::object();
    j["visited"] = s.visited;
    j["pruned"] = s.pruned;
    j["total"] = s.total;
    j["exhaustive"] = exhaustive;
    return j;
}

} // namespace

std::string_view to_string(ProblemKind kind)
{
    return kind == ProblemKind::Span ? "span" : "schedule";
}

Scalar parse_scalar(std::string_view token)
{
    const std::string t = trim(token);
    if (t == SF::zero_token) {
        return Scalar::zero();
    }
    if (t.empty()) {
        parse_fail("empty scalar");
    }
    const auto slash = t.find('/');
    if (slash != std::string::npos) {
        const Integer num = parse_integer(std::string_view(t).substr(0, slash));
        const std::string_view den_text = std::string_view(t).substr(slash + 1);
        if (!all_digits(den_text)) {
            parse_fail("malformed denominator in '" + t + "'");
        }
        const Integer den = decimal_digits(den_text);
        if (den == 0) {
            parse_fail("zero denominator in '" + t + "'");
        }
        return Scalar::finite(Rational(num, den));
    }
    const auto dot = t.find('.');
    if (dot != std::string::npos) {
        const std::string_view whole = std::string_view(t).substr(0, dot);
        const std::string_view frac = std::string_view(t).substr(dot + 1);
        if (!all_digits(frac)) {
            parse_fail("malformed decimal '" + t + "'");
        }
        const bool negative = !whole.empty() && whole.front() == '-';
        const std::string_view digits = (!whole.empty() && (whole.front() == '-' || whole.front() == '+'))
            ? whole.substr(1)
            : whole;
        if (!digits.empty() && !all_digits(digits)) {
            parse_fail("malformed decimal '" + t + "'");
        }
        const Integer scaled = decimal_digits(std::string(digits) + std::string(frac));
        Rational r(scaled, power_of_ten(frac.size()));
        return Scalar::finite(negative ? Rational(-r) : r);
    }
    return Scalar::finite(Rational(parse_integer(t)));
}

Vec parse_vector(std::string_view text)
{
    std::vector<Scalar> entries;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            entries.push_back(parse_scalar(token));
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)) != 0) {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    if (entries.empty()) {
        parse_fail("empty vector '" + std::string(text) + "'");
    }
    Vec v(static_cast<Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        v(static_cast<Index>(i)) = entries[i];
    }
    return v;
}

ProblemDocument parse_problem(std::string_view text)
{
    const json j = parse_json(text);
    if (!j.is_object()) {
        invalid("document root must be an object");
    }
    ProblemDocument doc;
    const json& kind = require(j, "kind");
    if (!kind.is_string()) {
        invalid("/kind must be a string");
    }
    doc.kind = kind_from_string(kind.get<std::string>());

    if (j.contains("semifield")) {
        if (j.at("semifield") != json(std::string(tropopt::to_string(SemifieldTag::MaxPlus)))) {
            invalid("/semifield: only \"max-plus\" documents are supported");
        }
    }

    const bool span = doc.kind == ProblemKind::Span;
    const std::vector<std::string> matrix_names = span ? std::vector<std::string>{ "A" }
                                                       : std::vector<std::string>{ "A", "B", "C" };
    const std::vector<std::string> vector_names = span ? std::vector<std::string>{ "p", "q" }
                                                       : std::vector<std::string>{ "f" };
    for (const auto& [key, value] : j.items()) {
        const bool known = key == "kind" || key == "semifield" || key == "metadata"
            || std::find(matrix_names.begin(), matrix_names.end(), key) != matrix_names.end()
            || std::find(vector_names.begin(), vector_names.end(), key) != vector_names.end();
        if (!known) {
            invalid("unexpected field /" + key + " for a " + std::string(to_string(doc.kind)) + " problem");
        }
    }
    for (const auto& name : matrix_names) {
        doc.matrices[name] = matrix_from_json(require(j, name), "/" + name);
    }
    for (const auto& name : vector_names) {
        doc.vectors[name] = vector_from_json(require(j, name), "/" + name);
        if (doc.vectors[name].rows() == 0) {
            invalid("/" + name + " is empty");
        }
    }
    if (j.contains("metadata")) {
        const json& meta = j.at("metadata");
        if (!meta.is_object()) {
            invalid("/metadata must be an object of strings");
        }
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string()) {
                invalid("/metadata/" + key + " must be a string");
            }
            doc.metadata[key] = value.get<std::string>();
        }
    }

    if (span) {
        validate_span(doc);
    } else {
        validate_schedule(doc);
    }
    return doc;
}

std::string serialize_problem(const ProblemDocument& doc)
{
    json j = json::object();
    j["kind"] = std::string(to_string(doc.kind));
    j["semifield"] = std::string(tropopt::to_string(doc.semifield));
    for (const auto& [name, m] : doc.matrices) {
        j[name] = matrix_json(m);
    }
    for (const auto& [name, v] : doc.vectors) {
        j[name] = vector_json(v);
    }
    if (!doc.metadata.empty()) {
        json meta = json::object();
        for (const auto& [key, value] : doc.metadata) {
            meta[key] = value;
        }
        j["metadata"] = std::move(meta);
    }
    return render(j);
}

std::string input_hash(const ProblemDocument& doc)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_problem(doc)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return "fnv1a64:" + hex64(h);
}

ProblemDocument make_span_document(const Mat& a, const Vec& p, const Vec& q)
{
    ProblemDocument doc;
    doc.kind = ProblemKind::Span;
    doc.matrices["A"] = a;
    doc.vectors["p"] = p;
    doc.vectors["q"] = q;
    return doc;
}

ProblemDocument make_schedule_document(const Mat& a, const Mat& b, const Mat& c, const Vec& f)
{
    ProblemDocument doc;
    doc.kind = ProblemKind::Schedule;
    doc.matrices["A"] = a;
    doc.matrices["B"] = b;
    doc.matrices["C"] = c;
    doc.vectors["f"] = f;
    return doc;
}

SpanProblem<SF> to_span_problem(const ProblemDocument& doc)
{
    if (doc.kind != ProblemKind::Span) {
        invalid("not a span problem document");
    }
    return SpanProblem<SF>(doc.matrices.at("A"), doc.vectors.at("p"), doc.vectors.at("q"));
}

ScheduleInstance<SF> to_schedule(const ProblemDocument& doc)
{
    if (doc.kind != ProblemKind::Schedule) {
        invalid("not a schedule document");
    }
    return ScheduleInstance<SF>::build(doc.matrices.at("A"), doc.matrices.at("B"),
        doc.matrices.at("C"), doc.vectors.at("f"));
}

SolutionDocument make_span_solution(const ProblemDocument& problem,
    const SpanProblem<SF>& prob, const CompleteSolution<SF>& sol, bool exhaustive)
{
    SolutionDocument doc;
    doc.kind = ProblemKind::Span;
    doc.input_hash = input_hash(problem);
    doc.delta = sol.delta;
    doc.matrices["sparse"] = prob.sparse();
    doc.matrices["extended"] = extended_solution(prob).generators;
    doc.matrices["all_generators"] = sol.all_generators;
    doc.matrices["generators"] = sol.generators.generators;
    const IntervalSet<SF> iv = extended_interval(prob);
    doc.vectors["lower"] = iv.lower();
    doc.vectors["upper"] = iv.upper();
    doc.enumeration = { sol.enumerated_count, sol.pruned_count, sol.family_size };
    doc.exhaustive = exhaustive;
    return doc;
}

SolutionDocument make_schedule_solution(const ProblemDocument& problem,
    const ScheduleSolution<SF>& sol, bool exhaustive)
{
    SolutionDocument doc;
    doc.kind = ProblemKind::Schedule;
    doc.input_hash = input_hash(problem);
    doc.delta = sol.delta;
    doc.matrices["star"] = sol.star;
    doc.matrices["D"] = sol.d;
    doc.matrices["S0"] = sol.s0;
    doc.matrices["x_generators"] = sol.x_generators;
    doc.matrices["y_generators"] = sol.y_generators;
    if (sol.compaction) {
        doc.matrices["compaction"] = *sol.compaction;
    }
    doc.vectors["coeff_bound"] = sol.coeff_bound;
    const auto [x, y] = latest_schedule(sol);
    doc.vectors["latest_x"] = x;
    doc.vectors["latest_y"] = y;
    doc.enumeration = sol.enumeration;
    doc.exhaustive = exhaustive;
    doc.compacted = sol.compaction.has_value();
    return doc;
}

std::string serialize_solution(const SolutionDocument& doc)
{
    json j = json::object();
    j["kind"] = std::string(to_string(doc.kind)) + "-solution";
    j["semifield"] = std::string(tropopt::to_string(SemifieldTag::MaxPlus));
    j["input_hash"] = doc.input_hash;
    j["delta"] = scalar_json(doc.delta);
    json mats = json::object();
    for (const auto& [name, m] : doc.matrices) {
        mats[name] = matrix_json(m);
    }
    j["matrices"] = std::move(mats);
    json vecs = json::object();
    for (const auto& [name, v] : doc.vectors) {
        vecs[name] = vector_json(v);
    }
    j["vectors"] = std::move(vecs);
    j["enumeration"] = stats_json(doc.enumeration, doc.exhaustive);
    j["compacted"] = doc.compacted;
    return render(j);
}

SolutionDocument parse_solution(std::string_view text)
{
    const json j = parse_json(text);
    if (!j.is_object()) {
        invalid("document root must be an object");
    }
    SolutionDocument doc;
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "span-solution") {
        doc.kind = ProblemKind::Span;
    } else if (kind == "schedule-solution") {
        doc.kind = ProblemKind::Schedule;
    } else {
        invalid("/kind: unknown solution kind '" + kind + "'");
    }
    doc.input_hash = require(j, "input_hash").get<std::string>();
    doc.delta = scalar_from_json(require(j, "delta"), "/delta");
    for (const auto& [name, m] : require(j, "matrices").items()) {
        doc.matrices[name] = matrix_from_json(m, "/matrices/" + name);
    }
    for (const auto& [name, v] : require(j, "vectors").items()) {
        doc.vectors[name] = vector_from_json(v, "/vectors/" + name);
    }
    const json& e = require(j, "enumeration");
    doc.enumeration.visited = require(e, "visited").get<std::uint64_t>();
    doc.enumeration.pruned = require(e, "pruned").get<std::uint64_t>();
    doc.enumeration.total = require(e, "total").get<std::uint64_t>();
    doc.exhaustive = require(e, "exhaustive").get<bool>();
    doc.compacted = require(j, "compacted").get<bool>();
    return doc;
}

} // namespace tropopt::io
