#pragma once

// Problem and solution documents for the max-plus instance.
//
// Documents are JSON.  Scalars are JSON integers, strings holding an exact
// rational ("-3/4", "2.5", "12"), or the string "-inf" for the zero.

#include <tropopt/schedule.hpp>

#include <map>
#include <string>
#include <string_view>

namespace tropopt::io {

using SF = MaxPlusQ;
using Scalar = Trop<SF>;
using Mat = Matrix<SF>;
using Vec = Vector<SF>;

enum class ProblemKind { Span, Schedule };

template <class M>
bool same_entries(const std::map<std::string, M>& l, const std::map<std::string, M>& r)
{
    if (l.size() != r.size()) {
        return false;
    }
    for (auto li = l.begin(), ri = r.begin(); li != l.end(); ++li, ++ri) {
        if (li->first != ri->first || !equal(li->second, ri->second)) {
            return false;
        }
    }
    return true;
}

std::string_view to_string(ProblemKind kind);

struct ProblemDocument {
    ProblemKind kind = ProblemKind::Span;
    SemifieldTag semifield = SemifieldTag::MaxPlus;
    std::map<std::string, Mat> matrices;
    std::map<std::string, Vec> vectors;
    std::map<std::string, std::string> metadata;

    friend bool operator==(const ProblemDocument& l, const ProblemDocument& r)
    {
        return l.kind == r.kind && l.semifield == r.semifield && same_entries(l.matrices, r.matrices)
            && same_entries(l.vectors, r.vectors) && l.metadata == r.metadata;
    }
};

/// Parses one scalar token.  Throws ParseError on malformed input.
Scalar parse_scalar(std::string_view token);

/// Comma- or whitespace-separated scalars, e.g. "1, -inf, 3/2".
Vec parse_vector(std::string_view text);

/// Parses and validates a problem document.
///
/// Syntax errors raise ParseError with the line and column; structural or
/// regularity violations raise ValidationError naming the field.  The
/// precedence trace condition of schedule instances is left to
/// to_schedule() so that it surfaces as InfeasiblePrecedence.
ProblemDocument parse_problem(std::string_view text);

/// Canonical text of a problem document; parse_problem() inverts it.
std::string serialize_problem(const ProblemDocument& doc);

/// "fnv1a64:<hex>" over the canonical text.
std::string input_hash(const ProblemDocument& doc);

ProblemDocument make_span_document(const Mat& a, const Vec& p, const Vec& q);
ProblemDocument make_schedule_document(const Mat& a, const Mat& b, const Mat& c, const Vec& f);

SpanProblem<SF> to_span_problem(const ProblemDocument& doc);
ScheduleInstance<SF> to_schedule(const ProblemDocument& doc);

struct SolutionDocument {
    ProblemKind kind = ProblemKind::Span;
    std::string input_hash;
    Scalar delta;
    std::map<std::string, Mat> matrices;
    std::map<std::string, Vec> vectors;
    EnumerationStats enumeration;
    bool exhaustive = false;
    bool compacted = false;

    friend bool operator==(const SolutionDocument& l, const SolutionDocument& r)
    {
        return l.kind == r.kind && l.input_hash == r.input_hash && l.delta == r.delta
            && same_entries(l.matrices, r.matrices) && same_entries(l.vectors, r.vectors)
            && l.enumeration.visited == r.enumeration.visited
            && l.enumeration.pruned == r.enumeration.pruned
            && l.enumeration.total == r.enumeration.total && l.exhaustive == r.exhaustive
            && l.compacted == r.compacted;
    }
};

SolutionDocument make_span_solution(const ProblemDocument& problem,
    const SpanProblem<SF>& prob, const CompleteSolution<SF>& sol, bool exhaustive);

SolutionDocument make_schedule_solution(const ProblemDocument& problem,
    const ScheduleSolution<SF>& sol, bool exhaustive);

std::string serialize_solution(const SolutionDocument& doc);
SolutionDocument parse_solution(std::string_view text);

} // namespace tropopt::io
