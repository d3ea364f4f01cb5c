#pragma once

// Just-in-time scheduling: minimize the spread of finish times y = A x
// under start-start (B x <= x), finish-start (C y <= x) and late-finish
// (y <= f) constraints.

#include <tropopt/span_optimizer.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace tropopt {

/// Activity data: start-finish lags A, start-start lags B, finish-start
/// lags C and late finish times f.
template <class SF>
class ScheduleInstance {
public:
    static ScheduleInstance build(Matrix<SF> a, Matrix<SF> b, Matrix<SF> c, Vector<SF> f)
    {
        const Index n = a.rows();
        if (n == 0 || a.cols() != n || b.rows() != n || b.cols() != n || c.rows() != n
            || c.cols() != n || f.rows() != n) {
            throw Error(ErrorCode::ShapeMismatch, "A, B and C must be n x n and f of length n");
        }
        if (!is_regular(a)) {
            throw Error(ErrorCode::NotRegularMatrix, "A has a zero row or column");
        }
        if (!is_regular(f)) {
            throw Error(ErrorCode::NotRegularVector, "f has a zero component");
        }
        Matrix<SF> precedence = add(b, mul(c, a));
        const Trop<SF> tr = trace_closure(precedence);
        if (less(Trop<SF>::one(), tr)) {
            throw Error(ErrorCode::InfeasiblePrecedence,
                "Tr(B + C A) = " + to_string(tr) + ": a precedence cycle has positive total lag");
        }
        return ScheduleInstance(std::move(a), std::move(b), std::move(c), std::move(f),
            std::move(precedence), tr);
    }

    Index size() const { return a_.rows(); }
    const Matrix<SF>& a() const { return a_; }
    const Matrix<SF>& b() const { return b_; }
    const Matrix<SF>& c() const { return c_; }
    const Vector<SF>& f() const { return f_; }

    /// B + C A, the combined start-time constraint matrix.
    const Matrix<SF>& precedence() const { return precedence_; }
    const Trop<SF>& precedence_trace() const { return trace_; }

private:
    ScheduleInstance(Matrix<SF> a, Matrix<SF> b, Matrix<SF> c, Vector<SF> f,
        Matrix<SF> precedence, Trop<SF> tr)
        : a_(std::move(a))
        , b_(std::move(b))
        , c_(std::move(c))
        , f_(std::move(f))
        , precedence_(std::move(precedence))
        , trace_(std::move(tr))
    {
    }

    Matrix<SF> a_;
    Matrix<SF> b_;
    Matrix<SF> c_;
    Vector<SF> f_;
    Matrix<SF> precedence_;
    Trop<SF> trace_;
};

template <class SF>
struct ScheduleSolution {
    Trop<SF> delta;             ///< minimum spread of finish times
    Matrix<SF> star;            ///< (B + C A)*
    Matrix<SF> d;               ///< A (B + C A)*
    Matrix<SF> s0;              ///< independent generators of the reduced problem
    Matrix<SF> x_generators;    ///< start times x = X v
    Matrix<SF> y_generators;    ///< finish times y = Y v
    Vector<SF> coeff_bound;     ///< admissible v satisfy v <= coeff_bound
    std::optional<Matrix<SF>> compaction; ///< w = F v after compact_generators
    EnumerationStats enumeration;
};

/// The unconstrained part as a span problem: matrix D, p = 1, q^- = 1^T D.
template <class SF>
SpanProblem<SF> reduced_problem(const Matrix<SF>& d)
{
    const Index n = d.rows();
    const RowVector<SF> colmax = mul(ones<SF>(n).transpose(), d);
    return SpanProblem<SF>(d, ones<SF>(n), conj(colmax));
}

template <class SF>
ScheduleSolution<SF> solve_schedule(const ScheduleInstance<SF>& inst, const EnumerationOptions& opts = {})
{
    ScheduleSolution<SF> sol;
    sol.star = solve_subinvariant(inst.precedence());
    sol.d = mul(inst.a(), sol.star);
    const SpanProblem<SF> prob = reduced_problem(sol.d);
    const CompleteSolution<SF> complete = complete_solution(prob, opts);
    sol.delta = complete.delta;
    sol.s0 = complete.generators.generators;
    sol.enumeration = { complete.enumerated_count, complete.pruned_count, complete.family_size };
    sol.x_generators = mul(sol.star, sol.s0);
    sol.y_generators = mul(sol.d, sol.s0);
    if (!is_column_regular(sol.y_generators)) {
        throw Error(ErrorCode::InfeasibleDeadline, "a finish-time generator vanishes");
    }
    sol.coeff_bound = solve_upper_bound(sol.y_generators, inst.f());
    if (!is_regular(sol.coeff_bound)) {
        throw Error(ErrorCode::InfeasibleDeadline, "no regular coefficient vector meets the deadlines");
    }
    return sol;
}

/// Merges collinear start-time generators.  The kept columns X1 reproduce
/// the full matrix as X = X1 F, with unit columns of F for the kept ones and
/// the greatest coefficients for the rest.  The coefficients collapse through
/// w = F v and the bound becomes F times the old bound.
template <class SF>
ScheduleSolution<SF> compact_generators(const ScheduleSolution<SF>& sol)
{
    const Index k = sol.x_generators.cols();
    std::vector<Index> kept;
    for (Index j = 0; j < k; ++j) {
        bool merged = false;
        for (Index r : kept) {
            if (collinear_ratio(sol.x_generators.col(r), sol.x_generators.col(j))) {
                merged = true;
                break;
            }
        }
        if (!merged) {
            kept.push_back(j);
        }
    }

    const Matrix<SF> basis = select_columns(sol.x_generators, kept);
    Matrix<SF> factor(static_cast<Index>(kept.size()), k);
    for (Index j = 0, r = 0; j < k; ++j) {
        if (r < static_cast<Index>(kept.size()) && kept[static_cast<std::size_t>(r)] == j) {
            factor(r++, j) = Trop<SF>::one();
        } else {
            factor.col(j) = residual_coefficients(basis, sol.x_generators.col(j));
        }
    }

    ScheduleSolution<SF> out = sol;
    out.x_generators = basis;
    out.y_generators = select_columns(sol.y_generators, kept);
    out.coeff_bound = mul(factor, sol.coeff_bound);
    out.compaction = sol.compaction ? mul(factor, *sol.compaction) : factor;
    return out;
}

/// Schedule for a coefficient vector v <= coeff_bound.
template <class SF>
std::pair<Vector<SF>, Vector<SF>> instantiate(const ScheduleSolution<SF>& sol, const Vector<SF>& v)
{
    if (v.rows() != sol.coeff_bound.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "coefficient vector has the wrong length");
    }
    if (!is_regular(v)) {
        throw Error(ErrorCode::NotRegularVector, "coefficient vector has a zero component");
    }
    if (!leq(v, sol.coeff_bound)) {
        throw Error(ErrorCode::CoefficientOutOfBound, "coefficient vector exceeds " + to_string(sol.coeff_bound.transpose()));
    }
    return { mul(sol.x_generators, v), mul(sol.y_generators, v) };
}

/// The componentwise latest optimal schedule.
template <class SF>
std::pair<Vector<SF>, Vector<SF>> latest_schedule(const ScheduleSolution<SF>& sol)
{
    if (!is_regular(sol.coeff_bound)) {
        throw Error(ErrorCode::InfeasibleDeadline, "coefficient bound is not regular");
    }
    return instantiate(sol, sol.coeff_bound);
}

/// 1^T y y^- 1: the largest minus the smallest component.
template <class SF>
Trop<SF> span_seminorm(const Vector<SF>& y)
{
    if (y.rows() == 0 || !is_regular(y)) {
        throw Error(ErrorCode::NotRegularVector, "span of a vector with zero components");
    }
    const Index n = y.rows();
    return mul(inner(ones<SF>(n).transpose(), y), inner(conj(y), ones<SF>(n)));
}

struct ConstraintCheck {
    bool start_finish = false; ///< max_j (a_ij + x_j) == y_i
    bool start_start = false;  ///< max_j (b_ij + x_j) <= x_i
    bool finish_start = false; ///< max_j (c_ij + y_j) <= x_i
    bool late_finish = false;  ///< y_i <= f_i

    bool all() const { return start_finish && start_start && finish_start && late_finish; }
};

template <class SF>
struct ScheduleReport {
    std::vector<ConstraintCheck> rows;
    Trop<SF> span;

    bool feasible() const
    {
        for (const auto& r : rows) {
            if (!r.all()) {
                return false;
            }
        }
        return true;
    }
};

template <class SF>
ScheduleReport<SF> check_schedule(const ScheduleInstance<SF>& inst, const Vector<SF>& x, const Vector<SF>& y)
{
    const Index n = inst.size();
    if (x.rows() != n || y.rows() != n) {
        throw Error(ErrorCode::ShapeMismatch, "schedule vectors must have one entry per activity");
    }
    const Vector<SF> ax = mul(inst.a(), x);
    const Vector<SF> bx = mul(inst.b(), x);
    const Vector<SF> cy = mul(inst.c(), y);
    ScheduleReport<SF> report;
    report.rows.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        auto& r = report.rows[static_cast<std::size_t>(i)];
        r.start_finish = ax(i) == y(i);
        r.start_start = leq(bx(i), x(i));
        r.finish_start = leq(cy(i), x(i));
        r.late_finish = leq(y(i), inst.f()(i));
    }
    report.span = is_regular(y) ? span_seminorm(y) : Trop<SF>::zero();
    return report;
}

} // namespace tropopt
