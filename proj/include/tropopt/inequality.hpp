#pragma once

// Closed-form solutions of A x <= d and A x <= x, and the conversion of a
// scaled interval  a g <= x <= a h  into a generating matrix.

#include <tropopt/linalg.hpp>

#include <optional>

namespace tropopt {

/// The greatest solution (d^- A)^- of A x <= d.  Every x below it solves the
/// inequality, and no other x does.
template <class SF>
Vector<SF> solve_upper_bound(const Matrix<SF>& a, const Vector<SF>& d)
{
    if (a.rows() != d.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "A has " + std::to_string(a.rows())
                + " rows but d has " + std::to_string(d.rows()) + " entries");
    }
    if (!is_column_regular(a)) {
        throw Error(ErrorCode::NotColumnRegular, "A has a zero column");
    }
    if (!is_regular(d)) {
        throw Error(ErrorCode::NotRegularVector, "d has a zero component");
    }
    return conj(mul(conj(d), a));
}

/// Generator of the regular solutions of A x <= x: these are exactly A* u
/// for regular u.
template <class SF>
Matrix<SF> solve_subinvariant(const Matrix<SF>& a)
{
    return kleene_star(a);
}

/// The set { x : a g <= x <= a h for some nonzero scalar a }.
template <class SF>
class IntervalSet {
public:
    IntervalSet(Vector<SF> lower, Vector<SF> upper)
        : lower_(std::move(lower))
        , upper_(std::move(upper))
    {
        if (lower_.rows() != upper_.rows()) {
            throw Error(ErrorCode::ShapeMismatch, "interval bounds differ in length");
        }
        if (!is_regular(upper_)) {
            throw Error(ErrorCode::NotRegularVector, "upper interval bound has a zero component");
        }
        if (!leq(lower_, upper_)) {
            throw Error(ErrorCode::ValidationError, "lower interval bound exceeds the upper bound");
        }
    }

    const Vector<SF>& lower() const { return lower_; }
    const Vector<SF>& upper() const { return upper_; }

    bool contains(const Vector<SF>& x) const
    {
        // The only candidate scale is a = h^- x: the right inequality forces
        // a >= h^- x, and a larger a only raises the lower bound.
        if (x.rows() != upper_.rows()) {
            throw Error(ErrorCode::ShapeMismatch, "vector length differs from the interval");
        }
        if (is_zero(x)) {
            return false;
        }
        const Trop<SF> a = inner(conj(upper_), x);
        return leq(scale(a, lower_), x) && leq(x, scale(a, upper_));
    }

private:
    Vector<SF> lower_;
    Vector<SF> upper_;
};

/// Columns whose combinations with nonzero coefficients give a solution
/// set, optionally restricted by an upper bound on the coefficient vector.
template <class SF>
struct GeneratorSet {
    Matrix<SF> generators;
    std::optional<Vector<SF>> coeff_upper_bound;

    GeneratorSet() = default;

    explicit GeneratorSet(Matrix<SF> s, std::optional<Vector<SF>> bound = std::nullopt)
        : generators(std::move(s))
        , coeff_upper_bound(std::move(bound))
    {
        if (!is_column_regular(generators)) {
            throw Error(ErrorCode::ZeroColumn, "generator matrix has a zero column");
        }
        if (coeff_upper_bound) {
            if (coeff_upper_bound->rows() != generators.cols()) {
                throw Error(ErrorCode::ShapeMismatch, "coefficient bound length differs from the generator count");
            }
            if (!is_regular(*coeff_upper_bound)) {
                throw Error(ErrorCode::NotRegularVector, "coefficient bound has a zero component");
            }
        }
    }
};

/// I + g h^-: the generators of an interval set.
template <class SF>
GeneratorSet<SF> interval_to_generators(const IntervalSet<SF>& iv)
{
    const Index n = iv.upper().rows();
    return GeneratorSet<SF>(add(identity<SF>(n), mul(iv.lower(), conj(iv.upper()))));
}

/// Whether x = S v for a nonzero coefficient vector v, within the bound if
/// one is present.
///
/// The greatest v with S v <= x is formed first; when a bound is present it
/// is clipped to the bound, which keeps it the greatest admissible vector.
/// x lies in the set exactly when this vector reproduces x.
template <class SF>
bool membership(const GeneratorSet<SF>& gs, const Vector<SF>& x)
{
    if (x.rows() != gs.generators.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "vector length differs from the generator height");
    }
    if (is_zero(x)) {
        throw Error(ErrorCode::ZeroVector, "membership of the zero vector");
    }
    Vector<SF> v = residual_coefficients(gs.generators, x);
    if (gs.coeff_upper_bound) {
        v = meet(v, *gs.coeff_upper_bound);
    }
    return mul(gs.generators, v) == x;
}

} // namespace tropopt
