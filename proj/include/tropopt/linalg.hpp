#pragma once

// Dense matrix algebra over an idempotent semifield.
//
// Matrices are plain Eigen containers of Trop<SF>.  Eigen supplies storage,
// blocks, transposition and coefficient-wise expressions; the semiring
// products are the free functions below, because Eigen's own operator* is
// hard-wired to field arithmetic.

#include <tropopt/semifield.hpp>

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace Eigen {

template <class SF>
struct NumTraits<tropopt::Trop<SF>> : GenericNumTraits<tropopt::Trop<SF>> {
    using Real = tropopt::Trop<SF>;
    using NonInteger = tropopt::Trop<SF>;
    using Literal = tropopt::Trop<SF>;
    using Nested = tropopt::Trop<SF>;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 4,
        MulCost = 4
    };

    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace tropopt {

using Index = Eigen::Index;

template <class SF>
using Matrix = Eigen::Matrix<Trop<SF>, Eigen::Dynamic, Eigen::Dynamic>;
template <class SF>
using Vector = Eigen::Matrix<Trop<SF>, Eigen::Dynamic, 1>;
template <class SF>
using RowVector = Eigen::Matrix<Trop<SF>, 1, Eigen::Dynamic>;

template <class D>
using PlainOf = Eigen::Matrix<typename D::Scalar, D::RowsAtCompileTime,
    D::ColsAtCompileTime>;

template <class D>
using TransposedPlainOf = Eigen::Matrix<typename D::Scalar,
    D::ColsAtCompileTime, D::RowsAtCompileTime>;

template <class L, class R>
using ProductOf = Eigen::Matrix<typename L::Scalar, L::RowsAtCompileTime,
    R::ColsAtCompileTime>;

// ---------------------------------------------------------------------------
// Construction

template <class SF>
Matrix<SF> zero_matrix(Index rows, Index cols)
{
    return Matrix<SF>(rows, cols);
}

template <class SF>
Matrix<SF> identity(Index n)
{
    Matrix<SF> m(n, n);
    for (Index i = 0; i < n; ++i) {
        m(i, i) = Trop<SF>::one();
    }
    return m;
}

/// The all-one vector.
template <class SF>
Vector<SF> ones(Index n)
{
    return Vector<SF>::Constant(n, Trop<SF>::one());
}

// ---------------------------------------------------------------------------
// Predicates

template <class D>
bool is_zero(const Eigen::MatrixBase<D>& a)
{
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            if (!a(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

template <class D>
bool is_row_regular(const Eigen::MatrixBase<D>& a)
{
    for (Index i = 0; i < a.rows(); ++i) {
        if (is_zero(a.row(i))) {
            return false;
        }
    }
    return true;
}

template <class D>
bool is_column_regular(const Eigen::MatrixBase<D>& a)
{
    for (Index j = 0; j < a.cols(); ++j) {
        if (is_zero(a.col(j))) {
            return false;
        }
    }
    return true;
}

/// For vectors: no zero component.  For matrices: row- and column-regular.
template <class D>
bool is_regular(const Eigen::MatrixBase<D>& a)
{
    if (a.rows() == 1 || a.cols() == 1) {
        for (Index i = 0; i < a.size(); ++i) {
            if (a(i).is_zero()) {
                return false;
            }
        }
        return true;
    }
    return is_row_regular(a) && is_column_regular(a);
}

/// Shape and entries agree.
template <class L, class R>
bool equal(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

/// Entry-wise a <= b.
template <class L, class R>
bool leq(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "entry-wise comparison of unequal shapes");
    }
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            if (!leq(a(i, j), b(i, j))) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Arithmetic

template <class L, class R>
PlainOf<L> add(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "matrix sum of unequal shapes");
    }
    using S = typename L::Scalar;
    return a.binaryExpr(b, [](const S& x, const S& y) { return add(x, y); });
}

/// Entry-wise minimum (the lattice meet).
template <class L, class R>
PlainOf<L> meet(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "matrix meet of unequal shapes");
    }
    using S = typename L::Scalar;
    return a.binaryExpr(b, [](const S& x, const S& y) { return min(x, y); });
}

template <class D>
PlainOf<D> scale(const typename D::Scalar& s, const Eigen::MatrixBase<D>& a)
{
    using S = typename D::Scalar;
    return a.unaryExpr([&s](const S& x) { return mul(s, x); });
}

template <class L, class R>
ProductOf<L, R> mul(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::ShapeMismatch,
            "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols())
                + " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    using S = typename L::Scalar;
    ProductOf<L, R> r(a.rows(), b.cols());
    for (Index j = 0; j < b.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            S acc;
            for (Index k = 0; k < a.cols(); ++k) {
                acc = add(acc, mul(a(i, k), b(k, j)));
            }
            r(i, j) = std::move(acc);
        }
    }
    return r;
}

/// Row vector times column vector.
template <class L, class R>
typename L::Scalar inner(const Eigen::MatrixBase<L>& row, const Eigen::MatrixBase<R>& col)
{
    if (row.size() != col.size()) {
        throw Error(ErrorCode::ShapeMismatch, "inner product of unequal lengths");
    }
    typename L::Scalar acc;
    for (Index k = 0; k < row.size(); ++k) {
        acc = add(acc, mul(row(k), col(k)));
    }
    return acc;
}

namespace detail {

template <class D>
TransposedPlainOf<D> conj_total(const Eigen::MatrixBase<D>& a)
{
    using S = typename D::Scalar;
    return a.transpose().unaryExpr(
        [](const S& x) { return x.is_zero() ? S::zero() : inv(x); });
}

} // namespace detail

/// Multiplicative conjugate transpose: transpose, then invert every nonzero
/// entry.  Zero entries stay zero.
template <class D>
TransposedPlainOf<D> conj(const Eigen::MatrixBase<D>& a)
{
    if (is_zero(a)) {
        throw Error(ErrorCode::AllZeroMatrix, "conjugate transpose of a zero matrix");
    }
    return detail::conj_total(a);
}

template <class L, class R>
Eigen::Matrix<typename L::Scalar, L::RowsAtCompileTime, Eigen::Dynamic> hcat(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (a.cols() != 0 && b.cols() != 0 && a.rows() != b.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "horizontal concatenation of unequal heights");
    }
    const Index rows = a.cols() != 0 ? a.rows() : b.rows();
    Eigen::Matrix<typename L::Scalar, L::RowsAtCompileTime, Eigen::Dynamic> r(
        rows, a.cols() + b.cols());
    if (a.cols() != 0) {
        r.leftCols(a.cols()) = a;
    }
    if (b.cols() != 0) {
        r.rightCols(b.cols()) = b;
    }
    return r;
}

template <class D>
Eigen::Matrix<typename D::Scalar, D::RowsAtCompileTime, Eigen::Dynamic>
select_columns(const Eigen::MatrixBase<D>& a, const std::vector<Index>& columns)
{
    Eigen::Matrix<typename D::Scalar, D::RowsAtCompileTime, Eigen::Dynamic> r(
        a.rows(), static_cast<Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
        r.col(static_cast<Index>(k)) = a.col(columns[k]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Closures

template <class D>
typename D::Scalar trace(const Eigen::MatrixBase<D>& a)
{
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::NotSquare, "trace of a non-square matrix");
    }
    typename D::Scalar t;
    for (Index i = 0; i < a.rows(); ++i) {
        t = add(t, a(i, i));
    }
    return t;
}

/// Tr(A): the sum of tr(A^k) for k = 1..n.
template <class D>
typename D::Scalar trace_closure(const Eigen::MatrixBase<D>& a)
{
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::NotSquare, "trace closure of a non-square matrix");
    }
    PlainOf<D> power = a;
    typename D::Scalar t = trace(power);
    for (Index k = 2; k <= a.rows(); ++k) {
        power = mul(power, a);
        t = add(t, trace(power));
    }
    return t;
}

/// A* = I + A + ... + A^(n-1); defined only when Tr(A) <= 1.
template <class D>
PlainOf<D> kleene_star(const Eigen::MatrixBase<D>& a)
{
    using S = typename D::Scalar;
    using SF = typename S::semifield;
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::NotSquare, "Kleene star of a non-square matrix");
    }
    const S tr = trace_closure(a);
    if (less(S::one(), tr)) {
        throw Error(ErrorCode::SpectralConditionViolated,
            "Tr(A) = " + to_string(tr) + " exceeds the unit");
    }
    const Index n = a.rows();
    PlainOf<D> star = identity<SF>(n);
    PlainOf<D> power = identity<SF>(n);
    for (Index k = 1; k < n; ++k) {
        power = mul(power, a);
        star = add(star, power);
    }
    return star;
}

// ---------------------------------------------------------------------------
// Linear dependence

/// The dependence indicator (A (b^- A)^-)^- b, evaluated literally.
///
/// It equals the unit exactly when b is a combination of the columns of A
/// provided that b is regular and A has no zero rows; for vectors with zero
/// components use depends_on().
template <class L, class R>
typename L::Scalar delta(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (is_zero(a)) {
        throw Error(ErrorCode::AllZeroMatrix, "dependence test against a zero matrix");
    }
    if (is_zero(b)) {
        throw Error(ErrorCode::ZeroVector, "dependence test of a zero vector");
    }
    if (a.rows() != b.rows() || b.cols() != 1) {
        throw Error(ErrorCode::ShapeMismatch, "dependence test of incompatible shapes");
    }
    const auto coeffs = detail::conj_total(mul(detail::conj_total(b), a));
    const auto image = mul(a, coeffs);
    return inner(detail::conj_total(image), b);
}

/// Greatest coefficient vector v with A v <= b, over the columns of A whose
/// support lies inside the support of b.  Columns reaching outside the
/// support get the zero coefficient.
template <class L, class R>
Eigen::Matrix<typename L::Scalar, Eigen::Dynamic, 1> residual_coefficients(
    const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    using S = typename L::Scalar;
    Eigen::Matrix<S, Eigen::Dynamic, 1> v(a.cols());
    for (Index j = 0; j < a.cols(); ++j) {
        S c;
        bool admissible = true;
        bool seen = false;
        for (Index i = 0; i < a.rows() && admissible; ++i) {
            if (a(i, j).is_zero()) {
                continue;
            }
            if (b(i).is_zero()) {
                admissible = false;
                break;
            }
            const S ratio = mul(b(i), inv(a(i, j)));
            c = seen ? min(c, ratio) : ratio;
            seen = true;
        }
        v(j) = (admissible && seen) ? c : S::zero();
    }
    return v;
}

/// Whether b is a linear combination of the columns of A.
///
/// Exact for every nonzero b: the greatest sub-solution of A v <= b is
/// formed and compared with b.
template <class L, class R>
bool depends_on(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    if (a.rows() != b.rows() || b.cols() != 1) {
        throw Error(ErrorCode::ShapeMismatch, "dependence test of incompatible shapes");
    }
    if (is_zero(b)) {
        throw Error(ErrorCode::ZeroVector, "dependence test of a zero vector");
    }
    if (a.cols() == 0) {
        return false;
    }
    const auto v = residual_coefficients(a, b);
    return mul(a, v) == b;
}

/// The ratio c with b = c a, if the two vectors are collinear.
template <class L, class R>
std::optional<typename L::Scalar> collinear_ratio(
    const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b)
{
    using S = typename L::Scalar;
    if (a.size() != b.size()) {
        return std::nullopt;
    }
    std::optional<S> ratio;
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i).is_zero() != b(i).is_zero()) {
            return std::nullopt;
        }
        if (a(i).is_zero()) {
            continue;
        }
        const S r = mul(b(i), inv(a(i)));
        if (ratio && !(*ratio == r)) {
            return std::nullopt;
        }
        ratio = r;
    }
    return ratio;
}

template <class SF>
struct Reduction {
    Matrix<SF> basis;
    std::vector<Index> kept; ///< indices of the retained input columns
};

/// Reduces a system of columns to an equivalent linearly independent one.
///
/// Collinear repeats are dropped first (the earliest column of each ray
/// survives).  Then columns are scanned left to right and each is removed
/// when it depends on the other columns still retained.
template <class D>
Reduction<typename D::Scalar::semifield> reduce_to_independent(
    const Eigen::MatrixBase<D>& columns)
{
    std::vector<Index> kept;
    for (Index j = 0; j < columns.cols(); ++j) {
        if (is_zero(columns.col(j))) {
            throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j) + " is zero");
        }
        bool repeat = false;
        for (Index r : kept) {
            if (collinear_ratio(columns.col(r), columns.col(j))) {
                repeat = true;
                break;
            }
        }
        if (!repeat) {
            kept.push_back(j);
        }
    }

    for (std::size_t pos = 0; pos < kept.size();) {
        std::vector<Index> others;
        others.reserve(kept.size() - 1);
        for (std::size_t k = 0; k < kept.size(); ++k) {
            if (k != pos) {
                others.push_back(kept[k]);
            }
        }
        if (depends_on(select_columns(columns, others), columns.col(kept[pos]))) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
        } else {
            ++pos;
        }
    }
    return { select_columns(columns, kept), kept };
}

// ---------------------------------------------------------------------------
// Formatting

template <class D>
std::string to_string(const Eigen::MatrixBase<D>& a)
{
    std::string s = "[";
    for (Index i = 0; i < a.rows(); ++i) {
        s += i == 0 ? "[" : ", [";
        for (Index j = 0; j < a.cols(); ++j) {
            if (j != 0) {
                s += ", ";
            }
            s += to_string(a(i, j));
        }
        s += "]";
    }
    return s + "]";
}

} // namespace tropopt
