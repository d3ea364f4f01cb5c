#pragma once

// Minimization of  q^- x (A x)^- p  over regular x.
//
// The pipeline is: minimum value, sparsification of A against the threshold
// matrix, enumeration of the one-entry-per-row selections of the sparsified
// matrix (with forward pruning), one generator block per selection, and a
// final reduction of all generator columns to an independent system.

#include <tropopt/inequality.hpp>

#include <cstdint>
#include <algorithm>
#include <functional>
#include <numeric>
#include <limits>
#include <vector>

namespace tropopt {

/// The problem data (A, p, q) together with its minimum value and
/// sparsified matrix, both fixed at construction.
template <class SF>
class SpanProblem {
public:
    SpanProblem(Matrix<SF> a, Vector<SF> p, Vector<SF> q)
        : a_(std::move(a))
        , p_(std::move(p))
        , q_(std::move(q))
    {
        if (a_.rows() == 0 || a_.cols() == 0) {
            throw Error(ErrorCode::ShapeMismatch, "A must have at least one row and one column");
        }
        if (p_.rows() != a_.rows() || q_.rows() != a_.cols()) {
            throw Error(ErrorCode::ShapeMismatch, "p must match the rows and q the columns of A");
        }
        if (!is_row_regular(a_)) {
            throw Error(ErrorCode::NotRowRegular, "A has a zero row");
        }
        if (is_zero(p_)) {
            throw Error(ErrorCode::ZeroVector, "p is the zero vector");
        }
        if (!is_regular(q_)) {
            throw Error(ErrorCode::NotRegularVector, "q has a zero component");
        }
        delta_ = inner(conj(mul(a_, q_)), p_);
        sparse_ = threshold(a_);
    }

    const Matrix<SF>& a() const { return a_; }
    const Vector<SF>& p() const { return p_; }
    const Vector<SF>& q() const { return q_; }

    /// Delta = (A q)^- p.
    const Trop<SF>& delta() const { return delta_; }

    const Matrix<SF>& sparse() const { return sparse_; }

private:
    Matrix<SF> threshold(const Matrix<SF>& a) const
    {
        // keep a_ij when a_ij >= Delta^-1 p_i q_j^-1
        const Trop<SF> delta_inv = inv(delta_);
        Matrix<SF> out = a;
        for (Index j = 0; j < a.cols(); ++j) {
            const Trop<SF> qj_inv = inv(q_(j));
            for (Index i = 0; i < a.rows(); ++i) {
                const Trop<SF> bound = mul(mul(delta_inv, p_(i)), qj_inv);
                if (less(a(i, j), bound)) {
                    out(i, j) = Trop<SF>::zero();
                }
            }
        }
        return out;
    }

    Matrix<SF> a_;
    Vector<SF> p_;
    Vector<SF> q_;
    Trop<SF> delta_;
    Matrix<SF> sparse_;
};

template <class SF>
Trop<SF> minimum_value(const SpanProblem<SF>& prob)
{
    return prob.delta();
}

template <class SF>
Matrix<SF> sparsify(const SpanProblem<SF>& prob)
{
    return prob.sparse();
}

/// The value q^- x (A x)^- p.
///
/// Besides regular x, this accepts any nonzero x whose image A x covers the
/// support of p, so that generator columns with zero entries can be scored.
template <class SF>
Trop<SF> objective(const SpanProblem<SF>& prob, const Vector<SF>& x)
{
    if (x.rows() != prob.a().cols()) {
        throw Error(ErrorCode::ShapeMismatch, "x has the wrong length");
    }
    if (is_zero(x)) {
        throw Error(ErrorCode::NotRegularVector, "x is the zero vector");
    }
    const Vector<SF> image = mul(prob.a(), x);
    for (Index i = 0; i < image.rows(); ++i) {
        if (image(i).is_zero() && !prob.p()(i).is_zero()) {
            throw Error(ErrorCode::NotRegularVector,
                "A x vanishes in row " + std::to_string(i) + " where p does not");
        }
    }
    return mul(inner(conj(prob.q()), x), inner(detail::conj_total(image), prob.p()));
}

/// Whether x attains the minimum: with a = q^- x, A x >= a Delta^-1 p.
template <class SF>
bool verify_optimal(const SpanProblem<SF>& prob, const Vector<SF>& x)
{
    if (x.rows() != prob.a().cols()) {
        throw Error(ErrorCode::ShapeMismatch, "x has the wrong length");
    }
    if (is_zero(x)) {
        throw Error(ErrorCode::NotRegularVector, "x is the zero vector");
    }
    const Trop<SF> alpha = inner(conj(prob.q()), x);
    const Vector<SF> lower = scale(mul(alpha, inv(prob.delta())), prob.p());
    return leq(lower, mul(prob.a(), x));
}

/// I + Delta^-1 M^- p q^- for a row-regular M below the sparsified matrix.
template <class SF>
Matrix<SF> generator_block(const SpanProblem<SF>& prob, const Matrix<SF>& m)
{
    const Vector<SF> lower = scale(inv(prob.delta()), mul(conj(m), prob.p()));
    return add(identity<SF>(prob.a().cols()), mul(lower, conj(prob.q())));
}

/// Generators of the solutions  a Delta^-1 A^- p <= x <= a q  obtained from
/// the whole sparsified matrix.
template <class SF>
GeneratorSet<SF> extended_solution(const SpanProblem<SF>& prob)
{
    return GeneratorSet<SF>(generator_block(prob, prob.sparse()));
}

/// The lower and upper interval bounds of the extended solution.
template <class SF>
IntervalSet<SF> extended_interval(const SpanProblem<SF>& prob)
{
    return IntervalSet<SF>(scale(inv(prob.delta()), mul(conj(prob.sparse()), prob.p())), prob.q());
}

/// One nonzero entry kept per row of the sparsified matrix.
struct SelectionMatrix {
    Index rows = 0;
    Index cols = 0;
    std::vector<Index> chosen_col;

    friend bool operator==(const SelectionMatrix&, const SelectionMatrix&) = default;
};

template <class SF>
Matrix<SF> materialize(const SelectionMatrix& sel, const Matrix<SF>& sparse)
{
    if (sel.rows != sparse.rows() || sel.cols != sparse.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "selection does not fit the matrix");
    }
    Matrix<SF> m(sparse.rows(), sparse.cols());
    for (Index i = 0; i < sparse.rows(); ++i) {
        const Index j = sel.chosen_col[static_cast<std::size_t>(i)];
        if (sparse(i, j).is_zero()) {
            throw Error(ErrorCode::ValidationError, "selection picks a zero entry in row " + std::to_string(i));
        }
        m(i, j) = sparse(i, j);
    }
    return m;
}

struct EnumerationOptions {
    std::uint64_t budget = 1'000'000;
    bool exhaustive = false; ///< disable forward pruning
};

struct EnumerationStats {
    std::uint64_t visited = 0; ///< selections emitted
    std::uint64_t pruned = 0;  ///< selections of the full family not emitted
    std::uint64_t total = 0;   ///< size of the full family, saturating
};

/// Thrown when the enumeration would emit more selections than the budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t budget, std::vector<SelectionMatrix> partial)
        : Error(ErrorCode::EnumerationBudgetExceeded,
            "more than " + std::to_string(budget) + " selection matrices")
        , partial_(std::move(partial))
    {
    }

    const std::vector<SelectionMatrix>& partial() const { return partial_; }

private:
    std::vector<SelectionMatrix> partial_;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

template <class SF>
class SelectionSearch {
public:
    using Visitor = std::function<void(const SelectionMatrix&)>;

    SelectionSearch(const Matrix<SF>& sparse, const Vector<SF>& p,
        const EnumerationOptions& opts, Visitor visit)
        : sparse_(sparse)
        , p_(p)
        , opts_(opts)
        , visit_(std::move(visit))
        , alive_(sparse.rows(), std::vector<char>(static_cast<std::size_t>(sparse.cols())))
    {
        for (Index i = 0; i < sparse.rows(); ++i) {
            for (Index j = 0; j < sparse.cols(); ++j) {
                alive_[i][j] = !sparse(i, j).is_zero();
            }
        }
        current_.rows = sparse.rows();
        current_.cols = sparse.cols();
        current_.chosen_col.assign(static_cast<std::size_t>(sparse.rows()), 0);
    }

    EnumerationStats run()
    {
        stats_.total = 1;
        for (Index i = 0; i < sparse_.rows(); ++i) {
            std::uint64_t count = 0;
            for (Index j = 0; j < sparse_.cols(); ++j) {
                count += sparse_(i, j).is_zero() ? 0 : 1;
            }
            if (count == 0) {
                throw Error(ErrorCode::NotRowRegular, "sparsified matrix has a zero row");
            }
            stats_.total = saturating_mul(stats_.total, count);
        }
        descend(0);
        stats_.pruned = stats_.total - stats_.visited;
        return stats_;
    }

private:
    void descend(Index row)
    {
        if (row == sparse_.rows()) {
            if (stats_.visited == opts_.budget) {
                throw BudgetExceeded(opts_.budget, std::move(emitted_));
            }
            ++stats_.visited;
            emitted_.push_back(current_);
            visit_(current_);
            return;
        }

        const auto r = static_cast<std::size_t>(row);
        if (p_(row).is_zero()) {
            // such a row constrains nothing; fix its leftmost entry
            for (Index j = 0; j < sparse_.cols(); ++j) {
                if (!sparse_(row, j).is_zero()) {
                    current_.chosen_col[r] = j;
                    descend(row + 1);
                    return;
                }
            }
            return;
        }

        for (Index j = 0; j < sparse_.cols(); ++j) {
            if (!alive_[r][static_cast<std::size_t>(j)]) {
                continue;
            }
            current_.chosen_col[r] = j;
            if (opts_.exhaustive) {
                descend(row + 1);
                continue;
            }
            const std::vector<std::vector<char>> snapshot = alive_;
            prune_below(row, j);
            descend(row + 1);
            alive_ = snapshot;
        }
    }

    // After fixing a_ij, a later row k with a_kj >= a_ij p_i^-1 p_k is
    // satisfied through x_j alone, so its other entries are dropped.
    void prune_below(Index row, Index col)
    {
        const Trop<SF> base = mul(sparse_(row, col), inv(p_(row)));
        for (Index k = row + 1; k < sparse_.rows(); ++k) {
            const auto kr = static_cast<std::size_t>(k);
            if (p_(k).is_zero() || !alive_[kr][static_cast<std::size_t>(col)]) {
                continue;
            }
            if (leq(mul(base, p_(k)), sparse_(k, col))) {
                for (Index l = 0; l < sparse_.cols(); ++l) {
                    alive_[kr][static_cast<std::size_t>(l)] = l == col;
                }
            }
        }
    }

    const Matrix<SF>& sparse_;
    const Vector<SF>& p_;
    EnumerationOptions opts_;
    Visitor visit_;
    std::vector<std::vector<char>> alive_;
    SelectionMatrix current_;
    std::vector<SelectionMatrix> emitted_;
    EnumerationStats stats_;
};

} // namespace detail

/// Streams the selection matrices of the sparsified matrix to visit() in
/// deterministic order (rows top to bottom, columns left to right).
template <class SF>
EnumerationStats enumerate_selections(const Matrix<SF>& sparse, const Vector<SF>& p,
    const EnumerationOptions& opts, const std::function<void(const SelectionMatrix&)>& visit)
{
    if (p.rows() != sparse.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "p must match the rows of the matrix");
    }
    detail::SelectionSearch<SF> search(sparse, p, opts, visit);
    return search.run();
}

template <class SF>
std::vector<SelectionMatrix> enumerate_selections(const Matrix<SF>& sparse,
    const Vector<SF>& p, const EnumerationOptions& opts = {},
    EnumerationStats* stats = nullptr)
{
    std::vector<SelectionMatrix> out;
    const EnumerationStats s = enumerate_selections<SF>(
        sparse, p, opts, [&out](const SelectionMatrix& sel) { out.push_back(sel); });
    if (stats != nullptr) {
        *stats = s;
    }
    return out;
}

template <class SF>
GeneratorSet<SF> selection_generators(const SelectionMatrix& sel, const SpanProblem<SF>& prob)
{
    return GeneratorSet<SF>(generator_block(prob, materialize(sel, prob.sparse())));
}

template <class SF>
struct CompleteSolution {
    Trop<SF> delta;
    GeneratorSet<SF> generators;     ///< the independent system S0
    Matrix<SF> all_generators;       ///< every block column, before reduction
    std::vector<SelectionMatrix> selections;
    std::uint64_t enumerated_count = 0;
    std::uint64_t pruned_count = 0;
    std::uint64_t family_size = 0;
};

/// The columns reordered by the number of nonzero entries, then by the
/// positions of those entries; the sort is stable.
template <class SF>
Matrix<SF> canonical_columns(const Matrix<SF>& m)
{
    std::vector<std::vector<Index>> support(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            if (!m(i, j).is_zero()) {
                support[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    }
    std::vector<Index> order(static_cast<std::size_t>(m.cols()));
    std::iota(order.begin(), order.end(), Index { 0 });
    std::stable_sort(order.begin(), order.end(), [&](Index l, Index r) {
        const auto& a = support[static_cast<std::size_t>(l)];
        const auto& b = support[static_cast<std::size_t>(r)];
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return select_columns(m, order);
}

/// All regular solutions are S0 v with v regular.
template <class SF>
CompleteSolution<SF> complete_solution(const SpanProblem<SF>& prob, const EnumerationOptions& opts = {})
{
    CompleteSolution<SF> out;
    out.delta = prob.delta();
    Matrix<SF> all(prob.a().cols(), 0);
    const EnumerationStats stats = enumerate_selections<SF>(
        prob.sparse(), prob.p(), opts, [&](const SelectionMatrix& sel) {
            out.selections.push_back(sel);
            all = hcat(all, selection_generators(sel, prob).generators);
        });
    out.enumerated_count = stats.visited;
    out.pruned_count = stats.pruned;
    out.family_size = stats.total;
    out.all_generators = all;
    out.generators = GeneratorSet<SF>(canonical_columns(reduce_to_independent(all).basis));
    return out;
}

} // namespace tropopt
