#pragma once

// Shared helpers for the tests: literal construction, random instances and
// an int64 max-plus oracle that shares no code with the library.

#include <tropopt/io.hpp>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

namespace testing {

using tropopt::Index;
using SF = tropopt::MaxPlusQ;
using S = tropopt::Trop<SF>;
using Mat = tropopt::Matrix<SF>;
using Vec = tropopt::Vector<SF>;

/// Sentinel for the zero in literals and in the oracle.
constexpr long long Z = LLONG_MIN / 4;

inline S s(long long v)
{
    return v == Z ? S::zero() : tropopt::lit<SF>(v);
}

inline Mat M(std::initializer_list<std::initializer_list<long long>> rows)
{
    const auto r = static_cast<Index>(rows.size());
    const auto c = static_cast<Index>(rows.begin()->size());
    Mat m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (long long v : row) {
            m(i, j++) = s(v);
        }
        ++i;
    }
    return m;
}

inline Vec V(std::initializer_list<long long> entries)
{
    Vec v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (long long e : entries) {
        v(i++) = s(e);
    }
    return v;
}

// ---------------------------------------------------------------------------
// int64 oracle

namespace oracle {

using IMat = std::vector<std::vector<long long>>;
using IVec = std::vector<long long>;

inline long long times(long long a, long long b)
{
    return (a == Z || b == Z) ? Z : a + b;
}

inline IMat product(const IMat& a, const IMat& b)
{
    IMat out(a.size(), IVec(b[0].size(), Z));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b[0].size(); ++j) {
            for (std::size_t k = 0; k < b.size(); ++k) {
                out[i][j] = std::max(out[i][j], times(a[i][k], b[k][j]));
            }
        }
    }
    return out;
}

inline IVec apply(const IMat& a, const IVec& x)
{
    IVec y(a.size(), Z);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            y[i] = std::max(y[i], times(a[i][j], x[j]));
        }
    }
    return y;
}

inline IMat unit(std::size_t n)
{
    IMat m(n, IVec(n, Z));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 0;
    }
    return m;
}

/// I + A + ... + A^terms, entry by entry.
inline IMat power_sum(const IMat& a, std::size_t terms)
{
    IMat sum = unit(a.size());
    IMat power = unit(a.size());
    for (std::size_t k = 1; k <= terms; ++k) {
        power = product(power, a);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < a.size(); ++j) {
                sum[i][j] = std::max(sum[i][j], power[i][j]);
            }
        }
    }
    return sum;
}

/// Largest mean weight of a cycle times its length, i.e. the largest
/// diagonal entry among A^1..A^n.
inline long long max_cycle_weight(const IMat& a)
{
    long long best = Z;
    IMat power = unit(a.size());
    for (std::size_t k = 1; k <= a.size(); ++k) {
        power = product(power, a);
        for (std::size_t i = 0; i < a.size(); ++i) {
            best = std::max(best, power[i][i]);
        }
    }
    return best;
}

/// max_j (x_j - q_j) + max_i (p_i - (A x)_i), written with ordinary
/// arithmetic; p_i = zero terms are skipped.
inline long long span_objective(const IMat& a, const IVec& p, const IVec& q, const IVec& x)
{
    long long first = Z;
    for (std::size_t j = 0; j < x.size(); ++j) {
        first = std::max(first, x[j] - q[j]);
    }
    const IVec ax = apply(a, x);
    long long second = Z;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != Z) {
            second = std::max(second, p[i] - ax[i]);
        }
    }
    return first + second;
}

/// Calls visit(x) for every integer vector in [lo, hi]^n.
template <class Fn>
void grid(std::size_t n, long long lo, long long hi, Fn&& visit)
{
    IVec x(n, lo);
    while (true) {
        visit(x);
        std::size_t k = 0;
        while (k < n && x[k] == hi) {
            x[k++] = lo;
        }
        if (k == n) {
            return;
        }
        ++x[k];
    }
}

/// Whether some alpha makes  alpha g <= x <= alpha h, by scanning integer
/// alpha (exact for integer data).
inline bool interval_contains(const IVec& g, const IVec& h, const IVec& x, long long range)
{
    for (long long alpha = -range; alpha <= range; ++alpha) {
        bool ok = true;
        for (std::size_t i = 0; i < x.size() && ok; ++i) {
            ok = times(alpha, g[i]) <= x[i] && x[i] <= alpha + h[i];
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

struct Schedule {
    IMat a, b, c;
    IVec f;
};

/// Smallest max_i y_i - min_i y_i over integer x in [-w, w]^n with y = A x
/// and all constraints met; nullopt when no grid point is feasible.
inline std::optional<long long> schedule_grid_minimum(const Schedule& inst, long long w)
{
    std::optional<long long> best;
    const std::size_t n = inst.f.size();
    grid(n, -w, w, [&](const IVec& x) {
        const IVec y = apply(inst.a, x);
        const IVec bx = apply(inst.b, x);
        const IVec cy = apply(inst.c, y);
        for (std::size_t i = 0; i < n; ++i) {
            if (bx[i] > x[i] || cy[i] > x[i] || y[i] > inst.f[i]) {
                return;
            }
        }
        const long long spread = *std::max_element(y.begin(), y.end()) - *std::min_element(y.begin(), y.end());
        if (!best || spread < *best) {
            best = spread;
        }
    });
    return best;
}

} // namespace oracle

// ---------------------------------------------------------------------------
// conversions

inline Mat to_trop(const oracle::IMat& m)
{
    Mat out(static_cast<Index>(m.size()), static_cast<Index>(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[0].size(); ++j) {
            out(static_cast<Index>(i), static_cast<Index>(j)) = s(m[i][j]);
        }
    }
    return out;
}

inline Vec to_trop(const oracle::IVec& v)
{
    Vec out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Index>(i)) = s(v[i]);
    }
    return out;
}

inline long long to_int(const S& v)
{
    return v.is_zero() ? Z : v.value().convert_to<long long>();
}

inline oracle::IVec to_int(const Vec& v)
{
    oracle::IVec out(static_cast<std::size_t>(v.rows()));
    for (Index i = 0; i < v.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = to_int(v(i));
    }
    return out;
}

// ---------------------------------------------------------------------------
// random instances

class Random {
public:
    explicit Random(std::uint64_t seed)
        : gen_(seed)
    {
    }

    long long uniform(long long lo, long long hi)
    {
        return std::uniform_int_distribution<long long>(lo, hi)(gen_);
    }

    bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }

    /// Entries in [lo, hi], each zero with probability p_zero, and at least
    /// one nonzero per row (and per column when regular is set).
    oracle::IMat matrix(std::size_t rows, std::size_t cols, long long lo, long long hi, double p_zero, bool regular = false)
    {
        oracle::IMat m(rows, oracle::IVec(cols));
        for (auto& row : m) {
            for (auto& e : row) {
                e = chance(p_zero) ? Z : uniform(lo, hi);
            }
            if (std::all_of(row.begin(), row.end(), [](long long v) { return v == Z; })) {
                row[static_cast<std::size_t>(uniform(0, static_cast<long long>(cols) - 1))] = uniform(lo, hi);
            }
        }
        if (regular) {
            for (std::size_t j = 0; j < cols; ++j) {
                bool any = false;
                for (std::size_t i = 0; i < rows; ++i) {
                    any = any || m[i][j] != Z;
                }
                if (!any) {
                    m[static_cast<std::size_t>(uniform(0, static_cast<long long>(rows) - 1))][j] = uniform(lo, hi);
                }
            }
        }
        return m;
    }

    /// Entries in [lo, hi], each zero with probability p_zero, not all zero.
    oracle::IVec vector(std::size_t n, long long lo, long long hi, double p_zero)
    {
        oracle::IVec v(n);
        for (auto& e : v) {
            e = chance(p_zero) ? Z : uniform(lo, hi);
        }
        if (std::all_of(v.begin(), v.end(), [](long long e) { return e == Z; })) {
            v[static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1))] = uniform(lo, hi);
        }
        return v;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

struct SpanData {
    oracle::IMat a;
    oracle::IVec p;
    oracle::IVec q;

    tropopt::SpanProblem<SF> problem() const { return { to_trop(a), to_trop(p), to_trop(q) }; }
};

/// m, n in [1, max_dim], entries in [-5, 5], row-regular A, nonzero p and
/// regular q.
inline SpanData random_span(Random& rng, std::size_t max_dim = 4)
{
    const auto m = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(max_dim)));
    const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(max_dim)));
    SpanData d;
    d.a = rng.matrix(m, n, -5, 5, 0.35);
    d.p = rng.vector(m, -5, 5, 0.2);
    d.q = rng.vector(n, -5, 5, 0.0);
    return d;
}

/// A feasible schedule with entries in [-3, 3] and deadlines in [0, 10].
inline oracle::Schedule random_schedule(Random& rng, std::size_t n)
{
    while (true) {
        oracle::Schedule inst;
        inst.a = rng.matrix(n, n, -3, 3, 0.3, true);
        inst.b = rng.matrix(n, n, -3, 3, 0.6);
        inst.c = rng.matrix(n, n, -3, 3, 0.6);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (rng.chance(0.3)) {
                    inst.b[i][j] = Z;
                }
                if (rng.chance(0.3)) {
                    inst.c[i][j] = Z;
                }
            }
        }
        inst.f = rng.vector(n, 0, 10, 0.0);
        oracle::IMat combined = inst.b;
        const oracle::IMat ca = oracle::product(inst.c, inst.a);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                combined[i][j] = std::max(combined[i][j], ca[i][j]);
            }
        }
        if (oracle::max_cycle_weight(combined) <= 0) {
            return inst;
        }
    }
}

} // namespace testing
