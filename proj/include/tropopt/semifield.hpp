#pragma once

// Idempotent semifields and their extended scalar type.
//
// A semifield is described by a stateless policy struct that supplies the
// finite-value operations; the additive zero is never a value of the policy
// but a separate state of Trop<SF>.  The four classical instances are
// provided over exact rationals.

#include <tropopt/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace tropopt {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

enum class SemifieldTag { MaxPlus, MinPlus, MaxTimes, MinTimes };

constexpr std::string_view to_string(SemifieldTag tag)
{
    switch (tag) {
    case SemifieldTag::MaxPlus: return "max-plus";
    case SemifieldTag::MinPlus: return "min-plus";
    case SemifieldTag::MaxTimes: return "max-times";
    case SemifieldTag::MinTimes: return "min-times";
    }
    return "unknown";
}

// Policy requirements, for a semifield SF over value_type T:
//   plus(a, b)      idempotent addition of two finite values
//   times(a, b)     multiplication of two finite values
//   unit()          multiplicative identity
//   inverse(a)      multiplicative inverse of a finite value
//   before(a, b)    strict total order consistent with plus
//   admissible(a)   whether a is a legal finite value
//   zero_token      textual rendering of the additive zero

template <class T>
struct MaxPlus {
    using value_type = T;
    static constexpr SemifieldTag tag = SemifieldTag::MaxPlus;
    static constexpr std::string_view zero_token = "-inf";

    static T plus(const T& a, const T& b) { return a < b ? b : a; }
    static T times(const T& a, const T& b) { return a + b; }
    static T unit() { return T(0); }
    static T inverse(const T& a) { return -a; }
    static bool before(const T& a, const T& b) { return a < b; }
    static bool admissible(const T&) { return true; }
};

template <class T>
struct MinPlus {
    using value_type = T;
    static constexpr SemifieldTag tag = SemifieldTag::MinPlus;
    static constexpr std::string_view zero_token = "+inf";

    static T plus(const T& a, const T& b) { return b < a ? b : a; }
    static T times(const T& a, const T& b) { return a + b; }
    static T unit() { return T(0); }
    static T inverse(const T& a) { return -a; }
    static bool before(const T& a, const T& b) { return b < a; }
    static bool admissible(const T&) { return true; }
};

template <class T>
struct MaxTimes {
    using value_type = T;
    static constexpr SemifieldTag tag = SemifieldTag::MaxTimes;
    static constexpr std::string_view zero_token = "0";

    static T plus(const T& a, const T& b) { return a < b ? b : a; }
    static T times(const T& a, const T& b) { return a * b; }
    static T unit() { return T(1); }
    static T inverse(const T& a) { return T(1) / a; }
    static bool before(const T& a, const T& b) { return a < b; }
    static bool admissible(const T& a) { return a > 0; }
};

template <class T>
struct MinTimes {
    using value_type = T;
    static constexpr SemifieldTag tag = SemifieldTag::MinTimes;
    static constexpr std::string_view zero_token = "+inf";

    static T plus(const T& a, const T& b) { return b < a ? b : a; }
    static T times(const T& a, const T& b) { return a * b; }
    static T unit() { return T(1); }
    static T inverse(const T& a) { return T(1) / a; }
    static bool before(const T& a, const T& b) { return b < a; }
    static bool admissible(const T& a) { return a > 0; }
};

/// An element of the semifield SF extended by its additive zero.
///
/// A default-constructed Trop is the zero, so freshly allocated matrices
/// are zero matrices.
template <class SF>
class Trop {
public:
    using semifield = SF;
    using value_type = typename SF::value_type;

    Trop() = default;

    static Trop zero() { return Trop(); }
    static Trop one() { return Trop(SF::unit()); }

    static Trop finite(value_type v)
    {
        if (!SF::admissible(v)) {
            throw Error(ErrorCode::InvalidValue, "value outside the carrier of "
                            + std::string(to_string(SF::tag)));
        }
        return Trop(std::move(v));
    }

    bool is_zero() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }

    const value_type& value() const
    {
        if (!value_) {
            throw Error(ErrorCode::InvalidValue, "zero has no finite value");
        }
        return *value_;
    }

    friend bool operator==(const Trop&, const Trop&) = default;

private:
    explicit Trop(value_type v)
        : value_(std::move(v))
    {
    }

    std::optional<value_type> value_;
};

template <class SF>
Trop<SF> add(const Trop<SF>& a, const Trop<SF>& b)
{
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    return Trop<SF>::finite(SF::plus(a.value(), b.value()));
}

template <class SF>
Trop<SF> mul(const Trop<SF>& a, const Trop<SF>& b)
{
    if (a.is_zero() || b.is_zero()) {
        return Trop<SF>::zero();
    }
    return Trop<SF>::finite(SF::times(a.value(), b.value()));
}

template <class SF>
Trop<SF> inv(const Trop<SF>& a)
{
    if (a.is_zero()) {
        throw Error(ErrorCode::InversionOfZero, "the zero element has no inverse");
    }
    return Trop<SF>::finite(SF::inverse(a.value()));
}

/// Integer power by repeated squaring; negative exponents invert first.
template <class SF>
Trop<SF> pow(const Trop<SF>& a, std::int64_t k)
{
    if (k == 0) {
        return Trop<SF>::one();
    }
    Trop<SF> base = k < 0 ? inv(a) : a;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1
                            : static_cast<std::uint64_t>(k);
    Trop<SF> result = Trop<SF>::one();
    while (e != 0) {
        if (e & 1U) {
            result = mul(result, base);
        }
        e >>= 1U;
        if (e != 0) {
            base = mul(base, base);
        }
    }
    return result;
}

/// Strict semifield order; zero precedes every finite element.
template <class SF>
bool less(const Trop<SF>& a, const Trop<SF>& b)
{
    if (b.is_zero()) {
        return false;
    }
    if (a.is_zero()) {
        return true;
    }
    return SF::before(a.value(), b.value());
}

/// a <= b in the order induced by idempotent addition.
template <class SF>
bool leq(const Trop<SF>& a, const Trop<SF>& b)
{
    return !less(b, a);
}

template <class SF>
Trop<SF> min(const Trop<SF>& a, const Trop<SF>& b)
{
    return less(b, a) ? b : a;
}

inline std::string format_rational(const Rational& r)
{
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

template <class SF>
std::string to_string(const Trop<SF>& a)
{
    if (a.is_zero()) {
        return std::string(SF::zero_token);
    }
    if constexpr (std::is_same_v<typename SF::value_type, Rational>) {
        return format_rational(a.value());
    } else {
        std::ostringstream os;
        os << a.value();
        return os.str();
    }
}

template <class SF>
std::ostream& operator<<(std::ostream& os, const Trop<SF>& a)
{
    return os << to_string(a);
}

using MaxPlusQ = MaxPlus<Rational>;
using MinPlusQ = MinPlus<Rational>;
using MaxTimesQ = MaxTimes<Rational>;
using MinTimesQ = MinTimes<Rational>;

/// Shorthand for a finite max-plus-style literal.
template <class SF>
Trop<SF> lit(long long v)
{
    return Trop<SF>::finite(typename SF::value_type(v));
}

} // namespace tropopt
