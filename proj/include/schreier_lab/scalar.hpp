#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <type_traits>

#include "schreier_lab/errors.hpp"

namespace schreier_lab {

using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;
using int128 = __int128;

enum class arith_mode { exact, floating };
enum class space_kind { sp, bp };

inline const char* to_string(arith_mode m) { return m == arith_mode::exact ? "exact" : "float"; }
inline const char* to_string(space_kind s) { return s == space_kind::sp ? "sp" : "bp"; }

template <class T>
T ipow(T base, unsigned e) {
    T r = 1;
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return r;
}

inline std::string format_big(const big_int& v) { return v.str(); }

inline std::string format_rational(const rational& r) {
    const big_int num = boost::multiprecision::numerator(r);
    const big_int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double to_double(const rational& r) { return r.convert_to<double>(); }
inline double to_double(double v) { return v; }

// Accepts "n", "n/d", and plain decimals ("-1.25", "3e-2"); decimals are converted exactly.
inline rational parse_rational(const std::string& text) {
    auto bad = [&] { return invalid_input("not a rational number: '" + text + "'"); };
    if (text.empty()) throw bad();
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            big_int num(text.substr(0, slash));
            big_int den(text.substr(slash + 1));
            if (den == 0) throw bad();
            return rational(num, den);
        }
        std::string mant = text;
        long long exp10 = 0;
        const auto e = mant.find_first_of("eE");
        if (e != std::string::npos) {
            exp10 = std::stoll(mant.substr(e + 1));
            mant = mant.substr(0, e);
        }
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant = mant.substr(1);
        }
        const auto dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            exp10 -= static_cast<long long>(mant.size() - dot - 1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
        big_int num(digits);
        if (neg) num = -num;
        if (exp10 > 400 || exp10 < -400) throw bad();
        const big_int scale = ipow(big_int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
        return exp10 >= 0 ? rational(num * scale) : rational(num, scale);
    } catch (const invalid_input&) {
        throw;
    } catch (const std::exception&) {
        throw bad();
    }
}

// The exponent p of a norm. Integral p admits exact rational evaluation of p-th powers.
class exponent {
public:
    exponent() = default;
    explicit exponent(unsigned p) : value_(p), integral_(p) {
        if (p < 1) throw unsupported_exponent("exponent must be at least 1");
    }

    static exponent parse(const std::string& text) {
        const rational r = parse_rational(text);
        return from_rational(r);
    }

    static exponent from_rational(const rational& r) {
        if (r < 1) throw unsupported_exponent("exponent must be at least 1");
        exponent e;
        e.value_ = to_double(r);
        if (boost::multiprecision::denominator(r) == 1 && r <= 64)
            e.integral_ = boost::multiprecision::numerator(r).convert_to<unsigned>();
        else
            e.integral_.reset();
        return e;
    }

    static exponent from_double(double p) {
        if (!(p >= 1) || !std::isfinite(p)) throw unsupported_exponent("exponent must be a finite real >= 1");
        exponent e;
        e.value_ = p;
        if (p == std::floor(p) && p <= 64) e.integral_ = static_cast<unsigned>(p);
        else e.integral_.reset();
        return e;
    }

    double value() const { return value_; }
    bool is_integer() const { return integral_.has_value(); }
    unsigned integer() const {
        if (!integral_) throw unsupported_exponent("exact arithmetic needs an integral exponent, got " + str());
        return *integral_;
    }
    std::string str() const { return integral_ ? std::to_string(*integral_) : format_double(value_); }

    friend bool operator==(const exponent& a, const exponent& b) { return a.value_ == b.value_; }

private:
    double value_ = 1.0;
    std::optional<unsigned> integral_ = 1u;
};

template <class S>
struct scalar_ops;

template <>
struct scalar_ops<rational> {
    static constexpr bool exact = true;
    static constexpr arith_mode mode = arith_mode::exact;
    static rational abs(const rational& v) { return v < 0 ? rational(-v) : v; }
    static rational pow(const rational& v, const exponent& p) { return ipow(v, p.integer()); }
    static std::string str(const rational& v) { return format_rational(v); }
    static bool is_zero(const rational& v) { return v == 0; }
};

template <>
struct scalar_ops<double> {
    static constexpr bool exact = false;
    static constexpr arith_mode mode = arith_mode::floating;
    static double abs(double v) { return std::fabs(v); }
    static double pow(double v, const exponent& p) {
        if (p.is_integer()) return ipow(v, p.integer());
        const double twice = 2.0 * p.value();
        if (twice == std::floor(twice) && twice < 128) return ipow(v, static_cast<unsigned>(twice) / 2u) * std::sqrt(v);
        return std::pow(v, p.value());
    }
    static std::string str(double v) { return format_double(v); }
    static bool is_zero(double v) { return v == 0.0; }
};

template <class S>
inline constexpr bool is_exact_v = scalar_ops<S>::exact;

// Root of a p-th power, reported as a double.
inline double pth_root(double v, const exponent& p) {
    if (v <= 0) return 0.0;
    return p.value() == 1.0 ? v : std::pow(v, 1.0 / p.value());
}

// Relative comparison tolerance for float mode.
inline constexpr double float_tolerance = 1e-9;

inline bool close_rel(double a, double b, double tol = float_tolerance) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

}  // namespace schreier_lab
