#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace permpat {

// Exact arithmetic backend. Counts and measure weights stay exact rationals
// until a verdict is rendered; only logs are floated.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Natural log of a non-negative big integer; log(0) = -inf.
double log_big(const BigInt& x);

// Natural log of a non-negative rational; log(0) = -inf.
double log_rational(const Rational& x);

double to_double(const Rational& x);

BigInt big_pow(const BigInt& base, std::uint64_t exp);
Rational rational_pow(const Rational& base, std::uint64_t exp);

BigInt binomial(int n, int k);
std::uint64_t binomial_u64(int n, int k);  // throws CapacityError if > 2^64-1
std::uint64_t factorial_u64(int n);        // n <= 20

// Parses "3/4", "0.25" or "1" into an exact rational.
Rational parse_rational(std::string_view text);
// Same, restricted to the open interval (0,1).
Rational parse_probability(std::string_view text);

// "num/den" (or just "num" for integers).
std::string rational_str(const Rational& x);

// A non-negative real carried in log space, for long products of
// probabilities that would underflow linear doubles.
class LogReal {
public:
    LogReal() : log_(kNegInf) {}  // zero

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return from_log(0.0); }
    static LogReal from_log(double lg);
    static LogReal from_value(double v);  // v >= 0
    static LogReal from_rational(const Rational& r);

    bool is_zero() const { return log_ == kNegInf; }
    double log() const { return log_; }
    double value() const;  // may underflow to 0 for very negative logs

    LogReal& operator*=(const LogReal& o);
    friend LogReal operator*(LogReal a, const LogReal& b) { return a *= b; }

    // base^e with e given in linear scale; 0^0 = 1.
    LogReal pow(double e) const;

    // Numerically stable x + y.
    friend LogReal log_space_add(const LogReal& a, const LogReal& b);

private:
    double log_;
};

}  // namespace permpat
