#include "permpat/numeric.hpp"

#include "permpat/errors.hpp"

#include <cmath>
#include <charconv>

namespace permpat {

namespace mp = boost::multiprecision;

double log_big(const BigInt& x) {
    if (x < 0) throw InvalidInputError("log_big: negative argument");
    if (x == 0) return kNegInf;
    const std::size_t bits = mp::msb(x);
    if (bits <= 900) return std::log(x.convert_to<double>());
    // Scale down so the double conversion cannot overflow.
    const std::size_t shift = bits - 512;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * M_LN2;
}

double log_rational(const Rational& x) {
    if (x < 0) throw InvalidInputError("log_rational: negative argument");
    if (x == 0) return kNegInf;
    return log_big(mp::numerator(x)) - log_big(mp::denominator(x));
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp > 0) b *= b;
    }
    return result;
}

Rational rational_pow(const Rational& base, std::uint64_t exp) {
    if (exp == 0) return Rational(1);
    return Rational(big_pow(mp::numerator(base), exp), big_pow(mp::denominator(base), exp));
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

std::uint64_t binomial_u64(int n, int k) {
    const BigInt b = binomial(n, k);
    if (b > std::numeric_limits<std::uint64_t>::max()) {
        throw CapacityError("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                            ") exceeds 64-bit range");
    }
    return b.convert_to<std::uint64_t>();
}

std::uint64_t factorial_u64(int n) {
    if (n < 0) throw InvalidInputError("factorial of negative number");
    if (n > 20) throw CapacityError("factorial(" + std::to_string(n) + ") exceeds 64-bit range");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

namespace {

BigInt parse_big(std::string_view text) {
    if (text.empty()) throw InvalidInputError("empty number");
    try {
        return BigInt(std::string(text));
    } catch (const std::exception&) {
        throw InvalidInputError("bad integer: '" + std::string(text) + "'");
    }
}

}  // namespace

Rational parse_rational(std::string_view text) {
    // strip surrounding whitespace
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw InvalidInputError("empty rational literal");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_big(text.substr(0, slash));
        const BigInt den = parse_big(text.substr(slash + 1));
        if (den == 0) throw InvalidInputError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        bool negative = false;
        std::string_view digits = int_part;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
            negative = digits.front() == '-';
            digits.remove_prefix(1);
        }
        BigInt scaled = digits.empty() ? BigInt(0) : parse_big(digits);
        BigInt den = 1;
        for (const char c : frac_part) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw InvalidInputError("bad decimal: '" + std::string(text) + "'");
            scaled = scaled * 10 + (c - '0');
            den *= 10;
        }
        Rational r(scaled, den);
        return negative ? -r : r;
    }
    return Rational(parse_big(text));
}

Rational parse_probability(std::string_view text) {
    const Rational p = parse_rational(text);
    if (p <= 0 || p >= 1) {
        throw InvalidInputError("probability '" + std::string(text) + "' must lie in (0,1)");
    }
    return p;
}

std::string rational_str(const Rational& x) {
    const BigInt num = mp::numerator(x);
    const BigInt den = mp::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

LogReal LogReal::from_log(double lg) {
    LogReal r;
    r.log_ = lg;
    return r;
}

LogReal LogReal::from_value(double v) {
    if (v < 0) throw InvalidInputError("LogReal: negative value");
    return from_log(v == 0 ? kNegInf : std::log(v));
}

LogReal LogReal::from_rational(const Rational& r) { return from_log(log_rational(r)); }

double LogReal::value() const { return is_zero() ? 0.0 : std::exp(log_); }

LogReal& LogReal::operator*=(const LogReal& o) {
    if (is_zero() || o.is_zero()) {
        log_ = kNegInf;
    } else {
        log_ += o.log_;
    }
    return *this;
}

LogReal LogReal::pow(double e) const {
    if (e == 0.0) return one();  // includes 0^0 = 1
    if (is_zero()) return zero();
    return from_log(e * log_);
}

LogReal log_space_add(const LogReal& a, const LogReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.log_, b.log_);
    const double lo = std::min(a.log_, b.log_);
    return LogReal::from_log(hi + std::log1p(std::exp(lo - hi)));
}

}  // namespace permpat
