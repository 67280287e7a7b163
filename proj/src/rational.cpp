#include "cstar/rational.hpp"

#include <limits>
#include <ostream>

#include "cstar/error.hpp"

namespace cstar {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "INVALID_INPUT";
        case ErrorCode::NotAdmissible: return "NOT_ADMISSIBLE";
        case ErrorCode::NotContractible: return "NOT_CONTRACTIBLE";
        case ErrorCode::InvalidBranch: return "INVALID_BRANCH";
        case ErrorCode::Overflow: return "OVERFLOW";
        case ErrorCode::Parse: return "PARSE";
    }
    return "UNKNOWN";
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorCode::InvalidInput, "rational with zero denominator");
    *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < -kMax || d > kMax) {
        throw Error(ErrorCode::Overflow, "rational arithmetic overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational Rational::reciprocal() const {
    if (num_ == 0) throw Error(ErrorCode::InvalidInput, "reciprocal of zero");
    return from_wide(den_, num_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    // Cross-reduce first so the 128-bit products stay small.
    __int128 g1 = gcd128(num_, o.den_);
    __int128 g2 = gcd128(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    __int128 n = (num_ / g1) * (o.num_ / g2);
    __int128 d = (den_ / g2) * (o.den_ / g1);
    return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.reciprocal(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cstar
