#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffinf {

using Scalar = mpq_class;
using Integer = mpz_class;

// Error hierarchy. The CLI maps each class to a distinct exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// An enumeration or sum would exceed the supported size.
struct SizeLimitError : Error {
    using Error::Error;
};
// A precondition on the inputs does not hold (degree mismatch, order error, ...).
struct ContractError : Error {
    using Error::Error;
};
// A series coefficient was requested beyond its guaranteed precision.
struct TruncationError : ContractError {
    using ContractError::ContractError;
};
// Malformed textual input.
struct ParseError : Error {
    using Error::Error;
};
// Two routes that must agree produced different results.
struct ConsistencyError : Error {
    using Error::Error;
};

inline void require_size(bool ok, const std::string& what) {
    if (!ok) throw SizeLimitError(what);
}
inline void require(bool ok, const std::string& what) {
    if (!ok) throw ContractError(what);
}

// "num/den", with the denominator omitted when it is 1.
inline std::string to_string(const Scalar& x) {
    Scalar c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Scalar parse_scalar(const std::string& s) {
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not a rational: '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw ParseError("zero denominator: '" + s + "'");
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

inline Scalar frac(long num, long den) {
    require(den != 0, "zero denominator");
    Scalar q{Integer(num), Integer(den)};
    q.canonicalize();
    return q;
}

inline double to_double(const Scalar& x) { return x.get_d(); }

inline Scalar pow(const Scalar& x, long k) {
    if (k < 0) {
        require(x != 0, "negative power of zero");
        return pow(Scalar(1) / x, -k);
    }
    Scalar r = 1, b = x;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// (x)_k = x(x-1)...(x-k+1)
inline Scalar falling(const Scalar& x, long k) {
    Scalar r = 1;
    for (long i = 0; i < k; ++i) r *= x - i;
    return r;
}

inline Integer catalan(long n) { return binomial(2 * n, n) / (n + 1); }

inline std::vector<std::string> to_strings(const std::vector<Scalar>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline std::vector<Scalar> parse_scalars(const std::vector<std::string>& v) {
    std::vector<Scalar> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(parse_scalar(s));
    return out;
}

}  // namespace ffinf
