#pragma once

// Monic polynomials in normalized coefficients, moments and finite-free cumulants.
//
// Sequences indexed from 1 are stored 0-based: v[n-1] holds the n-th entry.

#include "combinat.hpp"
#include "scalar.hpp"

#include <string>
#include <vector>

namespace ffinf {

using MomentSeq = std::vector<Scalar>;    // m_1..m_N
using CumulantSeq = std::vector<Scalar>;  // r_1..r_N or kappa_1..kappa_N

// p(x) = sum_k (-1)^k C(d,k) atilde_k x^{d-k}, atilde_0 = 1.
class MonicPoly {
public:
    MonicPoly() = default;
    explicit MonicPoly(std::vector<Scalar> atilde) : a_(std::move(atilde)) {
        require(a_.size() >= 2, "a monic polynomial needs degree >= 1");
        require(a_[0] == 1, "atilde_0 must equal 1");
    }

    // From ordinary coefficients c_0 = 1, c_1, ..., c_d of x^d, x^{d-1}, ..., 1.
    static MonicPoly from_ordinary(const std::vector<Scalar>& c) {
        require(c.size() >= 2 && c[0] == 1, "ordinary coefficients must describe a monic polynomial");
        const long d = static_cast<long>(c.size()) - 1;
        std::vector<Scalar> a(c.size());
        for (long k = 0; k <= d; ++k) a[k] = c[k] * ((k % 2) ? -1 : 1) / Scalar(binomial(d, k));
        return MonicPoly(std::move(a));
    }

    int degree() const { return static_cast<int>(a_.size()) - 1; }
    const std::vector<Scalar>& atilde() const { return a_; }
    const Scalar& atilde(int k) const { return a_[k]; }

    std::vector<Scalar> ordinary() const {
        const long d = degree();
        std::vector<Scalar> c(a_.size());
        for (long k = 0; k <= d; ++k) c[k] = a_[k] * ((k % 2) ? -1 : 1) * Scalar(binomial(d, k));
        return c;
    }

    friend bool operator==(const MonicPoly& a, const MonicPoly& b) { return a.a_ == b.a_; }

private:
    std::vector<Scalar> a_;
};

inline MonicPoly from_roots(const std::vector<Scalar>& roots) {
    require(!roots.empty(), "from_roots requires at least one root");
    // e[k] = k-th elementary symmetric polynomial of the roots seen so far.
    std::vector<Scalar> e(roots.size() + 1, Scalar(0));
    e[0] = 1;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += roots[i] * e[k - 1];
    const long d = static_cast<long>(roots.size());
    std::vector<Scalar> a(d + 1);
    for (long k = 0; k <= d; ++k) a[k] = e[k] / Scalar(binomial(d, k));
    return MonicPoly(std::move(a));
}

// m_n = (power sum p_n of the roots)/d via Newton's identities.
inline MomentSeq moments(const MonicPoly& p, int N) {
    require(N >= 1, "moments requires N >= 1");
    const long d = p.degree();
    std::vector<Scalar> e(d + 1);
    for (long k = 0; k <= d; ++k) e[k] = p.atilde(static_cast<int>(k)) * Scalar(binomial(d, k));
    std::vector<Scalar> ps(N + 1, Scalar(0));
    for (int n = 1; n <= N; ++n) {
        Scalar s = 0;
        for (int i = 1; i < n && i <= d; ++i) s += ((i - 1) % 2 ? -1 : 1) * e[i] * ps[n - i];
        if (n <= d) s += ((n - 1) % 2 ? -1 : 1) * Scalar(n) * e[n];
        ps[n] = s;
    }
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = ps[n] / Scalar(d);
    return m;
}

namespace detail {

// (-d)^{n-1}/(n-1)!
inline Scalar cumulant_scale(long d, int n) {
    Scalar r = 1;
    for (int i = 1; i < n; ++i) r *= Scalar(-d) / Scalar(i);
    return r;
}

// Product over block sizes of u_{|V|} for a 1-based sequence stored 0-based.
template <class Sizes>
Scalar block_product(const Sizes& sizes, const std::vector<Scalar>& u) {
    Scalar r = 1;
    for (int k : sizes) r *= u[k - 1];
    return r;
}

}  // namespace detail

// kappa_n = (-d)^{n-1}/(n-1)! sum_{pi in P(n)} Moeb(pi, 1_n) atilde_pi, n <= 12.
// The summand depends only on the block type of pi, so the sum runs over types.
inline Scalar finite_cumulant_partition_sum(const MonicPoly& p, int n) {
    require(n >= 1 && n <= p.degree(), "finite cumulant index must satisfy 1 <= n <= d");
    require_size(n <= 12, "partition-sum cumulant supports n <= 12");
    Scalar s = 0;
    for (const auto& type : integer_partitions(n)) {
        const long k = static_cast<long>(type.size());
        Integer mob = ((k - 1) % 2 ? -1 : 1) * factorial(k - 1);
        Scalar prod = 1;
        for (int b : type) prod *= p.atilde(b);
        s += Scalar(mob * partitions_of_type(type)) * prod;
    }
    return detail::cumulant_scale(p.degree(), n) * s;
}

// Same quantity through the classical cumulants c_n of the sequence atilde:
// log(sum_k atilde_k x^k/k!) = sum_n c_n x^n/n! and kappa_n = (-d)^{n-1}/(n-1)! c_n.
inline CumulantSeq finite_cumulants_egf(const MonicPoly& p, int N) {
    require(N >= 1 && N <= p.degree(), "finite cumulants require 1 <= N <= d");
    // a_k = atilde_k/k!, b = log a, n b_n = n a_n - sum_{k<n} k b_k a_{n-k}.
    std::vector<Scalar> a(N + 1), b(N + 1, Scalar(0));
    Scalar fk = 1;
    for (int k = 0; k <= N; ++k) {
        if (k) fk *= k;
        a[k] = p.atilde(k) / fk;
    }
    CumulantSeq out(N);
    Scalar fn = 1;
    for (int n = 1; n <= N; ++n) {
        Scalar s = Scalar(n) * a[n];
        for (int k = 1; k < n; ++k) s -= Scalar(k) * b[k] * a[n - k];
        b[n] = s / Scalar(n);
        fn *= n;
        out[n - 1] = detail::cumulant_scale(p.degree(), n) * fn * b[n];
    }
    return out;
}

inline CumulantSeq finite_cumulants_from_coeffs(const MonicPoly& p, int N) {
    if (N > p.degree()) throw TruncationError("finite cumulants require N <= d");
    require(N >= 1, "finite cumulants require N >= 1");
    if (N > 12) return finite_cumulants_egf(p, N);
    CumulantSeq out(N);
    for (int n = 1; n <= N; ++n) out[n - 1] = finite_cumulant_partition_sum(p, n);
    return out;
}

// m_n = (-1)^{n-1}/(n-1)! sum_{pi v theta = 1_n} d^{|pi|+|theta|-n-1}
//       Moeb(0,pi) Moeb(0,theta) kappa_pi, grouped by block types.
inline MomentSeq finite_moments_from_cumulants(const CumulantSeq& kappa, long d, int N) {
    if (N > d) throw TruncationError("finite cumulants require N <= d");
    require(N >= 1 && static_cast<int>(kappa.size()) >= N, "cumulant sequence shorter than N");
    require_size(N <= 9, "double-sum moment formula supports N <= 9");
    MomentSeq out(N);
    for (int n = 1; n <= N; ++n) {
        Scalar s = 0;
        for (const auto& c : joined_pair_classes(n)) {
            long e = static_cast<long>(c.pi_sizes.size() + c.theta_sizes.size()) - n - 1;
            Scalar w = Scalar(c.count * mobius_partition_from_bottom(c.pi_sizes) *
                              mobius_partition_from_bottom(c.theta_sizes)) *
                       pow(Scalar(d), e);
            s += w * detail::block_product(c.pi_sizes, kappa);
        }
        out[n - 1] = Scalar((n - 1) % 2 ? -1 : 1) / Scalar(factorial(n - 1)) * s;
    }
    return out;
}

// Inverts finite_moments_from_cumulants one index at a time: kappa_n enters m_n
// with coefficient (d)_n/d^n, which is nonzero for n <= d.
inline CumulantSeq finite_cumulants_from_moments(const MomentSeq& m, long d, int N) {
    if (N > d) throw TruncationError("finite cumulants require N <= d");
    require(N >= 1 && static_cast<int>(m.size()) >= N, "moment sequence shorter than N");
    require_size(N <= 9, "double-sum moment formula supports N <= 9");
    CumulantSeq kappa(N, Scalar(0));
    for (int n = 1; n <= N; ++n) {
        Scalar rest = finite_moments_from_cumulants(kappa, d, n)[n - 1];  // kappa_n still 0
        kappa[n - 1] = (m[n - 1] - rest) * pow(Scalar(d), n) / falling(Scalar(d), n);
    }
    return kappa;
}

// Inverse of the cumulant map: solves for atilde_1..atilde_d in order,
// exponentiating the classical-cumulant generating function.
inline MonicPoly poly_from_finite_cumulants(long d, const CumulantSeq& kappa) {
    require(d >= 1 && static_cast<long>(kappa.size()) == d, "poly_from_finite_cumulants needs exactly d cumulants");
    // b_n = c_n/n! with c_n = kappa_n (n-1)!/(-d)^{n-1}, so b_n = kappa_n/(n (-d)^{n-1}).
    std::vector<Scalar> b(d + 1, Scalar(0)), a(d + 1, Scalar(0));
    Scalar negpow = 1;
    for (long n = 1; n <= d; ++n) {
        b[n] = kappa[n - 1] / (Scalar(n) * negpow);
        negpow *= Scalar(-d);
    }
    std::vector<long> support;
    for (long k = 1; k <= d; ++k)
        if (b[k] != 0) support.push_back(k);
    a[0] = 1;
    for (long n = 1; n <= d; ++n) {
        Scalar s = 0;
        for (long k : support) {
            if (k > n) break;
            s += Scalar(k) * b[k] * a[n - k];
        }
        a[n] = s / Scalar(n);
    }
    std::vector<Scalar> at(d + 1);
    Scalar fk = 1;
    for (long k = 0; k <= d; ++k) {
        if (k) fk *= k;
        at[k] = a[k] * fk;
    }
    return MonicPoly(std::move(at));
}

}  // namespace ffinf
