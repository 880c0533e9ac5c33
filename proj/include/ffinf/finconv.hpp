#pragma once

// Finite free additive and multiplicative convolution of degree-d polynomials,
// rescaled differentiation, and the exact product expansion of cumulants.

#include "combinat.hpp"
#include "poly.hpp"

#include <vector>

namespace ffinf {

inline MonicPoly boxplus_d(const MonicPoly& p, const MonicPoly& q) {
    require(p.degree() == q.degree(), "boxplus_d requires equal degrees");
    const int d = p.degree();
    std::vector<Scalar> a(d + 1, Scalar(0));
    for (int k = 0; k <= d; ++k)
        for (int i = 0; i <= k; ++i) a[k] += Scalar(binomial(k, i)) * p.atilde(i) * q.atilde(k - i);
    return MonicPoly(std::move(a));
}

inline MonicPoly boxtimes_d(const MonicPoly& p, const MonicPoly& q) {
    require(p.degree() == q.degree(), "boxtimes_d requires equal degrees");
    std::vector<Scalar> a(p.degree() + 1);
    for (int k = 0; k <= p.degree(); ++k) a[k] = p.atilde(k) * q.atilde(k);
    return MonicPoly(std::move(a));
}

// kappa_n(p boxtimes_d q) as the double sum over pi v theta = 1_n of
// d^{|pi|+|theta|-n-1} Moeb(0,pi) Moeb(0,theta) kappa_pi(p) kappa_theta(q),
// times (-1)^{n-1}/(n-1)!.
inline Scalar kappa_product_expansion(long d, const CumulantSeq& kp, const CumulantSeq& kq, int n) {
    require(n >= 1 && n <= d, "kappa_product_expansion requires 1 <= n <= d");
    require_size(n <= 8, "kappa_product_expansion supports n <= 8");
    require(static_cast<int>(kp.size()) >= n && static_cast<int>(kq.size()) >= n,
            "cumulant sequences shorter than n");
    Scalar s = 0;
    for (const auto& c : joined_pair_classes(n)) {
        long e = static_cast<long>(c.pi_sizes.size() + c.theta_sizes.size()) - n - 1;
        Scalar w = Scalar(c.count * mobius_partition_from_bottom(c.pi_sizes) *
                          mobius_partition_from_bottom(c.theta_sizes)) *
                   pow(Scalar(d), e);
        s += w * detail::block_product(c.pi_sizes, kp) * detail::block_product(c.theta_sizes, kq);
    }
    return Scalar((n - 1) % 2 ? -1 : 1) / Scalar(factorial(n - 1)) * s;
}

// Leading two orders of kappa_n(p boxtimes_d q) in 1/d:
// sum_{NC(n)} kp_pi kq_{Kr(pi)} - (n/2d) sum_{t+s=n, S_NC(t,s)} kp_sigma kq_{Kr(sigma)}/(ts).
inline Scalar kappa_product_truncated(long d, const CumulantSeq& kp, const CumulantSeq& kq, int n) {
    Scalar lead = 0;
    for (const auto& t : nc_table(n))
        lead += detail::block_product(t.sizes, kp) * detail::block_product(t.kreweras_sizes, kq);
    Scalar ann = 0;
    for (int t = 1; t < n; ++t)
        for (const auto& a : annular_table(t, n - t))
            ann += detail::block_product(a.sigma_sizes, kp) * detail::block_product(a.kreweras_sizes, kq) /
                   Scalar(t * (n - t));
    return lead - frac(n, 2 * d) * ann;
}

// p^{(s)}/(d)_s, differentiating the ordinary coefficients.
inline MonicPoly derivative_poly(const MonicPoly& p, int s) {
    const int d = p.degree();
    require(s >= 0 && s < d, "derivative_poly requires 0 <= s < d");
    std::vector<Scalar> c = p.ordinary();  // c[k] multiplies x^{d-k}
    for (int step = 0; step < s; ++step) {
        const int deg = static_cast<int>(c.size()) - 1;
        std::vector<Scalar> nc(deg);
        for (int k = 0; k < deg; ++k) nc[k] = c[k] * Scalar(deg - k);
        c = std::move(nc);
    }
    const Scalar lead = c[0];
    for (auto& x : c) x /= lead;
    return MonicPoly::from_ordinary(c);
}

// Same polynomial as p boxtimes_d x^s (x-1)^{d-s} with the factor x^s removed.
inline MonicPoly derivative_poly_via_boxtimes(const MonicPoly& p, int s) {
    const int d = p.degree();
    require(s >= 0 && s < d, "derivative_poly requires 0 <= s < d");
    std::vector<Scalar> roots(d, Scalar(0));
    for (int i = s; i < d; ++i) roots[i] = 1;
    std::vector<Scalar> c = boxtimes_d(p, from_roots(roots)).ordinary();
    for (int k = d - s + 1; k <= d; ++k) require(c[k] == 0, "x^s factor expected in boxtimes output");
    c.resize(d - s + 1);
    return MonicPoly::from_ordinary(c);
}

inline MonicPoly dilate(const MonicPoly& p, const Scalar& t) {
    require(t != 0, "dilate requires t != 0");
    std::vector<Scalar> a = p.atilde();
    Scalar tk = 1;
    for (auto& x : a) {
        x *= tk;
        tk *= t;
    }
    return MonicPoly(std::move(a));
}

// p(x - c): roots shifted by c, by Taylor re-expansion of the ordinary coefficients.
inline MonicPoly shift(const MonicPoly& p, const Scalar& c) {
    const int d = p.degree();
    std::vector<Scalar> coef = p.ordinary();  // x^{d-k}
    std::vector<Scalar> out(d + 1, Scalar(0));  // x^{d-j}
    // (x - c)^{d-k} = sum_i C(d-k, i) x^{d-k-i} (-c)^i
    for (int k = 0; k <= d; ++k) {
        Scalar ci = 1;
        for (int i = 0; i <= d - k; ++i) {
            out[k + i] += coef[k] * Scalar(binomial(d - k, i)) * ci;
            ci *= -c;
        }
    }
    return MonicPoly::from_ordinary(out);
}

}  // namespace ffinf
