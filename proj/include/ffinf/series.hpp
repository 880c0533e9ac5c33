#pragma once

// Truncated formal Laurent series with exact coefficients, and the transforms
// G, F, K, R, H, the inverse Markov-Krein transform, theta and subordination.
//
// A series lives in one of two variables: w = 1/z (Cauchy-type objects such as
// G, H, omega, theta) or z (R- and K-type objects). Every series records its
// precision P: the coefficients of all exponents <= P are exact, those above
// are unknown. Arithmetic propagates P exactly and reading beyond it throws.

#include "combinat.hpp"
#include "poly.hpp"
#include "scalar.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ffinf {

enum class Variable { inverse_z, z };

class Series {
public:
    Series() = default;

    // Coefficients c[i] of x^{low+i}; exponents in (low+size-1, prec] are zero.
    Series(Variable var, long low, std::vector<Scalar> c, long prec)
        : var_(var), low_(low), prec_(prec), c_(std::move(c)) {
        normalize();
    }

    static Series zero(Variable var, long prec) { return Series(var, 0, {}, prec); }
    static Series monomial(Variable var, long exponent, const Scalar& a, long prec) {
        return Series(var, exponent, {a}, prec);
    }

    Variable var() const { return var_; }
    long precision() const { return prec_; }

    // Coefficient of x^k, where x is the series variable.
    Scalar coeff(long k) const {
        if (k > prec_)
            throw TruncationError("coefficient of exponent " + std::to_string(k) +
                                  " requested beyond precision " + std::to_string(prec_));
        if (k < low_ || k >= low_ + static_cast<long>(c_.size())) return 0;
        return c_[k - low_];
    }

    // Exponent of the first nonzero coefficient; prec+1 when all known ones vanish.
    long valuation() const { return c_.empty() ? prec_ + 1 : low_; }
    bool is_zero() const { return c_.empty(); }

    // Lowest stored exponent and highest exponent that may be nonzero.
    long low() const { return c_.empty() ? prec_ + 1 : low_; }
    long high() const { return c_.empty() ? prec_ : low_ + static_cast<long>(c_.size()) - 1; }

    Series truncated(long prec) const {
        if (prec >= prec_) return *this;
        std::vector<Scalar> c;
        for (long k = low_; k <= prec && k < low_ + static_cast<long>(c_.size()); ++k) c.push_back(c_[k - low_]);
        return Series(var_, low_, std::move(c), prec);
    }

    // Cauchy-type view: coefficient of z^{-n-1}, z^0 and z^1.
    Scalar cauchy_coeff(long n) const { return coeff_in_z(-n - 1); }
    Scalar constant() const { return coeff_in_z(0); }
    Scalar top() const { return coeff_in_z(1); }
    // Largest N with z^{-N-1} known.
    long cauchy_order() const { return var_ == Variable::inverse_z ? prec_ - 1 : -1; }

    // Z-type view: coefficient of z^{n-1}, and of 1/z.
    Scalar z_coeff(long n) const { return coeff_in_z(n - 1); }
    Scalar pole() const { return coeff_in_z(-1); }
    long z_order() const { return var_ == Variable::z ? prec_ + 1 : -1; }

    Scalar coeff_in_z(long e) const {
        if (var_ == Variable::z) return coeff(e);
        return coeff(-e);
    }

    Series operator-() const {
        std::vector<Scalar> c = c_;
        for (auto& x : c) x = -x;
        return Series(var_, low_, std::move(c), prec_);
    }

    friend Series operator+(const Series& a, const Series& b) { return combine(a, b, 1); }
    friend Series operator-(const Series& a, const Series& b) { return combine(a, b, -1); }

    friend Series operator*(const Series& a, const Series& b) {
        check_var(a, b);
        const long va = a.valuation(), vb = b.valuation();
        const long prec = std::min(a.prec_ + vb, b.prec_ + va);
        if (a.is_zero() || b.is_zero()) return zero(a.var_, prec);
        const long lo = va + vb;
        if (prec < lo) return zero(a.var_, prec);
        std::vector<Scalar> c(prec - lo + 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            const long ei = a.low_ + static_cast<long>(i);
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                const long e = ei + b.low_ + static_cast<long>(j);
                if (e > prec) break;
                c[e - lo] += a.c_[i] * b.c_[j];
            }
        }
        return Series(a.var_, lo, std::move(c), prec);
    }

    friend Series operator*(const Scalar& s, const Series& a) {
        std::vector<Scalar> c = a.c_;
        for (auto& x : c) x *= s;
        return Series(a.var_, a.low_, std::move(c), a.prec_);
    }
    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

    // Adds s x^k at the same precision.
    Series plus_monomial(long k, const Scalar& s) const {
        return *this + monomial(var_, k, s, std::max(prec_, k));
    }

    Series inverse() const {
        if (is_zero()) throw ContractError("series inverse: leading coefficient is not invertible");
        const long v = low_;
        const long rel = prec_ - v;
        // a = a_v x^v (1 + t), 1/a = x^{-v}/a_v * sum (-t)^j; solved coefficientwise.
        std::vector<Scalar> inv(rel + 1, Scalar(0));
        const Scalar a0 = c_[0];
        inv[0] = Scalar(1) / a0;
        for (long k = 1; k <= rel; ++k) {
            Scalar s = 0;
            for (long j = 1; j <= k && j < static_cast<long>(c_.size()); ++j) s += c_[j] * inv[k - j];
            inv[k] = -s / a0;
        }
        return Series(var_, -v, std::move(inv), -v + rel);
    }

    // Derivative in the variable itself.
    Series derivative_in_var() const {
        std::vector<Scalar> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * Scalar(low_ + static_cast<long>(i));
        return Series(var_, low_ - 1, std::move(c), prec_ - 1);
    }

    // d/dz. For the variable w = 1/z this is -w^2 d/dw.
    Series derivative() const {
        if (var_ == Variable::z) return derivative_in_var();
        std::vector<Scalar> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i] * Scalar(low_ + static_cast<long>(i));
        return Series(var_, low_ + 1, std::move(c), prec_ + 1);
    }

    // x -> t x.
    Series scale_argument(const Scalar& t) const {
        std::vector<Scalar> c = c_;
        Scalar tk = pow(t, low_);
        for (auto& x : c) {
            x *= tk;
            tk *= t;
        }
        return Series(var_, low_, std::move(c), prec_);
    }

    long first_difference(const Series& other, long upto) const {
        for (long k = std::min(low(), other.low()); k <= upto; ++k)
            if (coeff(k) != other.coeff(k)) return k;
        return std::numeric_limits<long>::max();
    }

    // Equal on every exponent known in both.
    bool agrees_with(const Series& other) const {
        if (var_ != other.var_) return false;
        return first_difference(other, std::min(prec_, other.prec_)) == std::numeric_limits<long>::max();
    }

private:
    static void check_var(const Series& a, const Series& b) {
        require(a.var_ == b.var_, "series in different variables");
    }

    static Series combine(const Series& a, const Series& b, int sign) {
        check_var(a, b);
        const long prec = std::min(a.prec_, b.prec_);
        const long lo = std::min(a.low(), b.low());
        if (prec < lo) return zero(a.var_, prec);
        std::vector<Scalar> c(prec - lo + 1, Scalar(0));
        for (long k = lo; k <= prec; ++k) {
            if (k >= a.low_ && k < a.low_ + static_cast<long>(a.c_.size())) c[k - lo] += a.c_[k - a.low_];
            if (k >= b.low_ && k < b.low_ + static_cast<long>(b.c_.size())) {
                if (sign > 0) c[k - lo] += b.c_[k - b.low_];
                else c[k - lo] -= b.c_[k - b.low_];
            }
        }
        return Series(a.var_, lo, std::move(c), prec);
    }

    void normalize() {
        if (prec_ < low_) c_.clear();
        long drop = static_cast<long>(c_.size()) - 1 - (prec_ - low_);
        if (drop > 0) c_.resize(c_.size() - drop);
        std::size_t first = 0;
        while (first < c_.size() && c_[first] == 0) ++first;
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
        low_ += static_cast<long>(first);
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) low_ = 0;
    }

    Variable var_ = Variable::inverse_z;
    long low_ = 0;
    long prec_ = 0;
    std::vector<Scalar> c_;
};

// outer(u) with u = inner (outer in z) or u = 1/inner (outer in 1/z); the
// substituted quantity must have positive valuation. Result is in inner's variable.
inline Series compose(const Series& outer, const Series& inner) {
    const Series u = outer.var() == Variable::z ? inner : inner.inverse();
    const long v = u.valuation();
    require(v >= 1, "composition requires the substituted series to vanish at the expansion point");
    long cap = (outer.precision() + 1) * v - 1;
    const long rel = u.precision() - v;
    for (long k = outer.low(); k <= outer.high(); ++k)
        if (k != 0 && outer.coeff(k) != 0) cap = std::min(cap, k * v + rel);
    Series acc = Series::zero(inner.var(), cap);
    if (outer.is_zero()) return acc;
    const long lo = outer.low(), hi = outer.high();
    if (lo <= 0 && hi >= 0 && outer.coeff(0) != 0) acc = acc.plus_monomial(0, outer.coeff(0));
    if (hi >= 1) {
        Series pw = u.truncated(cap);
        for (long k = 1; k <= hi; ++k) {
            if (k > 1) pw = (pw * u).truncated(cap);
            if (k >= lo && outer.coeff(k) != 0) acc = acc + outer.coeff(k) * pw;
        }
    }
    if (lo <= -1) {
        const Series ui = u.inverse();
        Series pw = ui.truncated(cap);
        for (long k = -1; k >= lo; --k) {
            if (k < -1) pw = (pw * ui).truncated(cap);
            if (k <= hi && outer.coeff(k) != 0) acc = acc + outer.coeff(k) * pw;
        }
    }
    return acc.truncated(cap);
}

// r(G) for r in z without pole and G Cauchy-type.
inline Series compose_z_into_cauchy(const Series& r, const Series& g) {
    require(r.var() == Variable::z && g.var() == Variable::inverse_z, "compose_z_into_cauchy variable mismatch");
    require(r.is_zero() || r.low() >= 0, "compose_z_into_cauchy requires r without pole");
    return compose(r, g);
}

// Power-series reversion by Lagrange inversion: f = x + a_2 x^2 + ... known
// through x^P, returns g with f(g(u)) = u through u^P. [u^n] g = (1/n)[x^{n-1}] (x/f)^n.
inline Series reversion(const Series& f) {
    require(f.valuation() == 1 && f.coeff(1) == 1, "reversion requires f = x + O(x^2)");
    const long P = f.precision();
    Series xf = (Series::monomial(f.var(), 1, 1, P + 1) / f);  // x/f, known through x^{P-1}
    std::vector<Scalar> c;
    Series pw = Series::monomial(f.var(), 0, 1, xf.precision());
    for (long n = 1; n <= P; ++n) {
        pw = pw * xf;
        c.push_back(pw.coeff(n - 1) / Scalar(n));
    }
    return Series(f.var(), 1, std::move(c), P);
}

// ---------------------------------------------------------------------------
// Transforms

// G = sum_{n=0}^N m_n z^{-n-1}, m_0 = 1.
inline Series cauchy_transform(const MomentSeq& m, int N) {
    require(N >= 0 && static_cast<int>(m.size()) >= N, "moment sequence shorter than N");
    std::vector<Scalar> c{Scalar(1)};
    for (int n = 1; n <= N; ++n) c.push_back(m[n - 1]);
    return Series(Variable::inverse_z, 1, std::move(c), N + 1);
}

// G_{mu'} = sum_{n=1}^N m'_n z^{-n-1} (total mass zero).
inline Series inf_cauchy_transform(const MomentSeq& mprime, int N) {
    require(N >= 0 && static_cast<int>(mprime.size()) >= N, "moment sequence shorter than N");
    std::vector<Scalar> c{Scalar(0)};
    for (int n = 1; n <= N; ++n) c.push_back(mprime[n - 1]);
    return Series(Variable::inverse_z, 1, std::move(c), N + 1);
}

// Reads z^{-n-1}, n = 1..N.
inline MomentSeq cauchy_moments(const Series& g, int N) {
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = g.cauchy_coeff(n);
    return m;
}

// R = sum_{n=1}^N r_n z^{n-1}.
inline Series r_series(const CumulantSeq& r, int N) {
    require(static_cast<int>(r.size()) >= N, "cumulant sequence shorter than N");
    std::vector<Scalar> c(r.begin(), r.begin() + N);
    return Series(Variable::z, 0, std::move(c), N - 1);
}

// Reads z^{n-1}, n = 1..N.
inline CumulantSeq z_coeffs(const Series& s, int N) {
    CumulantSeq r(N);
    for (int n = 1; n <= N; ++n) r[n - 1] = s.z_coeff(n);
    return r;
}

// K = 1/z + R.
inline Series k_series(const CumulantSeq& r, int N) {
    return r_series(r, N).plus_monomial(-1, 1);
}

// K with K(G(z)) = z: G as a series g(w) = w + m_1 w^2 + ... is reverted and
// K(u) = 1/g^{<-1>}(u).
inline Series k_from_moments(const MomentSeq& m, int N) {
    Series g = cauchy_transform(m, N);
    Series gr = reversion(Series(Variable::z, g.low(), [&] {
        std::vector<Scalar> c;
        for (long k = g.low(); k <= g.precision(); ++k) c.push_back(g.coeff(k));
        return c;
    }(), g.precision()));
    return gr.inverse();
}

inline CumulantSeq free_cumulants_series(const MomentSeq& m, int N) {
    Series k = k_from_moments(m, N);
    return z_coeffs(k, N);
}

// Inverse of k_from_moments: reverts 1/K(u) = u/(1 + sum r_n u^n).
inline MomentSeq moments_from_k(const Series& k, int N) {
    require(k.var() == Variable::z && k.pole() == 1, "moments_from_k expects K = 1/z + R");
    Series w = k.inverse().truncated(N + 1);
    Series g = reversion(w);
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = g.coeff(n + 1);
    return m;
}

inline MomentSeq free_moments_series(const CumulantSeq& r, int N) { return moments_from_k(k_series(r, N), N); }

// H = -F''/(2F') with F = 1/G.
inline Series h_transform_analytic(const Series& g) {
    require(g.var() == Variable::inverse_z && g.cauchy_coeff(0) == 1, "h_transform expects a probability Cauchy transform");
    Series f = g.inverse();
    Series f1 = f.derivative();
    Series f2 = f1.derivative();
    return frac(-1, 2) * (f2 / f1);
}

// H = G'/G - G''/(2G').
inline Series h_transform_from_g(const Series& g) {
    Series g1 = g.derivative();
    Series g2 = g1.derivative();
    return g1 / g - frac(1, 2) * (g2 / g1);
}

// h_n = (n/2) sum_{t+s=n} sum_{sigma in S_NC(t,s)} r_sigma/(ts), returned for n = 1..N (h_1 = 0).
inline std::vector<Scalar> h_coeffs_combinatorial(const CumulantSeq& r, int N) {
    require_size(N <= 10, "h_coeffs_combinatorial supports N <= 10");
    require(static_cast<int>(r.size()) >= N, "cumulant sequence shorter than N");
    std::vector<Scalar> h(N, Scalar(0));
    for (int n = 2; n <= N; ++n) {
        Scalar s = 0;
        for (int t = 1; t < n; ++t)
            for (const auto& a : annular_table(t, n - t))
                s += detail::block_product(a.sigma_sizes, r) / Scalar(t * (n - t));
        h[n - 1] = frac(n, 2) * s;
    }
    return h;
}

// H as a Cauchy-type series from its coefficients h_1..h_N.
inline Series h_series(const std::vector<Scalar>& h, int N) { return inf_cauchy_transform(h, N); }

// -G'/G.
inline Series markov_krein_inverse(const Series& g) {
    require(g.var() == Variable::inverse_z, "markov_krein_inverse expects a Cauchy-type series");
    return -(g.derivative() / g);
}

// theta = G/(G - 1/z); leading term z/m_1.
inline Series theta(const Series& g) {
    require(g.var() == Variable::inverse_z, "theta expects a Cauchy-type series");
    if (g.cauchy_coeff(1) == 0) throw ContractError("theta requires m_1 != 0");
    Series d = g - Series::monomial(Variable::inverse_z, 1, 1, g.precision());
    return g / d;
}

// Finitely supported signed measure sum_j w_j delta_{x_j}.
struct AtomicMeasure {
    std::vector<std::pair<Scalar, Scalar>> atoms;  // (weight, location)

    MomentSeq moments(int N) const {
        MomentSeq m(N, Scalar(0));
        for (const auto& [wt, x] : atoms) {
            Scalar p = 1;
            for (int n = 1; n <= N; ++n) {
                p *= x;
                m[n - 1] += wt * p;
            }
        }
        return m;
    }
    Scalar mass() const {
        Scalar s = 0;
        for (const auto& a : atoms) s += a.first;
        return s;
    }

    // sum_j w_j/(omega - x_j), for omega with a nonzero z^1 term.
    Series cauchy_at(const Series& omega) const {
        require(omega.var() == Variable::inverse_z && omega.valuation() == -1,
                "atomic Cauchy transform needs an argument growing like z");
        Series acc = Series::zero(Variable::inverse_z, std::numeric_limits<long>::max() / 4);
        for (const auto& [wt, x] : atoms) acc = acc + wt * omega.plus_monomial(0, -x).inverse();
        return acc;
    }
};

// omega_1 = K_mu o G_{mu boxplus nu}, omega_2 = K_nu o G_{mu boxplus nu}.
inline std::pair<Series, Series> subordination_add(const MomentSeq& mu, const MomentSeq& nu, int N) {
    require_size(N <= 10, "subordination_add supports N <= 10");
    CumulantSeq rm = free_cumulants_series(mu, N), rn = free_cumulants_series(nu, N), rs(N);
    for (int n = 0; n < N; ++n) rs[n] = rm[n] + rn[n];
    Series g = cauchy_transform(free_moments_series(rs, N), N);
    return {compose(k_series(rm, N), g), compose(k_series(rn, N), g)};
}

}  // namespace ffinf
