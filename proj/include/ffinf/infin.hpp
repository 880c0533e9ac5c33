#pragma once

// Cumulant fluctuations, the dictionary between fluctuations and infinitesimal
// moments, the additive and multiplicative fluctuation theorems, the
// subordination identity, repeated differentiation and degree ladders.

#include "finconv.hpp"
#include "freeprob.hpp"
#include "poly.hpp"
#include "series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ffinf {

// (mu, rhat): kappa_n(p_d) = r_n(mu) + rhat_n/d + o(1/d).
struct FluctLaw {
    Law base;
    std::vector<Scalar> rhat;
    int order() const { return base.order(); }
};

namespace detail {

inline Series rhat_series(const std::vector<Scalar>& rhat, int N) { return r_series(rhat, N); }

inline std::vector<Scalar> add_seq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    require(a.size() == b.size(), "sequences of different lengths");
    std::vector<Scalar> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline std::vector<Scalar> sub_seq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    require(a.size() == b.size(), "sequences of different lengths");
    std::vector<Scalar> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

// (n/2) sum_{t+s=n} sum_{S_NC(t,s)} u_sigma v_{Kr(sigma)}/(ts)
inline Scalar annular_kreweras_sum(int n, const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    Scalar s = 0;
    for (int t = 1; t < n; ++t)
        for (const auto& a : annular_table(t, n - t))
            s += block_product(a.sigma_sizes, u) * block_product(a.kreweras_sizes, v) / Scalar(t * (n - t));
    return frac(n, 2) * s;
}

inline void check_agree(const std::vector<Scalar>& a, const std::vector<Scalar>& b, const char* what) {
    if (a != b) throw ConsistencyError(std::string(what) + ": combinatorial and series routes disagree");
}

}  // namespace detail

// m'_n = sum_{NC(n)} sum_V rhat_{|V|} r_{pi\V} - h_n
inline MomentSeq inf_moments_from_fluctuations_comb(const Law& base, const std::vector<Scalar>& rhat) {
    const int N = base.order();
    require_size(N <= 10, "fluctuation dictionary supports N <= 10");
    return detail::sub_seq(inf_moments_from_inf_cumulants(base, rhat), h_coeffs_combinatorial(base.cumulants(), N));
}

// G_{mu'} = -(Rhat o G) G' - H
inline Series inf_cauchy_from_fluctuations(const Law& base, const std::vector<Scalar>& rhat) {
    const int N = base.order();
    Series g = base.cauchy();
    return -(compose_z_into_cauchy(detail::rhat_series(rhat, N), g) * g.derivative()) - h_transform_analytic(g);
}

inline MomentSeq inf_moments_from_fluctuations(const Law& base, const std::vector<Scalar>& rhat) {
    MomentSeq comb = inf_moments_from_fluctuations_comb(base, rhat);
    detail::check_agree(comb, cauchy_moments(inf_cauchy_from_fluctuations(base, rhat), base.order()),
                        "inf_moments_from_fluctuations");
    return comb;
}

// rhat_n = sum_{NC(n)} Moeb(pi, 1_n) sum_V (m' + h)_{|V|} m_{pi\V}
inline std::vector<Scalar> fluctuations_from_inf_moments(const Law& base, const MomentSeq& mprime) {
    const int N = base.order();
    require_size(N <= 10, "fluctuation dictionary supports N <= 10");
    detail::require_len(mprime, N, "infinitesimal moment sequence");
    MomentSeq shifted(mprime.begin(), mprime.begin() + N);
    shifted = detail::add_seq(shifted, h_coeffs_combinatorial(base.cumulants(), N));
    return inf_cumulants_from_inf_moments(base, shifted);
}

// Rhat = R^inf - (H o K) K'
inline Series rhat_from_rinf_via_h(const Law& base, const CumulantSeq& rprime) {
    const int N = base.order();
    Series k = base.k();
    Series hk = compose(h_transform_analytic(base.cauchy()), k) * k.derivative();
    return r_series(rprime, N) - hk;
}

// Rhat = R^inf - K''/(2K') - 1/z
inline Series rhat_from_rinf_via_k(const Law& base, const CumulantSeq& rprime) {
    const int N = base.order();
    Series k = base.k();
    Series k1 = k.derivative();
    Series corr = frac(1, 2) * (k1.derivative() / k1);
    return (r_series(rprime, N) - corr).plus_monomial(-1, -1);
}

inline std::vector<Scalar> rhat_from_rinf(const Law& base, const CumulantSeq& rprime) {
    require_size(base.order() <= 10, "rhat_from_rinf supports N <= 10");
    const int N = base.order();
    Series a = rhat_from_rinf_via_h(base, rprime), b = rhat_from_rinf_via_k(base, rprime);
    require(a.pole() == 0 && b.pole() == 0, "fluctuation series must not have a pole");
    auto ra = z_coeffs(a, N), rb = z_coeffs(b, N);
    detail::check_agree(ra, rb, "rhat_from_rinf");
    return ra;
}

// R^inf = Rhat + K''/(2K') + 1/z
inline CumulantSeq rinf_from_rhat(const Law& base, const std::vector<Scalar>& rhat) {
    require_size(base.order() <= 10, "rinf_from_rhat supports N <= 10");
    const int N = base.order();
    Series k = base.k();
    Series k1 = k.derivative();
    Series s = (r_series(rhat, N) + frac(1, 2) * (k1.derivative() / k1)).plus_monomial(-1, 1);
    return z_coeffs(s, N);
}

struct FluctResult {
    FluctLaw fluct;
    InfLaw inf;
};

inline FluctResult additive_convolve_fluct(const FluctLaw& a, const FluctLaw& b) {
    require(a.order() == b.order(), "fluctuation laws of different orders");
    const int N = a.order();
    Law base = boxplus(a.base, b.base);
    auto rhat = detail::add_seq(a.rhat, b.rhat);
    MomentSeq comb = inf_moments_from_fluctuations_comb(base, rhat);
    Series g = base.cauchy();
    Series g1 = g.derivative();
    Series gs = -(compose_z_into_cauchy(detail::rhat_series(a.rhat, N), g) * g1) -
                (compose_z_into_cauchy(detail::rhat_series(b.rhat, N), g) * g1) - h_transform_analytic(g);
    detail::check_agree(comb, cauchy_moments(gs, N), "additive_convolve_fluct");
    return {{base, rhat}, InfLaw::from_inf_moments(base, comb)};
}

// rhat_n(p boxtimes q) from the Kreweras expansion minus the annular term.
inline std::vector<Scalar> multiplicative_rhat(const FluctLaw& a, const FluctLaw& b) {
    require(a.order() == b.order(), "fluctuation laws of different orders");
    require_size(a.order() <= 8, "multiplicative fluctuations support N <= 8");
    const auto& rm = a.base.cumulants();
    const auto& rn = b.base.cumulants();
    std::vector<Scalar> out(a.order());
    for (int n = 1; n <= a.order(); ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) {
            s += detail::derivation_product(t.sizes, rm, a.rhat) * detail::block_product(t.kreweras_sizes, rn);
            s += detail::block_product(t.sizes, rm) * detail::derivation_product(t.kreweras_sizes, rn, b.rhat);
        }
        out[n - 1] = s - detail::annular_kreweras_sum(n, rm, rn);
    }
    return out;
}

// m'_n(p boxtimes q) from the moment form of the multiplicative theorem.
inline MomentSeq multiplicative_mprime(const FluctLaw& a, const FluctLaw& b) {
    require(a.order() == b.order(), "fluctuation laws of different orders");
    require_size(a.order() <= 8, "multiplicative fluctuations support N <= 8");
    const auto& mm = a.base.moments();
    const auto& rn = b.base.cumulants();
    MomentSeq mp_a = inf_moments_from_fluctuations(a.base, a.rhat);
    MomentSeq out(a.order());
    for (int n = 1; n <= a.order(); ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) {
            s += detail::derivation_product(t.sizes, mm, mp_a) * detail::block_product(t.kreweras_sizes, rn);
            s += detail::block_product(t.sizes, mm) * detail::derivation_product(t.kreweras_sizes, rn, b.rhat);
        }
        out[n - 1] = s - detail::annular_kreweras_sum(n, mm, rn);
    }
    return out;
}

inline FluctResult multiplicative_convolve_fluct(const FluctLaw& a, const FluctLaw& b) {
    Law base = boxtimes(a.base, b.base);
    auto rhat = multiplicative_rhat(a, b);
    MomentSeq direct = multiplicative_mprime(a, b);
    detail::check_agree(direct, inf_moments_from_fluctuations(base, rhat), "multiplicative_convolve_fluct");
    return {{base, rhat}, InfLaw::from_inf_moments(base, direct)};
}

struct SubordinationCheck {
    bool holds;
    Series residual;  // G_{rho'} - (G_{gamma'} + H + omega_1''/(2 omega_1') + omega_2''/(2 omega_2'))
};

// a, b are infinitesimal laws of two polynomial sequences; rho' comes from the
// additive fluctuation theorem and gamma' from boxplus_B.
inline SubordinationCheck subordination_identity_check(const InfLaw& a, const InfLaw& b, int N) {
    require_size(N <= 8, "subordination_identity_check supports N <= 8");
    require(a.order() >= N && b.order() >= N, "infinitesimal laws shorter than N");
    Law ma = a.base().truncated(N), mb = b.base().truncated(N);
    InfLaw ta = InfLaw::from_inf_moments(ma, MomentSeq(a.inf_moments().begin(), a.inf_moments().begin() + N));
    InfLaw tb = InfLaw::from_inf_moments(mb, MomentSeq(b.inf_moments().begin(), b.inf_moments().begin() + N));
    FluctLaw fa{ma, fluctuations_from_inf_moments(ma, ta.inf_moments())};
    FluctLaw fb{mb, fluctuations_from_inf_moments(mb, tb.inf_moments())};
    FluctResult rho = additive_convolve_fluct(fa, fb);
    InfLaw gamma = boxplus_B(ta, tb);
    auto [w1, w2] = subordination_add(ma.moments(), mb.moments(), N);
    auto term = [](const Series& w) {
        Series w1d = w.derivative();
        return frac(1, 2) * (w1d.derivative() / w1d);
    };
    Series rhs = gamma.inf_cauchy() + h_transform_analytic(rho.fluct.base.cauchy()) + term(w1) + term(w2);
    Series res = rho.inf.inf_cauchy() - rhs;
    return {res.is_zero(), res};
}

// Differentiating d - j times with j/d = t + alpha/d + o(1/d).
struct RepeatedDifferentiation {
    FluctLaw fluct;
    InfLaw inf;
};

inline RepeatedDifferentiation repeated_differentiation(const FluctLaw& a, const Scalar& t, const Scalar& alpha, int N) {
    if (t == 0) throw ContractError("repeated_differentiation requires t != 0");
    require(a.order() >= N, "fluctuation law shorter than N");
    require_size(N <= 10, "repeated_differentiation supports N <= 10");
    CumulantSeq rnu(N);
    std::vector<Scalar> rhat(N);
    for (int n = 1; n <= N; ++n) {
        const Scalar& r = a.base.r(n);
        rnu[n - 1] = pow(t, n - 1) * r;
        rhat[n - 1] = alpha * Scalar(n - 1) * (n >= 2 ? pow(t, n - 2) : Scalar(0)) * r + pow(t, n - 1) * a.rhat[n - 1];
    }
    Law nu = Law::from_cumulants(rnu);
    // G_{nu'} = -(alpha/t)(G + G'/G) - Rhat_p(t G) G' - H
    Series g = nu.cauchy();
    Series g1 = g.derivative();
    std::vector<Scalar> rp(a.rhat.begin(), a.rhat.begin() + N);
    Series gnu = -((alpha / t) * (g + g1 / g)) - compose_z_into_cauchy(detail::rhat_series(rp, N), t * g) * g1 -
                 h_transform_analytic(g);
    MomentSeq mprime = cauchy_moments(gnu, N);
    detail::check_agree(mprime, inf_moments_from_fluctuations(nu, rhat), "repeated_differentiation");
    return {{nu, rhat}, InfLaw::from_inf_moments(nu, mprime)};
}

// ---------------------------------------------------------------------------
// Polynomial families and degree ladders

struct Family {
    std::string name;
    std::function<MonicPoly(long)> generator;
    long min_degree = 1;
    Law limit;
    std::optional<std::vector<Scalar>> rhat;    // expected cumulant fluctuations
    std::optional<std::vector<Scalar>> mprime;  // expected infinitesimal moments

    std::optional<std::vector<Scalar>> predicted_mprime(int N) const {
        if (mprime && static_cast<int>(mprime->size()) >= N) return std::vector<Scalar>(mprime->begin(), mprime->begin() + N);
        if (rhat && static_cast<int>(rhat->size()) >= N && limit.order() >= N)
            return inf_moments_from_fluctuations(limit.truncated(N), std::vector<Scalar>(rhat->begin(), rhat->begin() + N));
        return std::nullopt;
    }
    std::optional<std::vector<Scalar>> predicted_rhat(int N) const {
        if (rhat && static_cast<int>(rhat->size()) >= N) return std::vector<Scalar>(rhat->begin(), rhat->begin() + N);
        if (mprime && static_cast<int>(mprime->size()) >= N && limit.order() >= N)
            return fluctuations_from_inf_moments(limit.truncated(N), std::vector<Scalar>(mprime->begin(), mprime->begin() + N));
        return std::nullopt;
    }
};

enum class LadderQuantity { moments, cumulants };

struct LadderReport {
    int n = 0;
    std::vector<std::pair<long, Scalar>> ladder;  // (d, Delta_n(d))
    std::vector<Scalar> richardson;               // R(d_i, d_{i+1}) for consecutive rungs
    Scalar estimate;                              // last Richardson value
    std::optional<Scalar> predicted;
    std::optional<Scalar> abs_error;
};

// R(d1, d2) = (d2 Delta(d2) - d1 Delta(d1))/(d2 - d1)
inline Scalar richardson(long d1, const Scalar& a1, long d2, const Scalar& a2) {
    return (Scalar(d2) * a2 - Scalar(d1) * a1) / Scalar(d2 - d1);
}

namespace detail {

inline std::vector<LadderReport> ladder_reports(int n_max, const std::vector<long>& ladder,
                                                const std::vector<std::vector<Scalar>>& deltas,
                                                const std::optional<std::vector<Scalar>>& predicted) {
    std::vector<LadderReport> out;
    for (int n = 1; n <= n_max; ++n) {
        LadderReport rep;
        rep.n = n;
        for (std::size_t i = 0; i < ladder.size(); ++i) rep.ladder.emplace_back(ladder[i], deltas[i][n - 1]);
        for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
            rep.richardson.push_back(richardson(ladder[i], deltas[i][n - 1], ladder[i + 1], deltas[i + 1][n - 1]));
        rep.estimate = rep.richardson.back();
        if (predicted) {
            rep.predicted = (*predicted)[n - 1];
            rep.abs_error = abs(rep.estimate - *rep.predicted);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

inline void check_ladder(const std::vector<long>& ladder, long min_degree, int n_max) {
    if (ladder.size() < 2) throw ContractError("ladder needs at least two degrees");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        require(ladder[i] >= n_max && ladder[i] >= min_degree, "ladder degree too small");
        if (i) require(ladder[i] > ladder[i - 1], "ladder must be strictly increasing");
    }
}

}  // namespace detail

// Delta_n(d) = d (m_n(p_d) - m_n(mu)) (or the same with kappa_n and r_n),
// exact per degree, followed by two-point Richardson along the ladder.
inline std::vector<LadderReport> extrapolate_family(const Family& f, int n_max, const std::vector<long>& ladder,
                                                    LadderQuantity q = LadderQuantity::moments) {
    require(n_max >= 1, "n_max must be positive");
    detail::check_ladder(ladder, f.min_degree, n_max);
    require(f.limit.order() >= n_max, "family limit law shorter than n_max");
    std::vector<std::vector<Scalar>> deltas;
    for (long d : ladder) {
        MonicPoly p = f.generator(d);
        require(p.degree() == d, "family generator returned the wrong degree");
        std::vector<Scalar> v;
        if (q == LadderQuantity::moments) v = moments(p, n_max);
        else v = finite_cumulants_from_coeffs(p, n_max);
        const auto& lim = q == LadderQuantity::moments ? f.limit.moments() : f.limit.cumulants();
        for (int n = 0; n < n_max; ++n) v[n] = Scalar(d) * (v[n] - lim[n]);
        deltas.push_back(std::move(v));
    }
    auto pred = q == LadderQuantity::moments ? f.predicted_mprime(n_max) : f.predicted_rhat(n_max);
    return detail::ladder_reports(n_max, ladder, deltas, pred);
}

}  // namespace ffinf
