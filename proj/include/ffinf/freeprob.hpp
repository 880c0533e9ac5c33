#pragma once

// Laws described by moments and free cumulants, free additive and
// multiplicative convolution, infinitesimal laws and their convolutions.

#include "combinat.hpp"
#include "poly.hpp"
#include "series.hpp"

#include <vector>

namespace ffinf {

namespace detail {

// sum over blocks V of du_{|V|} * prod_{W != V} u_{|W|}
template <class Sizes>
Scalar derivation_product(const Sizes& sizes, const std::vector<Scalar>& u, const std::vector<Scalar>& du) {
    Scalar total = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (du[sizes[i] - 1] == 0) continue;
        Scalar p = du[sizes[i] - 1];
        for (std::size_t j = 0; j < sizes.size() && p != 0; ++j)
            if (j != i) p *= u[sizes[j] - 1];
        total += p;
    }
    return total;
}

inline void require_len(const std::vector<Scalar>& v, int N, const char* what) {
    require(static_cast<int>(v.size()) >= N, std::string(what) + " shorter than the order");
}

}  // namespace detail

// m_n = sum_{pi in NC(n)} r_pi
inline MomentSeq nc_moments_from_cumulants(const CumulantSeq& r, int N) {
    detail::require_len(r, N, "cumulant sequence");
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) s += detail::block_product(t.sizes, r);
        m[n - 1] = s;
    }
    return m;
}

// r_n = sum_{pi in NC(n)} m_pi Moeb(pi, 1_n)
inline CumulantSeq nc_cumulants_from_moments(const MomentSeq& m, int N) {
    detail::require_len(m, N, "moment sequence");
    CumulantSeq r(N);
    for (int n = 1; n <= N; ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) s += Scalar(t.mobius_to_top) * detail::block_product(t.sizes, m);
        r[n - 1] = s;
    }
    return r;
}

class Law {
public:
    Law() = default;

    static Law from_moments(MomentSeq m) {
        Law l;
        l.r_ = nc_cumulants_from_moments(m, static_cast<int>(m.size()));
        l.m_ = std::move(m);
        return l;
    }
    static Law from_cumulants(CumulantSeq r) {
        Law l;
        l.m_ = nc_moments_from_cumulants(r, static_cast<int>(r.size()));
        l.r_ = std::move(r);
        return l;
    }

    int order() const { return static_cast<int>(m_.size()); }
    const MomentSeq& moments() const { return m_; }
    const CumulantSeq& cumulants() const { return r_; }
    const Scalar& m(int n) const { return m_[n - 1]; }
    const Scalar& r(int n) const { return r_[n - 1]; }

    Series cauchy() const { return cauchy_transform(m_, order()); }
    Series k() const { return k_series(r_, order()); }

    Law truncated(int N) const {
        require(N <= order(), "cannot extend a law by truncation");
        return from_cumulants(CumulantSeq(r_.begin(), r_.begin() + N));
    }

    friend bool operator==(const Law& a, const Law& b) { return a.m_ == b.m_ && a.r_ == b.r_; }

private:
    MomentSeq m_;
    CumulantSeq r_;
};

inline Law dirac(const Scalar& a, int N) {
    CumulantSeq r(N, Scalar(0));
    r[0] = a;
    return Law::from_cumulants(r);
}

inline Law semicircle(int N) {
    CumulantSeq r(N, Scalar(0));
    if (N >= 2) r[1] = 1;
    return Law::from_cumulants(r);
}

inline Law marchenko_pastur(int N) { return Law::from_cumulants(CumulantSeq(N, Scalar(1))); }

inline void require_same_order(const Law& a, const Law& b) {
    require(a.order() == b.order(), "laws of different orders");
}

inline Law boxplus(const Law& a, const Law& b) {
    require_same_order(a, b);
    CumulantSeq r(a.order());
    for (int n = 1; n <= a.order(); ++n) r[n - 1] = a.r(n) + b.r(n);
    return Law::from_cumulants(r);
}

inline Law boxtimes(const Law& a, const Law& b) {
    require_same_order(a, b);
    require_size(a.order() <= 10, "boxtimes supports N <= 10");
    CumulantSeq r(a.order());
    for (int n = 1; n <= a.order(); ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n))
            s += detail::block_product(t.sizes, a.cumulants()) * detail::block_product(t.kreweras_sizes, b.cumulants());
        r[n - 1] = s;
    }
    return Law::from_cumulants(r);
}

// m'_n = sum_{NC(n)} sum_V r'_{|V|} r_{pi \ V}
inline MomentSeq inf_moments_from_inf_cumulants(const Law& base, const CumulantSeq& rprime) {
    const int N = base.order();
    detail::require_len(rprime, N, "infinitesimal cumulant sequence");
    MomentSeq mp(N);
    for (int n = 1; n <= N; ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) s += detail::derivation_product(t.sizes, base.cumulants(), rprime);
        mp[n - 1] = s;
    }
    return mp;
}

// r'_n = sum_{NC(n)} Moeb(pi, 1_n) sum_V m'_{|V|} m_{pi \ V}
inline CumulantSeq inf_cumulants_from_inf_moments(const Law& base, const MomentSeq& mprime) {
    const int N = base.order();
    detail::require_len(mprime, N, "infinitesimal moment sequence");
    CumulantSeq rp(N);
    for (int n = 1; n <= N; ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n))
            s += Scalar(t.mobius_to_top) * detail::derivation_product(t.sizes, base.moments(), mprime);
        rp[n - 1] = s;
    }
    return rp;
}

// G_{mu'} = -(R^inf o G) G'
inline Series inf_cauchy_from_rinf(const Law& base, const CumulantSeq& rprime) {
    const int N = base.order();
    Series g = base.cauchy();
    return -(compose_z_into_cauchy(r_series(rprime, N), g) * g.derivative());
}

// R^inf = -(G_{mu'} o K) K'
inline Series rinf_from_inf_cauchy(const Law& base, const Series& gprime) {
    Series k = base.k();
    return -(compose(gprime, k) * k.derivative());
}

class InfLaw {
public:
    InfLaw() = default;

    static InfLaw from_inf_moments(Law base, MomentSeq mprime) {
        InfLaw l;
        l.rprime_ = inf_cumulants_from_inf_moments(base, mprime);
        l.mprime_ = std::move(mprime);
        l.mprime_.resize(base.order());
        l.base_ = std::move(base);
        return l;
    }
    static InfLaw from_inf_cumulants(Law base, CumulantSeq rprime) {
        InfLaw l;
        l.mprime_ = inf_moments_from_inf_cumulants(base, rprime);
        l.rprime_ = std::move(rprime);
        l.rprime_.resize(base.order());
        l.base_ = std::move(base);
        return l;
    }

    int order() const { return base_.order(); }
    const Law& base() const { return base_; }
    const MomentSeq& inf_moments() const { return mprime_; }
    const CumulantSeq& inf_cumulants() const { return rprime_; }
    Series inf_cauchy() const { return inf_cauchy_transform(mprime_, order()); }

    friend bool operator==(const InfLaw& a, const InfLaw& b) {
        return a.base_ == b.base_ && a.mprime_ == b.mprime_ && a.rprime_ == b.rprime_;
    }

private:
    Law base_;
    MomentSeq mprime_;
    CumulantSeq rprime_;
};

inline InfLaw inf_transform_from_rprime(const Law& base, const CumulantSeq& rprime) {
    return InfLaw::from_inf_cumulants(base, rprime);
}
inline InfLaw inf_transform_from_mprime(const Law& base, const MomentSeq& mprime) {
    return InfLaw::from_inf_moments(base, mprime);
}

inline InfLaw boxplus_B(const InfLaw& a, const InfLaw& b) {
    require(a.order() == b.order(), "infinitesimal laws of different orders");
    CumulantSeq rp(a.order());
    for (int n = 0; n < a.order(); ++n) rp[n] = a.inf_cumulants()[n] + b.inf_cumulants()[n];
    return InfLaw::from_inf_cumulants(boxplus(a.base(), b.base()), rp);
}

// r'_n(gamma) = sum_{NC(n)} ( sum_V r'_{|V|}(mu) r_{pi\V}(mu) r_{Kr pi}(nu)
//                           + sum_{W in Kr pi} r_pi(mu) r'_{|W|}(nu) r_{Kr pi \ W}(nu) )
inline CumulantSeq boxtimes_B_inf_cumulants(const InfLaw& a, const InfLaw& b) {
    require(a.order() == b.order(), "infinitesimal laws of different orders");
    require_size(a.order() <= 10, "boxtimes_B supports N <= 10");
    const auto& rm = a.base().cumulants();
    const auto& rn = b.base().cumulants();
    CumulantSeq rp(a.order());
    for (int n = 1; n <= a.order(); ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) {
            s += detail::derivation_product(t.sizes, rm, a.inf_cumulants()) * detail::block_product(t.kreweras_sizes, rn);
            s += detail::block_product(t.sizes, rm) * detail::derivation_product(t.kreweras_sizes, rn, b.inf_cumulants());
        }
        rp[n - 1] = s;
    }
    return rp;
}

// m_n(gamma') = sum_{NC(n)} ( sum_V m'_{|V|}(mu) m_{pi\V}(mu) r_{Kr pi}(nu)
//                           + sum_{W in Kr pi} m_pi(mu) r'_{|W|}(nu) r_{Kr pi \ W}(nu) )
inline MomentSeq boxtimes_B_inf_moments(const InfLaw& a, const InfLaw& b) {
    require(a.order() == b.order(), "infinitesimal laws of different orders");
    require_size(a.order() <= 10, "boxtimes_B supports N <= 10");
    const auto& mm = a.base().moments();
    const auto& rn = b.base().cumulants();
    MomentSeq mp(a.order());
    for (int n = 1; n <= a.order(); ++n) {
        Scalar s = 0;
        for (const auto& t : nc_table(n)) {
            s += detail::derivation_product(t.sizes, mm, a.inf_moments()) * detail::block_product(t.kreweras_sizes, rn);
            s += detail::block_product(t.sizes, mm) * detail::derivation_product(t.kreweras_sizes, rn, b.inf_cumulants());
        }
        mp[n - 1] = s;
    }
    return mp;
}

// Both routes are evaluated; they must produce the same infinitesimal law.
inline InfLaw boxtimes_B(const InfLaw& a, const InfLaw& b) {
    Law base = boxtimes(a.base(), b.base());
    InfLaw by_cumulants = InfLaw::from_inf_cumulants(base, boxtimes_B_inf_cumulants(a, b));
    InfLaw by_moments = InfLaw::from_inf_moments(base, boxtimes_B_inf_moments(a, b));
    if (!(by_cumulants == by_moments))
        throw ConsistencyError("boxtimes_B: cumulant and moment routes disagree");
    return by_cumulants;
}

// m_n(mu') + sum over nonempty S of m_{Kr^{-1}(S u 0)}(mu) r'_{|S|}(nu), for nu = delta_1.
inline MomentSeq boxtimes_B_delta_one_cyclic(const InfLaw& a, const CumulantSeq& rprime_nu) {
    const int N = a.order();
    require_size(N <= 12, "cyclic interval sums support N <= 12");
    MomentSeq mp(N);
    for (int n = 1; n <= N; ++n) {
        Scalar s = a.inf_moments()[n - 1];
        for (const auto& p : enum_cyclic_intervals(n))
            s += detail::block_product(p.block_sizes(), a.base().moments()) * rprime_nu[p.size() - 1];
        mp[n - 1] = s;
    }
    return mp;
}

}  // namespace ffinf
