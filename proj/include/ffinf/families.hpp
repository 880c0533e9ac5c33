#pragma once

// Polynomial families with known limiting data, and a registry by name.

#include "finconv.hpp"
#include "infin.hpp"

#include <map>
#include <sstream>

namespace ffinf {

// Order of the limiting laws attached to built-in families.
inline constexpr int kFamilyOrder = 10;

// Finite free cumulants (0, 1, 0, ..., 0).
inline MonicPoly hermite(long d) {
    if (d < 2) throw ContractError("hermite requires d >= 2");
    CumulantSeq k(d, Scalar(0));
    k[1] = 1;
    return poly_from_finite_cumulants(d, k);
}

// atilde_i = (d)_i / d^i; every finite free cumulant equals 1.
inline MonicPoly laguerre(long d) {
    require(d >= 1, "laguerre requires d >= 1");
    std::vector<Scalar> a(d + 1);
    a[0] = 1;
    for (long i = 1; i <= d; ++i) a[i] = a[i - 1] * frac(d - i + 1, d);
    return MonicPoly(a);
}

// atilde_i = d^i / (d)_i, so that laguerre_inverse(d) boxtimes_d laguerre(d) = (x-1)^d.
inline MonicPoly laguerre_inverse(long d) {
    require(d >= 1, "laguerre_inverse requires d >= 1");
    std::vector<Scalar> a(d + 1);
    a[0] = 1;
    for (long i = 1; i <= d; ++i) a[i] = a[i - 1] * frac(d, d - i + 1);
    return MonicPoly(a);
}

// (x-1)^i (x+1)^i, degree 2i.
inline MonicPoly bernoulli_pair(long i) {
    require(i >= 1, "bernoulli_pair requires i >= 1");
    std::vector<Scalar> c(2 * i + 1, Scalar(0));  // c[k] multiplies x^{2i-k}
    for (long k = 0; k <= i; ++k) c[2 * k] = Scalar(binomial(i, k)) * ((k % 2) ? Scalar(-1) : Scalar(1));
    return MonicPoly::from_ordinary(c);
}

// (x-alpha)^{d-s} (x-alpha_1)...(x-alpha_s)
inline MonicPoly dirac_perturbation_poly(const Scalar& alpha, const std::vector<Scalar>& atoms, long d) {
    const long s = static_cast<long>(atoms.size());
    if (d < s || d < 1) throw ContractError("dirac_perturbation requires d >= number of atoms");
    std::vector<Scalar> c(d - s + 1);
    Scalar pw = 1;
    for (long k = 0; k <= d - s; ++k) {  // binomial expansion of (x - alpha)^{d-s}
        c[k] = Scalar(binomial(d - s, k)) * pw;
        pw *= -alpha;
    }
    for (const auto& a : atoms) {
        c.push_back(Scalar(0));
        for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= a * c[k - 1];
    }
    return MonicPoly::from_ordinary(c);
}

inline Family hermite_family() {
    Family f;
    f.name = "hermite";
    f.generator = hermite;
    f.min_degree = 2;
    f.limit = semicircle(kFamilyOrder);
    f.rhat = std::vector<Scalar>(kFamilyOrder, Scalar(0));
    return f;
}

inline Family laguerre_family() {
    Family f;
    f.name = "laguerre";
    f.generator = laguerre;
    f.limit = marchenko_pastur(kFamilyOrder);
    f.rhat = std::vector<Scalar>(kFamilyOrder, Scalar(0));
    return f;
}

// Moments (1, 0, 0, ...) for every degree; the limiting moment sequence is not
// that of a probability measure but the calculus applies formally.
inline Family laguerre_inverse_family() {
    Family f;
    f.name = "laguerre_inverse";
    f.generator = laguerre_inverse;
    MomentSeq m(kFamilyOrder, Scalar(0));
    m[0] = 1;
    f.limit = Law::from_moments(m);
    f.mprime = MomentSeq(kFamilyOrder, Scalar(0));
    return f;
}

// Defined on even degrees only.
inline Family bernoulli_family() {
    Family f;
    f.name = "bernoulli";
    f.generator = [](long d) {
        if (d % 2) throw ContractError("bernoulli family is defined on even degrees");
        return bernoulli_pair(d / 2);
    };
    f.min_degree = 2;
    MomentSeq m(kFamilyOrder);
    for (int n = 1; n <= kFamilyOrder; ++n) m[n - 1] = (n % 2) ? 0 : 1;
    f.limit = Law::from_moments(m);
    f.mprime = MomentSeq(kFamilyOrder, Scalar(0));
    return f;
}

// Infinitesimal law (delta_alpha, -s delta_alpha + sum_k delta_{alpha_k}).
inline Family dirac_perturbation(const Scalar& alpha, const std::vector<Scalar>& atoms) {
    Family f;
    f.name = "dirac_perturbation";
    f.generator = [alpha, atoms](long d) { return dirac_perturbation_poly(alpha, atoms, d); };
    f.min_degree = std::max<long>(1, static_cast<long>(atoms.size()));
    f.limit = dirac(alpha, kFamilyOrder);
    std::vector<Scalar> rhat(kFamilyOrder, Scalar(0)), mprime(kFamilyOrder, Scalar(0));
    const Scalar s(static_cast<long>(atoms.size()));
    for (int n = 1; n <= kFamilyOrder; ++n) {
        mprime[n - 1] = -s * pow(alpha, n);
        for (const auto& a : atoms) {
            rhat[n - 1] += pow(a - alpha, n);
            mprime[n - 1] += pow(a, n);
        }
    }
    f.rhat = rhat;
    f.mprime = mprime;
    return f;
}

// Differentiating s times: the derived family at degree d is the s-th
// derivative of f at degree d + s; tau is the limit of the series whose
// coefficients are (d - s) m_n(p_d^{(s)}) - d m_n(mu).
struct PrincipalMinorFlow {
    Family derived;
    Series tau;  // G_{mu'} + s G'_mu / G_mu
    long s = 0;
    Family base;
};

inline PrincipalMinorFlow principal_minor_flow(const Family& f, long s) {
    if (s < 0) throw ContractError("principal_minor_flow requires s >= 0");
    const int N = f.limit.order();
    auto mp = f.predicted_mprime(N);
    if (!mp) throw ContractError("principal_minor_flow requires a family with known infinitesimal data");
    auto rh = f.predicted_rhat(N);
    Series g = f.limit.cauchy();
    Series tau = inf_cauchy_transform(*mp, N) + Scalar(s) * (g.derivative() / g);

    PrincipalMinorFlow out;
    out.s = s;
    out.base = f;
    out.tau = tau;
    Family& d = out.derived;
    d.name = f.name + "_minor" + std::to_string(s);
    auto gen = f.generator;
    d.generator = [gen, s](long deg) { return derivative_poly(gen(deg + s), static_cast<int>(s)); };
    d.min_degree = std::max<long>(1, f.min_degree - s);
    d.limit = f.limit;
    // t = 1 and alpha = -s in the repeated-differentiation rule.
    auto rd = repeated_differentiation(FluctLaw{f.limit, *rh}, Scalar(1), Scalar(-s), N);
    d.rhat = rd.fluct.rhat;
    d.mprime = rd.inf.inf_moments();
    return out;
}

// Ladder of (d - s) m_n(p_d^{(s)}) - d m_n(mu) against the coefficients of tau.
inline std::vector<LadderReport> principal_minor_ladder(const PrincipalMinorFlow& flow, int n_max,
                                                        const std::vector<long>& ladder) {
    require(n_max >= 1 && n_max <= flow.base.limit.order(), "n_max out of range");
    detail::check_ladder(ladder, flow.base.min_degree, n_max);
    std::vector<std::vector<Scalar>> deltas;
    for (long d : ladder) {
        if (flow.s >= d) throw ContractError("principal_minor_flow requires s < d");
        MonicPoly p = flow.base.generator(d);
        MomentSeq mq = moments(derivative_poly(p, static_cast<int>(flow.s)), n_max);
        std::vector<Scalar> v(n_max);
        for (int n = 1; n <= n_max; ++n)
            v[n - 1] = Scalar(d - flow.s) * mq[n - 1] - Scalar(d) * flow.base.limit.m(n);
        deltas.push_back(std::move(v));
    }
    return detail::ladder_reports(n_max, ladder, deltas, cauchy_moments(flow.tau, n_max));
}

// Names: hermite, laguerre, laguerre_inverse, bernoulli,
// dirac_perturbation[:alpha[:a1,a2,...]], and <name>@minor<s> for the
// family differentiated s times.
inline std::vector<std::string> family_names() {
    return {"hermite", "laguerre", "laguerre_inverse", "bernoulli", "dirac_perturbation"};
}

inline Family family_by_name(const std::string& text) {
    auto at = text.find("@minor");
    if (at != std::string::npos) {
        long s = 0;
        try {
            s = std::stol(text.substr(at + 6));
        } catch (const std::exception&) {
            throw ParseError("bad minor order in family name: " + text);
        }
        return principal_minor_flow(family_by_name(text.substr(0, at)), s).derived;
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw ParseError("empty family name");
    const std::string& name = parts[0];
    if (name == "dirac_perturbation") {
        if (parts.size() > 3) throw ParseError("dirac_perturbation takes alpha and a comma-separated atom list");
        Scalar alpha = parts.size() >= 2 ? parse_scalar(parts[1]) : Scalar(0);
        std::vector<Scalar> atoms{Scalar(1)};
        if (parts.size() == 3) {
            atoms.clear();
            std::stringstream as(parts[2]);
            for (std::string a; std::getline(as, a, ',');) atoms.push_back(parse_scalar(a));
        }
        return dirac_perturbation(alpha, atoms);
    }
    if (parts.size() != 1) throw ParseError("family takes no parameters: " + name);
    static const std::map<std::string, Family (*)()> fixed{{"hermite", hermite_family},
                                                           {"laguerre", laguerre_family},
                                                           {"laguerre_inverse", laguerre_inverse_family},
                                                           {"bernoulli", bernoulli_family}};
    auto it = fixed.find(name);
    if (it == fixed.end()) throw ParseError("unknown family: " + name);
    return it->second();
}

}  // namespace ffinf
