#include "ffinf/families.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ffinf;

namespace {

MomentSeq seq(std::initializer_list<long> v) {
    MomentSeq m;
    for (long x : v) m.push_back(x);
    return m;
}

Law bernoulli_law(int N) {
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = n % 2 ? 0 : 1;
    return Law::from_moments(m);
}

// symmetric Bernoulli with atoms +-c
MomentSeq two_point(const Scalar& c, int N) {
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = n % 2 ? Scalar(0) : pow(c, n);
    return m;
}

MomentSeq arcsine2(int N) {
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = n % 2 ? Scalar(0) : Scalar(binomial(n, n / 2));
    return m;
}

FluctLaw random_fluct(oracle::Rng& rng, int N) {
    return {Law::from_cumulants(rng.rationals(N)), rng.rationals(N)};
}

}  // namespace

TEST_CASE("fluctuation dictionary at low order", "[infin]") {
    oracle::Rng rng(51);
    Law base = Law::from_cumulants(rng.rationals(4));
    auto rhat = rng.rationals(4);
    auto mp = inf_moments_from_fluctuations(base, rhat);
    CHECK(mp[0] == rhat[0]);
    CHECK(mp[1] == rhat[1] + 2 * rhat[0] * base.r(1) - base.r(2));
    // semicircle with zero fluctuations: m' = -h
    CHECK(inf_moments_from_fluctuations(semicircle(6), MomentSeq(6, Scalar(0))) == seq({0, -1, 0, -5, 0, -22}));
    CHECK_THROWS_AS(inf_moments_from_fluctuations(semicircle(11), MomentSeq(11, Scalar(0))), SizeLimitError);
}

TEST_CASE("fluctuation dictionary round trips", "[infin]") {
    oracle::Rng rng(52);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_fluct(rng, 8);
        auto mp = inf_moments_from_fluctuations(f.base, f.rhat);  // checks the series route
        CHECK(fluctuations_from_inf_moments(f.base, mp) == f.rhat);
    }
    CHECK(fluctuations_from_inf_moments(dirac(frac(2, 3), 8), MomentSeq(8, Scalar(0))) == MomentSeq(8, Scalar(0)));
}

TEST_CASE("Bernoulli fluctuations match the closed form", "[infin]") {
    // (sqrt(1+4z^2) - 1)/(2z(1+4z^2)) = (1/(2z)) (sqrt(1+4z^2) - 1) (1+4z^2)^{-1}
    const int L = 12;
    oracle::Ps num = oracle::binomial_series(L + 1, 4, 2, frac(1, 2)) - oracle::mono(L + 1, 0);
    oracle::Ps full = num * oracle::binomial_series(L + 1, 4, 2, -1);
    std::vector<Scalar> expect;  // coefficient of z^{n-1} is full.c[n] / 2
    for (int n = 1; n <= 10; ++n) expect.push_back(full.c[n] / 2);
    auto rhat = fluctuations_from_inf_moments(bernoulli_law(10), MomentSeq(10, Scalar(0)));
    CHECK(rhat == expect);
    CHECK(std::vector<Scalar>(rhat.begin(), rhat.begin() + 6) == seq({0, 1, 0, -5, 0, 22}));
}

TEST_CASE("fluctuations from infinitesimal cumulants", "[infin]") {
    oracle::Rng rng(53);
    // H(delta_a) = 0 so rhat = r'
    auto rp = rng.rationals(8);
    CHECK(rhat_from_rinf(dirac(3, 8), rp) == rp);
    // semicircle, r' = 0: -K''/(2K') - 1/z = z + z^3 + z^5 + ...
    CHECK(rhat_from_rinf(semicircle(8), MomentSeq(8, Scalar(0))) == seq({0, 1, 0, 1, 0, 1, 0, 1}));
    for (int trial = 0; trial < 6; ++trial) {
        Law base = Law::from_cumulants(rng.rationals(8));
        auto r = rng.rationals(8);
        auto rhat = rhat_from_rinf(base, r);
        CHECK(rinf_from_rhat(base, rhat) == r);
        // agrees with the moment dictionary
        CHECK(rhat == fluctuations_from_inf_moments(base, inf_moments_from_inf_cumulants(base, r)));
    }
}

TEST_CASE("additive fluctuation theorem", "[infin]") {
    oracle::Rng rng(54);
    for (int trial = 0; trial < 6; ++trial) {
        auto a = random_fluct(rng, 7), b = random_fluct(rng, 7);
        auto res = additive_convolve_fluct(a, b);  // both routes compared inside
        for (int n = 0; n < 7; ++n) CHECK(res.fluct.rhat[n] == a.rhat[n] + b.rhat[n]);
    }
    // zero fluctuations: m' = -h(mu boxplus nu)
    Law mu = Law::from_cumulants(rng.rationals(7)), nu = Law::from_cumulants(rng.rationals(7));
    auto res = additive_convolve_fluct({mu, MomentSeq(7, Scalar(0))}, {nu, MomentSeq(7, Scalar(0))});
    auto h = h_coeffs_combinatorial(boxplus(mu, nu).cumulants(), 7);
    for (int n = 0; n < 7; ++n) CHECK(res.inf.inf_moments()[n] == -h[n]);
    // two perturbations of x^d: moments of rho' add
    auto f1 = dirac_perturbation(0, {5, -1}), f2 = dirac_perturbation(0, {3});
    FluctLaw a{f1.limit.truncated(7), *f1.predicted_rhat(7)}, b{f2.limit.truncated(7), *f2.predicted_rhat(7)};
    auto rho = additive_convolve_fluct(a, b);
    auto m1 = *f1.predicted_mprime(7), m2 = *f2.predicted_mprime(7);
    for (int n = 0; n < 7; ++n) CHECK(rho.inf.inf_moments()[n] == m1[n] + m2[n]);
    // base delta_0 with rhat = (beta^n): a rank-one perturbation at beta
    Scalar beta = frac(3, 2);
    std::vector<Scalar> rb(7);
    for (int n = 1; n <= 7; ++n) rb[n - 1] = pow(beta, n);
    auto f3 = dirac_perturbation(0, {beta});
    CHECK(*f3.predicted_rhat(7) == rb);
    auto rr = additive_convolve_fluct(a, {dirac(0, 7), rb});
    auto m3 = *f3.predicted_mprime(7);
    for (int n = 0; n < 7; ++n) CHECK(rr.inf.inf_moments()[n] == m1[n] + m3[n]);
    CHECK_THROWS_AS(additive_convolve_fluct(a, {dirac(0, 6), MomentSeq(6, Scalar(0))}), ContractError);
}

TEST_CASE("additive fluctuations with nu = delta_0 coincide with boxplus_B", "[infin]") {
    oracle::Rng rng(55);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_fluct(rng, 7);
        auto rb = rng.rationals(7);
        auto res = additive_convolve_fluct(a, {dirac(0, 7), rb});
        InfLaw ia = InfLaw::from_inf_moments(a.base, inf_moments_from_fluctuations(a.base, a.rhat));
        InfLaw ib = InfLaw::from_inf_moments(dirac(0, 7), inf_moments_from_fluctuations(dirac(0, 7), rb));
        CHECK(res.inf == boxplus_B(ia, ib));
    }
}

TEST_CASE("multiplicative fluctuation theorem", "[infin]") {
    oracle::Rng rng(56);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_fluct(rng, 7), b = random_fluct(rng, 7);
        auto res = multiplicative_convolve_fluct(a, b);  // moment and cumulant forms compared inside
        CHECK(res.fluct.base == boxtimes(a.base, b.base));
    }
    auto a = random_fluct(rng, 7);
    // b = (delta_1, 0): unchanged
    CHECK(multiplicative_convolve_fluct(a, {dirac(1, 7), MomentSeq(7, Scalar(0))}).fluct.rhat == a.rhat);
    // b with base delta_0: rhat_n(q) r_1(mu)^n
    auto rb = rng.rationals(7);
    auto r0 = multiplicative_convolve_fluct(a, {dirac(0, 7), rb}).fluct.rhat;
    for (int n = 1; n <= 7; ++n) CHECK(r0[n - 1] == rb[n - 1] * pow(a.base.r(1), n));
    // two rank-one perturbations of (x-1)^d: fluctuations add
    auto f1 = dirac_perturbation(1, {frac(1, 2)}), f2 = dirac_perturbation(1, {3, -2});
    FluctLaw p{f1.limit.truncated(7), *f1.predicted_rhat(7)}, q{f2.limit.truncated(7), *f2.predicted_rhat(7)};
    auto pq = multiplicative_convolve_fluct(p, q).fluct.rhat;
    for (int n = 0; n < 7; ++n) CHECK(pq[n] == p.rhat[n] + q.rhat[n]);
    // nu = MP(1) with zero fluctuations on both sides: rhat = -h(mu)
    Law mu = Law::from_cumulants(rng.rationals(8));
    auto mp = multiplicative_convolve_fluct({mu, MomentSeq(8, Scalar(0))}, {marchenko_pastur(8), MomentSeq(8, Scalar(0))});
    auto h = h_coeffs_combinatorial(mu.cumulants(), 8);
    for (int n = 0; n < 8; ++n) CHECK(mp.fluct.rhat[n] == -h[n]);
    CHECK_THROWS_AS(multiplicative_convolve_fluct(random_fluct(rng, 9), random_fluct(rng, 9)), SizeLimitError);
}

TEST_CASE("multiplicative fluctuations with nu = delta_1 coincide with boxtimes_B", "[infin]") {
    oracle::Rng rng(57);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_fluct(rng, 7);
        auto rb = rng.rationals(7);
        auto res = multiplicative_convolve_fluct(a, {dirac(1, 7), rb});
        InfLaw ia = InfLaw::from_inf_moments(a.base, inf_moments_from_fluctuations(a.base, a.rhat));
        InfLaw ib = InfLaw::from_inf_moments(dirac(1, 7), inf_moments_from_fluctuations(dirac(1, 7), rb));
        CHECK(res.inf == boxtimes_B(ia, ib));
    }
}

TEST_CASE("subordination identity", "[infin]") {
    oracle::Rng rng(58);
    for (int trial = 0; trial < 5; ++trial) {
        InfLaw a = InfLaw::from_inf_moments(Law::from_cumulants(rng.rationals(6)), rng.rationals(6));
        InfLaw b = InfLaw::from_inf_moments(Law::from_cumulants(rng.rationals(6)), rng.rationals(6));
        auto chk = subordination_identity_check(a, b, 6);
        CHECK(chk.holds);
        CHECK(chk.residual.is_zero());
    }
    InfLaw s = InfLaw::from_inf_moments(semicircle(8), MomentSeq(8, Scalar(0)));
    CHECK(subordination_identity_check(s, s, 8).holds);
    InfLaw a = InfLaw::from_inf_moments(Law::from_cumulants(rng.rationals(7)), rng.rationals(7));
    InfLaw d0 = InfLaw::from_inf_moments(dirac(0, 7), rng.rationals(7));
    CHECK(subordination_identity_check(a, d0, 7).holds);
    CHECK_THROWS_AS(subordination_identity_check(s, s, 9), SizeLimitError);
}

TEST_CASE("repeated differentiation at t = 1", "[infin]") {
    oracle::Rng rng(59);
    auto a = random_fluct(rng, 8);
    auto same = repeated_differentiation(a, 1, 0, 8);
    CHECK(same.fluct.base == a.base);
    CHECK(same.fluct.rhat == a.rhat);
    // one derivative: nu' = mu' + mu - M(mu)
    auto one = repeated_differentiation(a, 1, -1, 8);
    auto mp = inf_moments_from_fluctuations(a.base, a.rhat);
    auto mk = cauchy_moments(markov_krein_inverse(a.base.cauchy()), 7);
    for (int n = 1; n <= 7; ++n) CHECK(one.inf.inf_moments()[n - 1] == mp[n - 1] + a.base.m(n) - mk[n - 1]);
    // Hermite, one derivative: nu' = s - a/2 - b/2 with a arcsine on [-2,2], b atoms at +-2
    auto h = repeated_differentiation({semicircle(8), MomentSeq(8, Scalar(0))}, 1, -1, 8);
    auto arc = arcsine2(8), bern = two_point(2, 8);
    for (int n = 1; n <= 8; ++n)
        CHECK(h.inf.inf_moments()[n - 1] == semicircle(8).m(n) - arc[n - 1] / 2 - bern[n - 1] / 2);
    CHECK_THROWS_AS(repeated_differentiation(a, 0, 1, 8), ContractError);
}

TEST_CASE("repeated differentiation base law", "[infin]") {
    oracle::Rng rng(60);
    auto a = random_fluct(rng, 8);
    auto r = repeated_differentiation(a, frac(1, 3), frac(1, 2), 8);
    for (int n = 1; n <= 8; ++n) CHECK(r.fluct.base.r(n) == pow(frac(1, 3), n - 1) * a.base.r(n));
    // Bernoulli at t = 1/2 gives the arcsine law on [-1, 1]
    auto b = repeated_differentiation({bernoulli_law(8), fluctuations_from_inf_moments(bernoulli_law(8), MomentSeq(8, Scalar(0)))},
                                      frac(1, 2), 0, 8);
    auto arc = arcsine2(8);
    for (int n = 1; n <= 8; ++n) CHECK(b.fluct.base.m(n) == arc[n - 1] / pow(Scalar(2), n));
}

TEST_CASE("one derivative of a finite family follows the t = 1 rule", "[infin]") {
    // exact finite degrees: derivative of hermite(d + 1) has degree d
    auto fam = principal_minor_flow(hermite_family(), 1).derived;
    auto reps = extrapolate_family(fam, 6, {128, 256, 512});
    for (const auto& rep : reps) {
        REQUIRE(rep.predicted);
        CHECK(std::abs(to_double(rep.estimate - *rep.predicted)) <= 1e-2 * std::max(1.0, std::abs(to_double(*rep.predicted))));
    }
}

TEST_CASE("Bernoulli halved: exact ladder tracks -(Rhat o tG)G' - H/t", "[infin]") {
    // q_i is the i-th derivative of (x^2-1)^i, normalized by the parent degree d = 2i.
    const int N = 6;
    Law nu = Law::from_moments([&] {
        auto m = arcsine2(N);
        for (int n = 1; n <= N; ++n) m[n - 1] /= pow(Scalar(2), n);
        return m;
    }());
    std::vector<std::vector<Scalar>> deltas;
    std::vector<long> ladder{100, 200};
    for (long i : ladder) {
        auto m = moments(derivative_poly(bernoulli_pair(i), static_cast<int>(i)), N);
        std::vector<Scalar> v(N);
        for (int n = 0; n < N; ++n) v[n] = Scalar(2 * i) * (m[n] - nu.moments()[n]);
        deltas.push_back(v);
    }
    Law b = bernoulli_law(N);
    auto rhat = fluctuations_from_inf_moments(b, MomentSeq(N, Scalar(0)));
    Series g = nu.cauchy();
    Scalar t = frac(1, 2);
    Series pred = -(compose_z_into_cauchy(r_series(rhat, N), t * g) * g.derivative()) - (1 / t) * h_transform_analytic(g);
    auto pm = cauchy_moments(pred, N);
    CHECK(pm[1] == frac(-1, 2));
    for (int n = 1; n <= N; ++n) {
        Scalar R = richardson(2 * ladder[0], deltas[0][n - 1], 2 * ladder[1], deltas[1][n - 1]);
        CHECK(std::abs(to_double(R - pm[n - 1])) < 1e-3);
    }
}

TEST_CASE("extrapolation ladders", "[infin]") {
    // finite perturbation: Delta is constant in d, the report is exact
    auto f = dirac_perturbation(frac(1, 2), {2, -1, 0});
    for (const auto& rep : extrapolate_family(f, 6, {8, 16, 32})) {
        CHECK(*rep.abs_error == 0);
        for (const auto& [d, delta] : rep.ladder) CHECK(delta == rep.ladder.front().second);
    }
    // Laguerre inverse: d(kappa_2 + 1) = -d/(d-1)
    auto li = extrapolate_family(laguerre_inverse_family(), 2, {100, 200}, LadderQuantity::cumulants);
    CHECK(li[1].ladder[0].second == frac(-100, 99));
    CHECK(li[1].estimate == frac(-19700, 19701));
    CHECK(*li[1].predicted == -1);
    // degree ladder validation
    auto h = hermite_family();
    CHECK_THROWS_AS(extrapolate_family(h, 4, {64}), ContractError);
    CHECK_THROWS_AS(extrapolate_family(h, 4, {128, 64}), ContractError);
    CHECK_THROWS_AS(extrapolate_family(h, 4, {3, 64}), ContractError);
    CHECK(richardson(1, 5, 2, 7) == 9);
}

TEST_CASE("moment and cumulant ladders are dictionary-consistent", "[infin]") {
    for (const auto& f : {hermite_family(), laguerre_family()}) {
        const int N = 6;
        auto mrep = extrapolate_family(f, N, {128, 256, 512});
        auto crep = extrapolate_family(f, N, {128, 256, 512}, LadderQuantity::cumulants);
        std::vector<Scalar> rhat_est;
        for (const auto& r : crep) rhat_est.push_back(r.estimate);
        auto via = inf_moments_from_fluctuations(f.limit.truncated(N), rhat_est);
        for (int n = 0; n < N; ++n) {
            double scale = std::max(1.0, std::abs(to_double(via[n])));
            CHECK(std::abs(to_double(mrep[n].estimate - via[n])) <= 1e-2 * scale);
            CHECK(*crep[n].abs_error == 0);  // zero cumulant fluctuations exactly
        }
    }
}
