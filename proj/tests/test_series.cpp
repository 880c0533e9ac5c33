#include "ffinf/series.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ffinf;

namespace {

// Series in w = 1/z from plain coefficients c[k] of w^k, k = 0..len-1.
Series from_ps(const oracle::Ps& p, long prec) { return Series(Variable::inverse_z, 0, p.c, prec); }

MomentSeq seq(std::initializer_list<long> v) {
    MomentSeq m;
    for (long x : v) m.push_back(x);
    return m;
}

MomentSeq semicircle_moments(int N) {
    auto cat = oracle::catalan_recurrence(N);
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = n % 2 ? Scalar(0) : Scalar(cat[n / 2]);
    return m;
}

// symmetric arcsine on [-2, 2]: m_{2k} = C(2k, k)
MomentSeq arcsine_moments(int N) {
    MomentSeq m(N);
    for (int n = 1; n <= N; ++n) m[n - 1] = n % 2 ? Scalar(0) : Scalar(binomial(n, n / 2));
    return m;
}

}  // namespace

TEST_CASE("series arithmetic tracks precision", "[series]") {
    Series a(Variable::inverse_z, 1, {1, 2, 3}, 5);  // w + 2w^2 + 3w^3 + O(w^6)
    CHECK(a.coeff(4) == 0);
    CHECK_THROWS_AS(a.coeff(6), TruncationError);
    Series b = a * a;
    CHECK(b.precision() == 6);
    CHECK(b.coeff(2) == 1);
    CHECK(b.coeff(3) == 4);
    Series inv = a.inverse();  // 1/w - 2 + w + ...
    CHECK(inv.low() == -1);
    CHECK((a * inv).agrees_with(Series::monomial(Variable::inverse_z, 0, 1, 100)));
    CHECK_THROWS_AS(a + Series(Variable::z, 0, {1}, 3), ContractError);
    CHECK_THROWS_AS(Series::zero(Variable::z, 3).inverse(), ContractError);
    // d/dz of 1/z is -1/z^2
    CHECK(Series::monomial(Variable::inverse_z, 1, 1, 5).derivative().coeff(2) == -1);
    CHECK(Series::monomial(Variable::z, 3, 1, 5).derivative().coeff(2) == 3);
}

TEST_CASE("composition and reversion", "[series]") {
    oracle::Rng rng(31);
    std::vector<Scalar> c{1};
    for (int i = 0; i < 7; ++i) c.push_back(rng.rational());
    Series f(Variable::z, 1, c, 8);
    Series g = reversion(f);
    CHECK(compose(f, g).agrees_with(Series::monomial(Variable::z, 1, 1, 8)));
    CHECK(compose(g, f).agrees_with(Series::monomial(Variable::z, 1, 1, 8)));
    CHECK(compose(f, g).precision() == 8);
    // exp(x) o (2x) equals exp(2x) by coefficients
    std::vector<Scalar> e;
    Scalar fact = 1;
    for (int k = 0; k <= 8; ++k) {
        if (k) fact *= k;
        e.push_back(Scalar(1) / fact);
    }
    Series ex(Variable::z, 0, e, 8);
    Series two = Series::monomial(Variable::z, 1, 2, 100);
    Series lhs = compose(ex, two);
    for (int k = 0; k <= 8; ++k) CHECK(lhs.coeff(k) == pow(Scalar(2), k) * e[k]);
    CHECK_THROWS_AS(compose(ex, Series(Variable::z, 0, {1, 1}, 5)), ContractError);
}

TEST_CASE("free cumulants of standard laws", "[series]") {
    // semicircle: r = (0, 1, 0, ...); Marchenko-Pastur(1): r = 1, moments are Catalan numbers
    CHECK(free_cumulants_series(semicircle_moments(8), 8) == seq({0, 1, 0, 0, 0, 0, 0, 0}));
    auto cat = oracle::catalan_recurrence(8);
    MomentSeq mp(8);
    for (int n = 1; n <= 8; ++n) mp[n - 1] = Scalar(cat[n]);
    CHECK(free_cumulants_series(mp, 8) == seq({1, 1, 1, 1, 1, 1, 1, 1}));
    CHECK(free_moments_series(seq({1, 1, 1, 1, 1, 1, 1, 1}), 8) == mp);
    // Bernoulli +-1: K(z) = (1 + sqrt(1 + 4z^2))/(2z): pole 1, r_2 = 1, r_4 = -1, r_6 = 2
    MomentSeq b(8);
    for (int n = 1; n <= 8; ++n) b[n - 1] = n % 2 ? 0 : 1;
    Series k = k_from_moments(b, 8);
    CHECK(k.pole() == 1);
    oracle::Ps sq = oracle::binomial_series(9, 4, 2, frac(1, 2));  // sqrt(1 + 4z^2)
    Scalar half = frac(1, 2);
    for (int n = 1; n <= 8; ++n) CHECK(k.z_coeff(n) == half * sq.c[n]);
    CHECK(z_coeffs(k, 6) == seq({0, 1, 0, -1, 0, 2}));
}

TEST_CASE("series cumulants round trip", "[series]") {
    oracle::Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        auto r = rng.rationals(9);
        CHECK(free_cumulants_series(free_moments_series(r, 9), 9) == r);
    }
}

TEST_CASE("H transform: analytic, G-form and annular sum agree", "[series]") {
    Series g = cauchy_transform(semicircle_moments(9), 9);
    auto h = h_coeffs_combinatorial(seq({0, 1, 0, 0, 0, 0, 0, 0, 0}), 9);
    CHECK(h == seq({0, 1, 0, 5, 0, 22, 0, 93, 0}));
    CHECK(cauchy_moments(h_transform_analytic(g), 9) == h);
    CHECK(cauchy_moments(h_transform_from_g(g), 9) == h);
    oracle::Rng rng(33);
    for (int trial = 0; trial < 15; ++trial) {
        auto r = rng.rationals(8);
        Series gr = cauchy_transform(free_moments_series(r, 8), 8);
        auto hc = h_coeffs_combinatorial(r, 8);
        CHECK(cauchy_moments(h_transform_analytic(gr), 8) == hc);
        CHECK(cauchy_moments(h_transform_from_g(gr), 8) == hc);
        CHECK(hc[0] == 0);
        CHECK(hc[1] == r[1]);
    }
    CHECK_THROWS_AS(h_coeffs_combinatorial(rng.rationals(11), 11), SizeLimitError);
}

TEST_CASE("H of the arcsine law is 2/(z(z^2-4))", "[series]") {
    Series g = cauchy_transform(arcsine_moments(10), 10);
    auto h = cauchy_moments(h_transform_analytic(g), 9);
    // 2 w^3/(1 - 4w^2): coefficients of z^{-3}, z^{-5}, ... are 2, 8, 32, 128
    CHECK(h == seq({0, 2, 0, 8, 0, 32, 0, 128, 0}));
}

TEST_CASE("Markov-Krein inverse of the semicircle is the arcsine law", "[series]") {
    Series m = markov_krein_inverse(cauchy_transform(semicircle_moments(10), 10));
    CHECK(m.cauchy_coeff(0) == 1);
    CHECK(cauchy_moments(m, 9) == arcsine_moments(9));
    // closed form 1/sqrt(z^2 - 4) = w (1 - 4w^2)^{-1/2}
    oracle::Ps ref = oracle::mono(11, 1) * oracle::binomial_series(11, -4, 2, frac(-1, 2));
    CHECK(m.agrees_with(from_ps(ref, 10)));
}

TEST_CASE("theta transform", "[series]") {
    // delta_1: G = 1/(z-1), G - 1/z = 1/(z(z-1)), theta = z
    MomentSeq one(8, Scalar(1));
    Series t = theta(cauchy_transform(one, 8));
    CHECK(t.top() == 1);
    CHECK(t.constant() == 0);
    for (int n = 0; n <= t.cauchy_order(); ++n) CHECK(t.cauchy_coeff(n) == 0);
    CHECK(t.cauchy_order() == 5);
    CHECK(theta(cauchy_transform(seq({2, 5, 1, 0, 0, 0}), 6)).top() == frac(1, 2));
    CHECK_THROWS_AS(theta(cauchy_transform(semicircle_moments(6), 6)), ContractError);
}

TEST_CASE("additive subordination functions", "[series]") {
    oracle::Rng rng(34);
    for (int trial = 0; trial < 5; ++trial) {
        auto rm = rng.rationals(7), rn = rng.rationals(7);
        MomentSeq mu = free_moments_series(rm, 7), nu = free_moments_series(rn, 7);
        auto [w1, w2] = subordination_add(mu, nu, 7);
        CumulantSeq rs(7);
        for (int n = 0; n < 7; ++n) rs[n] = rm[n] + rn[n];
        Series g = cauchy_transform(free_moments_series(rs, 7), 7);
        // G_{mu boxplus nu} = G_mu o omega_1 = G_nu o omega_2
        CHECK(compose(cauchy_transform(mu, 7), w1).agrees_with(g));
        CHECK(compose(cauchy_transform(nu, 7), w2).agrees_with(g));
        // omega_1 + omega_2 = z + 1/G
        Series z = Series::monomial(Variable::inverse_z, -1, 1, 100);
        CHECK((w1 + w2).agrees_with(z + g.inverse()));
    }
}

TEST_CASE("atomic measures", "[series]") {
    AtomicMeasure m{{{frac(1, 2), 1}, {frac(1, 2), -1}}};
    CHECK(m.mass() == 1);
    CHECK(m.moments(4) == seq({0, 1, 0, 1}));
    Series z = Series::monomial(Variable::inverse_z, -1, 1, 9);
    CHECK(cauchy_moments(m.cauchy_at(z), 7) == seq({0, 1, 0, 1, 0, 1, 0}));
}
