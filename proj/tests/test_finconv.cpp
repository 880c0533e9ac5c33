#include "ffinf/finconv.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace ffinf;

namespace {

std::vector<Scalar> random_roots(oracle::Rng& rng, int d) { return rng.rationals(d, 3, 2); }

}  // namespace

TEST_CASE("convolutions equal averages over root matchings", "[finconv]") {
    oracle::Rng rng(21);
    for (int d = 1; d <= 5; ++d)
        for (int trial = 0; trial < 4; ++trial) {
            auto a = random_roots(rng, d), b = random_roots(rng, d);
            auto sum = oracle::root_average(a, b, [](const Scalar& x, const Scalar& y) { return x + y; });
            auto prod = oracle::root_average(a, b, [](const Scalar& x, const Scalar& y) { return x * y; });
            CHECK(boxplus_d(from_roots(a), from_roots(b)).ordinary() == sum);
            CHECK(boxtimes_d(from_roots(a), from_roots(b)).ordinary() == prod);
        }
}

TEST_CASE("units of the convolutions", "[finconv]") {
    oracle::Rng rng(22);
    for (int d = 1; d <= 8; ++d) {
        MonicPoly p = from_roots(random_roots(rng, d));
        CHECK(boxplus_d(p, from_roots(std::vector<Scalar>(d, 0))) == p);
        CHECK(boxtimes_d(p, from_roots(std::vector<Scalar>(d, 1))) == p);
    }
    CHECK_THROWS_AS(boxplus_d(from_roots({1, 2}), from_roots({1})), ContractError);
    CHECK_THROWS_AS(boxtimes_d(from_roots({1, 2}), from_roots({1})), ContractError);
}

TEST_CASE("finite free cumulants linearize the additive convolution", "[finconv]") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = static_cast<int>(rng.integer(1, 8));
        MonicPoly p = from_roots(random_roots(rng, d)), q = from_roots(random_roots(rng, d));
        auto kp = finite_cumulants_from_coeffs(p, d), kq = finite_cumulants_from_coeffs(q, d);
        auto ks = finite_cumulants_from_coeffs(boxplus_d(p, q), d);
        for (int n = 0; n < d; ++n) CHECK(ks[n] == kp[n] + kq[n]);
    }
}

TEST_CASE("cumulants of a product: grouped expansion equals the literal double sum", "[finconv]") {
    oracle::Rng rng(24);
    for (int trial = 0; trial < 8; ++trial) {
        const int d = static_cast<int>(rng.integer(2, 6));
        MonicPoly p = from_roots(random_roots(rng, d)), q = from_roots(random_roots(rng, d));
        auto kp = finite_cumulants_from_coeffs(p, d), kq = finite_cumulants_from_coeffs(q, d);
        auto kr = finite_cumulants_from_coeffs(boxtimes_d(p, q), d);
        for (int n = 1; n <= std::min(d, 5); ++n) {
            Scalar lit = oracle::joined_pair_sum(d, n, kp, kq);
            CHECK(kappa_product_expansion(d, kp, kq, n) == lit);
            CHECK(kr[n - 1] == lit);
        }
    }
}

TEST_CASE("leading layers of the product expansion", "[finconv]") {
    // layer |pi|+|theta| = n+1 is the Kreweras sum; layer n is minus the annular sum.
    oracle::Rng rng(25);
    for (int n = 1; n <= 5; ++n) {
        auto u = rng.rationals(n), v = rng.rationals(n);
        Scalar top = oracle::joined_pair_sum(1, n, u, v, n + 1);
        Scalar next = oracle::joined_pair_sum(1, n, u, v, n);
        // kappa_product_truncated(d) = top - next_coeff/d; recover both with two values of d
        Scalar t1 = kappa_product_truncated(1, u, v, n), t2 = kappa_product_truncated(2, u, v, n);
        CHECK(Scalar(2) * t2 - t1 == top);
        CHECK(Scalar(2) * (t1 - t2) == next);
    }
}

TEST_CASE("truncated expansion is accurate to order 1/d", "[finconv]") {
    oracle::Rng rng(26);
    auto kp = rng.rationals(5), kq = rng.rationals(5);
    // n = 2 has only the two leading layers
    CHECK(kappa_product_expansion(7, kp, kq, 2) == kappa_product_truncated(7, kp, kq, 2));
    for (int n = 3; n <= 5; ++n) {
        Scalar e1 = kappa_product_expansion(1000, kp, kq, n) - kappa_product_truncated(1000, kp, kq, n);
        Scalar e2 = kappa_product_expansion(2000, kp, kq, n) - kappa_product_truncated(2000, kp, kq, n);
        // the difference is O(1/d^2): quadrupling when d halves, up to O(1/d^3)
        CHECK(std::abs(to_double(e1 / e2) - 4.0) < 0.05);
    }
}

TEST_CASE("differentiation", "[finconv]") {
    oracle::Rng rng(27);
    for (int d = 2; d <= 8; ++d) {
        MonicPoly p = from_roots(random_roots(rng, d));
        for (int s = 0; s < d; ++s) CHECK(derivative_poly(p, s) == derivative_poly_via_boxtimes(p, s));
        // finite free cumulants scale by ((d-s)/d)^{n-1}
        const int s = 1;
        auto k = finite_cumulants_from_coeffs(p, d - s);
        auto kd = finite_cumulants_from_coeffs(derivative_poly(p, s), d - s);
        for (int n = 1; n <= d - s; ++n) CHECK(kd[n - 1] == pow(frac(d - s, d), n - 1) * k[n - 1]);
    }
    // (x^3 - 3x)' / 3 = x^2 - 1
    CHECK(derivative_poly(MonicPoly::from_ordinary({1, 0, -3, 0}), 1) == MonicPoly::from_ordinary({1, 0, -1}));
    CHECK_THROWS_AS(derivative_poly(from_roots({1, 2}), 2), ContractError);
}

TEST_CASE("dilation and shift", "[finconv]") {
    oracle::Rng rng(28);
    auto r = random_roots(rng, 5);
    MonicPoly p = from_roots(r);
    std::vector<Scalar> r2, r3;
    for (const auto& x : r) {
        r2.push_back(frac(3, 2) * x);
        r3.push_back(x + frac(1, 3));
    }
    CHECK(dilate(p, frac(3, 2)) == from_roots(r2));
    CHECK(shift(p, frac(1, 3)) == from_roots(r3));
    auto k = finite_cumulants_from_coeffs(p, 5), ks = finite_cumulants_from_coeffs(shift(p, 2), 5);
    CHECK(ks[0] == k[0] + 2);
    for (int n = 2; n <= 5; ++n) CHECK(ks[n - 1] == k[n - 1]);
}
