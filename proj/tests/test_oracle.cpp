#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epsexp/oracle.hpp"

using namespace epsexp;

namespace {

LinearParam qp(Rational c, Rational s) { return {Scalar(std::move(c)), Scalar(std::move(s))}; }

} // namespace

TEST_CASE("direct series value") {
    // 2F1(1,1;2;z) truncates to sum z^m/(m+1)
    Rational z(1, 3);
    Scalar v = direct_series_value({qp(Rational(1), Rational(0)), qp(Rational(1), Rational(0))},
                                   {qp(Rational(2), Rational(0))}, Scalar(z), Scalar(Rational(0)),
                                   30);
    Rational expect(0);
    for (int m = 0; m <= 30; ++m) expect += z.pow_int(m) / Rational(m + 1);
    CHECK(v.rational() == expect);

    // 1F0(eps;;z) at eps = 1 is the geometric series
    Scalar g = direct_series_value({qp(Rational(0), Rational(1))}, {}, Scalar(Rational(2, 5)),
                                   Scalar(Rational(1)), 25);
    Rational geo(0);
    for (int m = 0; m <= 25; ++m) geo += Rational(2, 5).pow_int(m);
    CHECK(g.rational() == geo);

    CHECK(direct_series_value({qp(Rational(3), Rational(1))}, {qp(Rational(7), Rational(2))},
                              Scalar(Rational(1, 2)), Scalar(Rational(1, 9)), 0)
              .rational() == Rational(1));

    // a lower parameter pole at the probe eps surfaces as a division error
    CHECK_THROWS_AS(direct_series_value({qp(Rational(1), Rational(0))},
                                        {qp(Rational(-1), Rational(3))}, Scalar(Rational(1, 2)),
                                        Scalar(Rational(1, 3)), 10),
                    division_by_zero);

    // all upper constants zero: at eps = 0 only m = 0 survives
    CHECK(direct_series_value({qp(Rational(0), Rational(2)), qp(Rational(0), Rational(-1))},
                              {qp(Rational(1), Rational(1))}, Scalar(Rational(1, 2)),
                              Scalar(Rational(0)), 30)
              .rational() == Rational(1));

    CHECK_THROWS_AS(direct_series_value({}, {}, Scalar(Rational(1)), Scalar(Rational(0)), -1),
                    bad_request);
    CHECK_THROWS_AS(direct_series_value({}, {}, Scalar(Rational(1)), Scalar(BigFloat(0)), 3),
                    backend_mismatch);
}

TEST_CASE("direct series value across backends") {
    std::vector<LinearParam> upper = {qp(Rational(1, 3), Rational(-2)),
                                      qp(Rational(5, 4), Rational(1))};
    std::vector<LinearParam> lower = {qp(Rational(2), Rational(1, 2))};
    Rational z(3, 7), eps(1, 16);
    Scalar exact = direct_series_value(upper, lower, Scalar(z), Scalar(eps), 40);
    Scalar f = direct_series_value(upper, lower, Scalar(BigFloat(z)), Scalar(BigFloat(eps)), 40);
    Scalar c =
        direct_series_value(upper, lower, Scalar(ComplexFloat(z)), Scalar(ComplexFloat(eps)), 40);
    CHECK(digits_agreement(f, Scalar(BigFloat(exact.rational()))) >= 70.0);
    CHECK(c.complex_value().imag().is_zero());
    CHECK(digits_agreement(Scalar(c.complex_value().real()), Scalar(BigFloat(exact.rational()))) >=
          70.0);
}

TEST_CASE("finite-difference weights: classical stencils") {
    using V = std::vector<Rational>;
    auto nodes = [](std::initializer_list<long> xs, Rational scale) {
        V out;
        for (long x : xs) out.push_back(Rational(x) * scale);
        return out;
    };

    CHECK(fd_weights(V{Rational(0)}, 0) == V{Rational(1)});
    CHECK(fd_weights(nodes({-1, 0, 1}, Rational(1, 10)), 1) ==
          V{Rational(-5), Rational(0), Rational(5)});
    CHECK(fd_weights(nodes({-1, 0, 1}, Rational(1)), 2) ==
          V{Rational(1), Rational(-2), Rational(1)});
    CHECK(fd_weights(nodes({-2, -1, 0, 1, 2}, Rational(1)), 1) ==
          V{Rational(1, 12), Rational(-2, 3), Rational(0), Rational(2, 3), Rational(-1, 12)});
    CHECK(fd_weights(nodes({-2, -1, 0, 1, 2}, Rational(1)), 4) ==
          V{Rational(1), Rational(-4), Rational(6), Rational(-4), Rational(1)});

    CHECK_THROWS_AS(fd_weights(V{}, 0), bad_request);
    CHECK_THROWS_AS(fd_weights(V{Rational(0), Rational(1)}, 2), bad_request);
}

TEST_CASE("finite-difference weights: polynomial exactness") {
    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 50; ++iter) {
        size_t n = 2 + rng() % 5; // 2..6 nodes
        std::vector<Rational> xs;
        while (xs.size() < n) {
            Rational x(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1);
            bool dup = false;
            for (const auto& y : xs) dup = dup || y == x;
            if (!dup) xs.push_back(x);
        }
        int order = static_cast<int>(rng() % n);
        auto w = fd_weights(xs, order);
        std::vector<Rational> poly(n); // degree < n
        for (auto& c : poly) c = Rational(static_cast<long>(rng() % 11) - 5, 3);
        Rational applied(0);
        for (size_t j = 0; j < n; ++j) {
            Rational pv(0);
            for (size_t d = poly.size(); d-- > 0;) pv = pv * xs[j] + poly[d];
            applied += w[j] * pv;
        }
        // exact derivative at 0 of the polynomial: order! * c_order
        Rational expect = Rational(factorial_z(order)) * poly[static_cast<size_t>(order)];
        CHECK(applied == expect);
    }
}

TEST_CASE("finite-difference coefficients on a polynomial function are near-exact") {
    // terminating series: the function is a degree-3 polynomial in eps
    ExpansionRequest req;
    req.upper = {qp(Rational(-3), Rational(0)), qp(Rational(2), Rational(1))};
    req.lower = {qp(Rational(1), Rational(0))};
    req.z = Scalar(Rational(5));
    req.n_max = 3;
    req.truncation = TruncationPolicy::fixed(3);
    auto out = expand_pfq(req);
    OracleConfig cfg;
    cfg.M = 3;
    auto fd = finite_difference_coeffs(req, cfg);
    REQUIRE(fd.size() == 4);
    for (int n = 0; n <= 3; ++n) {
        double d = digits_agreement(fd[static_cast<size_t>(n)],
                                    Scalar(BigFloat(out.series.at(n).rational())));
        CHECK(d >= 20.0);
    }
}

TEST_CASE("finite differences on an eps-free function give zero past order zero") {
    ExpansionRequest req;
    req.upper = {qp(Rational(1, 2), Rational(0))};
    req.lower = {qp(Rational(3), Rational(0))};
    req.z = Scalar(Rational(1, 2));
    req.n_max = 2;
    OracleConfig cfg;
    cfg.M = 40;
    auto fd = finite_difference_coeffs(req, cfg);
    CHECK(fd[1].floating().abs() < BigFloat(2).pow_int(-100));
    CHECK(fd[2].floating().abs() < BigFloat(2).pow_int(-100));
}

TEST_CASE("finite-difference truncation error shrinks with the step") {
    ExpansionRequest req;
    req.upper = {qp(Rational(0), Rational(-4)), qp(Rational(-1, 2), Rational(-1)),
                 qp(Rational(-3, 2), Rational(-2)), qp(Rational(1, 2), Rational(-3))};
    req.lower = {qp(Rational(-1, 2), Rational(2)), qp(Rational(-1, 2), Rational(4)),
                 qp(Rational(1, 2), Rational(6))};
    req.z = Scalar(Rational(1, 2));
    req.n_max = 2;
    req.truncation = TruncationPolicy::fixed(50);
    auto out = expand_pfq(req);
    OracleConfig coarse;
    coarse.M = 50;
    coarse.h = Rational(1, 1000000);
    OracleConfig fine;
    fine.M = 50; // default h = 1e-12
    auto fd_coarse = finite_difference_coeffs(req, coarse);
    auto fd_fine = finite_difference_coeffs(req, fine);
    auto digits = [&](const std::vector<Scalar>& fd, int n) {
        return digits_agreement(fd[static_cast<size_t>(n)],
                                Scalar(BigFloat(out.series.at(n).rational())));
    };
    CHECK(digits(fd_coarse, 1) >= 9.5); // h = 1e-6: the h^2 truncation already bites
    // shrinking h by 1e6 buys ~12 digits at order one and ~24 at order two
    CHECK(digits(fd_fine, 1) >= digits(fd_coarse, 1) + 8.0);
    CHECK(digits(fd_fine, 2) >= digits(fd_coarse, 2) + 8.0);
}

TEST_CASE("finite-difference coefficients validation") {
    ExpansionRequest req;
    req.upper = {qp(Rational(1), Rational(1))};
    req.lower = {qp(Rational(2), Rational(0))};
    req.z = Scalar(Rational(1, 2));
    req.n_max = 1;
    OracleConfig cfg;

    OracleConfig bad = cfg;
    bad.M = 0;
    CHECK_THROWS_AS(finite_difference_coeffs(req, bad), bad_request);
    bad = cfg;
    bad.precision = 64;
    CHECK_THROWS_AS(finite_difference_coeffs(req, bad), bad_request);
    bad = cfg;
    bad.h = Rational(2);
    CHECK_THROWS_AS(finite_difference_coeffs(req, bad), bad_request);

    ExpansionRequest sing = req;
    sing.lower = {qp(Rational(0), Rational(1))};
    CHECK_THROWS_AS(finite_difference_coeffs(sing, cfg), bad_request);
}

TEST_CASE("finite-difference coefficients in the complex backend") {
    ExpansionRequest req;
    req.backend = Backend::Complex;
    req.upper = {qp(Rational(1, 3), Rational(1))};
    req.lower = {qp(Rational(2), Rational(1, 2))};
    req.z = Scalar(Rational(1, 2));
    req.n_max = 2;
    OracleConfig cfg;
    cfg.M = 60;
    auto cfd = finite_difference_coeffs(req, cfg);

    ExpansionRequest freq = req;
    freq.backend = Backend::Float;
    auto ffd = finite_difference_coeffs(freq, cfg);
    for (int n = 0; n <= 2; ++n) {
        const auto& c = cfd[static_cast<size_t>(n)].complex_value();
        CHECK(c.imag().is_zero());
        CHECK(digits_agreement(Scalar(c.real()), ffd[static_cast<size_t>(n)]) >= 30.0);
    }
}

TEST_CASE("polylog and Nielsen partial sums") {
    Rational z(2, 7);
    for (int s = 1; s <= 3; ++s) {
        Scalar v = polylog(s, Scalar(z), 35);
        Rational expect(0);
        for (int m = 1; m <= 35; ++m) expect += z.pow_int(m) / Rational(m).pow_int(s);
        CHECK(v.rational() == expect);
    }
    Scalar n12 = nielsen_s12(Scalar(z), 35);
    Rational expect(0), h(0);
    for (int m = 1; m <= 35; ++m) {
        if (m > 1) h += Rational(1, m - 1);
        expect += z.pow_int(m) * h / Rational(m).pow_int(2);
    }
    CHECK(n12.rational() == expect);

    CHECK(polylog(2, Scalar(Rational(1, 2)), 0).rational() == Rational(0));
    CHECK_THROWS_AS(polylog(2, Scalar(Rational(1, 2)), -1), bad_request);
    CHECK_THROWS_AS(nielsen_s12(Scalar(Rational(1, 2)), -1), bad_request);

    // float path agrees with the exact sums, and with the classical
    // closed-form value of Li2(1/2)
    Scalar vf = polylog(2, Scalar(BigFloat(Rational(1, 2))), 120);
    Rational ve(0);
    for (int m = 1; m <= 120; ++m) ve += Rational(1, 2).pow_int(m) / Rational(m * m);
    CHECK(digits_agreement(vf, Scalar(BigFloat(ve))) >= 70.0);
    CHECK(digits_agreement(vf, Scalar(BigFloat::from_string("0.5822405264650125"))) >= 15.0);
}

TEST_CASE("polylog telescoping and tail bound") {
    Rational z(2, 7);
    for (int s = 1; s <= 3; ++s)
        for (int M = 1; M <= 12; ++M)
            CHECK(polylog(s, Scalar(z), M).rational() - polylog(s, Scalar(z), M - 1).rational() ==
                  z.pow_int(M) / Rational(M).pow_int(s));

    std::mt19937_64 rng(53);
    for (int iter = 0; iter < 40; ++iter) {
        Rational zr(static_cast<long>(rng() % 17) - 8, 9); // |z| <= 8/9 < 1
        int s = 1 + static_cast<int>(rng() % 3);
        int M = 2 + static_cast<int>(rng() % 20);
        int M2 = M + 1 + static_cast<int>(rng() % 30);
        Rational gap =
            (polylog(s, Scalar(zr), M2).rational() - polylog(s, Scalar(zr), M).rational()).abs();
        Rational bound = zr.abs().pow_int(M + 1) /
                         (Rational(M + 1).pow_int(s) * (Rational(1) - zr.abs()));
        CHECK(gap <= bound);
    }
}

TEST_CASE("Nielsen series structure") {
    CHECK(nielsen_s12(Scalar(Rational(0)), 25).rational() == Rational(0));
    Rational z(3, 11);
    CHECK(nielsen_s12(Scalar(z), 1).rational() == Rational(0)); // H_0 = 0 kills m = 1
    CHECK(nielsen_s12(Scalar(z), 2).rational() == z * z / Rational(4));

    // at z = 1 partial sums increase toward zeta(3) = 1.2020569...
    Rational prev(0);
    for (int M : {5, 10, 20, 40, 80}) {
        Rational cur = nielsen_s12(Scalar(Rational(1)), M).rational();
        CHECK(cur > prev);
        CHECK(cur < Rational(12020570, 10000000));
        prev = cur;
    }
}

TEST_CASE("Gauss closed-form coefficients against finite differences") {
    // 2F1(eps, eps; 1 + eps; 1/2): an independent numeric route to C2, C3
    ExpansionRequest req;
    req.backend = Backend::Float;
    auto bf = [](const Rational& q) { return Scalar(BigFloat(q)); };
    req.upper = {{bf(Rational(0)), bf(Rational(1))}, {bf(Rational(0)), bf(Rational(1))}};
    req.lower = {{bf(Rational(1)), bf(Rational(1))}};
    req.z = bf(Rational(1, 2));
    req.n_max = 3;
    OracleConfig cfg;
    cfg.M = 200;
    auto fd = finite_difference_coeffs(req, cfg);
    auto [c2, c3] = gauss_c2_c3_reference(bf(Rational(1)), bf(Rational(1)), bf(Rational(1)),
                                          bf(Rational(1, 2)), 200);
    CHECK(digits_agreement(fd[2], c2) >= 10.0);
    CHECK(digits_agreement(fd[3], c3) >= 10.0);
    CHECK_THROWS_AS(
        gauss_c2_c3_reference(bf(Rational(1)), Scalar(Rational(1)), bf(Rational(1)), bf(Rational(1, 2)), 10),
        backend_mismatch);

    // vanishing slope factor kills both coefficients
    auto [z2, z3] = gauss_c2_c3_reference(Scalar(Rational(0)), Scalar(Rational(3)),
                                          Scalar(Rational(5)), Scalar(Rational(1, 2)), 50);
    CHECK(z2.rational() == Rational(0));
    CHECK(z3.rational() == Rational(0));

    // unit slopes: C3 collapses to S12 - Li3
    auto one = Scalar(Rational(1));
    auto [u2, u3] = gauss_c2_c3_reference(one, one, one, Scalar(Rational(1, 2)), 64);
    CHECK(u2.rational() == polylog(2, Scalar(Rational(1, 2)), 64).rational());
    CHECK(u3.rational() == (nielsen_s12(Scalar(Rational(1, 2)), 64) -
                            polylog(3, Scalar(Rational(1, 2)), 64))
                               .rational());
}

TEST_CASE("Appell reference coefficients") {
    Scalar x1(Rational(1, 10)), x2(Rational(1, 5));
    CHECK(appell_c_reference(0, x1, x2, 2).rational() == Rational(143, 100));
    CHECK(appell_c_reference(1, x1, x2, 2).rational() == Rational(-1, 25));
    CHECK(appell_c_reference(2, x1, x2, 2).rational() == Rational(1, 25));
    CHECK(appell_c_reference(0, x1, x2, 0).rational() == Rational(1));
    CHECK(appell_c_reference(1, x1, x2, 0).rational() == Rational(0));

    CHECK_THROWS_AS(appell_c_reference(3, x1, x2, 5), bad_request);
    CHECK_THROWS_AS(appell_c_reference(0, x1, x2, -1), bad_request);

    Scalar xf1(BigFloat(Rational(1, 10))), xf2(BigFloat(Rational(1, 5)));
    for (int n = 0; n <= 2; ++n) {
        Scalar e = appell_c_reference(n, x1, x2, 30);
        Scalar f = appell_c_reference(n, xf1, xf2, 30);
        CHECK(digits_agreement(f, Scalar(BigFloat(e.rational()))) >= 70.0);
    }
}

TEST_CASE("digits_agreement") {
    CHECK(digits_agreement(Scalar(Rational(1, 3)), Scalar(Rational(1, 3))) == 1e9);
    Scalar a(BigFloat(Rational(1)));
    Scalar b(BigFloat(Rational(10000000001L, 10000000000L))); // 1 + 1e-10
    double d = digits_agreement(a, b);
    CHECK(d > 9.0);
    CHECK(d < 11.0);
    // zero reference: digits of smallness of the left operand
    double z = digits_agreement(Scalar(Rational(1, 1000)), Scalar(Rational(0)));
    CHECK(z > 2.9);
    CHECK(z < 3.1);
    CHECK(digits_agreement(Scalar(Rational(1000)), Scalar(Rational(0))) < 0.0);
    CHECK_THROWS_AS(digits_agreement(Scalar(Rational(1)), Scalar(BigFloat(1))), backend_mismatch);
}
