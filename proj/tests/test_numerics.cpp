#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epsexp/scalar.hpp"

using namespace epsexp;

namespace {

Rational rand_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-400, 400);
    std::uniform_int_distribution<long> den(1, 40);
    return Rational(num(rng), den(rng));
}

} // namespace

TEST_CASE("exact arithmetic basics") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(7, 2) - Rational(7, 2) == Rational(0));
    CHECK(Rational(5, 8) / Rational(5, 8) == Rational(1));
    CHECK(-Rational(3, 4) == Rational(-3, 4));
    CHECK(Rational(-6, -4) == Rational(3, 2)); // canonical form
    CHECK(Rational(3, -4) == Rational(-3, 4));
    CHECK(Rational(2, 3).pow_int(-2) == Rational(9, 4));
    CHECK(Rational(0).pow_int(0) == Rational(1));
    CHECK(Rational(1, 3).str() == "1/3");
    CHECK(Rational(-8, 2).str() == "-4");
}

TEST_CASE("exact arithmetic field laws on random values") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 200; ++i) {
        Rational a = rand_rational(rng), b = rand_rational(rng), c = rand_rational(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!c.is_zero()) CHECK((a / c) * c == a);
    }
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), division_by_zero);
    CHECK_THROWS_AS(Rational(1, 0), division_by_zero);
    CHECK_THROWS_AS(Rational(0).pow_int(-1), division_by_zero);
    CHECK_THROWS_AS(BigFloat(1) / BigFloat(0), division_by_zero);
    CHECK_THROWS_AS(ComplexFloat(1) / ComplexFloat(0), division_by_zero);
}

TEST_CASE("float ops round correctly and keep the max precision") {
    BigFloat a(1, 128);
    BigFloat b(3, 256);
    CHECK((a / b).precision() == 256);
    CHECK((a + b).precision() == 256);

    // one division at 64 bits equals the correctly rounded true value
    BigFloat q64 = BigFloat(1, 64) / BigFloat(3, 64);
    CHECK(q64 == BigFloat(Rational(1, 3), 64));

    // two input conversions plus the division each round once, so the
    // relative error against the true quotient stays below 4 * 2^(-prec)
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        Rational x = rand_rational(rng), y = rand_rational(rng);
        if (y.is_zero()) continue;
        BigFloat fx(x, 64), fy(y, 64);
        Rational exact = x / y;
        if (exact.is_zero()) continue;
        BigFloat approx = fx / fy;
        // compare against a much more precise value
        BigFloat ref(exact, 320);
        BigFloat rel = ((approx.round_to(320) - ref) / ref).abs();
        BigFloat bound = BigFloat(2, 320).pow_int(-62);
        CHECK(rel <= bound);
    }
}

TEST_CASE("complex arithmetic") {
    ComplexFloat i(BigFloat(0), BigFloat(1));
    CHECK(i * i == ComplexFloat(-1));
    ComplexFloat z(BigFloat(3), BigFloat(4));
    CHECK(z.abs() == BigFloat(5));
    CHECK(z.conj() == ComplexFloat(BigFloat(3), BigFloat(-4)));
    CHECK(z.pow_int(2) == ComplexFloat(BigFloat(-7), BigFloat(24)));
    CHECK((z / z) == ComplexFloat(1));
    CHECK(z.real().precision() == z.imag().precision());
    ComplexFloat mixed(BigFloat(1, 128), BigFloat(2, 256));
    CHECK(mixed.real().precision() == 256);
    CHECK(ComplexFloat(BigFloat(5)).is_real());
    CHECK_FALSE(z.is_real());
}

TEST_CASE("scalar backends stay separate") {
    Scalar e = Scalar::from_long(1, Backend::Exact);
    Scalar f = Scalar::from_long(1, Backend::Float);
    Scalar c = Scalar::from_long(1, Backend::Complex);
    CHECK(e.backend() == Backend::Exact);
    CHECK(f.backend() == Backend::Float);
    CHECK(c.backend() == Backend::Complex);
    CHECK_THROWS_AS(e + f, backend_mismatch);
    CHECK_THROWS_AS(f * c, backend_mismatch);
    CHECK_THROWS_AS((void)(e == f), backend_mismatch);
    CHECK((e + e).rational() == Rational(2));
}

TEST_CASE("literal parsing per backend") {
    CHECK(Scalar::from_literal("3", Backend::Exact).rational() == Rational(3));
    CHECK(Scalar::from_literal("-3/4", Backend::Exact).rational() == Rational(-3, 4));
    CHECK(Scalar::from_literal("+7/14", Backend::Exact).rational() == Rational(1, 2));
    CHECK(Scalar::from_literal("0.5", Backend::Exact).rational() == Rational(1, 2));
    CHECK(Scalar::from_literal("2.5e-3", Backend::Exact).rational() == Rational(1, 400));
    CHECK(Scalar::from_literal("1e3", Backend::Exact).rational() == Rational(1000));
    CHECK(Scalar::from_literal("-0.125", Backend::Exact).rational() == Rational(-1, 8));

    Scalar pi = Scalar::from_literal("pi", Backend::Float, 256);
    CHECK(pi.floating() == BigFloat::pi(256));
    Scalar mhalfpi = Scalar::from_literal("-pi/2", Backend::Float, 256);
    CHECK(mhalfpi.floating() == -(BigFloat::pi(256) / BigFloat(2, 256)));
    CHECK_THROWS_AS(Scalar::from_literal("pi", Backend::Exact), pi_not_exact);

    Scalar fr = Scalar::from_literal("1/3", Backend::Float, 128);
    CHECK(fr.floating() == BigFloat(Rational(1, 3), 128));

    Scalar im = Scalar::from_literal("2i", Backend::Complex, 128);
    CHECK(im.complex_value() == ComplexFloat(BigFloat(0, 128), BigFloat(2, 128)));
    Scalar imf = Scalar::from_literal("-3/4i", Backend::Complex, 128);
    CHECK(imf.complex_value() == ComplexFloat(BigFloat(0, 128), BigFloat(Rational(-3, 4), 128)));
    CHECK_THROWS_AS(Scalar::from_literal("2i", Backend::Float), parse_error);
    CHECK_THROWS_AS(Scalar::from_literal("2i", Backend::Exact), parse_error);

    CHECK_THROWS_AS(Scalar::from_literal("abc", Backend::Exact), parse_error);
    CHECK_THROWS_AS(Scalar::from_literal("", Backend::Exact), parse_error);
    CHECK_THROWS_AS(Scalar::from_literal("1/0", Backend::Exact), parse_error);
    CHECK_THROWS_AS(Scalar::from_literal("1//2", Backend::Exact), parse_error);
    CHECK_THROWS_AS(Scalar::from_literal("1.2.3", Backend::Exact), parse_error);
}

TEST_CASE("decimal rendering: significant digits, half-even, placement") {
    CHECK(Rational(1, 3).decimal_string(5) == "0.33333");
    CHECK(Rational(2, 3).decimal_string(5) == "0.66667");
    CHECK(Rational(1).decimal_string(15) == "1.00000000000000");
    CHECK(Rational(0).decimal_string(4) == "0.000");
    CHECK(BigFloat(0).decimal_string(4) == "0.000");

    // ties round to even
    CHECK(Rational(125, 1000).decimal_string(2) == "0.12");
    CHECK(Rational(375, 1000).decimal_string(2) == "0.38");
    CHECK(Rational(5, 2).decimal_string(1) == "2");
    CHECK(Rational(7, 2).decimal_string(1) == "4");

    // carry into a new leading digit
    CHECK(Rational(999, 1000).decimal_string(2) == "1.0");

    // positional vs scientific switchover
    CHECK(Rational(12345).decimal_string(5) == "12345");
    CHECK(Rational(12345).decimal_string(4) == "1.234e4");
    CHECK(Rational(1, 100000).decimal_string(5) == "0.000010000");
    CHECK(Rational(1, 1000000).decimal_string(5) == "1.0000e-6");
    CHECK(Rational(-1, 3).decimal_string(5) == "-0.33333");

    // float rendering matches exact rendering on representable values
    CHECK(BigFloat(Rational(3, 8)).decimal_string(6) == Rational(3, 8).decimal_string(6));
    CHECK(BigFloat(Rational(-1, 1024), 128).decimal_string(8) ==
          Rational(-1, 1024).decimal_string(8));

    // complex rendering
    ComplexFloat z(BigFloat(Rational(1, 2)), BigFloat(Rational(-3, 4)));
    CHECK(z.decimal_string(3) == "0.500 - 0.750 i");
    CHECK(ComplexFloat(BigFloat(2)).decimal_string(3) == "2.00");
}

TEST_CASE("minimal exact decimal form") {
    CHECK(Rational(1).exact_decimal_string(15) == "1");
    CHECK(Rational(0).exact_decimal_string(15) == "0");
    CHECK(Rational(1, 4).exact_decimal_string(15) == "0.25");
    CHECK(Rational(-7, 2).exact_decimal_string(15) == "-3.5");
    CHECK(Rational(1, 1024).exact_decimal_string(15) == "0.0009765625");
    CHECK_FALSE(Rational(1, 1024).exact_decimal_string(5).has_value());
    CHECK_FALSE(Rational(1, 3).exact_decimal_string(15).has_value());
    CHECK(Rational(100).exact_decimal_string(15) == "100");
}

TEST_CASE("integrality queries") {
    CHECK(Rational(-4).is_integer());
    CHECK(Rational(-4).to_integer() == -4);
    CHECK_FALSE(Rational(1, 2).is_integer());
    CHECK(BigFloat(-3).is_integer());
    CHECK(BigFloat(Rational(1, 2)).is_integer() == false);
    CHECK(Scalar(ComplexFloat(-2)).is_integer());
    CHECK(Scalar(ComplexFloat(BigFloat(1), BigFloat(1))).is_integer() == false);
}
