#include "shortspec/errors.hpp"
#include "shortspec/hiprec.hpp"

#include <gtest/gtest.h>

using namespace shortspec;

namespace {

// |a - b| <= 10^-e, compared at the wider context
bool close(const Real& a, const Real& b, long e) { return abs(a - b) <= pow10(wider(a.context(), b.context()), -e); }

}  // namespace

TEST(PrecisionContext, RejectsTooFewDigits) {
    EXPECT_THROW(PrecisionContext(15), ParameterError);
    EXPECT_THROW(PrecisionContext(30, -1), ParameterError);
    EXPECT_NO_THROW(PrecisionContext(16, 0));
}

TEST(PrecisionContext, BitsCoverWorkingDigits) {
    const PrecisionContext ctx(85);
    EXPECT_EQ(ctx.working_digits(), 95);
    EXPECT_GE(static_cast<double>(ctx.bits()), 95 * 3.3219);
}

TEST(Real, ParsesAndPrintsRoundTrip) {
    const PrecisionContext ctx(85);
    const Real x(ctx, "-4.07e-78");
    EXPECT_EQ(x.to_string(), "-4.07e-78");
    EXPECT_EQ(Real(ctx, x.to_string()), x);
    EXPECT_EQ(Real(ctx, "0").to_string(), "0");
    EXPECT_EQ(Real(ctx, "1e6").to_string(), "1e6");
    EXPECT_THROW(Real(ctx, "1.2.3"), ParseError);
    EXPECT_THROW(Real(ctx, ""), ParseError);
    EXPECT_THROW(Real(ctx, "nan"), ParseError);
}

TEST(Real, EightyFiveDigitsSurviveStrings) {
    const PrecisionContext ctx(85);
    const std::string digits =
        "0.1234567890123456789012345678901234567890123456789012345678901234567890123456789012345";
    const Real x(ctx, digits);
    const Real back(ctx, x.to_string());
    EXPECT_EQ(back, x);
    EXPECT_EQ(x.to_string(85), "1.234567890123456789012345678901234567890123456789012345678901234567890123456789012345e-1");
}

TEST(Real, ExpIIdentityAndSymmetry) {
    const PrecisionContext ctx(50);
    const Complex one = exp_i(Real(ctx));
    EXPECT_EQ(one.re, Real(ctx, 1L));
    EXPECT_TRUE(one.im.is_zero());

    const Complex minus_one = exp_i(pi(ctx));
    EXPECT_TRUE(close(minus_one.re, Real(ctx, -1L), 48));
    EXPECT_TRUE(close(minus_one.im, Real(ctx), 48));
}

TEST(Real, ExpIAgreesWithDoublePrecisionReference) {
    const PrecisionContext lo(50), hi(100);
    const Complex z = exp_i(Real(lo, "0.1"));
    const Complex ref = exp_i(Real(hi, "0.1"));
    EXPECT_TRUE(close(z.re, ref.re, 50));
    EXPECT_TRUE(close(z.im, ref.im, 50));
    EXPECT_TRUE(close(abs(z), Real(lo, 1L), 48));
}

TEST(Real, ExpIRejectsNonFinite) {
    const PrecisionContext ctx(30);
    Real inf(ctx, 1L);
    inf /= Real(ctx);
    EXPECT_THROW(exp_i(inf), DomainError);
}

TEST(Real, ArgAxesAndRoundTrip) {
    const PrecisionContext ctx(40);
    EXPECT_TRUE(arg(Complex(Real(ctx, 1L))).is_zero());
    EXPECT_TRUE(close(arg(Complex(Real(ctx), Real(ctx, -1L))), -pi(ctx) / 2L, 39));
    EXPECT_TRUE(close(arg(exp_i(Real(ctx, "-0.05"))), Real(ctx, "-0.05"), 38));
    EXPECT_THROW(arg(Complex(ctx)), DomainError);
    // principal branch includes +pi
    EXPECT_TRUE(close(arg(Complex(Real(ctx, -1L), Real(ctx))), pi(ctx), 39));
}

TEST(Real, ArgExpIRoundTripOverPrincipalRange) {
    const PrecisionContext ctx(60);
    for (int i = -9; i <= 10; ++i) {
        const Real theta = pi(ctx) * static_cast<long>(i) / 10L;
        EXPECT_TRUE(close(arg(exp_i(theta)), theta, 57)) << i;
    }
}

TEST(Real, SqrtAndLog) {
    const PrecisionContext ctx(50);
    EXPECT_EQ(sqrt(Real(ctx, 1L)), Real(ctx, 1L));
    EXPECT_TRUE(log(Real(ctx, 1L)).is_zero());
    const PrecisionContext hi(100);
    EXPECT_TRUE(close(sqrt(Real(ctx, 2L)), sqrt(Real(hi, 2L)), 50));
    EXPECT_THROW(sqrt(Real(ctx, -1L)), DomainError);
    EXPECT_THROW(log(Real(ctx)), DomainError);
    EXPECT_THROW(log(Real(ctx, -2L)), DomainError);
}

TEST(Real, FieldAxiomsToPrecision) {
    const PrecisionContext ctx(40);
    const Real a(ctx, "0.1"), b(ctx, "1e-30"), c(ctx, "-0.0999999999999");
    EXPECT_TRUE(close((a + b) + c, a + (b + c), 40));
    EXPECT_TRUE(close((a * b) * c, a * (b * c), 40 + 31));
    EXPECT_TRUE(close(a * (b + c), a * b + a * c, 41));
}

TEST(Real, MixedContextsWiden) {
    const PrecisionContext lo(20), hi(60);
    const Real x = Real(lo, 1L) / 3L;
    const Real y = Real(hi, 1L) / 3L;
    EXPECT_EQ((x + y).context(), hi);
    EXPECT_EQ((y * x).context(), hi);
}

TEST(Real, DeterministicDigits) {
    const PrecisionContext ctx(85);
    const auto run = [&] { return (exp_i(Real(ctx, "0.731")) * Real(ctx, "0.2")).re.to_string(); };
    EXPECT_EQ(run(), run());
}

TEST(Real, DecimalExponent) {
    const PrecisionContext ctx(30);
    EXPECT_EQ(Real(ctx, "4.07e-78").decimal_exponent(), -78);
    EXPECT_EQ(Real(ctx, "-12.5").decimal_exponent(), 1);
    EXPECT_EQ(Real(ctx).decimal_exponent(), 0);
}

TEST(Complex, DivisionAndSqrt) {
    const PrecisionContext ctx(40);
    const Complex a(Real(ctx, 3L), Real(ctx, -4L));
    const Complex b(Real(ctx, "1e-20"), Real(ctx, 2L));
    const Complex q = a / b;
    const Complex back = q * b;
    EXPECT_TRUE(close(back.re, a.re, 38));
    EXPECT_TRUE(close(back.im, a.im, 38));

    const Complex r = sqrt(Complex(Real(ctx, -4L)));
    EXPECT_TRUE(close(r.re, Real(ctx), 39));
    EXPECT_TRUE(close(r.im, Real(ctx, 2L), 39));
    EXPECT_EQ(abs(a), Real(ctx, 5L));
    EXPECT_EQ(conj(a).im, Real(ctx, 4L));
}
