#pragma once

// Arbitrary-precision real and complex scalars on top of GNU MPFR.
//
// Precision is specified in decimal significant digits. Every value carries the
// PrecisionContext it was created under; binary operations produce a result in
// the wider of the two operand contexts. All arithmetic rounds to nearest.

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace shortspec {

class PrecisionContext {
public:
    static constexpr int kMinDigits = 16;
    static constexpr int kDefaultGuard = 10;

    PrecisionContext() : PrecisionContext(100) {}
    explicit PrecisionContext(int digits, int guard_digits = kDefaultGuard);

    int digits() const noexcept { return digits_; }
    int guard_digits() const noexcept { return guard_; }
    int working_digits() const noexcept { return digits_ + guard_; }

    // Binary precision able to hold working_digits() decimal digits.
    mpfr_prec_t bits() const noexcept { return bits_; }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
    int guard_;
    mpfr_prec_t bits_;
};

// The wider of two contexts (more digits wins, then more guard digits).
const PrecisionContext& wider(const PrecisionContext& a, const PrecisionContext& b);

class Real {
public:
    explicit Real(const PrecisionContext& ctx);
    Real(const PrecisionContext& ctx, long value);
    Real(const PrecisionContext& ctx, int value) : Real(ctx, static_cast<long>(value)) {}
    Real(const PrecisionContext& ctx, double value);
    // Parses a decimal string such as "-4.07e-78"; throws ParseError on junk.
    Real(const PrecisionContext& ctx, std::string_view decimal);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    const PrecisionContext& context() const noexcept { return ctx_; }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_ptr get() noexcept { return value_; }

    // Re-rounds the value into another context.
    Real with_context(const PrecisionContext& ctx) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);
    Real operator-() const;

    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }

    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    long to_long() const noexcept { return mpfr_get_si(value_, MPFR_RNDN); }
    // Decimal exponent e with value = m * 10^e, 1 <= |m| < 10 (0 for zero).
    long decimal_exponent() const;

    // Shortest decimal string that reads back to the identical binary value.
    std::string to_string() const;
    // Rounded to `significant` digits, for display.
    std::string to_string(int significant) const;

private:
    PrecisionContext ctx_;
    mpfr_t value_;
};

Real operator+(Real lhs, const Real& rhs);
Real operator-(Real lhs, const Real& rhs);
Real operator*(Real lhs, const Real& rhs);
Real operator/(Real lhs, const Real& rhs);
Real operator*(Real lhs, long rhs);
Real operator*(long lhs, Real rhs);
Real operator/(Real lhs, long rhs);

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

Real pi(const PrecisionContext& ctx);
// 10^e exactly rounded in ctx.
Real pow10(const PrecisionContext& ctx, long e);

Real abs(const Real& x);
Real sqrt(const Real& x);   // DomainError for x < 0
Real log(const Real& x);    // DomainError for x <= 0
Real log10(const Real& x);  // DomainError for x <= 0
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& a, const Real& b);
Real pow(const Real& base, long exponent);
Real pow(const Real& base, const Real& exponent);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

struct Complex {
    Real re;
    Real im;

    explicit Complex(const PrecisionContext& ctx) : re(ctx), im(ctx) {}
    Complex(Real real, Real imag);
    explicit Complex(Real real);

    const PrecisionContext& context() const noexcept { return re.context(); }

    Complex& operator+=(const Complex& rhs);
    Complex& operator-=(const Complex& rhs);
    Complex& operator*=(const Complex& rhs);
    Complex& operator/=(const Complex& rhs);
    Complex& operator*=(const Real& rhs);
    Complex& operator/=(const Real& rhs);
    Complex operator-() const;

    bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }
    bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
};

Complex operator+(Complex lhs, const Complex& rhs);
Complex operator-(Complex lhs, const Complex& rhs);
Complex operator*(Complex lhs, const Complex& rhs);
Complex operator/(Complex lhs, const Complex& rhs);
Complex operator*(Complex lhs, const Real& rhs);
Complex operator*(const Real& lhs, Complex rhs);
Complex operator/(Complex lhs, const Real& rhs);
bool operator==(const Complex& a, const Complex& b);

std::ostream& operator<<(std::ostream& os, const Complex& z);

Complex conj(const Complex& z);
Real abs(const Complex& z);
// |z|^2
Real norm(const Complex& z);
// Principal argument in (-pi, pi]; DomainError for z = 0.
Real arg(const Complex& z);
// Principal square root (branch cut on the negative real axis).
Complex sqrt(const Complex& z);
// cos(theta) + i sin(theta); DomainError for non-finite theta.
Complex exp_i(const Real& theta);

// conj(a) * b, the building block of inner products.
Complex conj_mul(const Complex& a, const Complex& b);

}  // namespace shortspec
