#include "shortspec/hiprec.hpp"

#include "shortspec/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <utility>

namespace shortspec {

namespace {

constexpr double kLog2Of10 = 3.321928094887362347870319429489390175864831393;
constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

struct MpfrString {
    char* str;
    ~MpfrString() { mpfr_free_str(str); }
};

// Formats mantissa digits from mpfr_get_str ("-12345", exp) as "-1.2345e<exp-1>".
std::string format_decimal(const char* raw, mpfr_exp_t exp, bool strip_zeros) {
    std::string digits(raw);
    std::string sign;
    if (!digits.empty() && digits.front() == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    if (strip_zeros) {
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    }
    std::string out = sign + digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    const long e = static_cast<long>(exp) - 1;
    if (e != 0) out += "e" + std::to_string(e);
    return out;
}

}  // namespace

PrecisionContext::PrecisionContext(int digits, int guard_digits)
    : digits_(digits), guard_(guard_digits) {
    if (digits < kMinDigits)
        throw ParameterError("precision digits must be >= " + std::to_string(kMinDigits) +
                             ", got " + std::to_string(digits));
    if (guard_digits < 0)
        throw ParameterError("guard digits must be >= 0, got " + std::to_string(guard_digits));
    bits_ = static_cast<mpfr_prec_t>(std::ceil((digits + guard_digits) * kLog2Of10));
}

const PrecisionContext& wider(const PrecisionContext& a, const PrecisionContext& b) {
    if (a.bits() != b.bits()) return a.bits() > b.bits() ? a : b;
    return a.guard_digits() >= b.guard_digits() ? a : b;
}

// ---------------------------------------------------------------------------
// Real

Real::Real(const PrecisionContext& ctx) : ctx_(ctx) {
    mpfr_init2(value_, ctx_.bits());
    mpfr_set_zero(value_, 1);
}

Real::Real(const PrecisionContext& ctx, long value) : ctx_(ctx) {
    mpfr_init2(value_, ctx_.bits());
    mpfr_set_si(value_, value, kRnd);
}

Real::Real(const PrecisionContext& ctx, double value) : ctx_(ctx) {
    mpfr_init2(value_, ctx_.bits());
    mpfr_set_d(value_, value, kRnd);
}

Real::Real(const PrecisionContext& ctx, std::string_view decimal) : ctx_(ctx) {
    mpfr_init2(value_, ctx_.bits());
    const std::string text(decimal);
    bool ok = !text.empty() && !std::isspace(static_cast<unsigned char>(text.front()));
    if (ok) {
        char* end = nullptr;
        mpfr_strtofr(value_, text.c_str(), &end, 10, kRnd);
        ok = end == text.c_str() + text.size() && mpfr_number_p(value_);
    }
    if (!ok) {
        mpfr_clear(value_);
        throw ParseError("decimal", "not a decimal number: \"" + text + "\"");
    }
}

Real::Real(const Real& other) : ctx_(other.ctx_) {
    mpfr_init2(value_, ctx_.bits());
    mpfr_set(value_, other.value_, kRnd);
}

Real::Real(Real&& other) noexcept : ctx_(other.ctx_) {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this == &other) return *this;
    if (ctx_.bits() != other.ctx_.bits()) mpfr_set_prec(value_, other.ctx_.bits());
    ctx_ = other.ctx_;
    mpfr_set(value_, other.value_, kRnd);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this == &other) return *this;
    std::swap(ctx_, other.ctx_);
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_context(const PrecisionContext& ctx) const {
    Real out(ctx);
    mpfr_set(out.value_, value_, kRnd);
    return out;
}

namespace {

// Widens `target` in place when `other` carries more precision.
void widen_to(Real& target, const Real& other) {
    if (other.context().bits() > target.context().bits()) target = target.with_context(other.context());
}

}  // namespace

Real& Real::operator+=(const Real& rhs) {
    widen_to(*this, rhs);
    mpfr_add(value_, value_, rhs.value_, kRnd);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    widen_to(*this, rhs);
    mpfr_sub(value_, value_, rhs.value_, kRnd);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    widen_to(*this, rhs);
    mpfr_mul(value_, value_, rhs.value_, kRnd);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    widen_to(*this, rhs);
    mpfr_div(value_, value_, rhs.value_, kRnd);
    return *this;
}

Real& Real::operator*=(long rhs) {
    mpfr_mul_si(value_, value_, rhs, kRnd);
    return *this;
}

Real& Real::operator/=(long rhs) {
    mpfr_div_si(value_, value_, rhs, kRnd);
    return *this;
}

Real Real::operator-() const {
    Real out(*this);
    mpfr_neg(out.value_, out.value_, kRnd);
    return out;
}

long Real::decimal_exponent() const {
    if (is_zero() || !is_finite()) return 0;
    mpfr_exp_t exp = 0;
    MpfrString s{mpfr_get_str(nullptr, &exp, 10, 2, value_, kRnd)};
    return static_cast<long>(exp) - 1;
}

std::string Real::to_string() const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
    if (is_zero()) return "0";
    // Values that came from short decimals ("4.07e-78") print that way again;
    // everything else gets enough digits to read back exactly.
    mpfr_exp_t exp = 0;
    MpfrString nominal{mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(ctx_.digits()), value_, kRnd)};
    std::string text = format_decimal(nominal.str, exp, true);
    mpfr_t back;
    mpfr_init2(back, ctx_.bits());
    mpfr_strtofr(back, text.c_str(), nullptr, 10, kRnd);
    const bool exact = mpfr_equal_p(back, value_) != 0;
    mpfr_clear(back);
    if (exact) return text;
    MpfrString full{mpfr_get_str(nullptr, &exp, 10, 0, value_, kRnd)};
    return format_decimal(full.str, exp, true);
}

std::string Real::to_string(int significant) const {
    if (!is_finite() || is_zero()) return to_string();
    if (significant < 1) significant = 1;
    mpfr_exp_t exp = 0;
    MpfrString s{mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(significant), value_, kRnd)};
    return format_decimal(s.str, exp, true);
}

Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
Real operator/(Real lhs, long rhs) { return lhs /= rhs; }

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.get(), b.get());
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

Real pi(const PrecisionContext& ctx) {
    Real out(ctx);
    mpfr_const_pi(out.get(), kRnd);
    return out;
}

Real pow10(const PrecisionContext& ctx, long e) {
    Real out(ctx, 10L);
    mpfr_pow_si(out.get(), out.get(), e, kRnd);
    return out;
}

Real abs(const Real& x) {
    Real out(x);
    mpfr_abs(out.get(), out.get(), kRnd);
    return out;
}

Real sqrt(const Real& x) {
    if (x.sign() < 0 || !x.is_finite()) throw DomainError("sqrt of negative or non-finite value " + x.to_string(20));
    Real out(x.context());
    mpfr_sqrt(out.get(), x.get(), kRnd);
    return out;
}

Real log(const Real& x) {
    if (x.sign() <= 0 || !x.is_finite()) throw DomainError("log of non-positive or non-finite value " + x.to_string(20));
    Real out(x.context());
    mpfr_log(out.get(), x.get(), kRnd);
    return out;
}

Real log10(const Real& x) {
    if (x.sign() <= 0 || !x.is_finite()) throw DomainError("log10 of non-positive or non-finite value " + x.to_string(20));
    Real out(x.context());
    mpfr_log10(out.get(), x.get(), kRnd);
    return out;
}

Real exp(const Real& x) {
    Real out(x.context());
    mpfr_exp(out.get(), x.get(), kRnd);
    return out;
}

Real sin(const Real& x) {
    Real out(x.context());
    mpfr_sin(out.get(), x.get(), kRnd);
    return out;
}

Real cos(const Real& x) {
    Real out(x.context());
    mpfr_cos(out.get(), x.get(), kRnd);
    return out;
}

Real atan2(const Real& y, const Real& x) {
    Real out(wider(x.context(), y.context()));
    mpfr_atan2(out.get(), y.get(), x.get(), kRnd);
    return out;
}

Real hypot(const Real& a, const Real& b) {
    Real out(wider(a.context(), b.context()));
    mpfr_hypot(out.get(), a.get(), b.get(), kRnd);
    return out;
}

Real pow(const Real& base, long exponent) {
    Real out(base.context());
    mpfr_pow_si(out.get(), base.get(), exponent, kRnd);
    return out;
}

Real pow(const Real& base, const Real& exponent) {
    Real out(wider(base.context(), exponent.context()));
    mpfr_pow(out.get(), base.get(), exponent.get(), kRnd);
    return out;
}

const Real& max(const Real& a, const Real& b) { return (a < b) ? b : a; }
const Real& min(const Real& a, const Real& b) { return (b < a) ? b : a; }

// ---------------------------------------------------------------------------
// Complex

Complex::Complex(Real real, Real imag) : re(std::move(real)), im(std::move(imag)) {
    if (re.context() != im.context()) {
        const PrecisionContext ctx = wider(re.context(), im.context());
        re = re.with_context(ctx);
        im = im.with_context(ctx);
    }
}

Complex::Complex(Real real) : re(std::move(real)), im(re.context()) {}

Complex& Complex::operator+=(const Complex& rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
    re -= rhs.re;
    im -= rhs.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
    const PrecisionContext& ctx = wider(context(), rhs.context());
    Real t(ctx);
    Real new_re(ctx);
    mpfr_mul(new_re.get(), re.get(), rhs.re.get(), kRnd);
    mpfr_mul(t.get(), im.get(), rhs.im.get(), kRnd);
    mpfr_sub(new_re.get(), new_re.get(), t.get(), kRnd);
    Real new_im(ctx);
    mpfr_mul(new_im.get(), re.get(), rhs.im.get(), kRnd);
    mpfr_mul(t.get(), im.get(), rhs.re.get(), kRnd);
    mpfr_add(new_im.get(), new_im.get(), t.get(), kRnd);
    re = std::move(new_re);
    im = std::move(new_im);
    return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
    // Smith's algorithm keeps intermediate magnitudes bounded.
    if (rhs.is_zero()) throw DomainError("complex division by zero");
    if (abs(rhs.re) >= abs(rhs.im)) {
        const Real r = rhs.im / rhs.re;
        const Real den = rhs.re + r * rhs.im;
        Real new_re = (re + im * r) / den;
        Real new_im = (im - re * r) / den;
        re = std::move(new_re);
        im = std::move(new_im);
    } else {
        const Real r = rhs.re / rhs.im;
        const Real den = rhs.im + r * rhs.re;
        Real new_re = (re * r + im) / den;
        Real new_im = (im * r - re) / den;
        re = std::move(new_re);
        im = std::move(new_im);
    }
    return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
    re *= rhs;
    im *= rhs;
    return *this;
}

Complex& Complex::operator/=(const Real& rhs) {
    re /= rhs;
    im /= rhs;
    return *this;
}

Complex Complex::operator-() const { return Complex(-re, -im); }

Complex operator+(Complex lhs, const Complex& rhs) { return lhs += rhs; }
Complex operator-(Complex lhs, const Complex& rhs) { return lhs -= rhs; }
Complex operator*(Complex lhs, const Complex& rhs) { return lhs *= rhs; }
Complex operator/(Complex lhs, const Complex& rhs) { return lhs /= rhs; }
Complex operator*(Complex lhs, const Real& rhs) { return lhs *= rhs; }
Complex operator*(const Real& lhs, Complex rhs) { return rhs *= lhs; }
Complex operator/(Complex lhs, const Real& rhs) { return lhs /= rhs; }

bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << z.re << ", " << z.im << ')';
}

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) {
    Real out = z.re * z.re;
    Real t = z.im * z.im;
    out += t;
    return out;
}

Real arg(const Complex& z) {
    if (z.is_zero()) throw DomainError("arg of zero");
    if (!z.is_finite()) throw DomainError("arg of non-finite value");
    return atan2(z.im, z.re);
}

Complex sqrt(const Complex& z) {
    if (z.is_zero()) return Complex(z.context());
    // sqrt(z) = sqrt((|z| + re)/2) + i sign(im) sqrt((|z| - re)/2), evaluated
    // through whichever half avoids cancellation.
    const Real r = abs(z);
    if (z.re.sign() >= 0) {
        Real a = sqrt((r + z.re) / 2L);
        Real b = z.im / (a * 2L);
        return Complex(std::move(a), std::move(b));
    }
    Real b = sqrt((r - z.re) / 2L);
    if (z.im.sign() < 0) b = -b;
    Real a = z.im / (b * 2L);
    return Complex(std::move(a), std::move(b));
}

Complex exp_i(const Real& theta) {
    if (!theta.is_finite()) throw DomainError("exp_i of non-finite angle");
    Real s(theta.context());
    Real c(theta.context());
    mpfr_sin_cos(s.get(), c.get(), theta.get(), kRnd);
    return Complex(std::move(c), std::move(s));
}

Complex conj_mul(const Complex& a, const Complex& b) {
    // (a.re - i a.im)(b.re + i b.im)
    const PrecisionContext& ctx = wider(a.context(), b.context());
    Real t(ctx);
    Real re(ctx);
    mpfr_mul(re.get(), a.re.get(), b.re.get(), kRnd);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), kRnd);
    mpfr_add(re.get(), re.get(), t.get(), kRnd);
    Real im(ctx);
    mpfr_mul(im.get(), a.re.get(), b.im.get(), kRnd);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), kRnd);
    mpfr_sub(im.get(), im.get(), t.get(), kRnd);
    return Complex(std::move(re), std::move(im));
}

}  // namespace shortspec
