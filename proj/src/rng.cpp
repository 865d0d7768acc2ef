#include "shortspec/rng.hpp"

#include "shortspec/errors.hpp"

namespace shortspec {

Real uniform01(SplitMix64& gen, const PrecisionContext& ctx) {
    // Horner in base 2^64 from the least significant word up.
    const long words = static_cast<long>(ctx.bits() / 64) + 1;
    Real u(ctx);
    Real word(ctx);
    for (long i = 0; i < words; ++i) {
        static_assert(sizeof(unsigned long) == 8);
        mpfr_set_ui(word.get(), gen.next(), MPFR_RNDN);
        u += word;
        mpfr_div_2ui(u.get(), u.get(), 64, MPFR_RNDN);
    }
    // Rounding can land exactly on 1 when all top bits are set.
    if (u >= Real(ctx, 1L)) u = Real(ctx);
    return u;
}

Real uniform_open(SplitMix64& gen, const Real& lo, const Real& hi) {
    if (!(lo < hi)) throw ParameterError("empty interval (" + lo.to_string(10) + ", " + hi.to_string(10) + ")");
    const PrecisionContext& ctx = wider(lo.context(), hi.context());
    for (;;) {
        Real x = lo + (hi - lo) * uniform01(gen, ctx);
        if (x > lo && x < hi) return x;
    }
}

}  // namespace shortspec
