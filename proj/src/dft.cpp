#include "shortspec/dft.hpp"

#include "shortspec/errors.hpp"

#include <sstream>

namespace shortspec {

namespace {

// exp(sign * 2 pi i (m n mod L) / L); reducing m n first keeps the angle small.
Complex twiddle(const PrecisionContext& ctx, std::size_t m, std::size_t n, std::size_t len, int sign) {
    const std::size_t r = (m * n) % len;
    Real theta = pi(ctx) * static_cast<long>(2 * r) / static_cast<long>(len);
    if (sign < 0) theta = -theta;
    return exp_i(theta);
}

}  // namespace

DftSpectrum dft(const SampledSignal& signal) {
    const PrecisionContext& ctx = signal.context();
    const std::size_t len = signal.sample_count();
    const Real period = signal.delta_t() * static_cast<long>(len);  // (N+1) dt

    DftSpectrum out;
    out.bin_frequencies.reserve(len);
    out.bin_amplitudes.reserve(len);
    for (std::size_t m = 0; m < len; ++m) {
        Complex sum(ctx);
        for (std::size_t n = 0; n < len; ++n) sum += signal[n] * twiddle(ctx, m, n, len, +1);
        sum /= Real(ctx, static_cast<long>(len));
        out.bin_amplitudes.push_back(std::move(sum));

        // Bins above the midpoint alias to negative frequencies.
        const long signed_m = 2 * m > len ? static_cast<long>(m) - static_cast<long>(len) : static_cast<long>(m);
        out.bin_frequencies.push_back(pi(ctx) * (2 * signed_m) / period);
    }
    return out;
}

std::vector<Complex> inverse_dft(const DftSpectrum& spectrum) {
    const std::size_t len = spectrum.bin_amplitudes.size();
    if (len == 0) throw SizeError("inverse_dft of empty spectrum");
    const PrecisionContext& ctx = spectrum.bin_amplitudes.front().context();
    std::vector<Complex> out;
    out.reserve(len);
    for (std::size_t n = 0; n < len; ++n) {
        Complex sum(ctx);
        for (std::size_t m = 0; m < len; ++m) sum += spectrum.bin_amplitudes[m] * twiddle(ctx, m, n, len, -1);
        out.push_back(std::move(sum));
    }
    return out;
}

Real dominant_frequency(const DftSpectrum& spectrum) {
    if (spectrum.bin_amplitudes.empty()) throw SizeError("dominant_frequency of empty spectrum");
    const PrecisionContext& ctx = spectrum.bin_amplitudes.front().context();
    Real peak(ctx);
    for (const Complex& a : spectrum.bin_amplitudes) peak = max(peak, abs(a));
    const Real tie = peak * (Real(ctx, 1L) - pow10(ctx, -ctx.digits()));

    std::size_t best = spectrum.bin_amplitudes.size();
    for (std::size_t m = 0; m < spectrum.bin_amplitudes.size(); ++m) {
        if (abs(spectrum.bin_amplitudes[m]) < tie) continue;
        if (best == spectrum.bin_amplitudes.size() ||
            abs(spectrum.bin_frequencies[m]) < abs(spectrum.bin_frequencies[best]))
            best = m;
    }
    return spectrum.bin_frequencies[best];
}

std::string spectrum_csv(const DftSpectrum& spectrum, int significant_digits) {
    std::ostringstream os;
    os << "bin,frequency,magnitude,phase\n";
    for (std::size_t m = 0; m < spectrum.bin_amplitudes.size(); ++m) {
        const Complex& a = spectrum.bin_amplitudes[m];
        const Real phase = a.is_zero() ? Real(a.context()) : arg(a);
        os << m << ',' << spectrum.bin_frequencies[m].to_string(significant_digits) << ','
           << abs(a).to_string(significant_digits) << ',' << phase.to_string(significant_digits) << '\n';
    }
    return os.str();
}

}  // namespace shortspec
