#pragma once

// Direct (O(n^2)) discrete Fourier transform at working precision, used as
// the baseline estimator. With c_n = sum_k d_k exp(-i w_k n dt), the forward
// transform is
//   a_m = 1/(N+1) sum_n c_n exp(+2 pi i m n / (N+1)),
// so a component exactly on bin m (w = 2 pi m / ((N+1) dt)) lands in a_m and
// a_0 is the sample mean.

#include "shortspec/hiprec.hpp"
#include "shortspec/signal.hpp"

#include <string>
#include <vector>

namespace shortspec {

struct DftSpectrum {
    std::vector<Real> bin_frequencies;  // principal range (-pi/dt, pi/dt]
    std::vector<Complex> bin_amplitudes;
};

DftSpectrum dft(const SampledSignal& signal);

// c_n = sum_m a_m exp(-2 pi i m n / (N+1))
std::vector<Complex> inverse_dft(const DftSpectrum& spectrum);

// Frequency of the largest-modulus bin; near-ties go to the smaller |w|.
Real dominant_frequency(const DftSpectrum& spectrum);

// "bin,frequency,magnitude,phase" rows.
std::string spectrum_csv(const DftSpectrum& spectrum, int significant_digits = 20);

}  // namespace shortspec
