#ifndef MAGWEYL_FFT_HPP
#define MAGWEYL_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "magweyl/common.hpp"

namespace magweyl::fft {

// In-place radix-2 transform of n points with stride `stride` starting at
// data. sign = -1: sum_j f_j e^{-2pi i jk/n};  sign = +1: e^{+2pi i jk/n}.
// No normalization is applied.
void transform(Cx* data, std::size_t n, std::ptrdiff_t stride, int sign);

// Convenience on a contiguous buffer.
void transform(std::vector<Cx>& data, int sign);

bool is_power_of_two(std::size_t n);

}  // namespace magweyl::fft

#endif
