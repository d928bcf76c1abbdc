#include "magweyl/fft.hpp"

#include <map>
#include <mutex>

namespace magweyl::fft {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

// Twiddle tables per (n, sign), built once.
const std::vector<Cx>& twiddles(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, std::vector<Cx>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Cx> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = Cx(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(key, std::move(tw)).first->second;
}

}  // namespace

void transform(Cx* data, std::size_t n, std::ptrdiff_t stride, int sign) {
    if (n <= 1) return;
    if (!is_power_of_two(n)) throw DomainError("fft: n must be a power of two");
    auto at = [&](std::size_t i) -> Cx& { return data[static_cast<std::ptrdiff_t>(i) * stride]; };

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(at(i), at(j));
    }

    const std::vector<Cx>& tw = twiddles(n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                Cx w = tw[k * step];
                Cx u = at(i + k);
                Cx v = at(i + k + len / 2) * w;
                at(i + k) = u + v;
                at(i + k + len / 2) = u - v;
            }
        }
    }
}

void transform(std::vector<Cx>& data, int sign) { transform(data.data(), data.size(), 1, sign); }

}  // namespace magweyl::fft
