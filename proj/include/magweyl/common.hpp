#ifndef MAGWEYL_COMMON_HPP
#define MAGWEYL_COMMON_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace magweyl {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Low-dimensional point; only the first `dim` components are meaningful.
struct Vec {
    std::array<double, 2> c{0.0, 0.0};

    Vec() = default;
    Vec(double x) : c{x, 0.0} {}
    Vec(double x, double y) : c{x, y} {}

    double& operator[](int i) { return c[static_cast<size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<size_t>(i)]; }

    Vec operator+(const Vec& o) const { return {c[0] + o.c[0], c[1] + o.c[1]}; }
    Vec operator-(const Vec& o) const { return {c[0] - o.c[0], c[1] - o.c[1]}; }
    Vec operator*(double s) const { return {c[0] * s, c[1] * s}; }
    Vec& operator+=(const Vec& o) {
        c[0] += o.c[0];
        c[1] += o.c[1];
        return *this;
    }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double dot(const Vec& a, const Vec& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
}

class CapabilityError : public std::runtime_error {
  public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

namespace util {

// Number of worker threads used by parallel_for; settable from the CLI.
int thread_count();
void set_thread_count(int n);

// Plain blocked parallel loop. fn(i) must only write state owned by index i,
// so results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Gauss-Legendre nodes/weights on [0,1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre01(int n);

// Least-squares slope of log2(y) against log2(x). Points are taken in
// decreasing x until the decay per step falls below `min_decay`, which marks
// the discretization floor; the rest are discarded.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points_used = 0;
};
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          double min_decay = 1.25, int min_points = 2);

}  // namespace util
}  // namespace magweyl

#endif
