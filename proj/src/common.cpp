#include "magweyl/common.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>

namespace magweyl::util {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_thread_count(int n) { g_threads.store(std::max(0, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int nt = thread_count();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    std::exception_ptr first_error;
    std::mutex error_mu;
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn, &first_error, &error_mu] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

Quadrature gauss_legendre01(int n) {
    // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
    Quadrature q;
    q.nodes.resize(static_cast<size_t>(n));
    q.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.nodes[static_cast<size_t>(n - 1 - i)] = 0.5 * (x + 1.0);
        q.weights[static_cast<size_t>(n - 1 - i)] = 0.5 * w;
    }
    return q;
}

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          double min_decay, int min_points) {
    if (x.size() != y.size() || x.empty()) throw DomainError("fit_loglog_slope: bad input");
    // Scan from the largest x down and keep points while the remainder keeps
    // decaying; once it stalls it has hit the discretization floor and the
    // remaining points are discarded.
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    std::vector<double> lx, ly;
    double prev = 0.0;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        std::size_t i = order[idx];
        if (y[i] <= 0.0 || x[i] <= 0.0) break;
        if (idx > 0 && y[i] * min_decay > prev) break;
        lx.push_back(std::log2(x[i]));
        ly.push_back(std::log2(y[i]));
        prev = y[i];
    }
    (void)min_points;
    SlopeFit f;
    f.points_used = static_cast<int>(lx.size());
    if (lx.size() < 2) return f;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(ly.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

}  // namespace magweyl::util
