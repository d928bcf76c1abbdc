#ifndef MAGWEYL_GRID_HPP
#define MAGWEYL_GRID_HPP

#include <array>
#include <string>
#include <vector>

#include "magweyl/common.hpp"
#include "magweyl/expression.hpp"

namespace magweyl {

// Uniform periodic phase-space grid. Position nodes x_a = -h + a*dx on each
// axis; the momentum grid is the FFT-dual grid (dxi = 2*pi/L) indexed so that
// xi_b = (b - N/2)*dxi runs from -N/2*dxi upward. With this pairing
// dx*dxi = 2*pi/N and the discrete symplectic Fourier transform is exactly
// involutive.
struct GridSpec {
    int dim = 1;
    std::array<double, 2> half_length{6.0, 6.0};
    int n = 64;

    GridSpec() = default;
    GridSpec(int d, double h, int npts);
    GridSpec(int d, std::array<double, 2> h, int npts);

    double box_length(int axis) const { return 2.0 * half_length[static_cast<size_t>(axis)]; }
    double dx(int axis) const { return box_length(axis) / n; }
    double dxi(int axis) const { return kTwoPi / box_length(axis); }
    double pos(int axis, int a) const { return -half_length[static_cast<size_t>(axis)] + a * dx(axis); }
    double mom(int axis, int b) const { return (b - n / 2) * dxi(axis); }

    std::size_t pos_count() const;    // N^d
    std::size_t field_count() const;  // N^{2d}
    double pos_weight() const;        // dx^d
    double mom_weight() const;        // dxi^d
    // multi-index <-> flat position index
    std::array<int, 2> pos_unflatten(std::size_t p) const;
    std::size_t pos_flatten(const std::array<int, 2>& a) const;
    Vec pos_point(std::size_t p) const;
    Vec mom_point(std::size_t m) const;

    bool operator==(const GridSpec& o) const;
};

// Complex function sampled over the (x, xi) product grid; flat layout is
// position-major: idx = p * N^d + m.
struct SymbolField {
    GridSpec grid;
    std::vector<Cx> values;
    std::string order_label;  // nominal Hormander order, metadata only

    SymbolField() = default;
    explicit SymbolField(const GridSpec& g, Cx fill = Cx(0.0, 0.0));

    Cx& at(std::size_t p, std::size_t m);
    Cx at(std::size_t p, std::size_t m) const;

    double sup_norm() const;
    double l2_norm() const;  // with quadrature weights (dx*dxi)^d
    SymbolField& operator+=(const SymbolField& o);
    SymbolField& operator-=(const SymbolField& o);
    SymbolField& operator*=(Cx s);
};

struct WaveFunction {
    GridSpec grid;
    std::vector<Cx> values;

    WaveFunction() = default;
    explicit WaveFunction(const GridSpec& g, Cx fill = Cx(0.0, 0.0));

    double l2_norm() const;  // weight dx^d
    Cx inner(const WaveFunction& other) const;  // <this, other>, conjugates *this
};

namespace grid_ops {

// Pointwise sampling of an analytic expression; throws on non-finite samples.
SymbolField sample_symbol(const expr::Expression& e, const GridSpec& g);
WaveFunction sample_wavefunction(const expr::Expression& e, const GridSpec& g);

// Discrete symplectic Fourier transform
//   (F f)(X) = (2*pi)^{-d} \int dX' e^{i sigma(X,X')} f(X'),
// sigma(X,X') = xi.x' - x.xi', realized by paired FFTs; exactly involutive.
SymbolField symplectic_fourier(const SymbolField& f);

enum class Slot { Position, Momentum };

// FFT differentiation along one axis of the chosen slot.
SymbolField spectral_derivative(const SymbolField& f, int axis, Slot slot);
WaveFunction spectral_derivative(const WaveFunction& u, int axis);

// L1 norm with phase-space quadrature weights (used by the norm bound test).
double l1_norm(const SymbolField& f);

// Trigonometric interpolation of a wave function at an arbitrary point
// (periodic continuation).
Cx interpolate(const WaveFunction& u, const Vec& x);
// Same for a symbol field at phase-space point (x, xi).
Cx interpolate(const SymbolField& f, const Vec& x, const Vec& xi);

// Shift the momentum argument: out(x, xi) = f(x, xi + delta) by exact modal
// translation (delta need not be grid-commensurate).
SymbolField shift_momentum(const SymbolField& f, const Vec& delta);
// Position-dependent momentum shift: out(x, xi) = f(x, xi - shift(x)).
SymbolField shift_momentum_by_field(const SymbolField& f,
                                    const std::vector<Vec>& shift_per_pos);

std::string to_json(const SymbolField& f);
SymbolField symbol_from_json(const std::string& text);
std::string to_json(const WaveFunction& u);
WaveFunction wavefunction_from_json(const std::string& text);

}  // namespace grid_ops
}  // namespace magweyl

#endif
