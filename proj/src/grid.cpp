#include "magweyl/grid.hpp"

#include <algorithm>
#include <cmath>

#include "magweyl/fft.hpp"
#include "json.hpp"

namespace magweyl {

GridSpec::GridSpec(int d, double h, int npts) : GridSpec(d, std::array<double, 2>{h, h}, npts) {}

GridSpec::GridSpec(int d, std::array<double, 2> h, int npts) : dim(d), half_length(h), n(npts) {
    if (d != 1 && d != 2) throw DomainError("GridSpec: dim must be 1 or 2");
    if (n < 8) throw DomainError("GridSpec: N must be >= 8");
    if (!fft::is_power_of_two(static_cast<std::size_t>(n)))
        throw DomainError("GridSpec: N must be a power of two");
    for (int ax = 0; ax < d; ++ax)
        if (half_length[static_cast<size_t>(ax)] <= 0.0)
            throw DomainError("GridSpec: box half-length must be positive");
}

std::size_t GridSpec::pos_count() const {
    std::size_t c = 1;
    for (int i = 0; i < dim; ++i) c *= static_cast<std::size_t>(n);
    return c;
}

std::size_t GridSpec::field_count() const { return pos_count() * pos_count(); }

double GridSpec::pos_weight() const {
    double w = 1.0;
    for (int i = 0; i < dim; ++i) w *= dx(i);
    return w;
}

double GridSpec::mom_weight() const {
    double w = 1.0;
    for (int i = 0; i < dim; ++i) w *= dxi(i);
    return w;
}

std::array<int, 2> GridSpec::pos_unflatten(std::size_t p) const {
    if (dim == 1) return {static_cast<int>(p), 0};
    return {static_cast<int>(p / static_cast<std::size_t>(n)),
            static_cast<int>(p % static_cast<std::size_t>(n))};
}

std::size_t GridSpec::pos_flatten(const std::array<int, 2>& a) const {
    if (dim == 1) return static_cast<std::size_t>(a[0]);
    return static_cast<std::size_t>(a[0]) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(a[1]);
}

Vec GridSpec::pos_point(std::size_t p) const {
    auto a = pos_unflatten(p);
    Vec v;
    for (int ax = 0; ax < dim; ++ax) v[ax] = pos(ax, a[static_cast<size_t>(ax)]);
    return v;
}

Vec GridSpec::mom_point(std::size_t m) const {
    auto b = pos_unflatten(m);
    Vec v;
    for (int ax = 0; ax < dim; ++ax) v[ax] = mom(ax, b[static_cast<size_t>(ax)]);
    return v;
}

bool GridSpec::operator==(const GridSpec& o) const {
    return dim == o.dim && n == o.n && half_length == o.half_length;
}

SymbolField::SymbolField(const GridSpec& g, Cx fill) : grid(g), values(g.field_count(), fill) {}

Cx& SymbolField::at(std::size_t p, std::size_t m) { return values[p * grid.pos_count() + m]; }
Cx SymbolField::at(std::size_t p, std::size_t m) const { return values[p * grid.pos_count() + m]; }

double SymbolField::sup_norm() const {
    double s = 0.0;
    for (const Cx& v : values) s = std::max(s, std::abs(v));
    return s;
}

double SymbolField::l2_norm() const {
    double s = 0.0;
    for (const Cx& v : values) s += std::norm(v);
    return std::sqrt(s * grid.pos_weight() * grid.mom_weight());
}

SymbolField& SymbolField::operator+=(const SymbolField& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

SymbolField& SymbolField::operator-=(const SymbolField& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

SymbolField& SymbolField::operator*=(Cx s) {
    for (Cx& v : values) v *= s;
    return *this;
}

WaveFunction::WaveFunction(const GridSpec& g, Cx fill) : grid(g), values(g.pos_count(), fill) {}

double WaveFunction::l2_norm() const {
    double s = 0.0;
    for (const Cx& v : values) s += std::norm(v);
    return std::sqrt(s * grid.pos_weight());
}

Cx WaveFunction::inner(const WaveFunction& other) const {
    Cx s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += std::conj(values[i]) * other.values[i];
    return s * grid.pos_weight();
}

namespace grid_ops {

namespace {

// Axis t of the flat N^{2d} array; t in [0, 2*dim), position axes first.
struct AxisView {
    std::size_t stride;
    std::size_t nlines;
};

AxisView axis_view(const GridSpec& g, int t) {
    int total_axes = 2 * g.dim;
    std::size_t stride = 1;
    for (int j = total_axes - 1; j > t; --j) stride *= static_cast<std::size_t>(g.n);
    return {stride, g.field_count() / static_cast<std::size_t>(g.n)};
}

// Applies fn to every 1D line along axis t. fn(pointer, stride).
void for_each_line(std::vector<Cx>& v, const GridSpec& g, int t,
                   const std::function<void(Cx*, std::size_t)>& fn) {
    AxisView av = axis_view(g, t);
    std::size_t n = static_cast<std::size_t>(g.n);
    std::size_t block = av.stride * n;
    std::size_t nblocks = v.size() / block;
    util::parallel_for(nblocks, [&](std::size_t bi) {
        std::size_t base = bi * block;
        for (std::size_t off = 0; off < av.stride; ++off) fn(v.data() + base + off, av.stride);
    });
}

// In-place along a line: data_j <- sum over raw FFT with (-1)^j twiddles.
// dir=-1: modes_j = (1/N) sum_a f_a e^{-i w_j u_a};  dir=+1: inverse.
// Here u_a = (a - N/2)*du and w_j = (j - N/2)*dw with du*dw = 2*pi/N, which is
// the same index algebra for position and momentum axes.
void line_to_modes(Cx* d, std::size_t stride, std::size_t n) {
    for (std::size_t a = 1; a < n; a += 2) d[a * stride] = -d[a * stride];
    fft::transform(d, n, static_cast<std::ptrdiff_t>(stride), -1);
    double inv = 1.0 / static_cast<double>(n);
    for (std::size_t b = 0; b < n; ++b) d[b * stride] *= (b % 2 ? -inv : inv);
}

void line_from_modes(Cx* d, std::size_t stride, std::size_t n) {
    for (std::size_t b = 1; b < n; b += 2) d[b * stride] = -d[b * stride];
    fft::transform(d, n, static_cast<std::ptrdiff_t>(stride), +1);
    for (std::size_t a = 1; a < n; a += 2) d[a * stride] = -d[a * stride];
}

}  // namespace

SymbolField sample_symbol(const expr::Expression& e, const GridSpec& g) {
    SymbolField f(g);
    std::size_t np = g.pos_count();
    util::parallel_for(np, [&](std::size_t p) {
        Vec x = g.pos_point(p);
        for (std::size_t m = 0; m < np; ++m) f.at(p, m) = e.eval(x, g.mom_point(m));
    });
    return f;
}

WaveFunction sample_wavefunction(const expr::Expression& e, const GridSpec& g) {
    WaveFunction u(g);
    for (std::size_t p = 0; p < g.pos_count(); ++p) u.values[p] = e.eval(g.pos_point(p));
    return u;
}

SymbolField symplectic_fourier(const SymbolField& f) {
    const GridSpec& g = f.grid;
    std::size_t n = static_cast<std::size_t>(g.n);
    std::vector<Cx> tmp = f.values;

    // position axes: out_b = dx * sum_a e^{+i xi_b x_a} in_a
    for (int ax = 0; ax < g.dim; ++ax) {
        double w = g.dx(ax);
        for_each_line(tmp, g, ax, [n, w](Cx* d, std::size_t stride) {
            line_from_modes(d, stride, n);  // e^{+i...} with unit amplitude
            for (std::size_t j = 0; j < n; ++j) d[j * stride] *= w;
        });
    }
    // momentum axes: out_a = dxi * sum_b e^{-i x_a xi_b} in_b
    for (int ax = 0; ax < g.dim; ++ax) {
        double w = g.dxi(ax) * static_cast<double>(n);
        for_each_line(tmp, g, g.dim + ax, [n, w](Cx* d, std::size_t stride) {
            line_to_modes(d, stride, n);  // (1/N) sum e^{-i...}
            for (std::size_t j = 0; j < n; ++j) d[j * stride] *= w;
        });
    }
    // The transformed position block now carries the new momentum index and
    // vice versa: swap the two index blocks.
    SymbolField out(g);
    out.order_label = f.order_label;
    std::size_t np = g.pos_count();
    double scale = 1.0;
    for (int ax = 0; ax < g.dim; ++ax) scale /= kTwoPi;
    util::parallel_for(np, [&](std::size_t p) {
        for (std::size_t m = 0; m < np; ++m) out.at(p, m) = scale * tmp[m * np + p];
    });
    return out;
}

SymbolField spectral_derivative(const SymbolField& f, int axis, Slot slot) {
    const GridSpec& g = f.grid;
    if (axis < 0 || axis >= g.dim) throw DomainError("spectral_derivative: axis out of range");
    SymbolField out = f;
    std::size_t n = static_cast<std::size_t>(g.n);
    int t = slot == Slot::Position ? axis : g.dim + axis;
    // dual frequencies: xi-values for a position axis, z-values (position-like)
    // for a momentum axis
    double dw = slot == Slot::Position ? g.dxi(axis) : g.dx(axis);
    for_each_line(out.values, g, t, [n, dw](Cx* d, std::size_t stride) {
        line_to_modes(d, stride, n);
        for (std::size_t j = 0; j < n; ++j) {
            double w = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dw;
            d[j * stride] *= Cx(0.0, w);
        }
        line_from_modes(d, stride, n);
    });
    return out;
}

WaveFunction spectral_derivative(const WaveFunction& u, int axis) {
    const GridSpec& g = u.grid;
    if (axis < 0 || axis >= g.dim) throw DomainError("spectral_derivative: axis out of range");
    WaveFunction out = u;
    std::size_t n = static_cast<std::size_t>(g.n);
    std::size_t stride = 1;
    for (int j = g.dim - 1; j > axis; --j) stride *= n;
    std::size_t block = stride * n;
    double dw = g.dxi(axis);
    for (std::size_t base = 0; base < out.values.size(); base += block)
        for (std::size_t off = 0; off < stride; ++off) {
            Cx* d = out.values.data() + base + off;
            line_to_modes(d, stride, n);
            for (std::size_t j = 0; j < n; ++j) {
                double w = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dw;
                d[j * stride] *= Cx(0.0, w);
            }
            line_from_modes(d, stride, n);
        }
    return out;
}

double l1_norm(const SymbolField& f) {
    double s = 0.0;
    for (const Cx& v : f.values) s += std::abs(v);
    return s * f.grid.pos_weight() * f.grid.mom_weight();
}

namespace {

// modal coefficients of a wave function (per-axis index algebra as above)
std::vector<Cx> wf_modes(const WaveFunction& u) {
    std::vector<Cx> m = u.values;
    const GridSpec& g = u.grid;
    std::size_t n = static_cast<std::size_t>(g.n);
    std::size_t stride = 1;
    for (int ax = g.dim - 1; ax >= 0; --ax) {
        std::size_t block = stride * n;
        for (std::size_t base = 0; base < m.size(); base += block)
            for (std::size_t off = 0; off < stride; ++off)
                line_to_modes(m.data() + base + off, stride, n);
        stride *= n;
    }
    return m;
}

}  // namespace

Cx interpolate(const WaveFunction& u, const Vec& x) {
    const GridSpec& g = u.grid;
    std::vector<Cx> m = wf_modes(u);
    std::size_t n = static_cast<std::size_t>(g.n);
    if (g.dim == 1) {
        Cx s = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            double xi = g.mom(0, static_cast<int>(b));
            s += m[b] * std::polar(1.0, xi * x[0]);
        }
        return s;
    }
    Cx s = 0.0;
    for (std::size_t b1 = 0; b1 < n; ++b1) {
        Cx inner = 0.0;
        for (std::size_t b2 = 0; b2 < n; ++b2)
            inner += m[b1 * n + b2] * std::polar(1.0, g.mom(1, static_cast<int>(b2)) * x[1]);
        s += inner * std::polar(1.0, g.mom(0, static_cast<int>(b1)) * x[0]);
    }
    return s;
}

Cx interpolate(const SymbolField& f, const Vec& x, const Vec& xi) {
    // direct modal sum; fine for probes, not meant for bulk evaluation
    const GridSpec& g = f.grid;
    std::vector<Cx> m = f.values;
    std::size_t n = static_cast<std::size_t>(g.n);
    for (int t = 2 * g.dim - 1; t >= 0; --t)
        for_each_line(m, g, t, [n](Cx* d, std::size_t s) { line_to_modes(d, s, n); });
    std::size_t np = g.pos_count();
    Cx s = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        Vec w = g.mom_point(p);  // xi-frequencies dual to the position axes
        Cx phase_x = std::polar(1.0, dot(w, x, g.dim));
        Cx inner = 0.0;
        for (std::size_t q = 0; q < np; ++q) {
            Vec z = g.pos_point(q);  // z-frequencies dual to the momentum axes
            inner += m[p * np + q] * std::polar(1.0, dot(z, xi, g.dim));
        }
        s += phase_x * inner;
    }
    return s;
}

SymbolField shift_momentum(const SymbolField& f, const Vec& delta) {
    const GridSpec& g = f.grid;
    SymbolField out = f;
    std::size_t n = static_cast<std::size_t>(g.n);
    for (int ax = 0; ax < g.dim; ++ax) {
        double d0 = delta[ax];
        if (d0 == 0.0) continue;
        double dz = g.dx(ax);
        for_each_line(out.values, g, g.dim + ax, [n, d0, dz](Cx* d, std::size_t stride) {
            line_to_modes(d, stride, n);
            for (std::size_t j = 0; j < n; ++j) {
                double z = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dz;
                d[j * stride] *= std::polar(1.0, z * d0);
            }
            line_from_modes(d, stride, n);
        });
    }
    return out;
}

SymbolField shift_momentum_by_field(const SymbolField& f, const std::vector<Vec>& shift_per_pos) {
    const GridSpec& g = f.grid;
    if (shift_per_pos.size() != g.pos_count())
        throw DomainError("shift_momentum_by_field: wrong shift table size");
    SymbolField out = f;
    std::size_t n = static_cast<std::size_t>(g.n);
    std::size_t np = g.pos_count();
    util::parallel_for(np, [&](std::size_t p) {
        Cx* col = out.values.data() + p * np;
        // momentum modes of this position column
        std::size_t stride = 1;
        for (int ax = g.dim - 1; ax >= 0; --ax) {
            std::size_t block = stride * n;
            for (std::size_t base = 0; base < np; base += block)
                for (std::size_t off = 0; off < stride; ++off)
                    line_to_modes(col + base + off, stride, n);
            stride *= n;
        }
        for (std::size_t m = 0; m < np; ++m) {
            Vec z = g.pos_point(m);  // z-frequencies dual to the momentum axes
            col[m] *= std::polar(1.0, -dot(z, shift_per_pos[p], g.dim));
        }
        stride = 1;
        for (int ax = g.dim - 1; ax >= 0; --ax) {
            std::size_t block = stride * n;
            for (std::size_t base = 0; base < np; base += block)
                for (std::size_t off = 0; off < stride; ++off)
                    line_from_modes(col + base + off, stride, n);
            stride *= n;
        }
    });
    return out;
}

std::string to_json(const SymbolField& f) {
    nlohmann::json j;
    j["kind"] = "symbol_field";
    j["dim"] = f.grid.dim;
    j["n"] = f.grid.n;
    j["half_length"] = {f.grid.half_length[0], f.grid.half_length[1]};
    j["order_label"] = f.order_label;
    std::vector<double> vals;
    vals.reserve(2 * f.values.size());
    for (const Cx& v : f.values) {
        vals.push_back(v.real());
        vals.push_back(v.imag());
    }
    j["values"] = std::move(vals);
    return j.dump();
}

SymbolField symbol_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind") != "symbol_field") throw DomainError("not a symbol_field container");
    GridSpec g(j.at("dim").get<int>(),
               std::array<double, 2>{j.at("half_length")[0].get<double>(),
                                     j.at("half_length")[1].get<double>()},
               j.at("n").get<int>());
    SymbolField f(g);
    f.order_label = j.value("order_label", "");
    auto vals = j.at("values").get<std::vector<double>>();
    if (vals.size() != 2 * f.values.size()) throw DomainError("value array length mismatch");
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = Cx(vals[2 * i], vals[2 * i + 1]);
    return f;
}

std::string to_json(const WaveFunction& u) {
    nlohmann::json j;
    j["kind"] = "wave_function";
    j["dim"] = u.grid.dim;
    j["n"] = u.grid.n;
    j["half_length"] = {u.grid.half_length[0], u.grid.half_length[1]};
    std::vector<double> vals;
    vals.reserve(2 * u.values.size());
    for (const Cx& v : u.values) {
        vals.push_back(v.real());
        vals.push_back(v.imag());
    }
    j["values"] = std::move(vals);
    return j.dump();
}

WaveFunction wavefunction_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind") != "wave_function") throw DomainError("not a wave_function container");
    GridSpec g(j.at("dim").get<int>(),
               std::array<double, 2>{j.at("half_length")[0].get<double>(),
                                     j.at("half_length")[1].get<double>()},
               j.at("n").get<int>());
    WaveFunction u(g);
    auto vals = j.at("values").get<std::vector<double>>();
    if (vals.size() != 2 * u.values.size()) throw DomainError("value array length mismatch");
    for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] = Cx(vals[2 * i], vals[2 * i + 1]);
    return u;
}

}  // namespace grid_ops
}  // namespace magweyl
