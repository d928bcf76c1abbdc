#ifndef MAGWEYL_EXPRESSION_HPP
#define MAGWEYL_EXPRESSION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "magweyl/common.hpp"

namespace magweyl::expr {

// Variable slots: 0,1 = position axes (x1,x2; aliases x,r,r1,r2),
//                 2,3 = momentum axes (xi1,xi2; aliases xi,k,k1,k2).
inline constexpr int kPos0 = 0;
inline constexpr int kMom0 = 2;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Real-valued analytic expression with exact symbolic derivatives.
class Expression {
  public:
    Expression() = default;

    static Expression parse(const std::string& text);
    static Expression constant(double c);

    bool empty() const { return !root_; }
    double eval(const Vec& pos, const Vec& mom = Vec()) const;
    Expression derivative(int slot) const;
    bool depends_on(int slot) const;
    std::string str() const;

    Expression operator+(const Expression& o) const;
    Expression operator*(const Expression& o) const;

  private:
    explicit Expression(NodePtr n) : root_(std::move(n)) {}
    NodePtr root_;
};

// One Fourier mode c * e^{i k.x}; real fields keep Hermitian pairs.
struct TrigMode {
    Vec k;
    Cx c;
};

// Finite Fourier series in the position variables. This is the normal form
// for magnetic-field components: constants and trig polynomials land here
// exactly, and derivatives / mode access are exact.
class TrigPoly {
  public:
    TrigPoly() = default;
    explicit TrigPoly(std::vector<TrigMode> modes) : modes_(std::move(modes)) { merge(); }

    static TrigPoly constant(double c);
    // Fails (nullopt) when the expression is not a trig polynomial with
    // arguments linear in position.
    static std::optional<TrigPoly> from_expression(const Expression& e, int dim);

    double eval(const Vec& x, int dim) const;
    TrigPoly derivative(int axis) const;
    // Arbitrary-order derivative: order[axis] counts.
    TrigPoly derivative_multi(const std::array<int, 2>& order) const;
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly scaled(double s) const;
    bool is_zero(double tol = 0.0) const;
    double max_abs_coeff() const;

    const std::vector<TrigMode>& modes() const { return modes_; }

  private:
    void merge();
    std::vector<TrigMode> modes_;
};

}  // namespace magweyl::expr

#endif
