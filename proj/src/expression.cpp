#include "magweyl/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

namespace magweyl::expr {

enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Fun };

struct Node {
    Kind kind = Kind::Const;
    double value = 0.0;  // Const
    int var = 0;         // Var slot
    int ipow = 0;        // Pow exponent
    std::string fun;     // Fun name
    NodePtr a, b;
};

namespace {

NodePtr mk_const(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = v;
    return n;
}

NodePtr mk_var(int slot) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->var = slot;
    return n;
}

NodePtr mk2(Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr mk_neg(NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->a = std::move(a);
    return n;
}

NodePtr mk_pow(NodePtr a, int p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->a = std::move(a);
    n->ipow = p;
    return n;
}

NodePtr mk_fun(const std::string& f, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Fun;
    n->fun = f;
    n->a = std::move(a);
    return n;
}

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::Const && n->value == v; }

// light simplification to keep derivative trees small
NodePtr add(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a->kind == Kind::Const && b->kind == Kind::Const) return mk_const(a->value + b->value);
    return mk2(Kind::Add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
    if (is_const(b, 0.0)) return a;
    if (a->kind == Kind::Const && b->kind == Kind::Const) return mk_const(a->value - b->value);
    if (is_const(a, 0.0)) return mk_neg(std::move(b));
    return mk2(Kind::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return mk_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a->kind == Kind::Const && b->kind == Kind::Const) return mk_const(a->value * b->value);
    return mk2(Kind::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
    if (is_const(a, 0.0)) return mk_const(0.0);
    if (is_const(b, 1.0)) return a;
    if (a->kind == Kind::Const && b->kind == Kind::Const) return mk_const(a->value / b->value);
    return mk2(Kind::Div, std::move(a), std::move(b));
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return e;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw DomainError("expression parse error at position " + std::to_string(pos_) + ": " + msg +
                          " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (eat('+'))
                e = add(e, parse_term());
            else if (eat('-'))
                e = sub(e, parse_term());
            else
                return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (eat('*'))
                e = mul(e, parse_unary());
            else if (eat('/'))
                e = div(e, parse_unary());
            else
                return e;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return mk_neg(parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) fail("expected integer exponent");
            int p = std::stoi(s_.substr(start, pos_ - start));
            if (neg) fail("negative exponents not supported; use division");
            return mk_pow(base, p);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            while (end < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                    s_[end] == 'e' || s_[end] == 'E' ||
                    ((s_[end] == '+' || s_[end] == '-') && (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
                ++end;
            double v = std::stod(s_.substr(pos_, end - pos_));
            pos_ = end;
            return mk_const(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            std::string name = s_.substr(pos_, end - pos_);
            pos_ = end;
            static const std::map<std::string, int> vars = {
                {"x", 0},  {"x1", 0}, {"x2", 1}, {"r", 0},  {"r1", 0},  {"r2", 1},
                {"xi", 2}, {"xi1", 2}, {"xi2", 3}, {"k", 2}, {"k1", 2}, {"k2", 3}};
            auto it = vars.find(name);
            if (it != vars.end()) return mk_var(it->second);
            if (name == "pi") return mk_const(kPi);
            skip_ws();
            if (!eat('(')) fail("unknown identifier '" + name + "'");
            NodePtr arg = parse_expr();
            if (!eat(')')) fail("expected ')' after function argument");
            static const char* funs[] = {"sin", "cos", "exp", "tanh", "sinh", "cosh", "sqrt", "log"};
            for (const char* f : funs)
                if (name == f) return mk_fun(name, arg);
            fail("unknown function '" + name + "'");
        }
        fail("unexpected character");
    }
};

double eval_node(const Node& n, const Vec& pos, const Vec& mom) {
    switch (n.kind) {
        case Kind::Const: return n.value;
        case Kind::Var: return n.var < 2 ? pos[n.var] : mom[n.var - 2];
        case Kind::Add: return eval_node(*n.a, pos, mom) + eval_node(*n.b, pos, mom);
        case Kind::Sub: return eval_node(*n.a, pos, mom) - eval_node(*n.b, pos, mom);
        case Kind::Mul: return eval_node(*n.a, pos, mom) * eval_node(*n.b, pos, mom);
        case Kind::Div: return eval_node(*n.a, pos, mom) / eval_node(*n.b, pos, mom);
        case Kind::Neg: return -eval_node(*n.a, pos, mom);
        case Kind::Pow: {
            double b = eval_node(*n.a, pos, mom), r = 1.0;
            for (int i = 0; i < n.ipow; ++i) r *= b;
            return r;
        }
        case Kind::Fun: {
            double a = eval_node(*n.a, pos, mom);
            if (n.fun == "sin") return std::sin(a);
            if (n.fun == "cos") return std::cos(a);
            if (n.fun == "exp") return std::exp(a);
            if (n.fun == "tanh") return std::tanh(a);
            if (n.fun == "sinh") return std::sinh(a);
            if (n.fun == "cosh") return std::cosh(a);
            if (n.fun == "sqrt") return std::sqrt(a);
            if (n.fun == "log") return std::log(a);
            throw DomainError("unknown function " + n.fun);
        }
    }
    return 0.0;
}

NodePtr diff_node(const NodePtr& n, int slot) {
    switch (n->kind) {
        case Kind::Const: return mk_const(0.0);
        case Kind::Var: return mk_const(n->var == slot ? 1.0 : 0.0);
        case Kind::Add: return add(diff_node(n->a, slot), diff_node(n->b, slot));
        case Kind::Sub: return sub(diff_node(n->a, slot), diff_node(n->b, slot));
        case Kind::Mul:
            return add(mul(diff_node(n->a, slot), n->b), mul(n->a, diff_node(n->b, slot)));
        case Kind::Div:
            return div(sub(mul(diff_node(n->a, slot), n->b), mul(n->a, diff_node(n->b, slot))),
                       mk_pow(n->b, 2));
        case Kind::Neg: return mk_neg(diff_node(n->a, slot));
        case Kind::Pow: {
            if (n->ipow == 0) return mk_const(0.0);
            return mul(mul(mk_const(n->ipow), mk_pow(n->a, n->ipow - 1)), diff_node(n->a, slot));
        }
        case Kind::Fun: {
            NodePtr da = diff_node(n->a, slot);
            NodePtr outer;
            if (n->fun == "sin")
                outer = mk_fun("cos", n->a);
            else if (n->fun == "cos")
                outer = mk_neg(mk_fun("sin", n->a));
            else if (n->fun == "exp")
                outer = mk_fun("exp", n->a);
            else if (n->fun == "tanh")
                outer = sub(mk_const(1.0), mk_pow(mk_fun("tanh", n->a), 2));
            else if (n->fun == "sinh")
                outer = mk_fun("cosh", n->a);
            else if (n->fun == "cosh")
                outer = mk_fun("sinh", n->a);
            else if (n->fun == "sqrt")
                outer = div(mk_const(0.5), mk_fun("sqrt", n->a));
            else if (n->fun == "log")
                outer = div(mk_const(1.0), n->a);
            else
                throw DomainError("cannot differentiate " + n->fun);
            return mul(outer, da);
        }
    }
    return mk_const(0.0);
}

bool depends_node(const Node& n, int slot) {
    switch (n.kind) {
        case Kind::Const: return false;
        case Kind::Var: return n.var == slot;
        case Kind::Neg:
        case Kind::Pow:
        case Kind::Fun: return depends_node(*n.a, slot);
        default: return depends_node(*n.a, slot) || depends_node(*n.b, slot);
    }
}

void print_node(const Node& n, std::string& out) {
    char buf[64];
    switch (n.kind) {
        case Kind::Const:
            std::snprintf(buf, sizeof buf, "%g", n.value);
            out += buf;
            return;
        case Kind::Var: {
            static const char* names[] = {"x1", "x2", "xi1", "xi2"};
            out += names[n.var];
            return;
        }
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            out += '(';
            print_node(*n.a, out);
            out += n.kind == Kind::Add ? '+' : n.kind == Kind::Sub ? '-' : n.kind == Kind::Mul ? '*' : '/';
            print_node(*n.b, out);
            out += ')';
            return;
        }
        case Kind::Neg:
            out += "(-";
            print_node(*n.a, out);
            out += ')';
            return;
        case Kind::Pow:
            out += '(';
            print_node(*n.a, out);
            out += '^';
            out += std::to_string(n.ipow);
            out += ')';
            return;
        case Kind::Fun:
            out += n.fun;
            out += '(';
            print_node(*n.a, out);
            out += ')';
            return;
    }
}

}  // namespace

Expression Expression::parse(const std::string& text) { return Expression(Parser(text).run()); }

Expression Expression::constant(double c) { return Expression(mk_const(c)); }

double Expression::eval(const Vec& pos, const Vec& mom) const {
    if (!root_) throw DomainError("empty expression");
    double v = eval_node(*root_, pos, mom);
    if (!std::isfinite(v))
        throw DomainError("expression evaluates to non-finite value at (" + std::to_string(pos[0]) +
                          "," + std::to_string(pos[1]) + ";" + std::to_string(mom[0]) + "," +
                          std::to_string(mom[1]) + ")");
    return v;
}

Expression Expression::derivative(int slot) const {
    if (!root_) throw DomainError("empty expression");
    return Expression(diff_node(root_, slot));
}

bool Expression::depends_on(int slot) const { return root_ && depends_node(*root_, slot); }

std::string Expression::str() const {
    if (!root_) return "<empty>";
    std::string s;
    print_node(*root_, s);
    return s;
}

Expression Expression::operator+(const Expression& o) const {
    return Expression(add(root_, o.root_));
}

Expression Expression::operator*(const Expression& o) const {
    return Expression(mul(root_, o.root_));
}

// ---- TrigPoly ----

TrigPoly TrigPoly::constant(double c) {
    if (c == 0.0) return TrigPoly();
    return TrigPoly({TrigMode{Vec(), Cx(c, 0.0)}});
}

void TrigPoly::merge() {
    std::map<std::pair<long long, long long>, Cx> acc;
    auto key = [](double v) { return static_cast<long long>(std::llround(v * 1e9)); };
    for (const auto& m : modes_) {
        auto& c = acc[{key(m.k[0]), key(m.k[1])}];
        c += m.c;
    }
    modes_.clear();
    for (const auto& [k, c] : acc) {
        if (std::abs(c) < 1e-300) continue;
        modes_.push_back(TrigMode{Vec(static_cast<double>(k.first) * 1e-9,
                                      static_cast<double>(k.second) * 1e-9),
                                  c});
    }
}

double TrigPoly::eval(const Vec& x, int dim) const {
    Cx s = 0.0;
    for (const auto& m : modes_) {
        double ph = dot(m.k, x, dim);
        s += m.c * Cx(std::cos(ph), std::sin(ph));
    }
    return s.real();
}

TrigPoly TrigPoly::derivative(int axis) const {
    std::vector<TrigMode> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(TrigMode{m.k, m.c * Cx(0.0, m.k[axis])});
    return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::derivative_multi(const std::array<int, 2>& order) const {
    TrigPoly p = *this;
    for (int ax = 0; ax < 2; ++ax)
        for (int i = 0; i < order[static_cast<size_t>(ax)]; ++i) p = p.derivative(ax);
    return p;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    std::vector<TrigMode> out = modes_;
    out.insert(out.end(), o.modes_.begin(), o.modes_.end());
    return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    std::vector<TrigMode> out;
    out.reserve(modes_.size() * o.modes_.size());
    for (const auto& a : modes_)
        for (const auto& b : o.modes_) out.push_back(TrigMode{a.k + b.k, a.c * b.c});
    return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::scaled(double s) const {
    std::vector<TrigMode> out = modes_;
    for (auto& m : out) m.c *= s;
    return TrigPoly(std::move(out));
}

bool TrigPoly::is_zero(double tol) const {
    for (const auto& m : modes_)
        if (std::abs(m.c) > tol) return false;
    return true;
}

double TrigPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& mode : modes_) m = std::max(m, std::abs(mode.c));
    return m;
}

namespace {

// Linear-in-position check: returns k, c0 with node == k.x + c0.
bool linear_form(const Node& n, Vec& k, double& c0) {
    switch (n.kind) {
        case Kind::Const:
            c0 = n.value;
            k = Vec();
            return true;
        case Kind::Var:
            if (n.var >= 2) return false;
            k = Vec();
            k[n.var] = 1.0;
            c0 = 0.0;
            return true;
        case Kind::Add:
        case Kind::Sub: {
            Vec ka, kb;
            double ca, cb;
            if (!linear_form(*n.a, ka, ca) || !linear_form(*n.b, kb, cb)) return false;
            double s = n.kind == Kind::Add ? 1.0 : -1.0;
            k = ka + kb * s;
            c0 = ca + s * cb;
            return true;
        }
        case Kind::Neg: {
            if (!linear_form(*n.a, k, c0)) return false;
            k = k * -1.0;
            c0 = -c0;
            return true;
        }
        case Kind::Mul: {
            // const * linear or linear * const
            if (n.a->kind == Kind::Const) {
                if (!linear_form(*n.b, k, c0)) return false;
                k = k * n.a->value;
                c0 *= n.a->value;
                return true;
            }
            if (n.b->kind == Kind::Const) {
                if (!linear_form(*n.a, k, c0)) return false;
                k = k * n.b->value;
                c0 *= n.b->value;
                return true;
            }
            return false;
        }
        case Kind::Div: {
            if (n.b->kind == Kind::Const) {
                if (!linear_form(*n.a, k, c0)) return false;
                k = k * (1.0 / n.b->value);
                c0 /= n.b->value;
                return true;
            }
            return false;
        }
        default: return false;
    }
}

bool to_trig(const Node& n, TrigPoly& out) {
    switch (n.kind) {
        case Kind::Const:
            out = TrigPoly::constant(n.value);
            return true;
        case Kind::Add:
        case Kind::Sub: {
            TrigPoly a, b;
            if (!to_trig(*n.a, a) || !to_trig(*n.b, b)) return false;
            out = n.kind == Kind::Add ? a + b : a + b.scaled(-1.0);
            return true;
        }
        case Kind::Mul: {
            TrigPoly a, b;
            if (!to_trig(*n.a, a) || !to_trig(*n.b, b)) return false;
            out = a * b;
            return true;
        }
        case Kind::Div: {
            if (n.b->kind != Kind::Const) return false;
            TrigPoly a;
            if (!to_trig(*n.a, a)) return false;
            out = a.scaled(1.0 / n.b->value);
            return true;
        }
        case Kind::Neg: {
            TrigPoly a;
            if (!to_trig(*n.a, a)) return false;
            out = a.scaled(-1.0);
            return true;
        }
        case Kind::Pow: {
            TrigPoly a;
            if (!to_trig(*n.a, a)) return false;
            TrigPoly r = TrigPoly::constant(1.0);
            for (int i = 0; i < n.ipow; ++i) r = r * a;
            out = r;
            return true;
        }
        case Kind::Fun: {
            Vec k;
            double c0;
            if ((n.fun == "cos" || n.fun == "sin") && linear_form(*n.a, k, c0)) {
                // cos(k.x+c0) = Re(e^{ic0} e^{ik.x}); keep both Hermitian halves.
                Cx half = 0.5 * Cx(std::cos(c0), std::sin(c0));
                if (n.fun == "sin") half *= Cx(0.0, -1.0);  // sin u = Re(-i e^{iu})
                out = TrigPoly({TrigMode{k, half}, TrigMode{k * -1.0, std::conj(half)}});
                return true;
            }
            return false;
        }
        default: return false;
    }
}

}  // namespace

std::optional<TrigPoly> TrigPoly::from_expression(const Expression& e, int dim) {
    (void)dim;
    // The printed form parses back to the same tree, which avoids exposing
    // Expression internals here.
    NodePtr tree = Parser(e.str()).run();
    TrigPoly p;
    if (!to_trig(*tree, p)) return std::nullopt;
    return p;
}

}  // namespace magweyl::expr
