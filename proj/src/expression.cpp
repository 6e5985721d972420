#include "qea/expression.hpp"

#include "qea/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace qea {

const char* to_string(Variable v) noexcept {
    switch (v) {
        case Variable::n: return "n";
        case Variable::q: return "q";
        case Variable::procs: return "procs";
    }
    return "?";
}

std::string VariableSet::describe() const {
    std::string out = "{";
    for (Variable v : {Variable::n, Variable::q, Variable::procs}) {
        if (!contains(v)) continue;
        if (out.size() > 1) out += ", ";
        out += qea::to_string(v);
    }
    return out + "}";
}

namespace {

const char* function_name(Function f) {
    switch (f) {
        case Function::exp: return "exp";
        case Function::ln: return "ln";
        case Function::log2: return "log2";
        case Function::log10: return "log10";
        case Function::sqrt: return "sqrt";
    }
    return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
    if (name == "exp") return Function::exp;
    if (name == "ln") return Function::ln;
    if (name == "log2") return Function::log2;
    if (name == "log10") return Function::log10;
    if (name == "sqrt") return Function::sqrt;
    return std::nullopt;
}

}  // namespace

struct Expression::Node {
    enum class Kind : std::uint8_t { constant, named_constant, variable, unary_minus, binary, call };

    Kind kind = Kind::constant;
    double value = 0.0;         // constant, named_constant
    std::string name;           // named_constant: "e" or "pi"
    Variable var = Variable::n;
    Function func = Function::exp;
    char op = 0;                // binary: + - * / ^
    std::shared_ptr<const Node> lhs;  // also the operand of unary/call
    std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

namespace {

NodePtr make_constant(double v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::constant;
    n->value = v;
    return n;
}

NodePtr make_named(std::string name, double v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::named_constant;
    n->name = std::move(name);
    n->value = v;
    return n;
}

NodePtr make_variable(Variable v) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::variable;
    n->var = v;
    return n;
}

NodePtr make_unary(NodePtr operand) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::unary_minus;
    n->lhs = std::move(operand);
    return n;
}

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(Function f, NodePtr arg) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view src, VariableSet allowed) : src_(src), allowed_(allowed) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ == src_.size()) throw SyntaxError(pos_, "empty expression");
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ != src_.size())
            throw SyntaxError(pos_, std::string("unexpected '") + src_[pos_] + "'");
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary('+', lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_binary('-', lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary('*', lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_binary('/', lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_unary(parse_unary());
        return parse_power();
    }

    // ^ binds tighter than unary minus and is right-associative; the exponent
    // may itself carry a sign (2^-3).
    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make_binary('^', base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ == src_.size()) throw SyntaxError(pos_, "unexpected end of expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t k = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++k;
            }
            return k;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw SyntaxError(start, "malformed number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            // Only an exponent if digits follow; otherwise `e` is left for the
            // caller, which will then reject the implicit multiplication.
            std::size_t save = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || ptr != src_.data() + pos_)
            throw SyntaxError(start, "malformed number '" + std::string(src_.substr(start, pos_ - start)) + "'");
        if (!std::isfinite(value)) throw SyntaxError(start, "number out of range");
        return make_constant(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);

        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            auto f = function_from_name(name);
            if (!f) throw UnknownFunction("unknown function '" + std::string(name) + "' at " + std::to_string(start));
            ++pos_;
            NodePtr arg = parse_sum();
            if (!accept(')')) throw SyntaxError(pos_, "expected ')' after argument of " + std::string(name));
            return make_call(*f, std::move(arg));
        }

        if (name == "e") return make_named("e", std::numbers::e);
        if (name == "pi") return make_named("pi", std::numbers::pi);

        std::optional<Variable> var;
        if (name == "n") var = Variable::n;
        else if (name == "q") var = Variable::q;
        else if (name == "procs") var = Variable::procs;

        if (!var) throw UnknownVariable("unknown variable '" + std::string(name) + "' at " + std::to_string(start));
        if (!allowed_.contains(*var))
            throw UnknownVariable("variable '" + std::string(name) + "' not allowed here (allowed: " +
                                  allowed_.describe() + ")");
        return make_variable(*var);
    }

    std::string_view src_;
    VariableSet allowed_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Expression::Node& n) {
    switch (n.kind) {
        case Kind::binary:
            switch (n.op) {
                case '+':
                case '-': return 1;
                case '*':
                case '/': return 2;
                default: return 4;
            }
        case Kind::unary_minus: return 3;
        case Kind::constant: return n.value < 0 ? 3 : 5;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void print(const Expression::Node& n, std::string& out);

void print_wrapped(const Expression::Node& n, bool parens, std::string& out) {
    if (parens) out += '(';
    print(n, out);
    if (parens) out += ')';
}

void print(const Expression::Node& n, std::string& out) {
    switch (n.kind) {
        case Kind::constant:
            if (n.value < 0) {
                out += '-';
                out += format_number(-n.value);
            } else {
                out += format_number(n.value);
            }
            return;
        case Kind::named_constant: out += n.name; return;
        case Kind::variable: out += to_string(n.var); return;
        case Kind::unary_minus:
            out += '-';
            print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
            return;
        case Kind::call:
            out += function_name(n.func);
            out += '(';
            print(*n.lhs, out);
            out += ')';
            return;
        case Kind::binary: {
            const int p = precedence(n);
            if (n.op == '^') {
                print_wrapped(*n.lhs, precedence(*n.lhs) <= 4, out);
                out += '^';
                print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
            } else {
                print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
                out += ' ';
                out += n.op;
                out += ' ';
                print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation in signed log space. Intermediate values may be negative (e.g.
// exponents); only the final result must be nonnegative.

struct SignedLog {
    int sign = 0;  // -1, 0, +1
    double lg = 0.0;
};

constexpr double kLn10 = std::numbers::ln10;
constexpr double kLog10e = std::numbers::log10e;
// log10 of DBL_MAX, the largest magnitude a linear double can hold.
constexpr double kMaxLinearLog10 = 308.25;

SignedLog checked(SignedLog v) {
    if (v.sign != 0 && std::isnan(v.lg)) throw DomainError("undefined intermediate value");
    if (v.sign != 0 && std::isinf(v.lg)) {
        if (v.lg > 0) throw OverflowError("log10 magnitude exceeds double range");
        return {};
    }
    return v;
}

SignedLog from_double(double v) {
    if (v == 0.0) return {};
    return checked({v > 0 ? 1 : -1, std::log10(std::fabs(v))});
}

// Linear value of `v`, or nullopt when it does not fit in a double.
std::optional<double> to_linear(SignedLog v) {
    if (v.sign == 0) return 0.0;
    if (v.lg > kMaxLinearLog10) return std::nullopt;
    return v.sign * std::pow(10.0, v.lg);
}

SignedLog add(SignedLog a, SignedLog b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const bool a_big = a.lg >= b.lg;
    const SignedLog& hi = a_big ? a : b;
    const SignedLog& lo = a_big ? b : a;
    const double ratio = std::pow(10.0, lo.lg - hi.lg);
    if (a.sign == b.sign) return checked({hi.sign, hi.lg + std::log1p(ratio) / kLn10});
    if (ratio == 1.0) return {};
    return checked({hi.sign, hi.lg + std::log1p(-ratio) / kLn10});
}

SignedLog negate(SignedLog v) { return {-v.sign, v.lg}; }

SignedLog multiply(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return checked({a.sign * b.sign, a.lg + b.lg});
}

SignedLog divide(SignedLog a, SignedLog b) {
    if (b.sign == 0) throw DomainError("division by zero");
    if (a.sign == 0) return {};
    return checked({a.sign * b.sign, a.lg - b.lg});
}

// 10^(s * 10^mag_lg), i.e. a value whose log10 is given in log space.
SignedLog power_of_ten(int s, double mag_lg) {
    if (s == 0) return {1, 0.0};
    if (mag_lg > kMaxLinearLog10) {
        if (s > 0) throw OverflowError("log10 magnitude exceeds double range");
        return {};  // 10^(-huge) underflows to zero
    }
    return checked({1, s * std::pow(10.0, mag_lg)});
}

SignedLog power(SignedLog base, SignedLog exponent) {
    if (exponent.sign == 0) return {1, 0.0};
    if (base.sign == 0) {
        if (exponent.sign > 0) return {};
        throw DomainError("zero raised to a non-positive power");
    }
    int result_sign = 1;
    if (base.sign < 0) {
        auto e = to_linear(exponent);
        if (!e || std::trunc(*e) != *e) throw DomainError("negative base with non-integer exponent");
        if (std::fmod(std::fabs(*e), 2.0) == 1.0) result_sign = -1;
    }
    if (base.lg == 0.0) return {result_sign, 0.0};
    // log10|result| = exponent * log10|base|, formed in log space so a huge
    // exponent applied to a base near 1 does not overflow prematurely.
    const int s = exponent.sign * (base.lg > 0 ? 1 : -1);
    SignedLog r = power_of_ten(s, exponent.lg + std::log10(std::fabs(base.lg)));
    if (r.sign != 0) r.sign = result_sign;
    return r;
}

SignedLog call(Function f, SignedLog x) {
    switch (f) {
        case Function::exp: {
            // log10(e^x) = x * log10(e)
            if (x.sign == 0) return {1, 0.0};
            return power_of_ten(x.sign, x.lg + std::log10(kLog10e));
        }
        case Function::ln:
        case Function::log2:
        case Function::log10: {
            if (x.sign <= 0) throw DomainError(std::string(function_name(f)) + " of a non-positive value");
            double scale = 1.0;
            if (f == Function::ln) scale = kLn10;
            if (f == Function::log2) scale = std::numbers::ln10 / std::numbers::ln2;
            return from_double(x.lg * scale);
        }
        case Function::sqrt:
            if (x.sign < 0) throw DomainError("sqrt of a negative value");
            if (x.sign == 0) return {};
            return {1, x.lg / 2.0};
    }
    return {};
}

SignedLog eval(const Expression::Node& n, const Bindings& b) {
    switch (n.kind) {
        case Kind::constant:
        case Kind::named_constant: return from_double(n.value);
        case Kind::variable: {
            const auto& v = b.get(n.var);
            if (!v) throw UnknownVariable(std::string("unbound variable '") + to_string(n.var) + "'");
            if (v->is_zero()) return {};
            return {1, v->log10()};
        }
        case Kind::unary_minus: return negate(eval(*n.lhs, b));
        case Kind::call: return call(n.func, eval(*n.lhs, b));
        case Kind::binary: {
            const SignedLog l = eval(*n.lhs, b);
            const SignedLog r = eval(*n.rhs, b);
            switch (n.op) {
                case '+': return add(l, r);
                case '-': {
                    const SignedLog d = add(l, negate(r));
                    // Subtraction must stay strictly positive; a cancelled or
                    // negative difference means the formula left its domain.
                    if (d.sign <= 0) throw DomainError("subtraction result is not positive");
                    return d;
                }
                case '*': return multiply(l, r);
                case '/': return divide(l, r);
                case '^': return power(l, r);
            }
        }
    }
    throw DomainError("malformed expression node");
}

void collect_variables(const Expression::Node& n, VariableSet& out) {
    if (n.kind == Kind::variable) out.insert(n.var);
    if (n.lhs) collect_variables(*n.lhs, out);
    if (n.rhs) collect_variables(*n.rhs, out);
}

bool equal(const Expression::Node& a, const Expression::Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::constant: return a.value == b.value;
        case Kind::named_constant: return a.name == b.name;
        case Kind::variable: return a.var == b.var;
        case Kind::unary_minus: return equal(*a.lhs, *b.lhs);
        case Kind::call: return a.func == b.func && equal(*a.lhs, *b.lhs);
        case Kind::binary: return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
    return false;
}

NodePtr substitute_node(const NodePtr& n, Variable var, double constant) {
    switch (n->kind) {
        case Kind::variable: return n->var == var ? make_constant(constant) : n;
        case Kind::unary_minus: return make_unary(substitute_node(n->lhs, var, constant));
        case Kind::call: return make_call(n->func, substitute_node(n->lhs, var, constant));
        case Kind::binary:
            return make_binary(n->op, substitute_node(n->lhs, var, constant),
                               substitute_node(n->rhs, var, constant));
        default: return n;
    }
}

}  // namespace

Expression Expression::parse(std::string_view source, VariableSet allowed) {
    Parser p(source, allowed);
    return Expression(p.parse(), std::string(source));
}

LogValue Expression::eval_log10(const Bindings& bindings) const {
    const SignedLog v = eval(*root_, bindings);
    if (v.sign < 0) throw DomainError("expression evaluates to a negative value");
    if (v.sign == 0) return LogValue::zero();
    return LogValue::from_log10(v.lg);
}

std::string Expression::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

VariableSet Expression::variables() const {
    VariableSet vs;
    collect_variables(*root_, vs);
    return vs;
}

Expression Expression::substitute(Variable var, double constant) const {
    NodePtr root = substitute_node(root_, var, constant);
    std::string text;
    print(*root, text);
    return Expression(root, text);
}

Expression Expression::times(const Expression& rhs) const {
    NodePtr root = make_binary('*', root_, rhs.root_);
    std::string text;
    print(*root, text);
    return Expression(root, text);
}

Expression Expression::variable(Variable v) {
    return Expression(make_variable(v), qea::to_string(v));
}

bool Expression::structurally_equal(const Expression& other) const {
    return equal(*root_, *other.root_);
}

}  // namespace qea
