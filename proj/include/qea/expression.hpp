#pragma once

#include "qea/log_value.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qea {

enum class Variable : std::uint8_t { n = 0, q = 1, procs = 2 };

const char* to_string(Variable v) noexcept;

class VariableSet {
public:
    constexpr VariableSet() = default;
    constexpr VariableSet(std::initializer_list<Variable> vars) {
        for (Variable v : vars) bits_ |= bit(v);
    }

    constexpr bool contains(Variable v) const noexcept { return (bits_ & bit(v)) != 0; }
    constexpr void insert(Variable v) noexcept { bits_ |= bit(v); }
    constexpr bool subset_of(VariableSet other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }
    constexpr bool empty() const noexcept { return bits_ == 0; }

    std::string describe() const;

    friend constexpr bool operator==(VariableSet, VariableSet) = default;

private:
    static constexpr std::uint8_t bit(Variable v) noexcept {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v));
    }
    std::uint8_t bits_ = 0;
};

// Variable scopes for each expression slot of the model.
namespace slots {
inline constexpr VariableSet classical_runtime{Variable::n, Variable::procs};
inline constexpr VariableSet quantum_runtime{Variable::n};
inline constexpr VariableSet classical_work{Variable::n};
inline constexpr VariableSet quantum_work{Variable::n, Variable::q};
inline constexpr VariableSet connectivity_penalty{Variable::q};
}  // namespace slots

class Bindings {
public:
    Bindings& set(Variable v, LogValue value) {
        values_[static_cast<std::size_t>(v)] = value;
        return *this;
    }
    const std::optional<LogValue>& get(Variable v) const {
        return values_[static_cast<std::size_t>(v)];
    }

private:
    std::array<std::optional<LogValue>, 3> values_{};
};

enum class Function : std::uint8_t { exp, ln, log2, log10, sqrt };

// Immutable parsed formula. Copies share the tree.
class Expression {
public:
    struct Node;

    static Expression parse(std::string_view source, VariableSet allowed);

    // log10 of the expression's value under `bindings`. Magnitudes never leave
    // log space, so values like e^(1e5) are fine as long as their logarithm
    // fits in a double.
    LogValue eval_log10(const Bindings& bindings) const;

    // Canonical text; parse(to_string()) reproduces the same tree.
    std::string to_string() const;
    const std::string& source() const noexcept { return source_; }
    VariableSet variables() const;

    Expression substitute(Variable var, double constant) const;
    Expression times(const Expression& rhs) const;
    static Expression variable(Variable v);

    bool structurally_equal(const Expression& other) const;

private:
    Expression(std::shared_ptr<const Node> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace qea
