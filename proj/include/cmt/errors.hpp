#pragma once

#include <stdexcept>
#include <string>

namespace cmt {

/// Base for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad input text: grammar, unknown names, thresholds out of range.
/// The command line maps these to exit code 2.
struct ParseError : Error {
    ParseError(const std::string& msg, size_t position_) : Error(msg), position(position_) {}
    size_t position;
};

struct SyntaxError : ParseError {
    SyntaxError(const std::string& msg, size_t pos) : ParseError(msg, pos) {}
};

struct UnknownVariable : ParseError {
    UnknownVariable(const std::string& var, size_t pos)
        : ParseError("unknown variable '" + var + "'", pos) {}
};

struct ValueNotInRange : ParseError {
    ValueNotInRange(const std::string& var, const std::string& value, size_t pos)
        : ParseError("value '" + value + "' not in the range of '" + var + "'", pos) {}
};

struct SignatureRequired : Error {
    explicit SignatureRequired(const std::string& what_for)
        : Error("a signature is required to expand " + what_for) {}
};

/// Formula lies outside the fragment an operation is defined on.
struct UnsupportedNode : Error {
    explicit UnsupportedNode(const std::string& what)
        : Error("unsupported formula node: " + what) {}
};

/// Bad model data: the command line maps these to exit code 3.
struct ModelError : Error {
    explicit ModelError(const std::string& msg) : Error(msg) {}
};

struct CompatibilityViolation : ModelError {
    CompatibilityViolation(const std::string& row, const std::string& var)
        : ModelError("row " + row + " is incompatible with the law for " + var),
          variable(var) {}
    std::string variable;
};

struct ConstantFunction : ModelError {
    explicit ConstantFunction(const std::string& var)
        : ModelError("law for " + var + " is constant"), variable(var) {}
    std::string variable;
};

struct CyclicGraph : ModelError {
    explicit CyclicGraph(const std::string& cycle)
        : ModelError("causal graph has a cycle: " + cycle) {}
};

struct RangeError : ModelError {
    RangeError(const std::string& var, const std::string& value)
        : ModelError("value '" + value + "' out of range for '" + var + "'") {}
};

struct NonNumericValue : ModelError {
    NonNumericValue(const std::string& var, const std::string& value)
        : ModelError("value '" + value + "' of '" + var + "' does not parse as a decimal") {}
};

struct InconsistentIntervention : ModelError {
    explicit InconsistentIntervention(const std::string& var)
        : ModelError("intervention assigns two distinct values to '" + var + "'") {}
};

struct EmptyModel : ModelError {
    EmptyModel() : ModelError("operation undefined on an empty multiteam") {}
};

struct SignatureMismatch : ModelError {
    SignatureMismatch() : ModelError("models have different signatures") {}
};

struct NotRescalings : ModelError {
    NotRescalings() : ModelError("models are not rescalings of each other") {}
};

struct EmptyClass : ModelError {
    EmptyClass() : ModelError("class of models is empty") {}
};

struct BudgetExceeded : ModelError {
    explicit BudgetExceeded(unsigned long long estimate)
        : ModelError("enumeration would visit about " + std::to_string(estimate) +
                     " models, over the configured cap") {}
};

} // namespace cmt
