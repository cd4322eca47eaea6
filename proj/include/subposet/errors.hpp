#pragma once

#include <stdexcept>
#include <string>

namespace subposet {

// Error taxonomy shared by the library, the CLI maps these to exit code 1/2.

struct CycleError : std::runtime_error {
  explicit CycleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IndexError : std::out_of_range {
  explicit IndexError(const std::string& msg) : std::out_of_range(msg) {}
};

struct ParamError : std::invalid_argument {
  explicit ParamError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotTreeError : std::runtime_error {
  explicit NotTreeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSaturatedError : std::runtime_error {
  explicit NotSaturatedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SizeError : std::runtime_error {
  explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct WitnessPlacementError : std::runtime_error {
  explicit WitnessPlacementError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotChainError : std::runtime_error {
  explicit NotChainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotValidatedError : std::runtime_error {
  explicit NotValidatedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IncompleteStringError : std::runtime_error {
  explicit IncompleteStringError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace subposet
