#pragma once

#include <stdexcept>
#include <string>

namespace efpf {

// Error taxonomy, mapped onto process exit codes by the CLI:
//   std::domain_error / std::invalid_argument -> 2 (bad parameters or inputs)
//   truncation_error / feasibility_error      -> 3 (resource/feasibility)
//   assertion_failure                         -> 4 (CLI --assert failed)

// A truncated series hit its term budget before meeting its tail bound.
class truncation_error : public std::runtime_error {
 public:
  explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact enumeration or exact-sum request exceeds its feasibility limits.
class feasibility_error : public std::runtime_error {
 public:
  explicit feasibility_error(const std::string& what) : std::runtime_error(what) {}
};

// Conditioning on an event of probability zero.
class conditioning_error : public std::domain_error {
 public:
  explicit conditioning_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace efpf
