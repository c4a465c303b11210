#pragma once

#include <stdexcept>
#include <string>

namespace shorsim {

// Input outside an operation's domain (bad N, out-of-range index, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a precondition that cannot happen with well-formed inputs.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shorsim
