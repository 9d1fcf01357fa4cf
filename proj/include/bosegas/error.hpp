#pragma once

#include <stdexcept>
#include <string>

namespace bosegas {

enum class ErrorKind {
  Contract,     // caller violated a precondition
  Resolution,   // truncation / tail / convergence budget not met
  Solver,       // iterative solver failed to converge
  Config,       // configuration or usage problem
  Model,        // inputs outside the validity of the model (e.g. negative pair potential)
  Internal
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ContractError : Error {
  explicit ContractError(const std::string& w) : Error(ErrorKind::Contract, w) {}
};
struct ResolutionError : Error {
  explicit ResolutionError(const std::string& w) : Error(ErrorKind::Resolution, w) {}
};
struct SolverError : Error {
  explicit SolverError(const std::string& w) : Error(ErrorKind::Solver, w) {}
};
struct ModelError : Error {
  explicit ModelError(const std::string& w) : Error(ErrorKind::Model, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

}  // namespace bosegas
