#pragma once

#include <stdexcept>
#include <string>

namespace ncs {

// Raised when inputs are structurally valid but the requested computation has
// no answer in its domain (disconnected graph for a bound, infeasible n/k
// combination, and so on). Precondition violations use std::invalid_argument.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plurality voting found no strict winner for some node (exact mode only).
class VoteTieError : public DomainError {
 public:
  VoteTieError(int node, const std::string& what) : DomainError(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

// The least-squares system has linearly dependent columns, so no unique
// minimizer exists. Callers that enumerate fault distributions skip these.
class RankDeficientError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace ncs
