#pragma once
// Shared result type for the exhaustive verifiers.

#include <string>
#include <vector>

#include "ltpg/arith.hpp"

namespace ltpg {

struct VerifyReport {
  i64 checked = 0;
  std::vector<std::string> counterexamples;

  bool ok() const { return counterexamples.empty(); }
  void fail(const std::string& what) { counterexamples.push_back(what); }
};

struct budget_error : arith_error {
  using arith_error::arith_error;
};

}  // namespace ltpg
