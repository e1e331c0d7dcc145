#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fpois/random.hpp"

namespace fpois {

/// A randomized invariant check. A case returns an empty string when the
/// invariant holds and a canonical residual description otherwise.
struct Suite {
  std::string name;
  std::function<std::string(Random&)> run_case;
};

struct SuiteOutcome {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool internal_error = false;
  std::string first_failure;
};

/// Homotopy identity, chain map and δ² = 0 suites on random cochains.
std::vector<Suite> homotopy_suites();
/// Every module's invariant suites, including the homotopy ones.
std::vector<Suite> fuzz_suites();

/// Seed of one case, a fixed mix of the run seed and the case position.
std::uint64_t case_seed(std::uint64_t seed, std::size_t suite, std::size_t index);

/// Runs `cases` cases of each suite on `threads` workers. The result does
/// not depend on the number of workers.
std::vector<SuiteOutcome> run_suites(std::span<const Suite> suites, std::size_t cases, std::uint64_t seed,
                                     unsigned threads);

}  // namespace fpois
