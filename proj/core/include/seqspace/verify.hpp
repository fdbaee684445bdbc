#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seqspace/rational.hpp"
#include "seqspace/version.hpp"

namespace seqspace {

struct VerifyOptions {
  std::uint64_t seed = kDefaultVerifySeed;

  /// Test hook: perturbs forward-kernel entries before the dual-route
  /// oracles compare them, so the harness itself can be checked for the
  /// ability to catch a corrupted kernel. Unset in normal operation.
  std::function<Rational(std::int64_t, std::int64_t, const Rational&)> tamper;
};

struct VerifyResult {
  struct Oracle {
    std::string name;
    int passed = 0;
    int failed = 0;
  };
  std::uint64_t seed = 0;
  std::uint64_t draw_digest = 0;  // digest of all random draws
  std::vector<Oracle> oracles;

  int total_failed() const;
  int total_passed() const;
};

/// Runs the cross-module oracle battery on pseudo-random rational inputs:
/// transform roundtrips, the closed-form inverse against algebraic
/// inversion, kernel composition, basis columns, the two series-matrix
/// identities, truncated products and the residual identity.
VerifyResult verify_suite(const VerifyOptions& options = {});

}  // namespace seqspace
