#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seqspace {

/// Three-valued outcome for conditions involving limits or suprema that can
/// only be probed at a finite horizon. A verdict is evidence, never a proof.
enum class Outcome { Holds, Fails, Inconclusive };

std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::int64_t horizon = 0;             // largest index examined
  std::vector<std::int64_t> witnesses;  // indices backing a Fails (or extremum)
  double oscillation = 0.0;             // spread of the last probed window
  std::optional<double> limit;          // extracted limit / supremum evidence
  std::string note;

  bool holds() const { return outcome == Outcome::Holds; }
  bool fails() const { return outcome == Outcome::Fails; }
};

/// Holds iff every part holds; Fails as soon as one part fails; otherwise
/// Inconclusive. Fails witnesses are taken from the first failing part.
Verdict conjunction(std::span<const Verdict> parts);

struct ProbeParams {
  std::int64_t horizon = 2000;
  std::int64_t window = 50;
  double tol = 1e-9;
  double blow_up = 1e12;
};

}  // namespace seqspace
