#include "seqspace/verdict.hpp"

namespace seqspace {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict conjunction(std::span<const Verdict> parts) {
  Verdict combined;
  combined.outcome = Outcome::Holds;
  for (const Verdict& part : parts) {
    combined.horizon = std::max(combined.horizon, part.horizon);
    if (part.outcome == Outcome::Fails) {
      combined.outcome = Outcome::Fails;
      combined.witnesses = part.witnesses;
      combined.oscillation = part.oscillation;
      combined.note = part.note;
      return combined;
    }
    if (part.outcome == Outcome::Inconclusive)
      combined.outcome = Outcome::Inconclusive;
  }
  return combined;
}

}  // namespace seqspace
