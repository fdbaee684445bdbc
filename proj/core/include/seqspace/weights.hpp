#pragma once

#include <cstdint>

#include "seqspace/sequence.hpp"

namespace seqspace {

/// A pair of weight sequences (u, v) with every term nonzero, so that
/// 1/u_k and 1/v_k always exist.
///
/// Construction probes a prefix of both sequences and rejects zero terms;
/// later accesses keep checking lazily via u_at / v_at.
class Weights {
 public:
  Weights(Sequence u, Sequence v, std::int64_t probe_prefix = 64);

  const Sequence& u() const { return u_; }
  const Sequence& v() const { return v_; }

  /// Checked access: throws DomainError if the term is zero.
  Rational u_at(std::int64_t k) const;
  Rational v_at(std::int64_t k) const;

 private:
  Sequence u_;
  Sequence v_;
};

}  // namespace seqspace
