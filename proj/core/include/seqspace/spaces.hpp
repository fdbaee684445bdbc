#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "seqspace/probes.hpp"
#include "seqspace/sequence.hpp"
#include "seqspace/triangle.hpp"
#include "seqspace/verdict.hpp"
#include "seqspace/weights.hpp"

namespace seqspace {

enum class SpaceBase { ell_infinity, c, c_zero };

std::string to_string(SpaceBase base);
SpaceBase space_base_from_string(const std::string& name);

/// Identifies a classical base space, or its weighted-difference counterpart
/// when weights are present.
struct SpaceId {
  SpaceBase base = SpaceBase::c_zero;
  std::optional<Weights> weights;

  bool weighted() const { return weights.has_value(); }
};

/// y with y_n = (G(u,v)*difference applied to x)_n, exact and memoized.
Sequence forward_transform(const Weights& w, const Sequence& x);

/// Exact inverse: forward_transform(w, inverse_transform(w, y)) == y.
Sequence inverse_transform(const Weights& w, const Sequence& y);

struct NormResult {
  Rational value;        // max_{k<=horizon} |y_k|, exact
  std::int64_t argmax = 0;
  Verdict tail;          // does the sup look attained, or still growing?
};

/// Norm of x in the weighted space: exact sup over the horizon of |y_k|
/// plus tail-behavior evidence sampled past the horizon.
NormResult norm(const Weights& w, const Sequence& x, std::int64_t horizon);

/// Membership evidence for x in the weighted space: the transform y is
/// probed for boundedness (ell_infinity), convergence (c) or a null limit
/// (c_zero). Never a proof; the verdict carries the evidence.
Verdict membership(const Weights& w, const Sequence& x, const SpaceId& space,
                   const ProbeParams& params = {});

/// k-th basis sequence of the weighted null space: the k-th column of
/// gwm_delta_inverse(w).
Sequence basis_vector(const Weights& w, std::int64_t k);

struct BasisExpansion {
  SpaceId space;
  Sequence coefficients;                 // c_zero: y_k; c: y_k - l
  std::optional<Rational> limit_value;   // l, for base c
  std::optional<Verdict> limit_verdict;
  bool limit_exact = false;  // true when the tail window was exactly constant
};

/// Basis expansion of x. For the bounded base there is no basis to expand
/// in, and the call is rejected.
BasisExpansion expand(const Weights& w, const Sequence& x, const SpaceId& space,
                      const ProbeParams& params = {});

/// Norm distance from x to its m-th basis partial sum, probed to `horizon`.
/// Computed both directly and through the tail-sup identity; a mismatch
/// throws InternalError.
Rational partial_sum_residual(const Weights& w, const Sequence& x,
                              std::int64_t m, std::int64_t horizon);

/// Distance from x to the best finitely supported match on {0..m}: solves
/// the leading triangular system and returns the probed residual, exact.
/// A decreasing trend in m is density evidence for finitely supported
/// sequences, contingent on the weight sequence u itself lying in the
/// weighted null space; the probe does not check that hypothesis.
Rational ad_probe(const Weights& w, const Sequence& x, std::int64_t m,
                  std::int64_t horizon);

}  // namespace seqspace
