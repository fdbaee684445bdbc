#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqspace/conditions.hpp"
#include "seqspace/sequence.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/triangle.hpp"
#include "seqspace/verdict.hpp"
#include "seqspace/weights.hpp"

namespace seqspace {

/// alpha <-> multipliers into absolutely convergent series (l1),
/// beta  <-> into convergent series (cs),
/// gamma <-> into bounded series (bs).
enum class DualKind { alpha, beta, gamma };

std::string to_string(DualKind kind);

struct DualCheckReport {
  DualKind kind = DualKind::alpha;
  SpaceBase base = SpaceBase::c_zero;  // meaningful for beta only
  std::map<std::string, Verdict> conditions;
  Verdict overall;
  std::optional<double> subset_sup;      // alpha: the enumerated sup
  std::vector<double> column_limits;     // beta: extracted columnwise limits
  std::optional<Verdict> behavioral;     // sampled partial-sum evidence
  bool behavioral_flag = false;          // behavior contradicted a Holds
};

/// Matrix carrying a.x into l1 terms: row n of gwm_delta_inverse(w) scaled
/// by a_n, so that (B y)_k = a_k x_k exactly when x = inverse_transform(y).
Triangle alpha_matrix(const Weights& w, const Sequence& a);

/// Matrix carrying a.x into series partial sums: derived by interchanging
/// the order of summation, C(n,j) = a_j/(u_j v_j)
/// + (1/u_j)(1/v_j - 1/v_{j+1}) * sum_{k=j+1..n} a_k, so that
/// (C y)_n = sum_{k<=n} a_k x_k exactly.
Triangle beta_matrix(const Weights& w, const Sequence& a);

/// alpha-dual membership evidence for a (the same set for all three bases):
/// exhaustive subset-sup condition on alpha_matrix.
DualCheckReport check_alpha(const Weights& w, const Sequence& a,
                            std::int64_t horizon = 400,
                            std::int64_t max_cols = 15);
DualCheckReport check_alpha(const Weights& w, const Sequence& a,
                            std::int64_t max_cols,
                            const ConditionParams& params);

/// beta-dual membership evidence for a; the required conditions depend on
/// the base: c0 -> c1 and c2, c -> c1, c2 and c4, linf -> c2 and c3.
DualCheckReport check_beta(const Weights& w, const Sequence& a, SpaceBase base,
                           std::int64_t horizon = 2000);
DualCheckReport check_beta(const Weights& w, const Sequence& a, SpaceBase base,
                           const ConditionParams& params);

/// gamma-dual membership evidence for a (same set for all three bases):
/// boundedness of the absolute row sums of beta_matrix.
DualCheckReport check_gamma(const Weights& w, const Sequence& a,
                            std::int64_t horizon = 2000);
DualCheckReport check_gamma(const Weights& w, const Sequence& a,
                            const ConditionParams& params);

}  // namespace seqspace
