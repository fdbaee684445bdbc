#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqspace/conditions.hpp"
#include "seqspace/infinite_matrix.hpp"
#include "seqspace/verdict.hpp"
#include "seqspace/weights.hpp"

namespace seqspace {

enum class ClassTarget { into_ell_infinity, into_c };

std::string to_string(ClassTarget target);

struct ClassificationReport {
  ClassTarget target = ClassTarget::into_ell_infinity;
  std::map<std::string, Verdict> conditions;  // keyed "4.1".."4.4","4.6","4.7"
  std::optional<double> alpha;       // limit of row totals (into_c)
  std::vector<double> alpha_head;    // columnwise limits (into_c)
  bool approximate_tail = false;     // some rows lacked a support declaration
  std::optional<Verdict> behavioral; // sampled transform evidence on Holds
  bool behavioral_flag = false;
  Verdict overall;
};

/// The matrix the classification conditions are evaluated on:
///   D(n,k) = a_nk/(u_k v_k) + (1/u_k)(1/v_k - 1/v_{k+1}) * sum_{j>k} a_nj,
/// the exact product A * gwm_delta_inverse(w) when rows are finite. Rows
/// without a declared support are truncated at tail_horizon and flagged.
InfiniteMatrix dual_transform(const InfiniteMatrix& a, const Weights& w,
                              std::int64_t tail_horizon);

/// Maps-into-bounded classification: absolute row sums of the dual
/// transform stay bounded, columns converge, row totals converge.
ClassificationReport classify_into_linf(const InfiniteMatrix& a,
                                        const Weights& w, std::int64_t horizon);
ClassificationReport classify_into_linf(const InfiniteMatrix& a,
                                        const Weights& w,
                                        const ConditionParams& params);

/// Maps-into-convergent classification: the bounded conditions plus the
/// extracted limits alpha (row totals) and alpha_k (columns).
ClassificationReport classify_into_c(const InfiniteMatrix& a, const Weights& w,
                                     std::int64_t horizon);
ClassificationReport classify_into_c(const InfiniteMatrix& a, const Weights& w,
                                     const ConditionParams& params);

/// Named classical matrix conditions, evaluated directly on A.
enum class ToeplitzCondition { c0_to_l1, c0_to_c, c0_to_linf, c0_to_c_null };

std::string to_string(ToeplitzCondition which);
ToeplitzCondition toeplitz_condition_from_string(const std::string& name);

Verdict toeplitz_condition(const InfiniteMatrix& a, ToeplitzCondition which,
                           std::int64_t horizon);
Verdict toeplitz_condition(const InfiniteMatrix& a, ToeplitzCondition which,
                           const ConditionParams& params);

}  // namespace seqspace
