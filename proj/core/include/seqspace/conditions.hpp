#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "seqspace/infinite_matrix.hpp"
#include "seqspace/probes.hpp"
#include "seqspace/verdict.hpp"

namespace seqspace {

/// Per-row aggregates of an infinite matrix, the quantities every
/// matrix-class condition is built from.
struct RowStats {
  Rational abs_sum;             // sum_k |M(n,k)| over the scanned range
  Rational total;               // sum_k M(n,k)
  std::vector<Rational> head;   // M(n,k) for k < head_cols
  bool truncated = false;       // no declared support; tail cut at tail_cap
};

/// Memoized row-level view of a matrix. Conditions sample rows sparsely, so
/// each row is computed once and shared between conditions.
class RowStatsProvider {
 public:
  explicit RowStatsProvider(std::function<RowStats(std::int64_t)> compute);

  const RowStats& row(std::int64_t n) const;
  bool any_truncated() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Generic row scan over entry(n, 0..r(n)); rows without declared support
/// are truncated at tail_cap and marked.
RowStatsProvider make_row_stats(const InfiniteMatrix& m, std::int64_t head_cols,
                                std::int64_t tail_cap);

struct ConditionParams {
  std::int64_t horizon = 2000;
  std::int64_t window = 50;
  double tol = 1e-9;              // limit-probe tolerance
  double blow_up = 1e12;
  std::int64_t columns = 25;      // leading columns probed for limits
  double stab_tol = 1e-6;         // sup stabilization threshold
  double grow_tol = 1e-3;         // persistent sup growth => Fails
  double consistency_tol = 1e-6;  // horizon vs 2*horizon value agreement
  double interchange_tol = 1e-7;  // limit/series equality comparison
  double subset_stab_tol = 1e-3;  // subset-sup stabilization across stages
  double subset_grow_tol = 1e-2;  // subset-sup persistent growth => Fails
};

/// sup_n sum_k |M(n,k)| < infinity (rows sampled, sup escalated to 2H).
Verdict rows_abs_bounded(const RowStatsProvider& rows,
                         const ConditionParams& params);

/// lim_n M(n,k) exists for each probed column; each column is evaluated at
/// the horizon and at twice the horizon, and disagreement demotes the
/// verdict to Inconclusive. Extracted limits are appended to limits_out.
Verdict column_limits(const RowStatsProvider& rows, const ConditionParams& params,
                      std::vector<double>* limits_out = nullptr);

/// lim_n sum_k M(n,k) exists; same double-horizon discipline.
Verdict row_total_limit(const RowStatsProvider& rows,
                        const ConditionParams& params,
                        double* limit_out = nullptr);

/// lim_n sum_k |M(n,k)|  ==  sum_k |lim_n M(n,k)|, compared in double
/// precision within interchange_tol once both sides have stabilized.
Verdict abs_limit_interchange(const RowStatsProvider& rows,
                              const ConditionParams& params);

/// sup over subsets K of {0..max_cols} of sum_{n<=H} |sum_{k in K} M(n,k)|,
/// by exhaustive enumeration over three escalating (columns, rows) stages.
/// The verdict's witnesses are the maximizing column set. max_cols > 20 is
/// rejected (exponential enumeration guard).
Verdict subset_sum_bounded(const InfiniteMatrix& m, std::int64_t max_cols,
                           const ConditionParams& params,
                           double* sup_out = nullptr);

}  // namespace seqspace
