#include "seqspace/conditions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "seqspace/errors.hpp"

namespace seqspace {

struct RowStatsProvider::State {
  std::function<RowStats(std::int64_t)> compute;
  std::mutex mutex;
  std::map<std::int64_t, RowStats> memo;
  bool any_truncated = false;
};

RowStatsProvider::RowStatsProvider(std::function<RowStats(std::int64_t)> compute)
    : state_(std::make_shared<State>()) {
  state_->compute = std::move(compute);
}

const RowStats& RowStatsProvider::row(std::int64_t n) const {
  std::lock_guard lock(state_->mutex);
  auto it = state_->memo.find(n);
  if (it == state_->memo.end()) {
    it = state_->memo.emplace(n, state_->compute(n)).first;
    if (it->second.truncated) state_->any_truncated = true;
  }
  return it->second;
}

bool RowStatsProvider::any_truncated() const {
  std::lock_guard lock(state_->mutex);
  return state_->any_truncated;
}

RowStatsProvider make_row_stats(const InfiniteMatrix& m, std::int64_t head_cols,
                                std::int64_t tail_cap) {
  return RowStatsProvider([m, head_cols, tail_cap](std::int64_t n) {
    RowStats stats;
    stats.head.assign(static_cast<std::size_t>(head_cols), Rational(0));
    std::int64_t last;
    if (auto support = m.row_support(n)) {
      last = *support;
    } else {
      last = tail_cap;
      stats.truncated = true;
    }
    for (std::int64_t k = 0; k <= last; ++k) {
      Rational e = m.entry(n, k);
      if (k < head_cols) stats.head[static_cast<std::size_t>(k)] = e;
      if (e == 0) continue;
      stats.total += e;
      stats.abs_sum += rational_abs(e);
    }
    return stats;
  });
}

namespace {

// Every limit condition is evaluated at the horizon and at twice the
// horizon; disagreement between the two runs demotes the verdict.
Verdict double_horizon_limit(const DoubleRule& f, const ConditionParams& params,
                             double* limit_out) {
  ProbeParams p;
  p.window = params.window;
  p.tol = params.tol;
  p.blow_up = params.blow_up;

  p.horizon = params.horizon;
  Verdict first = limit_probe(f, p);
  p.horizon = 2 * params.horizon;
  Verdict second = limit_probe(f, p);

  if (limit_out) {
    if (second.limit) *limit_out = *second.limit;
    else if (first.limit) *limit_out = *first.limit;
    else *limit_out = 0.0;
  }

  if (first.fails()) return first;
  if (second.fails()) return second;
  if (first.holds() && second.holds()) {
    const double l1 = first.limit.value_or(0.0);
    const double l2 = second.limit.value_or(0.0);
    if (std::abs(l1 - l2) <=
        params.consistency_tol * std::max(1.0, std::abs(l2)))
      return second;
    Verdict v = second;
    v.outcome = Outcome::Inconclusive;
    std::ostringstream note;
    note << "extracted limit drifts between horizons: " << l1 << " vs " << l2;
    v.note = note.str();
    return v;
  }
  return second.holds() ? first : second;
}

}  // namespace

Verdict rows_abs_bounded(const RowStatsProvider& rows,
                         const ConditionParams& params) {
  SupProbeParams sp;
  sp.horizon = params.horizon;
  sp.window = params.window;
  sp.stab_tol = params.stab_tol;
  sp.grow_tol = params.grow_tol;
  sp.blow_up = params.blow_up;
  return sup_probe(
             [&rows](std::int64_t n) { return to_double(rows.row(n).abs_sum); },
             sp)
      .verdict;
}

Verdict column_limits(const RowStatsProvider& rows, const ConditionParams& params,
                      std::vector<double>* limits_out) {
  std::vector<Verdict> parts;
  for (std::int64_t k = 0; k < params.columns; ++k) {
    auto column = [&rows, k](std::int64_t n) {
      return to_double(rows.row(n).head[static_cast<std::size_t>(k)]);
    };
    double limit = 0.0;
    Verdict v = double_horizon_limit(column, params, &limit);
    if (limits_out) limits_out->push_back(limit);
    if (v.fails()) {
      v.note = "column " + std::to_string(k) + ": " + v.note;
      v.witnesses.insert(v.witnesses.begin(), k);
      return v;
    }
    parts.push_back(std::move(v));
  }
  Verdict combined = conjunction(parts);
  combined.note = std::to_string(params.columns) + " leading columns probed";
  return combined;
}

Verdict row_total_limit(const RowStatsProvider& rows,
                        const ConditionParams& params, double* limit_out) {
  return double_horizon_limit(
      [&rows](std::int64_t n) { return to_double(rows.row(n).total); }, params,
      limit_out);
}

Verdict abs_limit_interchange(const RowStatsProvider& rows,
                              const ConditionParams& params) {
  double row_limit = 0.0;
  Verdict lhs = double_horizon_limit(
      [&rows](std::int64_t n) { return to_double(rows.row(n).abs_sum); }, params,
      &row_limit);
  if (!lhs.holds()) {
    lhs.note = "limit of absolute row sums: " + lhs.note;
    return lhs;
  }

  std::vector<double> limits;
  Verdict cols = column_limits(rows, params, &limits);
  if (!cols.holds()) {
    cols.note = "columnwise limits: " + cols.note;
    return cols;
  }

  double series = 0.0, series_half = 0.0;
  for (std::size_t k = 0; k < limits.size(); ++k) {
    series += std::abs(limits[k]);
    if (k < limits.size() / 2) series_half += std::abs(limits[k]);
  }

  Verdict v;
  v.horizon = 2 * params.horizon;
  v.limit = row_limit;
  if (series - series_half >
      params.interchange_tol * std::max(1.0, series)) {
    v.outcome = Outcome::Inconclusive;
    v.note = "series of column limits has not stabilized over the probed columns";
    return v;
  }
  std::ostringstream note;
  note << "row-sum limit " << row_limit << " vs column-limit series " << series;
  if (std::abs(row_limit - series) <=
      params.interchange_tol * std::max({1.0, std::abs(row_limit), series})) {
    v.outcome = Outcome::Holds;
    v.note = "limits interchange: " + note.str();
  } else {
    v.outcome = Outcome::Fails;
    v.oscillation = std::abs(row_limit - series);
    v.note = "limits do not interchange: " + note.str();
  }
  return v;
}

namespace {

struct SubsetStage {
  double sup = 0.0;
  std::uint64_t best_mask = 0;
};

SubsetStage subset_stage(const InfiniteMatrix& m, std::int64_t max_col,
                         std::int64_t rows) {
  const int ncols = static_cast<int>(max_col) + 1;
  const std::size_t R = static_cast<std::size_t>(rows);
  std::vector<double> dense(R * static_cast<std::size_t>(ncols));
  for (std::size_t n = 0; n < R; ++n)
    for (int k = 0; k < ncols; ++k)
      dense[n * ncols + k] =
          to_double(m.entry(static_cast<std::int64_t>(n), k));

  // Gray-code walk: one column flips between consecutive subsets, so the
  // per-row partial sums update in O(rows). The absolute total is
  // re-anchored periodically to curb float drift.
  std::vector<double> sigma(R, 0.0);
  double total = 0.0;
  SubsetStage result;
  std::uint64_t mask = 0;
  const std::uint64_t count = std::uint64_t{1} << ncols;
  for (std::uint64_t step = 1; step < count; ++step) {
    const int flip = std::countr_zero(step);
    mask ^= std::uint64_t{1} << flip;
    const double sign = (mask >> flip) & 1u ? 1.0 : -1.0;
    for (std::size_t n = 0; n < R; ++n) {
      const double cell = dense[n * ncols + flip];
      if (cell == 0.0) continue;
      total -= std::abs(sigma[n]);
      sigma[n] += sign * cell;
      total += std::abs(sigma[n]);
    }
    if ((step & 0xFFFu) == 0) {
      total = 0.0;
      for (double s : sigma) total += std::abs(s);
    }
    if (total > result.sup) {
      result.sup = total;
      result.best_mask = mask;
    }
  }
  return result;
}

}  // namespace

Verdict subset_sum_bounded(const InfiniteMatrix& m, std::int64_t max_cols,
                           const ConditionParams& params, double* sup_out) {
  if (max_cols < 0 || max_cols > 20)
    throw DomainError(
        "subset enumeration limited to max_cols in [0, 20] (2^21 subsets)");

  const std::int64_t H = std::max<std::int64_t>(params.horizon, 8);
  const SubsetStage s0 =
      subset_stage(m, std::max<std::int64_t>(0, max_cols - 4), H / 4);
  const SubsetStage s1 =
      subset_stage(m, std::max<std::int64_t>(0, max_cols - 2), H / 2);
  const SubsetStage s2 = subset_stage(m, max_cols, H);
  // Stages nest, so the true suprema are monotone; clamp float noise.
  const double v0 = s0.sup;
  const double v1 = std::max(s1.sup, v0);
  const double v2 = std::max(s2.sup, v1);

  if (sup_out) *sup_out = v2;

  Verdict v;
  v.horizon = H;
  v.limit = v2;
  for (int k = 0; k <= max_cols; ++k)
    if ((s2.best_mask >> k) & 1u) v.witnesses.push_back(k);

  if (v2 == 0.0) {
    v.outcome = Outcome::Holds;
    v.note = "all subset sums are zero";
    return v;
  }
  if (v2 > params.blow_up) {
    v.outcome = Outcome::Fails;
    v.note = "subset sup exceeds blow-up threshold";
    return v;
  }

  const double g1 = (v1 - v0) / std::max(v1, 1e-300);
  const double g2 = (v2 - v1) / std::max(v2, 1e-300);
  std::ostringstream trail;
  trail << "subset sup over escalating stages: " << v0 << " -> " << v1
        << " -> " << v2;
  if (g1 <= params.subset_stab_tol && g2 <= params.subset_stab_tol) {
    v.outcome = Outcome::Holds;
    v.note = "stabilized; " + trail.str();
  } else if (g1 > params.subset_grow_tol && g2 > params.subset_grow_tol) {
    v.outcome = Outcome::Fails;
    v.note = "keeps growing; " + trail.str();
  } else {
    v.outcome = Outcome::Inconclusive;
    v.note = "still drifting; " + trail.str();
  }
  return v;
}

}  // namespace seqspace
