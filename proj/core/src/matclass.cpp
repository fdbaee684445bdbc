#include "seqspace/matclass.hpp"

#include <cmath>
#include <utility>

#include "seqspace/errors.hpp"
#include "seqspace/spaces.hpp"

namespace seqspace {

std::string to_string(ClassTarget target) {
  return target == ClassTarget::into_ell_infinity ? "into_linf" : "into_c";
}

namespace {

// Column factors of the dual transform, memoized across all rows.
struct DualFactors {
  Sequence diag;   // 1/(u_k v_k)
  Sequence slope;  // (1/u_k)(1/v_k - 1/v_{k+1})
};

DualFactors dual_factors(const Weights& w) {
  Sequence diag(
      [w](std::int64_t k) { return Rational(1) / (w.u_at(k) * w.v_at(k)); },
      "1/(u_k v_k)");
  Sequence slope(
      [w](std::int64_t k) {
        return (Rational(1) / w.u_at(k)) *
               (Rational(1) / w.v_at(k) - Rational(1) / w.v_at(k + 1));
      },
      "(1/u_k)(1/v_k - 1/v_{k+1})");
  return {std::move(diag), std::move(slope)};
}

}  // namespace

InfiniteMatrix dual_transform(const InfiniteMatrix& a, const Weights& w,
                              std::int64_t tail_horizon) {
  DualFactors f = dual_factors(w);
  auto entry = [a, f, tail_horizon](std::int64_t n, std::int64_t k) {
    const std::int64_t last = a.row_support(n).value_or(tail_horizon);
    Rational tail(0);
    for (std::int64_t j = k + 1; j <= last; ++j) tail += a.entry(n, j);
    return a.entry(n, k) * f.diag(k) + f.slope(k) * tail;
  };
  if (a.row_finite()) {
    auto support = [a](std::int64_t n) { return *a.row_support(n); };
    return InfiniteMatrix(entry, support, "dual(" + a.descriptor() + ")");
  }
  return InfiniteMatrix(entry, std::nullopt, "dual(" + a.descriptor() + ")");
}

namespace {

// Row-level aggregates of the dual transform in one backward pass per row:
// O(row length) instead of O(row length^2) through the entry rule.
RowStatsProvider make_dual_row_stats(const InfiniteMatrix& a, const Weights& w,
                                     std::int64_t head_cols,
                                     std::int64_t tail_cap) {
  DualFactors f = dual_factors(w);
  return RowStatsProvider([a, f, head_cols, tail_cap](std::int64_t n) {
    RowStats stats;
    stats.head.assign(static_cast<std::size_t>(head_cols), Rational(0));
    std::int64_t last;
    if (auto support = a.row_support(n)) {
      last = *support;
    } else {
      last = tail_cap;
      stats.truncated = true;
    }
    Rational tail(0);  // sum_{j=k+1..last} a_nj, built from the right
    for (std::int64_t k = last; k >= 0; --k) {
      Rational d = a.entry(n, k) * f.diag(k) + f.slope(k) * tail;
      if (k < head_cols) stats.head[static_cast<std::size_t>(k)] = d;
      if (!(d == 0)) {
        stats.total += d;
        stats.abs_sum += rational_abs(d);
      }
      tail += a.entry(n, k);
    }
    return stats;
  });
}

ConditionParams matclass_params(std::int64_t horizon) {
  ConditionParams params;
  params.horizon = horizon;
  // Classification evidence is compared at the 1e-6 scale; the core probe
  // default (1e-9) is stricter than finite-horizon column decay allows.
  params.tol = 1e-6;
  return params;
}

// Sampled behavioral evidence: when the classification holds, transforms of
// members of the weighted convergent space should themselves stabilize.
Verdict behavioral_transform(const InfiniteMatrix& a, const Weights& w,
                             const ConditionParams& params) {
  Sequence y = Sequence(
      [](std::int64_t k) { return Rational(1) + Rational(1, (k + 1) * (k + 1)); },
      "convergent witness");
  Sequence x = inverse_transform(w, y);
  auto image = [a, x, params](std::int64_t n) {
    const std::int64_t last = a.row_support(n).value_or(params.horizon);
    Rational sum(0);
    for (std::int64_t k = 0; k <= last; ++k) sum += a.entry(n, k) * x(k);
    return to_double(sum);
  };
  ProbeParams p;
  p.horizon = params.horizon;
  p.window = params.window;
  p.tol = std::max(params.tol, 1e-6);
  p.blow_up = params.blow_up;
  return limit_probe(image, p);
}

ClassificationReport classify(const InfiniteMatrix& a, const Weights& w,
                              ClassTarget target,
                              const ConditionParams& params) {
  ClassificationReport report;
  report.target = target;

  RowStatsProvider rows =
      make_dual_row_stats(a, w, params.columns, params.horizon);

  Verdict bounded = rows_abs_bounded(rows, params);
  std::vector<double> column_values;
  Verdict columns = column_limits(rows, params, &column_values);
  double total_limit = 0.0;
  Verdict totals = row_total_limit(rows, params, &total_limit);

  report.conditions.emplace("4.1", bounded);
  report.conditions.emplace("4.2", columns);
  report.conditions.emplace("4.3", bounded);
  report.conditions.emplace("4.4", totals);
  if (target == ClassTarget::into_c) {
    report.conditions.emplace("4.6", totals);
    report.conditions.emplace("4.7", columns);
    report.alpha = total_limit;
    report.alpha_head = column_values;
  }

  const Verdict parts[] = {bounded, columns, totals};
  report.overall = conjunction(parts);
  report.approximate_tail = rows.any_truncated();

  if (target == ClassTarget::into_c && report.overall.holds()) {
    report.behavioral = behavioral_transform(a, w, params);
    report.behavioral_flag = report.behavioral->fails();
  }
  return report;
}

}  // namespace

ClassificationReport classify_into_linf(const InfiniteMatrix& a,
                                        const Weights& w,
                                        std::int64_t horizon) {
  return classify(a, w, ClassTarget::into_ell_infinity,
                  matclass_params(horizon));
}

ClassificationReport classify_into_linf(const InfiniteMatrix& a,
                                        const Weights& w,
                                        const ConditionParams& params) {
  return classify(a, w, ClassTarget::into_ell_infinity, params);
}

ClassificationReport classify_into_c(const InfiniteMatrix& a, const Weights& w,
                                     std::int64_t horizon) {
  return classify(a, w, ClassTarget::into_c, matclass_params(horizon));
}

ClassificationReport classify_into_c(const InfiniteMatrix& a, const Weights& w,
                                     const ConditionParams& params) {
  return classify(a, w, ClassTarget::into_c, params);
}

std::string to_string(ToeplitzCondition which) {
  switch (which) {
    case ToeplitzCondition::c0_to_l1: return "c0_to_l1";
    case ToeplitzCondition::c0_to_c: return "c0_to_c";
    case ToeplitzCondition::c0_to_linf: return "c0_to_linf";
    case ToeplitzCondition::c0_to_c_null: return "c0_to_c_null";
  }
  return "c0_to_linf";
}

ToeplitzCondition toeplitz_condition_from_string(const std::string& name) {
  if (name == "c0_to_l1") return ToeplitzCondition::c0_to_l1;
  if (name == "c0_to_c") return ToeplitzCondition::c0_to_c;
  if (name == "c0_to_linf") return ToeplitzCondition::c0_to_linf;
  if (name == "c0_to_c_null") return ToeplitzCondition::c0_to_c_null;
  throw DomainError("unknown condition id '" + name + "'");
}

Verdict toeplitz_condition(const InfiniteMatrix& a, ToeplitzCondition which,
                           std::int64_t horizon) {
  ConditionParams params;
  params.horizon = horizon;
  params.tol = 1e-6;
  return toeplitz_condition(a, which, params);
}

Verdict toeplitz_condition(const InfiniteMatrix& a, ToeplitzCondition which,
                           const ConditionParams& params) {
  if (which == ToeplitzCondition::c0_to_l1)
    return subset_sum_bounded(a, /*max_cols=*/15, params, nullptr);

  RowStatsProvider rows = make_row_stats(a, params.columns, params.horizon);
  if (which == ToeplitzCondition::c0_to_linf)
    return rows_abs_bounded(rows, params);

  Verdict bounded = rows_abs_bounded(rows, params);
  std::vector<double> limits;
  Verdict columns = column_limits(rows, params, &limits);
  if (which == ToeplitzCondition::c0_to_c) {
    const Verdict parts[] = {bounded, columns};
    return conjunction(parts);
  }

  // c0_to_c_null: the convergence conditions with all column limits zero
  // and row totals tending to zero.
  Verdict null_columns = columns;
  if (null_columns.holds()) {
    for (std::size_t k = 0; k < limits.size(); ++k) {
      if (std::abs(limits[k]) > params.tol) {
        null_columns.outcome = Outcome::Fails;
        null_columns.witnesses = {static_cast<std::int64_t>(k)};
        null_columns.note = "column " + std::to_string(k) +
                            " converges to a nonzero value";
        break;
      }
    }
  }
  double total = 0.0;
  Verdict totals = row_total_limit(rows, params, &total);
  if (totals.holds() && std::abs(total) > params.tol) {
    totals.outcome = Outcome::Fails;
    totals.note = "row totals converge to a nonzero value";
  }
  const Verdict parts[] = {bounded, null_columns, totals};
  return conjunction(parts);
}

}  // namespace seqspace
