#include "seqspace/duals.hpp"

#include <array>

#include "seqspace/errors.hpp"

namespace seqspace {

std::string to_string(DualKind kind) {
  switch (kind) {
    case DualKind::alpha: return "alpha";
    case DualKind::beta: return "beta";
    case DualKind::gamma: return "gamma";
  }
  return "alpha";
}

Triangle alpha_matrix(const Weights& w, const Sequence& a) {
  Triangle inverse = gwm_delta_inverse(w);
  return Triangle(
      [inverse, a](std::int64_t n, std::int64_t i) {
        return a(n) * inverse.entry(n, i);
      },
      /*diagonal_nonzero=*/false,
      {OperatorTag::Custom, "diag(a)*" + inverse.descriptor().detail},
      /*memoize=*/false);
}

Triangle beta_matrix(const Weights& w, const Sequence& a) {
  Sequence sums = prefix_sums(a);
  // Per-column factors, shared and memoized across rows.
  Sequence diag_part(
      [w, a](std::int64_t j) { return a(j) / (w.u_at(j) * w.v_at(j)); },
      "a_j/(u_j v_j)");
  Sequence slope(
      [w](std::int64_t j) {
        return (Rational(1) / w.u_at(j)) *
               (Rational(1) / w.v_at(j) - Rational(1) / w.v_at(j + 1));
      },
      "(1/u_j)(1/v_j - 1/v_{j+1})");
  return Triangle(
      [diag_part, slope, sums](std::int64_t n, std::int64_t j) {
        Rational tail = sums(n) - sums(j);  // sum_{k=j+1..n} a_k
        return diag_part(j) + slope(j) * tail;
      },
      /*diagonal_nonzero=*/false,
      {OperatorTag::Custom, "series matrix of a"}, /*memoize=*/false);
}

namespace {

ConditionParams params_for_horizon(std::int64_t horizon) {
  ConditionParams params;
  params.horizon = horizon;
  return params;
}

// Sampled consistency evidence: when the verdict holds, the partial sums
// sum_{k<=n} a_k x_k for an x drawn from the space should look Cauchy.
// (C y)_n equals that partial sum by construction, so probing the transform
// of a null-space witness y is exactly the behavioral check.
Verdict behavioral_partial_sums(const Triangle& c, const ConditionParams& params) {
  Sequence witness = geometric_sequence(Rational(1, 2));
  Sequence partial = apply(c, witness);
  ProbeParams p;
  p.horizon = params.horizon;
  p.window = params.window;
  p.tol = std::max(params.tol, 1e-7);
  p.blow_up = params.blow_up;
  return limit_probe(partial, p);
}

}  // namespace

DualCheckReport check_alpha(const Weights& w, const Sequence& a,
                            std::int64_t horizon, std::int64_t max_cols) {
  return check_alpha(w, a, max_cols, params_for_horizon(horizon));
}

DualCheckReport check_alpha(const Weights& w, const Sequence& a,
                            std::int64_t max_cols,
                            const ConditionParams& params) {
  DualCheckReport report;
  report.kind = DualKind::alpha;

  InfiniteMatrix b = from_triangle(alpha_matrix(w, a));
  double sup = 0.0;
  Verdict v = subset_sum_bounded(b, max_cols, params, &sup);
  report.subset_sup = sup;
  report.conditions.emplace("lemma1_subset_sup", v);
  report.overall = v;
  return report;
}

DualCheckReport check_beta(const Weights& w, const Sequence& a, SpaceBase base,
                           std::int64_t horizon) {
  return check_beta(w, a, base, params_for_horizon(horizon));
}

DualCheckReport check_beta(const Weights& w, const Sequence& a, SpaceBase base,
                           const ConditionParams& params) {
  DualCheckReport report;
  report.kind = DualKind::beta;
  report.base = base;

  Triangle c = beta_matrix(w, a);
  RowStatsProvider rows =
      make_row_stats(from_triangle(c), params.columns, params.horizon);

  const bool need_c1 = base == SpaceBase::c_zero || base == SpaceBase::c;
  const bool need_c4 = base == SpaceBase::c;
  const bool need_c3 = base == SpaceBase::ell_infinity;

  std::vector<Verdict> required;
  if (need_c1) {
    Verdict c1 = rows_abs_bounded(rows, params);
    report.conditions.emplace("c1", c1);
    required.push_back(c1);
  }
  {
    Verdict c2 = column_limits(rows, params, &report.column_limits);
    report.conditions.emplace("c2", c2);
    required.push_back(c2);
  }
  if (need_c3) {
    Verdict c3 = abs_limit_interchange(rows, params);
    report.conditions.emplace("c3", c3);
    required.push_back(c3);
  }
  if (need_c4) {
    Verdict c4 = row_total_limit(rows, params, nullptr);
    report.conditions.emplace("c4", c4);
    required.push_back(c4);
  }
  report.overall = conjunction(required);

  if (report.overall.holds()) {
    report.behavioral = behavioral_partial_sums(c, params);
    report.behavioral_flag = report.behavioral->fails();
  }
  return report;
}

DualCheckReport check_gamma(const Weights& w, const Sequence& a,
                            std::int64_t horizon) {
  return check_gamma(w, a, params_for_horizon(horizon));
}

DualCheckReport check_gamma(const Weights& w, const Sequence& a,
                            const ConditionParams& params) {
  DualCheckReport report;
  report.kind = DualKind::gamma;

  RowStatsProvider rows = make_row_stats(from_triangle(beta_matrix(w, a)),
                                         params.columns, params.horizon);
  Verdict c1 = rows_abs_bounded(rows, params);
  report.conditions.emplace("c1", c1);
  report.overall = c1;
  return report;
}

}  // namespace seqspace
