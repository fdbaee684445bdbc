#include "seqspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "seqspace/errors.hpp"

namespace seqspace {

std::string to_string(SpaceBase base) {
  switch (base) {
    case SpaceBase::ell_infinity: return "linf";
    case SpaceBase::c: return "c";
    case SpaceBase::c_zero: return "c0";
  }
  return "c0";
}

SpaceBase space_base_from_string(const std::string& name) {
  if (name == "linf" || name == "ell_infinity" || name == "loo") {
    return SpaceBase::ell_infinity;
  }
  if (name == "c") return SpaceBase::c;
  if (name == "c0" || name == "c_zero") return SpaceBase::c_zero;
  throw DomainError("unknown space base '" + name + "' (expected linf, c, c0)");
}

Sequence forward_transform(const Weights& w, const Sequence& x) {
  return apply(gwm_delta(w), x);
}

Sequence inverse_transform(const Weights& w, const Sequence& y) {
  return apply(gwm_delta_inverse(w), y);
}

NormResult norm(const Weights& w, const Sequence& x, std::int64_t horizon) {
  if (horizon < 1) throw DomainError("norm requires horizon >= 1");
  Sequence y = forward_transform(w, x);

  NormResult result;
  result.value = 0;
  for (std::int64_t k = 0; k <= horizon; ++k) {
    Rational a = rational_abs(y(k));
    if (a > result.value) {
      result.value = std::move(a);
      result.argmax = k;
    }
  }

  // Tail behavior past the horizon, sampled in double precision.
  const double value_d = to_double(result.value);
  std::vector<std::int64_t> tail_idx;
  const std::int64_t step = std::max<std::int64_t>(1, horizon / 8);
  for (std::int64_t k = horizon + 1; k <= 2 * horizon; k += step) tail_idx.push_back(k);
  const std::int64_t window = std::min<std::int64_t>(16, horizon);
  for (std::int64_t k = 2 * horizon - window; k <= 2 * horizon; ++k)
    if (k > horizon) tail_idx.push_back(k);
  std::sort(tail_idx.begin(), tail_idx.end());
  tail_idx.erase(std::unique(tail_idx.begin(), tail_idx.end()), tail_idx.end());

  double tail_max = 0.0;
  std::int64_t tail_arg = horizon;
  bool window_increasing = true;
  double prev = -1.0;
  for (std::int64_t k : tail_idx) {
    const double a = std::abs(to_double(y(k)));
    if (a > tail_max) {
      tail_max = a;
      tail_arg = k;
    }
    if (k > 2 * horizon - window) {
      if (prev >= 0.0 && a <= prev) window_increasing = false;
      prev = a;
    }
  }

  Verdict& tail = result.tail;
  tail.horizon = 2 * horizon;
  tail.limit = value_d;
  if (tail_max > value_d * (1.0 + 1e-6) + 1e-300) {
    if (window_increasing) {
      tail.outcome = Outcome::Fails;
      tail.witnesses = {tail_arg};
      std::ostringstream note;
      note << "|y| keeps growing past the horizon (" << tail_max << " at k="
           << tail_arg << " exceeds the horizon sup " << value_d << ")";
      tail.note = note.str();
    } else {
      tail.outcome = Outcome::Inconclusive;
      tail.witnesses = {tail_arg};
      tail.note = "sup exceeded past the horizon without a monotone trend";
    }
  } else {
    tail.outcome = Outcome::Holds;
    tail.note = "sup attained within the horizon; sampled tail stays below";
  }
  return result;
}

Verdict membership(const Weights& w, const Sequence& x, const SpaceId& space,
                   const ProbeParams& params) {
  Sequence y = forward_transform(w, x);
  switch (space.base) {
    case SpaceBase::ell_infinity: {
      SupProbeParams sp;
      sp.horizon = params.horizon;
      sp.window = params.window;
      sp.blow_up = params.blow_up;
      return sup_probe(y, sp).verdict;
    }
    case SpaceBase::c:
      return limit_probe(y, params);
    case SpaceBase::c_zero: {
      Verdict v = limit_probe(y, params);
      if (v.holds() && v.limit && std::abs(*v.limit) > params.tol) {
        v.outcome = Outcome::Fails;
        std::ostringstream note;
        note << "transform converges but to " << *v.limit
             << ", not to zero (tol " << params.tol << ")";
        v.note = note.str();
      }
      return v;
    }
  }
  return {};
}

Sequence basis_vector(const Weights& w, std::int64_t k) {
  if (k < 0) throw DomainError("basis_vector requires k >= 0");
  Triangle inv = gwm_delta_inverse(w);
  return Sequence(
      [inv, k](std::int64_t n) { return inv.entry(n, k); },
      "basis(" + std::to_string(k) + ")");
}

BasisExpansion expand(const Weights& w, const Sequence& x, const SpaceId& space,
                      const ProbeParams& params) {
  if (space.base == SpaceBase::ell_infinity)
    throw DomainError(
        "the bounded-sequence space carries no basis here; expansion rejected");

  Sequence y = forward_transform(w, x);
  BasisExpansion expansion;
  expansion.space = space;

  if (space.base == SpaceBase::c_zero) {
    expansion.coefficients = y;
    return expansion;
  }

  Verdict probe = limit_probe(y, params);

  // If the tail window is exactly constant the limit is that rational;
  // otherwise fall back to the exact dyadic value of the refined estimate.
  Rational limit(0);
  bool exact = false;
  {
    const std::int64_t end = params.horizon;
    const std::int64_t start = std::max<std::int64_t>(0, end - params.window);
    Rational candidate = y(end - 1);
    exact = true;
    for (std::int64_t k = start; k < end; ++k) {
      if (y(k) != candidate) {
        exact = false;
        break;
      }
    }
    if (exact) {
      limit = candidate;
    } else if (probe.limit) {
      limit = Rational(*probe.limit);
    }
  }

  expansion.limit_value = limit;
  expansion.limit_verdict = probe;
  expansion.limit_exact = exact;
  expansion.coefficients =
      Sequence([y, limit](std::int64_t k) { return y(k) - limit; },
               "coefficients");
  return expansion;
}

Rational partial_sum_residual(const Weights& w, const Sequence& x,
                              std::int64_t m, std::int64_t horizon) {
  if (m < 0) throw DomainError("partial_sum_residual requires m >= 0");
  if (horizon <= m) throw DomainError("partial_sum_residual requires horizon > m");
  Sequence y = forward_transform(w, x);

  // Tail-sup identity: the transform of the m-th partial sum is
  // (y_0,...,y_m,0,...), so the residual norm is the tail sup of |y|.
  Rational tail_sup(0);
  for (std::int64_t k = m + 1; k <= horizon; ++k)
    tail_sup = std::max(tail_sup, rational_abs(y(k)));

  // Direct route: materialize S_m = sum_{j<=m} y_j b^(j) and take the norm
  // of x - S_m over the horizon.
  auto columns = std::make_shared<std::vector<Sequence>>();
  auto coeffs = std::make_shared<std::vector<Rational>>();
  for (std::int64_t j = 0; j <= m; ++j) {
    columns->push_back(basis_vector(w, j));
    coeffs->push_back(y(j));
  }
  Sequence partial(
      [columns, coeffs](std::int64_t n) {
        Rational sum(0);
        for (std::size_t j = 0; j < columns->size(); ++j)
          sum += (*coeffs)[j] * (*columns)[j](n);
        return sum;
      },
      "partial_sum");
  Sequence residual_transform = forward_transform(w, x - partial);
  Rational direct(0);
  for (std::int64_t k = 0; k <= horizon; ++k)
    direct = std::max(direct, rational_abs(residual_transform(k)));

  if (direct != tail_sup)
    throw InternalError(
        "partial_sum_residual: direct norm and tail-sup identity disagree");
  return tail_sup;
}

Rational ad_probe(const Weights& w, const Sequence& x, std::int64_t m,
                  std::int64_t horizon) {
  if (m < 0) throw DomainError("ad_probe requires m >= 0");
  if (horizon <= m) throw DomainError("ad_probe requires horizon > m");
  Sequence y = forward_transform(w, x);
  Triangle kernel = gwm_delta(w);

  // Forward substitution: the finitely supported z on {0..m} matching the
  // first m+1 transform values.
  std::vector<Rational> z;
  z.reserve(static_cast<std::size_t>(m) + 1);
  for (std::int64_t j = 0; j <= m; ++j) {
    Rational sum(0);
    for (std::int64_t i = 0; i < j; ++i)
      sum += kernel.entry(j, i) * z[static_cast<std::size_t>(i)];
    z.push_back((y(j) - sum) / kernel.entry(j, j));
  }
  Sequence z_seq = Sequence::from_values(z, 0, "finite_section");

  Rational residual(0);
  for (std::int64_t k = m + 1; k <= horizon; ++k)
    residual = std::max(residual, rational_abs(y(k) - apply(kernel, z_seq, k)));
  return residual;
}

}  // namespace seqspace
