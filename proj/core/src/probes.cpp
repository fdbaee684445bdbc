#include "seqspace/probes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "seqspace/errors.hpp"

namespace seqspace {
namespace {

// Sample plan: a geometric grid (catches blow-ups cheaply) plus full windows
// at each checkpoint. Derived sequences are often O(n) per term, so probes
// must not touch every index up to the horizon.
std::vector<std::int64_t> sample_indices(std::int64_t limit, std::int64_t window,
                                         std::span<const std::int64_t> checkpoints) {
  std::vector<std::int64_t> idx;
  for (std::int64_t k = 0; k <= std::min<std::int64_t>(limit - 1, 8); ++k)
    idx.push_back(k);
  for (std::int64_t k = 16; k < limit; k *= 2) idx.push_back(k);
  if (limit > 0) idx.push_back(limit - 1);
  for (std::int64_t c : checkpoints) {
    if (c < window) continue;
    for (std::int64_t k = c - window; k < c && k < limit; ++k)
      if (k >= 0) idx.push_back(k);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

struct WindowStats {
  double mean = 0.0;
  double deviation = 0.0;  // max |d - mean|
  double oscillation = 0.0;
  std::int64_t arg_min = 0;
  std::int64_t arg_max = 0;
  bool strictly_increasing_abs = true;
  bool valid = false;
};

WindowStats window_stats(const std::map<std::int64_t, double>& values,
                         std::int64_t end, std::int64_t window) {
  WindowStats stats;
  if (end < window) return stats;
  double sum = 0.0, lo = 0.0, hi = 0.0, prev_abs = 0.0;
  bool first = true;
  for (std::int64_t k = end - window; k < end; ++k) {
    auto it = values.find(k);
    if (it == values.end()) return stats;
    const double d = it->second;
    sum += d;
    if (first || d < lo) { lo = d; stats.arg_min = k; }
    if (first || d > hi) { hi = d; stats.arg_max = k; }
    if (!first && std::abs(d) <= prev_abs) stats.strictly_increasing_abs = false;
    prev_abs = std::abs(d);
    first = false;
  }
  stats.mean = sum / static_cast<double>(window);
  stats.oscillation = hi - lo;
  stats.deviation = std::max(hi - stats.mean, stats.mean - lo);
  stats.valid = true;
  return stats;
}

// Two-step Richardson extrapolation through window means at c, 2c, 4c.
// Exact for errors of the form a/n + b/n^2 and harmless for faster decay;
// rejected when the extrapolation overshoots the inter-window drift.
double refine_limit(const WindowStats& w1, const WindowStats& w2,
                    const WindowStats& w3) {
  if (!w3.valid) return 0.0;
  if (!w2.valid) return w3.mean;
  double refined;
  if (w1.valid) {
    refined = (8.0 * w3.mean - 6.0 * w2.mean + w1.mean) / 3.0;
  } else {
    refined = 2.0 * w3.mean - w2.mean;
  }
  const double drift = std::abs(w3.mean - w2.mean);
  if (std::abs(refined - w3.mean) > 1.5 * drift + 1e-300) return w3.mean;
  return refined;
}

}  // namespace

Verdict limit_probe(const DoubleRule& f, const ProbeParams& params) {
  const std::int64_t H = params.horizon;
  const std::int64_t W = params.window;
  if (!(H > W && W >= 2))
    throw DomainError("limit_probe requires horizon > window >= 2");
  if (!(params.tol > 0)) throw DomainError("limit_probe requires tol > 0");

  const std::int64_t checkpoints[] = {H / 4, H / 2, H};
  const auto idx = sample_indices(H, W, checkpoints);
  std::map<std::int64_t, double> d;
  for (std::int64_t k : idx) d[k] = f(k);

  Verdict v;
  v.horizon = H;

  // Magnitude blow-up along the sampled scan.
  {
    int increasing_run = 0;
    double prev = 0.0;
    bool first = true;
    for (std::int64_t k : idx) {
      const double a = std::abs(d[k]);
      increasing_run = (!first && a > prev) ? increasing_run + 1 : 0;
      if (a > params.blow_up && increasing_run >= 2) {
        v.outcome = Outcome::Fails;
        v.witnesses = {k};
        std::ostringstream note;
        note << "magnitude " << a << " exceeds blow-up threshold "
             << params.blow_up;
        v.note = note.str();
        return v;
      }
      prev = a;
      first = false;
    }
  }

  const WindowStats w1 = window_stats(d, H / 4, W);
  const WindowStats w2 = window_stats(d, H / 2, W);
  const WindowStats w3 = window_stats(d, H, W);
  v.oscillation = w3.oscillation;

  if (w3.valid && w3.deviation <= params.tol) {
    v.outcome = Outcome::Holds;
    v.limit = refine_limit(w1, w2, w3);
    v.note = "last window settled within tol";
    return v;
  }

  // Strictly monotone growth of |d| through the tail of the grid and the
  // whole last window: divergence evidence.
  bool grid_tail_increasing = true;
  {
    std::vector<std::int64_t> tail;
    for (std::int64_t k : idx)
      if (k < H - W) tail.push_back(k);
    const std::size_t take = std::min<std::size_t>(tail.size(), 4);
    for (std::size_t i = tail.size() - take; i + 1 < tail.size(); ++i)
      if (std::abs(d[tail[i + 1]]) <= std::abs(d[tail[i]]))
        grid_tail_increasing = false;
  }
  if (w3.valid && w3.strictly_increasing_abs && grid_tail_increasing) {
    const double start = std::abs(d[H - W]);
    const double end = std::abs(d[H - 1]);
    const double growth = end - start;
    if (growth > params.tol * std::max(1.0, end)) {
      v.outcome = Outcome::Fails;
      v.witnesses = {H - W, H - 1};
      std::ostringstream note;
      note << "strictly monotone growth from " << start << " to " << end
           << " over the last window";
      v.note = note.str();
      return v;
    }
  }

  // Oscillation that is not shrinking: non-convergence evidence.
  if (w3.valid && w3.oscillation > params.tol && w2.valid &&
      w3.oscillation >= 0.5 * w2.oscillation) {
    v.outcome = Outcome::Fails;
    v.witnesses = {w3.arg_min, w3.arg_max};
    std::ostringstream note;
    note << "oscillation " << w3.oscillation << " persists above tol "
         << params.tol;
    v.note = note.str();
    return v;
  }

  v.outcome = Outcome::Inconclusive;
  v.note = "not settled within tol at this horizon";
  if (w3.valid) v.limit = refine_limit(w1, w2, w3);
  return v;
}

Verdict limit_probe(const Sequence& s, const ProbeParams& params) {
  return limit_probe([s](std::int64_t k) { return to_double(s(k)); }, params);
}

SupProbe sup_probe(const DoubleRule& f, const SupProbeParams& params) {
  const std::int64_t H = params.horizon;
  const std::int64_t W = params.window;
  if (!(H > W && W >= 2))
    throw DomainError("sup_probe requires horizon > window >= 2");

  const std::int64_t checkpoints[] = {H / 2, H, 2 * H};
  const auto idx = sample_indices(2 * H, W, checkpoints);

  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::int64_t arg1 = 0, arg2 = 0, arg3 = 0;
  for (std::int64_t k : idx) {
    const double a = std::abs(f(k));
    if (k < H / 2 && a > s1) { s1 = a; arg1 = k; }
    if (k < H && a > s2) { s2 = a; arg2 = k; }
    if (a > s3) { s3 = a; arg3 = k; }
  }
  s2 = std::max(s2, s1);
  s3 = std::max(s3, s2);

  SupProbe result;
  result.sup = s3;
  result.argmax = arg3;
  Verdict& v = result.verdict;
  v.horizon = 2 * H;
  v.limit = s3;

  if (s3 == 0.0) {
    v.outcome = Outcome::Holds;
    v.note = "all sampled values are zero";
    return result;
  }
  if (s3 > params.blow_up) {
    v.outcome = Outcome::Fails;
    v.witnesses = {arg3};
    v.note = "sampled magnitude exceeds blow-up threshold";
    return result;
  }

  const double g2 = (s2 - s1) / std::max(s2, 1e-300);
  const double g3 = (s3 - s2) / std::max(s3, 1e-300);
  if (g3 <= params.stab_tol) {
    v.outcome = Outcome::Holds;
    v.note = "sampled sup stabilized across the horizon doubling";
  } else if (g3 > params.grow_tol && g2 > params.grow_tol) {
    v.outcome = Outcome::Fails;
    v.witnesses = {arg2, arg3};
    std::ostringstream note;
    note << "sampled sup keeps growing: " << s1 << " -> " << s2 << " -> " << s3;
    v.note = note.str();
  } else {
    v.outcome = Outcome::Inconclusive;
    v.note = "sampled sup still drifting at this horizon";
  }
  return result;
}

SupProbe sup_probe(const Sequence& s, const SupProbeParams& params) {
  return sup_probe([s](std::int64_t k) { return to_double(s(k)); }, params);
}

}  // namespace seqspace
