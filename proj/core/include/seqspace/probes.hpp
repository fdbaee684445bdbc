#pragma once

#include <cstdint>
#include <functional>

#include "seqspace/sequence.hpp"
#include "seqspace/verdict.hpp"

namespace seqspace {

/// Real-valued view of a sequence; probes compare in double precision only.
using DoubleRule = std::function<double(std::int64_t)>;

/// Finite-horizon convergence probe.
///
/// Holds(L) when the last `window` terms lie within `tol` of their mean; the
/// reported limit is refined by Richardson extrapolation across windows at
/// horizon/4, horizon/2 and horizon. Fails on a strictly monotone growth
/// trend or persistent oscillation, with concrete witness indices. Otherwise
/// Inconclusive. Evaluates the sequence sparsely (a geometric grid plus the
/// checkpoint windows), so expensive derived sequences stay affordable.
Verdict limit_probe(const DoubleRule& f, const ProbeParams& params = {});
Verdict limit_probe(const Sequence& s, const ProbeParams& params = {});

struct SupProbe {
  double sup = 0.0;          // largest sampled |value|
  std::int64_t argmax = 0;
  Verdict verdict;
};

/// Boundedness probe for sup_k |f(k)|.
///
/// Samples up to 2*horizon and compares the running suprema at horizon/2,
/// horizon and 2*horizon: stabilization is Holds, persistent relative growth
/// beyond `grow_tol` across both steps is Fails, anything else Inconclusive.
struct SupProbeParams {
  std::int64_t horizon = 2000;
  std::int64_t window = 50;
  double stab_tol = 1e-6;
  double grow_tol = 1e-3;
  double blow_up = 1e12;
};

SupProbe sup_probe(const DoubleRule& f, const SupProbeParams& params = {});
SupProbe sup_probe(const Sequence& s, const SupProbeParams& params = {});

}  // namespace seqspace
