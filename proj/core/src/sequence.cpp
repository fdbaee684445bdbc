#include "seqspace/sequence.hpp"

#include <mutex>
#include <utility>

namespace seqspace {

struct Sequence::State {
  Rule rule;
  std::string descriptor;
  std::optional<std::size_t> cache_cap;
  mutable std::mutex mutex;
  mutable std::vector<std::optional<Rational>> memo;
};

Sequence::Sequence() : Sequence([](std::int64_t) { return Rational(0); }, "0") {}

Sequence::Sequence(Rule rule, std::string descriptor,
                   std::optional<std::size_t> cache_cap) {
  auto state = std::make_shared<State>();
  state->rule = std::move(rule);
  state->descriptor = std::move(descriptor);
  state->cache_cap = cache_cap;
  state_ = std::move(state);
}

Sequence Sequence::from_values(std::vector<Rational> prefix, Rational tail,
                               std::string descriptor) {
  auto values = std::make_shared<std::vector<Rational>>(std::move(prefix));
  auto t = std::move(tail);
  return Sequence(
      [values, t](std::int64_t k) -> Rational {
        if (k < static_cast<std::int64_t>(values->size()))
          return (*values)[static_cast<std::size_t>(k)];
        return t;
      },
      std::move(descriptor));
}

Rational Sequence::operator()(std::int64_t k) const {
  if (k < 0) return Rational(0);  // negative subscripts read as naught
  const State& st = *state_;
  const auto idx = static_cast<std::size_t>(k);
  const bool cacheable = !st.cache_cap || idx < *st.cache_cap;
  if (cacheable) {
    std::lock_guard lock(st.mutex);
    if (idx < st.memo.size() && st.memo[idx]) return *st.memo[idx];
  }
  // Compute outside the lock; rules are pure, so racing recomputation is
  // idempotent and combinator rules may evaluate other sequences freely.
  Rational value = st.rule(k);
  if (cacheable) {
    std::lock_guard lock(st.mutex);
    if (idx >= st.memo.size()) st.memo.resize(idx + 1);
    if (!st.memo[idx]) st.memo[idx] = value;
  }
  return value;
}

const std::string& Sequence::descriptor() const { return state_->descriptor; }

Sequence ones() {
  return Sequence([](std::int64_t) { return Rational(1); }, "e");
}

Sequence zero_sequence() { return Sequence(); }

Sequence harmonic_sequence() {
  return Sequence([](std::int64_t k) { return Rational(1, k + 1); }, "harmonic");
}

Sequence naturals() {
  return Sequence([](std::int64_t k) { return Rational(k + 1); }, "enumerate");
}

Sequence geometric_sequence(Rational r) {
  std::string desc = "geometric(" + to_fraction_string(r) + ")";
  return Sequence(
      [r = std::move(r)](std::int64_t k) { return rational_pow(r, k); },
      std::move(desc));
}

Sequence unit_sequence(std::int64_t j) {
  return Sequence(
      [j](std::int64_t k) { return k == j ? Rational(1) : Rational(0); },
      "unit(" + std::to_string(j) + ")");
}

Sequence delta(const Sequence& s) {
  return Sequence([s](std::int64_t k) { return s(k) - s(k - 1); },
                  "delta(" + s.descriptor() + ")");
}

Sequence nabla(const Sequence& s) {
  return Sequence([s](std::int64_t i) { return s(i) - s(i + 1); },
                  "nabla(" + s.descriptor() + ")");
}

Sequence shift(const Sequence& s, std::int64_t by) {
  return Sequence([s, by](std::int64_t k) { return s(k - by); },
                  "shift(" + s.descriptor() + "," + std::to_string(by) + ")");
}

Sequence operator+(const Sequence& a, const Sequence& b) {
  return Sequence([a, b](std::int64_t k) { return a(k) + b(k); });
}

Sequence operator-(const Sequence& a, const Sequence& b) {
  return Sequence([a, b](std::int64_t k) { return a(k) - b(k); });
}

Sequence operator*(const Rational& c, const Sequence& s) {
  return Sequence([c, s](std::int64_t k) { return c * s(k); });
}

Sequence prefix_sums(const Sequence& s) {
  // Shared incremental accumulator so that P_n never recurses n levels deep.
  struct Acc {
    std::mutex mutex;
    std::vector<Rational> sums;  // sums[i] = s_0 + ... + s_i
  };
  auto acc = std::make_shared<Acc>();
  return Sequence(
      [s, acc](std::int64_t n) -> Rational {
        std::lock_guard lock(acc->mutex);
        while (static_cast<std::int64_t>(acc->sums.size()) <= n) {
          const auto i = static_cast<std::int64_t>(acc->sums.size());
          Rational next = s(i);
          if (!acc->sums.empty()) next += acc->sums.back();
          acc->sums.push_back(std::move(next));
        }
        return acc->sums[static_cast<std::size_t>(n)];
      },
      "prefix_sums(" + s.descriptor() + ")");
}

}  // namespace seqspace
