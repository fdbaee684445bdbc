#include "seqspace/verify.hpp"

#include <random>

#include "seqspace/duals.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/triangle.hpp"

namespace seqspace {

int VerifyResult::total_failed() const {
  int sum = 0;
  for (const auto& o : oracles) sum += o.failed;
  return sum;
}

int VerifyResult::total_passed() const {
  int sum = 0;
  for (const auto& o : oracles) sum += o.passed;
  return sum;
}

namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  Rational rational() {
    const std::int64_t num = small_(rng_);
    const std::int64_t den = positive_(rng_);
    digest(num, den);
    return Rational(num, den);
  }

  Rational nonzero_rational() {
    std::int64_t num = positive_(rng_);
    if (coin_(rng_)) num = -num;
    const std::int64_t den = positive_(rng_);
    digest(num, den);
    return Rational(num, den);
  }

  Sequence sequence(std::int64_t length) {
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) values.push_back(rational());
    return Sequence::from_values(std::move(values), 0, "random");
  }

  Sequence nonzero_sequence(std::int64_t length) {
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i)
      values.push_back(nonzero_rational());
    // The tail must stay nonzero for weight sequences.
    return Sequence::from_values(std::move(values), 1, "random nonzero");
  }

  std::uint64_t digest_value() const { return digest_; }

 private:
  void digest(std::int64_t num, std::int64_t den) {
    auto mix = [this](std::uint64_t x) {
      digest_ ^= x;
      digest_ *= 0x100000001b3ull;  // FNV-1a step
    };
    mix(static_cast<std::uint64_t>(num));
    mix(static_cast<std::uint64_t>(den));
  }

  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::int64_t> small_{-9, 9};
  std::uniform_int_distribution<std::int64_t> positive_{1, 9};
  std::bernoulli_distribution coin_{0.5};
  std::uint64_t digest_ = 0xcbf29ce484222325ull;
};

struct Battery {
  const VerifyOptions& options;
  VerifyResult& result;
  Draws draws;

  Battery(const VerifyOptions& opts, VerifyResult& res)
      : options(opts), result(res), draws(opts.seed) {}

  VerifyResult::Oracle& oracle(const std::string& name) {
    result.oracles.push_back({name, 0, 0});
    return result.oracles.back();
  }

  static void tally(VerifyResult::Oracle& o, bool ok) {
    if (ok) ++o.passed;
    else ++o.failed;
  }

  // The forward kernel as used by the dual-route checks, with the optional
  // fault injection applied.
  Triangle kernel(const Weights& w) const {
    Triangle clean = gwm_delta(w);
    if (!options.tamper) return clean;
    auto tamper = options.tamper;
    return Triangle(
        [clean, tamper](std::int64_t n, std::int64_t k) {
          return tamper(n, k, clean.entry(n, k));
        },
        /*diagonal_nonzero=*/true, clean.descriptor());
  }

  std::vector<Weights> weight_pairs() {
    std::vector<Weights> pairs;
    pairs.emplace_back(ones(), ones());
    pairs.emplace_back(ones(), harmonic_sequence());
    pairs.emplace_back(harmonic_sequence(), ones());
    pairs.emplace_back(geometric_sequence(Rational(1, 2)), ones());
    pairs.emplace_back(draws.nonzero_sequence(96), draws.nonzero_sequence(96));
    return pairs;
  }

  void roundtrip() {
    auto& o = oracle("transform_roundtrip");
    for (const Weights& w : weight_pairs()) {
      for (int rep = 0; rep < 4; ++rep) {
        Sequence x = draws.sequence(64);
        Sequence y = apply(kernel(w), x);
        Sequence back = inverse_transform(w, y);
        bool ok = true;
        for (std::int64_t k = 0; k < 64 && ok; ++k) ok = back(k) == x(k);
        tally(o, ok);
      }
    }
  }

  void closed_form_inverse() {
    auto& o = oracle("closed_form_inverse");
    for (const Weights& w : weight_pairs()) {
      Triangle algebraic = invert(kernel(w));
      Triangle closed = gwm_delta_inverse(w);
      bool ok = true;
      for (std::int64_t n = 0; n <= 40 && ok; ++n)
        for (std::int64_t k = 0; k <= n && ok; ++k)
          ok = algebraic.entry(n, k) == closed.entry(n, k);
      tally(o, ok);
    }
  }

  void kernel_composition() {
    auto& o = oracle("kernel_composition");
    for (const Weights& w : weight_pairs()) {
      Triangle composed = compose(factorable(w), difference_triangle());
      Triangle direct = kernel(w);
      bool ok = true;
      for (std::int64_t n = 0; n <= 40 && ok; ++n)
        for (std::int64_t k = 0; k <= n && ok; ++k)
          ok = composed.entry(n, k) == direct.entry(n, k);
      tally(o, ok);
    }
  }

  void basis_columns() {
    auto& o = oracle("basis_columns");
    for (const Weights& w : weight_pairs()) {
      Triangle direct = kernel(w);
      bool ok = true;
      for (std::int64_t k = 0; k <= 12 && ok; ++k) {
        Sequence b = basis_vector(w, k);
        Sequence image = apply(direct, b);
        for (std::int64_t n = 0; n <= 30 && ok; ++n)
          ok = image(n) == (n == k ? Rational(1) : Rational(0));
      }
      tally(o, ok);
    }
  }

  void series_matrices() {
    auto& alpha = oracle("alpha_matrix_products");
    auto& beta = oracle("beta_matrix_partial_sums");
    for (const Weights& w : weight_pairs()) {
      for (int rep = 0; rep < 3; ++rep) {
        Sequence a = draws.sequence(70);
        Sequence y = draws.sequence(70);
        Sequence x = inverse_transform(w, y);

        Sequence by = apply(alpha_matrix(w, a), y);
        bool ok_alpha = true;
        for (std::int64_t k = 0; k <= 60 && ok_alpha; ++k)
          ok_alpha = by(k) == a(k) * x(k);
        tally(alpha, ok_alpha);

        Sequence cy = apply(beta_matrix(w, a), y);
        bool ok_beta = true;
        Rational partial(0);
        for (std::int64_t n = 0; n <= 60 && ok_beta; ++n) {
          partial += a(n) * x(n);
          ok_beta = cy(n) == partial;
        }
        tally(beta, ok_beta);
      }
    }
  }

  void truncated_products() {
    auto& o = oracle("dual_transform_products");
    for (const Weights& w : weight_pairs()) {
      // A random row-finite matrix with support 24.
      std::vector<std::vector<Rational>> rows;
      for (std::int64_t n = 0; n <= 30; ++n) {
        std::vector<Rational> row;
        for (std::int64_t k = 0; k <= 24; ++k) row.push_back(draws.rational());
        rows.push_back(std::move(row));
      }
      auto shared = std::make_shared<decltype(rows)>(std::move(rows));
      InfiniteMatrix a(
          [shared](std::int64_t n, std::int64_t k) -> Rational {
            if (n > 30 || k > 24) return Rational(0);
            return (*shared)[static_cast<std::size_t>(n)]
                           [static_cast<std::size_t>(k)];
          },
          [](std::int64_t) { return std::int64_t{24}; }, "random row-finite");

      InfiniteMatrix d = dual_transform(a, w, 24);
      Triangle inverse = gwm_delta_inverse(w);
      bool ok = true;
      for (std::int64_t n = 0; n <= 30 && ok; ++n) {
        for (std::int64_t k = 0; k <= 24 && ok; ++k) {
          Rational product(0);
          for (std::int64_t j = k; j <= 24; ++j)
            product += a.entry(n, j) * inverse.entry(j, k);
          ok = d.entry(n, k) == product;
        }
      }
      tally(o, ok);
    }
  }

  void residual_identity() {
    auto& o = oracle("residual_identity");
    for (const Weights& w : weight_pairs()) {
      Sequence y = draws.sequence(40);
      Sequence x = inverse_transform(w, y);
      bool ok = true;
      try {
        for (std::int64_t m = 0; m <= 6 && ok; ++m) {
          Rational residual = partial_sum_residual(w, x, m, 60);
          Rational tail(0);
          for (std::int64_t k = m + 1; k <= 60; ++k)
            tail = std::max(tail, rational_abs(y(k)));
          ok = residual == tail;
        }
      } catch (const std::exception&) {
        ok = false;
      }
      tally(o, ok);
    }
  }
};

}  // namespace

VerifyResult verify_suite(const VerifyOptions& options) {
  VerifyResult result;
  result.seed = options.seed;
  result.oracles.reserve(16);  // oracle() hands out stable references
  Battery battery(options, result);
  battery.roundtrip();
  battery.closed_form_inverse();
  battery.kernel_composition();
  battery.basis_columns();
  battery.series_matrices();
  battery.truncated_products();
  battery.residual_identity();
  result.draw_digest = battery.draws.digest_value();
  return result;
}

}  // namespace seqspace
