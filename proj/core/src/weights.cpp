#include "seqspace/weights.hpp"

#include "seqspace/errors.hpp"

namespace seqspace {
namespace {

Rational checked_term(const Sequence& s, std::int64_t k, char name) {
  Rational value = s(k);
  if (value == 0)
    throw DomainError(std::string("weight term ") + name + "_" +
                      std::to_string(k) + " is zero");
  return value;
}

}  // namespace

Weights::Weights(Sequence u, Sequence v, std::int64_t probe_prefix)
    : u_(std::move(u)), v_(std::move(v)) {
  for (std::int64_t k = 0; k < probe_prefix; ++k) {
    checked_term(u_, k, 'u');
    checked_term(v_, k, 'v');
  }
}

Rational Weights::u_at(std::int64_t k) const { return checked_term(u_, k, 'u'); }

Rational Weights::v_at(std::int64_t k) const { return checked_term(v_, k, 'v'); }

}  // namespace seqspace
