#pragma once

// Randomized property runs and oracle comparisons shared by the unit tests
// and the acceptance binary.

#include <cstdint>
#include <string>

#include "hwalg/generators.hpp"
#include "oracle/poly_oracle.hpp"
#include "random_ops.hpp"

namespace hwtest {

struct PropertyOutcome {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0; }
  void record(bool passed, const std::string& what);
};

/// [A,[B,C]] + [B,[C,A]] + [C,[A,B]] = 0.
PropertyOutcome check_jacobi(std::uint64_t seed, int instances);
/// [A, BC] = [A, B] C + B [A, C].
PropertyOutcome check_leibniz(std::uint64_t seed, int instances);
/// [sA + B, C] = s[A, C] + [B, C] and the mirror in the second slot.
PropertyOutcome check_bilinearity(std::uint64_t seed, int instances);
/// Re-normalizing a normal form changes nothing: rebuilding from canonical
/// words, text round trip and JSON round trip all return the same value.
PropertyOutcome check_idempotence(std::uint64_t seed, int instances);
/// (AB)C = A(BC).
PropertyOutcome check_associativity(std::uint64_t seed, int instances);
/// Engine normal form and the raw letter products act identically on
/// polynomials (dims 1 and 2 alternate, words up to max_degree letters).
PropertyOutcome check_oracle_equivalence(std::uint64_t seed, int instances, int max_degree = 6);
/// Every relation of `spec` recomputed with the oracle at a random point.
PropertyOutcome check_table_with_oracle(const hwalg::GeneratorSet& gens, const hwalg::AlgebraSpec& spec,
                                        std::uint64_t seed);

/// Engine value -> oracle operator with all symbols bound.
oracle::RawOperator to_raw(const hwalg::OperatorExpr& e, const hwalg::ScalarBindings& b);
oracle::RawOperator to_raw(const RandomOperator& r, const hwalg::ScalarBindings& b);
oracle::Params oracle_params(const hwalg::ScalarBindings& b);

/// True when a and b act identically on every probe polynomial.
bool same_action(const oracle::RawOperator& a, const oracle::RawOperator& b, const oracle::Params& params,
                 std::string* why = nullptr);

}  // namespace hwtest
