#pragma once

// Exhaustive law suites over small structures, shared by `hoaft laws` and the
// acceptance binary.

#include <string>
#include <string_view>
#include <vector>

#include "hoaft/order.hpp"

namespace hoaft {

struct LawResult {
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  /// First failure, or a short summary.
  std::string detail;
};

/// 1-point, 2-chain, 2-antichain, 3-chain, V and its dual.
std::vector<Poset> ccc_context();

/// Complete lattices with at most n elements, up to isomorphism.
std::vector<Poset> lattices_up_to(std::size_t n);

/// Terminal, product and exponential universal properties for every poset of
/// at most `max_size` elements against each context poset.
LawResult ccc_laws(std::size_t max_size);

/// (X -> Y) as a function space is isomorphic to the |X|-fold power of Y.
LawResult function_space_laws(std::size_t max_size);

/// phi and psi are isomorphisms for lattices up to `max_lattice`; every
/// monotone operator on the bilattice of a lattice up to `max_approx` is
/// classified consistently. psi falls back to the factored route with
/// `psi_budget` maps per hom-set (0: the size cap).
LawResult bilat_laws(std::size_t max_lattice, std::size_t max_approx, std::size_t psi_budget = 0);

/// Approximation tuples with |L u U| <= max_size: validity, cpo, chain suprema;
/// and the boolean exponential tuple.
LawResult lu_laws(std::size_t max_size);

/// Upward closure and the projection laws on both builtin systems, at the
/// given types. Types past the size cap are reported and skipped.
LawResult approx_laws(const std::vector<std::string>& types);

/// "ccc" (with the function-space law), "bilat", "lu", "approx" or "all".
/// Throws invalid_input on an unknown suite.
std::vector<LawResult> run_laws(std::string_view suite, std::size_t max_size);

}  // namespace hoaft
