#include "hoaft/error.hpp"

#include <atomic>
#include <sstream>

namespace hoaft {

namespace {
std::atomic<std::size_t> g_size_cap{100000};
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::duplicate_element: return "DuplicateElement";
    case Errc::not_reflexive: return "NotReflexive";
    case Errc::not_antisymmetric: return "NotAntisymmetric";
    case Errc::not_transitive: return "NotTransitive";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::size_cap_exceeded: return "SizeCapExceeded";
    case Errc::not_monotone: return "NotMonotone";
    case Errc::no_bottom: return "NoBottom";
    case Errc::unknown_base_type: return "UnknownBaseType";
    case Errc::type_not_in_closure: return "TypeNotInClosure";
    case Errc::not_exact: return "NotExact";
    case Errc::join_absent: return "JoinAbsent";
    case Errc::not_complete_lattice: return "NotCompleteLattice";
    case Errc::not_a_chain: return "NotAChain";
    case Errc::internal_law_failure: return "InternalLawFailure";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::undeclared_symbol: return "UndeclaredSymbol";
    case Errc::unbound_variable: return "UnboundVariable";
    case Errc::type_mismatch: return "TypeMismatch";
    case Errc::non_predicate_symbol: return "NonPredicateSymbol";
    case Errc::experimental_feature_disabled: return "ExperimentalFeatureDisabled";
    case Errc::no_pair_structure: return "NoPairStructure";
    case Errc::revision_out_of_space: return "RevisionOutOfSpace";
    case Errc::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

std::size_t size_cap() { return g_size_cap.load(std::memory_order_relaxed); }

void set_size_cap(std::size_t cap) { g_size_cap.store(cap, std::memory_order_relaxed); }

void check_size(double count, std::string_view what) {
  if (count > static_cast<double>(size_cap())) {
    std::ostringstream os;
    os << what << " would have " << count << " elements (cap " << size_cap() << ")";
    throw Error(Errc::size_cap_exceeded, os.str());
  }
}

}  // namespace hoaft
