#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hoaft {

/// Error categories raised by the library. Every thrown `Error` carries one.
enum class Errc {
  duplicate_element,
  not_reflexive,
  not_antisymmetric,
  not_transitive,
  unknown_element,
  size_cap_exceeded,
  not_monotone,
  no_bottom,
  unknown_base_type,
  type_not_in_closure,
  not_exact,
  join_absent,
  not_complete_lattice,
  not_a_chain,
  internal_law_failure,
  syntax_error,
  undeclared_symbol,
  unbound_variable,
  type_mismatch,
  non_predicate_symbol,
  experimental_feature_disabled,
  no_pair_structure,
  revision_out_of_space,
  invalid_input,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Upper bound on the number of elements any construction may produce.
/// Defaults to 100000.
std::size_t size_cap();
void set_size_cap(std::size_t cap);

/// Throws size_cap_exceeded when `count` is above the cap.
void check_size(double count, std::string_view what);

}  // namespace hoaft
