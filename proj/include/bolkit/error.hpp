#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bolkit {

using Element = std::uint32_t;

enum class Errc {
  bad_table,
  not_latin_square,
  no_identity,
  multiple_identities,
  no_inverse,
  not_a_subloop,
  not_normal,
  not_a_homomorphism,
  order_bound_exceeded,
  degree_mismatch,
  element_not_in_group,
  inner_mismatch,
  ill_conditioned,
  not_unimodular,
  numerical_failure,
  invalid_argument,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this one exception type; the
// code distinguishes them. `stage` is filled in by multi-step pipelines
// (certify_simplicity) to say where a bound was hit.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::string stage = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        stage_(std::move(stage)) {}

  Errc code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  Errc code_;
  std::string stage_;
};

}  // namespace bolkit
