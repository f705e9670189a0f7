#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoform {

enum class ErrorKind {
  invalid_arguments,
  unsupported_weight,
  invalid_letter,
  shape_error,
  not_pure,
  invalid_leaf,
  leaf_not_constructible,
  unsupported_product,
  not_integrable,
  internal_consistency,
  not_in_index,
  unsupported,
  parse_error,
  corrupt_fixture,
  domain_error,
  precision_error,
  divergent_integral,
  depth_limit,
  not_in_group,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hoform
