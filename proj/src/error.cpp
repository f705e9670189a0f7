#include "hoform/error.hpp"

namespace hoform {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_arguments: return "invalid-arguments";
    case ErrorKind::unsupported_weight: return "unsupported-weight";
    case ErrorKind::invalid_letter: return "invalid-letter";
    case ErrorKind::shape_error: return "shape-error";
    case ErrorKind::not_pure: return "not-pure-error";
    case ErrorKind::invalid_leaf: return "invalid-leaf";
    case ErrorKind::leaf_not_constructible: return "leaf-not-constructible";
    case ErrorKind::unsupported_product: return "unsupported-product";
    case ErrorKind::not_integrable: return "not-integrable";
    case ErrorKind::internal_consistency: return "internal-consistency-error";
    case ErrorKind::not_in_index: return "not-in-index";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::corrupt_fixture: return "corrupt-fixture";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::precision_error: return "precision-error";
    case ErrorKind::divergent_integral: return "divergent-integral";
    case ErrorKind::depth_limit: return "depth-limit";
    case ErrorKind::not_in_group: return "not-in-group";
  }
  return "unknown";
}

}  // namespace hoform
