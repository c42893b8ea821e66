#include "phc/errors.hpp"

#include <sstream>

namespace phc {

namespace {

std::string describe_state(const std::string& field, std::size_t node, double value) {
  std::ostringstream os;
  os << "state-validity error: field '" << field << "' at node " << node
     << " has non-admissible value " << value;
  return os.str();
}

}  // namespace

StateError::StateError(std::string field, std::size_t node, double value)
    : Error(describe_state(field, node, value)),
      field_(std::move(field)),
      node_(node),
      value_(value) {}

StepFailure::StepFailure(const std::string& what, double last_residual, int iterations)
    : Error(what), last_residual_(last_residual), iterations_(iterations) {}

}  // namespace phc
