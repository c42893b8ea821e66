#include "phc/report.hpp"

#include <iomanip>
#include <sstream>

namespace phc {

void VerificationReport::add(std::string key, double value) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << value;
  details.emplace_back(std::move(key), os.str());
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "check: " << name << '\n'
     << "status: " << (passed ? "PASS" : "FAIL") << '\n'
     << "trials: " << trials << '\n'
     << std::setprecision(6) << std::scientific << "max_residual: " << max_residual << '\n'
     << "tolerance: " << tolerance << '\n';
  for (const auto& [k, v] : details) os << k << ": " << v << '\n';
  return os.str();
}

}  // namespace phc
