#include "fwave/accept.hpp"

#include <ostream>

namespace fwave {

AcceptanceReport run_acceptance(std::ostream* progress, const std::vector<int>& only) {
  (void)progress;
  (void)only;
  return AcceptanceReport{};
}

}  // namespace fwave
