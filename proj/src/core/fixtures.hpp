#pragma once

#include <string>
#include <vector>

#include "core/certificate.hpp"

namespace expbasis {

// Registry of the published objects: each fixture rebuilds its object from
// parameters, never from stored numbers, and carries the published
// expectations to check against.
struct ReproduceOutcome {
  Certificate certificate;
  bool expectations_met = false;
  std::string report;  // expectation mismatches, empty when met
};

std::vector<std::string> fixture_ids();

ReproduceOutcome reproduce_known(const std::string& id);

}  // namespace expbasis
