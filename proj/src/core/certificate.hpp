#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace expbasis {

// Self-contained, re-verifiable record: parameters always suffice to
// regenerate every result. Serialized as JSON with sorted keys, so identical
// runs produce byte-identical text up to the provenance timestamp fields.
struct Certificate {
  nlohmann::json doc;

  std::string kind() const { return doc.value("kind", ""); }
  bool positive() const;
  std::string to_text() const { return doc.dump(2) + "\n"; }

  void save(const std::string& path) const;
  static Certificate load(const std::string& path);
};

// Runs the operation named by `kind` on `parameters` and wraps the outcome.
Certificate make_certificate(const std::string& kind, const nlohmann::json& parameters);

// Wraps already-computed results (they must equal what regeneration would
// produce; used by long scans to avoid running twice).
Certificate assemble_certificate(const std::string& kind, const nlohmann::json& parameters,
                                 const nlohmann::json& results, double wall_time_s);

// Recomputes the results from the certificate's parameters; used both to
// build certificates and to verify them.
nlohmann::json regenerate_results(const std::string& kind, const nlohmann::json& parameters);

struct VerifyOutcome {
  bool ok = false;
  std::string report;  // mismatch paths, empty when ok
};

// Verdicts and flags must match exactly, reals within 1e-8 relative.
VerifyOutcome verify_certificate(const Certificate& cert);

// One-paragraph human rendering for the CLI.
std::string summarize(const Certificate& cert);

struct ScanVerdict;

// Canonical results block for a completed scan (shared by certificate
// creation and verification).
nlohmann::json scan_results_json(const ScanVerdict& verdict);

}  // namespace expbasis
