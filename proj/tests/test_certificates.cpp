#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "core/certificate.hpp"
#include "core/errors.hpp"
#include "core/fixtures.hpp"

using namespace expbasis;
using json = nlohmann::json;

namespace {

const json kEx1Masks = json::array({{1, 0, 1, 0}, {1, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 1, 1}});

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

json normalized(const Certificate& cert) {
  json doc = cert.doc;
  doc["provenance"]["timestamp"] = "X";
  doc["provenance"]["wall_time_s"] = 0;
  return doc;
}

}  // namespace

TEST_CASE("certificates round-trip through verification") {
  std::vector<std::pair<std::string, json>> cases = {
      {"classification",
       {{"n", 4}, {"offsets", {"1", "3", "2", "0"}}, {"masks", kEx1Masks}}},
      {"construction", {{"n", 4}, {"cells", {0, 1, 2, 3}}, {"masks", kEx1Masks}}},
      {"corollary", {{"sets", {{"0..1/2"}, {"1/3..1"}}}}},
      {"lemma",
       {{"n", 4}, {"offsets", {"1", "2", "3", "4"}}, {"masks", kEx1Masks},
        {"mode", "exhaustive"}}},
      {"conjecture_scan",
       {{"conjecture", "one"}, {"n", 4}, {"rho", {0, 2, 1, 3}}, {"strategy", "exhaustive"},
        {"seed", 1}}},
      {"conjecture_scan", {{"conjecture", "two"}, {"n", 4}, {"rho", nullptr}}},
      {"conjecture_scan", {{"conjecture", "hierarchy"}, {"n", 3}, {"p", 5}}},
      {"tri_interval", {{"membership", {{1, 2}, {2, 3}, {1, 3}}}}},
      {"tri_sweep", {{"n", 3}}},
      {"cross_check",
       {{"n", 4},
        {"intervals", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
        {"freqs", {{"0"}, {"1"}, {"2"}, {"3"}}},
        {"membership", {{1, 3}, {2, 4}, {1, 3}, {2, 4}}}}},
      {"nc_report",
       {{"n", 4},
        {"base", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
        {"supports", {{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}},
        {"freqs", {{"0"}, {"1"}, {"2"}, {"3"}}}}},
      {"dual_check",
       {{"n", 4}, {"offsets", {"1", "3", "2", "0"}}, {"masks", kEx1Masks}, {"trunc", 2}}},
      {"sampling_report",
       {{"n", 4}, {"masks", kEx1Masks}, {"rho", {1, 3, 2, 0}}, {"seed", 11}, {"refine", 2},
        {"mtruncs", {32, 128}}}},
  };
  for (const auto& [kind, params] : cases) {
    CAPTURE(kind);
    Certificate cert = make_certificate(kind, params);
    VerifyOutcome outcome = verify_certificate(cert);
    CHECK_MESSAGE(outcome.ok, outcome.report);
  }
}

TEST_CASE("tampered certificates are detected") {
  Certificate cert = make_certificate(
      "classification", {{"n", 4}, {"offsets", {"1", "3", "2", "0"}}, {"masks", kEx1Masks}});

  SUBCASE("edited numeric result") {
    Certificate tampered = cert;
    tampered.doc["results"]["sigma_min"] = cert.doc["results"]["sigma_min"].get<double>() + 0.5;
    VerifyOutcome outcome = verify_certificate(tampered);
    CHECK_FALSE(outcome.ok);
    CHECK(outcome.report.find("sigma_min") != std::string::npos);
  }

  SUBCASE("edited verdict") {
    Certificate tampered = cert;
    tampered.doc["results"]["verdict"] = "neither";
    CHECK_FALSE(verify_certificate(tampered).ok);
  }

  SUBCASE("edited parameter flips the verdict on re-run") {
    Certificate tampered = cert;
    tampered.doc["parameters"]["offsets"] = {"1", "2", "3", "0"};  // the singular assignment
    CHECK_FALSE(verify_certificate(tampered).ok);
  }

  SUBCASE("unknown kind fails as a verification error") {
    Certificate bogus;
    bogus.doc = {{"schema_version", "1"},
                 {"kind", "nonsense"},
                 {"parameters", json::object()},
                 {"results", json::object()}};
    CHECK_THROWS_AS(verify_certificate(bogus), Error);
  }

  SUBCASE("truncated file fails to load") {
    const std::string path = temp_path("expbasis_truncated_cert.json");
    {
      std::ofstream out(path);
      out << cert.to_text().substr(0, 40);
    }
    CHECK_THROWS_AS(Certificate::load(path), Error);
    std::filesystem::remove(path);
  }
}

TEST_CASE("certificate bytes are deterministic up to provenance") {
  json params = {{"conjecture", "one"}, {"n", 4}, {"rho", {0, 2, 1, 3}},
                 {"strategy", "exhaustive"}, {"seed", 7}};
  Certificate a = make_certificate("conjecture_scan", params);
  Certificate b = make_certificate("conjecture_scan", params);
  CHECK(normalized(a).dump() == normalized(b).dump());

  Certificate c = make_certificate(
      "sampling_report", {{"n", 4}, {"masks", kEx1Masks}, {"rho", {1, 3, 2, 0}}, {"seed", 3},
                          {"refine", 2}, {"mtruncs", {64}}});
  Certificate d = make_certificate(
      "sampling_report", {{"n", 4}, {"masks", kEx1Masks}, {"rho", {1, 3, 2, 0}}, {"seed", 3},
                          {"refine", 2}, {"mtruncs", {64}}});
  CHECK(normalized(c).dump() == normalized(d).dump());
}

TEST_CASE("certificate save/load round trip") {
  const std::string path = temp_path("expbasis_roundtrip_cert.json");
  Certificate cert = make_certificate("tri_interval", {{"membership", {{1}, {1, 2}, {1, 3}}}});
  cert.save(path);
  Certificate loaded = Certificate::load(path);
  CHECK(loaded.doc == cert.doc);
  CHECK(verify_certificate(loaded).ok);
  std::filesystem::remove(path);
}

TEST_CASE("fixture registry reproduces every published object") {
  auto ids = fixture_ids();
  CHECK(ids.size() >= 15);
  for (const auto& id : ids) {
    CAPTURE(id);
    if (id == "n5-conj1-witness") continue;  // exercised by the acceptance suite
    ReproduceOutcome outcome = reproduce_known(id);
    CHECK_MESSAGE(outcome.expectations_met, id << ": " << outcome.report);
    CHECK(verify_certificate(outcome.certificate).ok);
  }
  CHECK_THROWS_AS(reproduce_known("no-such-fixture"), Error);
}
