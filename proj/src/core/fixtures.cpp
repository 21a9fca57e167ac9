#include "core/fixtures.hpp"

#include <map>

#include "core/errors.hpp"

namespace expbasis {

namespace {

using json = nlohmann::json;

struct Expectation {
  std::string pointer;  // into the results object
  std::string op;       // "eq" | "le" | "len_eq"
  json value;
};

struct Fixture {
  std::string kind;
  json params;
  std::vector<Expectation> expect;
};

// Example-1 data: S_1 = S_3 = [0,1/4) u [2/4,3/4), S_2 = S_4 = [0,1).
const json kEx1Masks = json::array({{1, 0, 1, 0}, {1, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 1, 1}});

// Printed singular 5x5 masks for rho = id (rows of cells carrying a root of
// unity).
const json kN5Mask1 = json::array(
    {{1, 0, 0, 0, 0}, {0, 1, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 1, 1}, {0, 0, 1, 0, 1}});
const json kN5Mask2 = json::array(
    {{1, 0, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 1, 0, 1}, {0, 1, 0, 1, 0}, {0, 0, 0, 1, 1}});

const std::map<std::string, Fixture>& registry() {
  static const std::map<std::string, Fixture> fixtures = [] {
    std::map<std::string, Fixture> r;

    r["ex1-Aid-singular"] = {
        "classification",
        {{"n", 4}, {"offsets", {"1", "2", "3", "0"}}, {"masks", kEx1Masks}},
        {{"/verdict", "eq", "neither"}, {"/exact_singular", "eq", true},
         {"/sigma_min", "le", 1e-9}}};

    r["ex1-rho-1324"] = {
        "classification",
        {{"n", 4}, {"offsets", {"1", "3", "2", "0"}}, {"masks", kEx1Masks}},
        {{"/verdict", "eq", "riesz_basis"}}};

    r["ex1-construct"] = {
        "construction",
        {{"n", 4}, {"cells", {0, 1, 2, 3}}, {"masks", kEx1Masks}},
        {{"/verdict", "eq", "riesz_basis"}}};

    r["ex1-dual"] = {
        "dual_check",
        {{"n", 4}, {"offsets", {"1", "3", "2", "0"}}, {"masks", kEx1Masks}, {"trunc", 3}},
        {{"/defect", "le", 1e-10}}};

    r["ex2-n5-nc"] = {
        "nc_report",
        {{"n", 5},
         {"base", {{1, 1, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}},
         {"supports", {{0, 0, 0, 1, 1}, {1, 1, 1, 0, 1}, {1, 1, 1, 1, 0}}},
         {"freqs", {{"0", "1", "2"}, {"3"}, {"4"}}}},
        {{"/nc1/0/pass", "eq", false},
         {"/nc1/0/support_measure", "eq", "2/5"},
         {"/nc1/0/density", "eq", "3/5"},
         {"/pass", "eq", false}}};

    r["ex3-nc"] = {
        "nc_report",
        {{"n", 4},
         {"base", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
         {"supports", {{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}},
         {"freqs", {{"0"}, {"1"}, {"2"}, {"3"}}}},
        {{"/pass", "eq", true}}};

    r["ex3-not-riesz"] = {
        "classification",
        {{"n", 4},
         {"offsets", {"0", "1", "2", "3"}},
         {"masks", {{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}}},
        {{"/verdict", "eq", "neither"}, {"/exact_singular", "eq", true}}};

    r["ex3-cross-check"] = {
        "cross_check",
        {{"n", 4},
         {"intervals", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
         {"freqs", {{"0"}, {"1"}, {"2"}, {"3"}}},
         {"membership", {{1, 3}, {2, 4}, {1, 3}, {2, 4}}}},
        {{"/verdict", "eq", "neither"}}};

    r["n4-conj1-witness"] = {
        "conjecture_scan",
        {{"conjecture", "one"}, {"n", 4}, {"rho", {0, 2, 1, 3}}, {"strategy", "exhaustive"},
         {"seed", 1}},
        {{"/pass", "eq", true}}};

    r["n5-conj1-witness"] = {
        "conjecture_scan",
        {{"conjecture", "one"}, {"n", 5}, {"rho", {0, 1, 2, 4, 3}}, {"strategy", "exhaustive"},
         {"seed", 1}},
        {{"/pass", "eq", true}}};

    r["n5-conj1-counterexample-1"] = {
        "classification",
        {{"n", 5}, {"offsets", {"0", "1", "2", "3", "4"}}, {"masks", kN5Mask1}},
        {{"/verdict", "eq", "neither"}, {"/exact_singular", "eq", true}}};

    r["n5-conj1-counterexample-2"] = {
        "classification",
        {{"n", 5}, {"offsets", {"0", "1", "2", "3", "4"}}, {"masks", kN5Mask2}},
        {{"/verdict", "eq", "neither"}, {"/exact_singular", "eq", true}}};

    r["n4-conj2-witness"] = {
        "conjecture_scan",
        {{"conjecture", "two"}, {"n", 4}, {"rho", {0, 2, 1, 3}}},
        {{"/pass", "eq", true}}};

    r["n4-conj2-id-refuted"] = {
        "conjecture_scan",
        {{"conjecture", "two"}, {"n", 4}, {"rho", {0, 1, 2, 3}}},
        {{"/pass", "eq", false},
         {"/refutations", "len_eq", 2},
         {"/refutations/0/subset", "eq", {0, 2}},
         {"/refutations/1/subset", "eq", {1, 3}}}};

    r["chebotarev-n5-id"] = {
        "conjecture_scan",
        {{"conjecture", "two"}, {"n", 5}, {"rho", {0, 1, 2, 3, 4}}},
        {{"/pass", "eq", true}}};

    r["chebotarev-n7-id"] = {
        "conjecture_scan",
        {{"conjecture", "two"}, {"n", 7}, {"rho", {0, 1, 2, 3, 4, 5, 6}}},
        {{"/pass", "eq", true}}};

    r["n3-tri-canonical"] = {
        "tri_sweep", {{"n", 3}}, {{"/riesz_basis_count", "eq", 64}, {"/positive", "eq", true}}};

    r["hierarchy-n4-p5"] = {
        "conjecture_scan",
        {{"conjecture", "hierarchy"}, {"n", 4}, {"p", 5}},
        {{"/pass", "eq", true}}};

    return r;
  }();
  return fixtures;
}

}  // namespace

std::vector<std::string> fixture_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fixture] : registry()) ids.push_back(id);
  return ids;
}

ReproduceOutcome reproduce_known(const std::string& id) {
  auto it = registry().find(id);
  require(it != registry().end(), ErrorCode::not_found, "not-found: unknown fixture id: " + id);
  const Fixture& fixture = it->second;

  json params = fixture.params;
  params["fixture_id"] = id;
  ReproduceOutcome outcome;
  outcome.certificate = make_certificate(fixture.kind, params);
  const json& results = outcome.certificate.doc.at("results");

  outcome.expectations_met = true;
  for (const auto& expectation : fixture.expect) {
    json actual;
    try {
      actual = results.at(json::json_pointer(expectation.pointer));
    } catch (const std::exception&) {
      outcome.expectations_met = false;
      outcome.report += expectation.pointer + ": missing\n";
      continue;
    }
    bool ok = false;
    if (expectation.op == "eq") {
      ok = actual == expectation.value;
    } else if (expectation.op == "le") {
      ok = actual.is_number() && actual.get<double>() <= expectation.value.get<double>();
    } else if (expectation.op == "len_eq") {
      ok = actual.is_array() &&
           actual.size() == static_cast<std::size_t>(expectation.value.get<int>());
    }
    if (!ok) {
      outcome.expectations_met = false;
      outcome.report += expectation.pointer + ": expected " + expectation.op + " " +
                        expectation.value.dump() + ", got " + actual.dump() + "\n";
    }
  }
  return outcome;
}

}  // namespace expbasis
