#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "core/errors.hpp"
#include "core/triinterval.hpp"

using namespace expbasis;

namespace {

std::vector<std::vector<int>> relabel(const std::vector<std::vector<int>>& membership,
                                      const std::vector<int>& perm) {
  // perm maps old index (1-based) to new index: entry i goes to perm[i-1]
  std::vector<std::vector<int>> out(3);
  for (int k = 1; k <= 3; ++k) {
    std::vector<int> set;
    for (int v : membership[static_cast<std::size_t>(k - 1)])
      set.push_back(perm[static_cast<std::size_t>(v - 1)]);
    std::sort(set.begin(), set.end());
    out[static_cast<std::size_t>(perm[static_cast<std::size_t>(k - 1)] - 1)] = set;
  }
  return out;
}

}  // namespace

TEST_CASE("case tags on the published examples") {
  CaseTag t1 = classify_triple({{1}, {1, 2}, {1, 3}});
  CHECK(t1.tag == TriCase::case_i);
  CHECK(t1.k == 1);

  CaseTag t2 = classify_triple({{1, 2}, {1, 2}, {1, 3}});
  CHECK(t2.tag == TriCase::case_ii);
  CHECK(t2.k == 3);
  CHECK(t2.proof_branch == "2-6");

  CaseTag t3 = classify_triple({{1, 2}, {2, 3}, {1, 3}});
  CHECK(t3.tag == TriCase::case_star);
  CHECK(t3.proof_branch == "2-7");

  CaseTag t4 = classify_triple({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  CHECK(t4.tag == TriCase::case_star);

  CHECK_THROWS_AS(classify_triple({{2}, {2}, {3}}), Error);       // 1 not in L_1
  CHECK_THROWS_AS(classify_triple({{1}, {2}}), Error);            // wrong arity
  CHECK_THROWS_AS(classify_triple({{1, 4}, {2}, {3}}), Error);    // out of range
}

TEST_CASE("all 64 admissible memberships receive a tag") {
  auto memberships = all_admissible_memberships();
  REQUIRE(memberships.size() == 64);
  int count_i = 0, count_ii = 0, count_star = 0;
  for (const auto& membership : memberships) {
    CaseTag tag = classify_triple(membership);  // throws if uncovered
    switch (tag.tag) {
      case TriCase::case_i: ++count_i; break;
      case TriCase::case_ii: ++count_ii; break;
      case TriCase::case_star: ++count_star; break;
    }
  }
  CHECK(count_i + count_ii + count_star == 64);
  CHECK(count_star > 0);
  CHECK(count_ii > 0);
}

TEST_CASE("branch ids follow the proof enumeration for the second case group") {
  // frozen from the proof's 16-branch table
  const std::map<std::string, std::pair<TriCase, int>> expected = {
      {"2-1", {TriCase::case_i, 0}},   {"2-2", {TriCase::case_i, 0}},
      {"2-3", {TriCase::case_i, 0}},   {"2-4", {TriCase::case_i, 0}},
      {"2-5", {TriCase::case_i, 0}},   {"2-6", {TriCase::case_ii, 3}},
      {"2-7", {TriCase::case_star, 0}}, {"2-8", {TriCase::case_star, 0}},
      {"2-9", {TriCase::case_i, 0}},   {"2-10", {TriCase::case_ii, 2}},
      {"2-11", {TriCase::case_ii, 2}}, {"2-12", {TriCase::case_ii, 2}},
      {"2-13", {TriCase::case_i, 0}},  {"2-14", {TriCase::case_star, 0}},
      {"2-15", {TriCase::case_star, 0}}, {"2-16", {TriCase::case_star, 0}}};
  int seen = 0;
  for (const auto& membership : all_admissible_memberships()) {
    CaseTag tag = classify_triple(membership);
    auto it = expected.find(tag.proof_branch);
    if (it == expected.end()) continue;
    ++seen;
    CHECK(tag.tag == it->second.first);
    if (it->second.second != 0) CHECK(tag.k == it->second.second);
  }
  CHECK(seen == 16);
}

namespace {

std::vector<int> case_i_witnesses(const std::vector<std::vector<int>>& membership) {
  std::vector<int> out;
  for (int k = 1; k <= 3; ++k)
    if (membership[static_cast<std::size_t>(k - 1)] == std::vector<int>{k}) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("classification is invariant under relabeling") {
  std::vector<std::vector<int>> perms = {{1, 2, 3}, {2, 1, 3}, {3, 2, 1},
                                         {1, 3, 2}, {2, 3, 1}, {3, 1, 2}};
  for (const auto& membership : all_admissible_memberships()) {
    CaseTag base = classify_triple(membership);
    for (const auto& perm : perms) {
      auto moved_membership = relabel(membership, perm);
      CaseTag moved = classify_triple(moved_membership);
      CHECK(moved.tag == base.tag);
      // the witness sets transport under the relabeling
      auto base_witnesses = case_i_witnesses(membership);
      std::vector<int> transported;
      for (int k : base_witnesses) transported.push_back(perm[static_cast<std::size_t>(k - 1)]);
      std::sort(transported.begin(), transported.end());
      CHECK(case_i_witnesses(moved_membership) == transported);
    }
  }
}

TEST_CASE("contraction constant") {
  CHECK(paley_wiener_lambda({1.0, 1.0, 1.0}) == doctest::Approx(0.0));
  CHECK(paley_wiener_lambda({0.19, 0.5, 0.75}) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK_THROWS_AS(paley_wiener_lambda({0.0, 0.5, 0.5}), Error);
  CHECK_THROWS_AS(paley_wiener_lambda({0.5, 1.5, 0.5}), Error);
  for (int a = 1; a <= 100; ++a)
    for (int b = a; b <= 100; b += 37) {
      double lambda = paley_wiener_lambda({a / 100.0, b / 100.0, 1.0});
      CHECK(lambda < 1.0);
    }
}

TEST_CASE("periodic cross-checks") {
  std::vector<GridSupport> unit_intervals;
  std::vector<CosetSystem> unit_freqs;
  for (int k = 0; k < 3; ++k) {
    unit_intervals.push_back(support_from_cells(3, {k}));
    unit_freqs.push_back(CosetSystem{3, {Rational(k)}});
  }

  SUBCASE("the canonical N=3 instance is a basis for all 64 memberships") {
    for (const auto& membership : all_admissible_memberships()) {
      Classification cls = cross_check_periodic(3, unit_intervals, unit_freqs, membership);
      CHECK(cls.verdict == SystemVerdict::riesz_basis);
    }
  }

  SUBCASE("a mixed-width instance at N=4") {
    std::vector<GridSupport> intervals = {support_from_cells(4, {0, 1}),
                                          support_from_cells(4, {2}),
                                          support_from_cells(4, {3})};
    std::vector<CosetSystem> freqs = {{4, {Rational(0), Rational(2)}},
                                      {4, {Rational(1)}},
                                      {4, {Rational(3)}}};
    Classification cls = cross_check_periodic(4, intervals, freqs,
                                              {{1, 2}, {2, 3}, {1, 3}});
    CHECK(cls.verdict == SystemVerdict::riesz_basis);

    auto alphas = periodic_interval_alphas(4, intervals, freqs);
    REQUIRE(alphas.size() == 3);
    for (const auto& a : alphas) {
      REQUIRE(a.has_value());
      CHECK(*a > 0.0);
      CHECK(*a <= 1.0 + 1e-12);
    }
  }

  SUBCASE("the four-interval pairing fails") {
    std::vector<GridSupport> intervals;
    std::vector<CosetSystem> freqs;
    for (int k = 0; k < 4; ++k) {
      intervals.push_back(support_from_cells(4, {k}));
      freqs.push_back(CosetSystem{4, {Rational(k)}});
    }
    Classification cls = cross_check_periodic(4, intervals, freqs,
                                              {{1, 3}, {2, 4}, {1, 3}, {2, 4}});
    CHECK(cls.verdict == SystemVerdict::neither);
    REQUIRE(cls.exact_singular.has_value());
    CHECK(*cls.exact_singular);
  }

  SUBCASE("empty intervals are dropped with their frequency sets") {
    std::vector<GridSupport> intervals = {support_from_cells(2, {0, 1}),
                                          support_from_cells(2, {}),
                                          support_from_cells(2, {})};
    std::vector<CosetSystem> freqs = {{2, {Rational(0), Rational(1)}}, {2, {}}, {2, {}}};
    Classification cls = cross_check_periodic(2, intervals, freqs,
                                              {{1}, {2}, {3}});
    CHECK(cls.verdict == SystemVerdict::riesz_basis);
  }

  SUBCASE("partition violations are rejected") {
    std::vector<GridSupport> bad = {support_from_cells(3, {0, 1}),
                                    support_from_cells(3, {1}),
                                    support_from_cells(3, {2})};
    CHECK_THROWS_AS(cross_check_periodic(3, bad, unit_freqs,
                                         {{1}, {2}, {3}}),
                    Error);
    std::vector<CosetSystem> bad_freqs = {{3, {Rational(0), Rational(1)}},
                                          {3, {Rational(1)}},
                                          {3, {Rational(2)}}};
    CHECK_THROWS_AS(cross_check_periodic(3, unit_intervals, bad_freqs,
                                         {{1}, {2}, {3}}),
                    Error);
  }
}

TEST_CASE("case table export") {
  std::string csv = tri_case_table_csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "branch,L1,L2,L3,case,k");
  int rows = 0;
  bool saw_2_7 = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("2-7,", 0) == 0) {
      saw_2_7 = true;
      CHECK(line == "2-7,12,23,13,case_star,");
    }
  }
  CHECK(rows == 64);
  CHECK(saw_2_7);
}
