#include "core/triinterval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace expbasis {

namespace {

// Subsets encoded as 3-bit masks, bit i-1 for interval i.
int subset_bits(const std::vector<int>& subset) {
  int bits = 0;
  for (int v : subset) {
    require(v >= 1 && v <= 3, ErrorCode::invalid_argument,
            "invalid-configuration: membership entries must lie in {1,2,3}");
    bits |= 1 << (v - 1);
  }
  return bits;
}

std::vector<int> bits_to_subset(int bits) {
  std::vector<int> out;
  for (int v = 1; v <= 3; ++v)
    if (bits & (1 << (v - 1))) out.push_back(v);
  return out;
}

// Enumeration orders from the proof: L_k runs over the subsets containing k.
constexpr std::array<int, 4> kOrder1 = {0b001, 0b011, 0b101, 0b111};
constexpr std::array<int, 4> kOrder2 = {0b010, 0b011, 0b110, 0b111};
constexpr std::array<int, 4> kOrder3 = {0b100, 0b101, 0b110, 0b111};

std::string branch_id(int b1, int b2, int b3) {
  auto index_of = [](const std::array<int, 4>& order, int bits) {
    for (int i = 0; i < 4; ++i)
      if (order[static_cast<std::size_t>(i)] == bits) return i;
    return -1;
  };
  int group = index_of(kOrder3, b3) + 1;
  int sub = 4 * index_of(kOrder1, b1) + index_of(kOrder2, b2) + 1;
  return std::to_string(group) + "-" + std::to_string(sub);
}

CaseTag classify_bits(const std::array<int, 3>& bits) {
  CaseTag tag;
  tag.proof_branch = branch_id(bits[0], bits[1], bits[2]);
  for (int k = 0; k < 3; ++k) {
    if (bits[static_cast<std::size_t>(k)] == (1 << k)) {
      tag.tag = TriCase::case_i;
      tag.k = k + 1;
      return tag;
    }
  }
  for (int k = 0; k < 3; ++k) {
    bool isolated = true;
    for (int l = 0; l < 3; ++l)
      if (l != k && (bits[static_cast<std::size_t>(l)] & (1 << k))) isolated = false;
    if (isolated) {
      tag.tag = TriCase::case_ii;
      tag.k = k + 1;
      return tag;
    }
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      int ca = 0b111 & ~bits[static_cast<std::size_t>(a)];
      int cb = 0b111 & ~bits[static_cast<std::size_t>(b)];
      require((ca & cb) == 0, ErrorCode::internal,
              "membership triple escaped the proof's case system");
    }
  tag.tag = TriCase::case_star;
  tag.k = 0;
  return tag;
}

}  // namespace

const char* tri_case_name(TriCase tag) {
  switch (tag) {
    case TriCase::case_i: return "case_i";
    case TriCase::case_ii: return "case_ii";
    case TriCase::case_star: return "case_star";
  }
  return "unknown";
}

CaseTag classify_triple(const std::vector<std::vector<int>>& membership) {
  require(membership.size() == 3, ErrorCode::invalid_argument,
          "invalid-configuration: exactly three membership sets expected");
  std::array<int, 3> bits{};
  for (int k = 0; k < 3; ++k) {
    bits[static_cast<std::size_t>(k)] = subset_bits(membership[static_cast<std::size_t>(k)]);
    require(bits[static_cast<std::size_t>(k)] & (1 << k), ErrorCode::invalid_argument,
            "invalid-configuration: k must belong to L_k");
  }
  return classify_bits(bits);
}

double paley_wiener_lambda(const std::array<double, 3>& alphas) {
  double lowest = 1.0;
  for (double a : alphas) {
    require(a > 0.0 && a <= 1.0, ErrorCode::invalid_argument,
            "invalid-bound: alpha must lie in (0,1]");
    lowest = std::min(lowest, a);
  }
  return std::sqrt(1.0 - lowest);
}

Classification cross_check_periodic(std::int64_t modulus,
                                    const std::vector<GridSupport>& intervals,
                                    const std::vector<CosetSystem>& freqs,
                                    const std::vector<std::vector<int>>& membership) {
  const std::size_t k_count = intervals.size();
  require(freqs.size() == k_count && membership.size() == k_count, ErrorCode::invalid_argument,
          "invalid-configuration: mismatched list lengths");
  require(k_count >= 1, ErrorCode::invalid_argument, "invalid-configuration: empty input");

  std::set<int> covered;
  for (const auto& iv : intervals) {
    require(iv.modulus == modulus, ErrorCode::invalid_argument,
            "invalid-configuration: interval modulus mismatch");
    for (int c : iv.cells)
      require(covered.insert(c).second, ErrorCode::invalid_argument,
              "invalid-configuration: intervals overlap");
  }
  require(static_cast<std::int64_t>(covered.size()) == modulus, ErrorCode::invalid_argument,
          "invalid-configuration: intervals must partition Z_N");

  std::set<std::int64_t> used_offsets;
  for (std::size_t k = 0; k < k_count; ++k) {
    require(freqs[k].modulus == modulus, ErrorCode::invalid_argument,
            "invalid-configuration: frequency modulus mismatch");
    require(freqs[k].offsets.size() == intervals[k].cells.size(), ErrorCode::invalid_argument,
            "invalid-configuration: coset count must match interval cell count");
    for (const auto& c : freqs[k].offsets) {
      require(c.is_integer(), ErrorCode::invalid_argument,
              "invalid-configuration: offsets must be integer residues");
      require(used_offsets.insert(c.mod(modulus).num()).second, ErrorCode::invalid_argument,
              "invalid-configuration: repeated residue across frequency sets");
    }
    if (!intervals[k].cells.empty()) {
      bool self = std::find(membership[k].begin(), membership[k].end(),
                            static_cast<int>(k) + 1) != membership[k].end();
      require(self, ErrorCode::invalid_argument,
              "invalid-configuration: k must belong to membership[k]");
    }
  }

  // One row per coset offset; the mask of every row of channel k is S_k.
  std::vector<Rational> offsets;
  std::vector<std::vector<int>> masks;
  for (std::size_t k = 0; k < k_count; ++k) {
    if (freqs[k].offsets.empty()) continue;
    std::set<int> cells;
    for (int n : membership[k]) {
      require(n >= 1 && n <= static_cast<int>(k_count), ErrorCode::invalid_argument,
              "invalid-configuration: membership index out of range");
      const auto& iv = intervals[static_cast<std::size_t>(n - 1)];
      cells.insert(iv.cells.begin(), iv.cells.end());
    }
    require(!cells.empty(), ErrorCode::invalid_argument,
            "invalid-configuration: channel with empty support");
    for (const auto& c : freqs[k].offsets) {
      offsets.push_back(c);
      masks.emplace_back(cells.begin(), cells.end());
    }
  }
  MaskedMatrix m = build_masked_matrix(modulus, offsets, masks);
  return classify_system(m);
}

std::vector<std::optional<double>> periodic_interval_alphas(
    std::int64_t modulus, const std::vector<GridSupport>& intervals,
    const std::vector<CosetSystem>& freqs) {
  require(intervals.size() == freqs.size(), ErrorCode::invalid_argument,
          "invalid-configuration: mismatched list lengths");
  std::vector<std::optional<double>> alphas;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (intervals[k].cells.empty()) {
      alphas.push_back(std::nullopt);
      continue;
    }
    std::vector<std::vector<int>> masks(freqs[k].offsets.size(), intervals[k].cells);
    MaskedMatrix m = build_masked_matrix(modulus, freqs[k].offsets, masks);
    Classification cls = classify_system(m);
    alphas.push_back(cls.lower_bound ? std::optional<double>(*cls.lower_bound) : std::nullopt);
  }
  return alphas;
}

std::vector<std::vector<std::vector<int>>> all_admissible_memberships() {
  std::vector<std::vector<std::vector<int>>> out;
  for (int b3 : kOrder3)
    for (int b1 : kOrder1)
      for (int b2 : kOrder2)
        out.push_back({bits_to_subset(b1), bits_to_subset(b2), bits_to_subset(b3)});
  return out;
}

std::string tri_case_table_csv() {
  std::ostringstream out;
  out << "branch,L1,L2,L3,case,k\n";
  auto render = [](const std::vector<int>& subset) {
    std::string s;
    for (int v : subset) s += static_cast<char>('0' + v);
    return s;
  };
  for (const auto& membership : all_admissible_memberships()) {
    CaseTag tag = classify_triple(membership);
    out << tag.proof_branch << "," << render(membership[0]) << "," << render(membership[1])
        << "," << render(membership[2]) << "," << tri_case_name(tag.tag) << ","
        << (tag.k ? std::to_string(tag.k) : "") << "\n";
  }
  return out.str();
}

}  // namespace expbasis
