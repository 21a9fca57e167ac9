#include "core/grid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace expbasis {

bool GridSupport::contains(int cell) const {
  return std::binary_search(cells.begin(), cells.end(), cell);
}

bool GridSupport::contains_all(const GridSupport& other) const {
  return std::includes(cells.begin(), cells.end(), other.cells.begin(), other.cells.end());
}

bool CosetSystem::all_integer_offsets() const {
  return std::all_of(offsets.begin(), offsets.end(),
                     [](const Rational& c) { return c.is_integer(); });
}

bool NCReport::pass() const {
  for (const auto& e : nc1)
    if (!e.pass) return false;
  for (const auto& e : nc2)
    if (!e.pass) return false;
  return true;
}

GridSupport support_from_cells(std::int64_t modulus, std::vector<int> cells) {
  require(modulus >= 1, ErrorCode::invalid_argument, "modulus must be positive");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (int c : cells)
    require(c >= 0 && c < modulus, ErrorCode::invalid_argument,
            "cell index out of range: " + std::to_string(c));
  return GridSupport{modulus, std::move(cells)};
}

namespace {

void validate_interval(const RationalInterval& iv) {
  require(iv.lo < iv.hi, ErrorCode::invalid_argument,
          "invalid-interval: lo >= hi (" + iv.lo.str() + " .. " + iv.hi.str() + ")");
  require(Rational(0) <= iv.lo && iv.hi <= Rational(1), ErrorCode::invalid_argument,
          "invalid-interval: endpoints outside [0,1]");
}

// Sorted merge of overlapping or adjacent intervals; supports are sets.
std::vector<RationalInterval> merge_intervals(std::vector<RationalInterval> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const RationalInterval& a, const RationalInterval& b) {
    return a.lo < b.lo;
  });
  std::vector<RationalInterval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

}  // namespace

std::pair<std::int64_t, std::vector<GridSupport>> normalize_supports(
    const std::vector<std::vector<RationalInterval>>& sets) {
  require(!sets.empty(), ErrorCode::invalid_argument, "invalid-input: no support sets");
  std::int64_t n = 1;
  for (const auto& set : sets) {
    require(!set.empty(), ErrorCode::invalid_argument, "invalid-input: empty support set");
    for (const auto& iv : set) {
      validate_interval(iv);
      n = std::lcm(n, iv.lo.den());
      n = std::lcm(n, iv.hi.den());
    }
  }
  std::vector<GridSupport> out;
  out.reserve(sets.size());
  for (const auto& set : sets) {
    std::vector<int> cells;
    for (const auto& iv : merge_intervals(set)) {
      // endpoints are multiples of 1/n, so the interval is exactly the cells
      // [lo*n, hi*n)
      std::int64_t a = iv.lo.num() * (n / iv.lo.den());
      std::int64_t b = iv.hi.num() * (n / iv.hi.den());
      for (std::int64_t c = a; c < b; ++c) cells.push_back(static_cast<int>(c));
    }
    out.push_back(support_from_cells(n, std::move(cells)));
  }
  return {n, std::move(out)};
}

Rational beurling_density(const CosetSystem& sys) {
  require(sys.modulus >= 1, ErrorCode::invalid_argument, "modulus must be positive");
  return Rational(static_cast<std::int64_t>(sys.offsets.size()), sys.modulus);
}

NCReport check_necessary_conditions(const std::vector<GridSupport>& base_cells,
                                    const std::vector<GridSupport>& supports,
                                    const std::vector<CosetSystem>& freqs) {
  const std::size_t k_count = supports.size();
  require(base_cells.size() == k_count && freqs.size() == k_count, ErrorCode::invalid_argument,
          "invalid-configuration: mismatched list lengths");
  require(k_count > 0, ErrorCode::invalid_argument, "invalid-configuration: empty input");

  const std::int64_t n = supports.front().modulus;
  for (const auto& s : supports)
    require(s.modulus == n, ErrorCode::invalid_argument, "incompatible-grids: modulus mismatch");
  for (const auto& b : base_cells)
    require(b.modulus == n, ErrorCode::invalid_argument, "incompatible-grids: modulus mismatch");
  for (const auto& f : freqs)
    require(f.modulus == n, ErrorCode::invalid_argument, "incompatible-grids: modulus mismatch");

  // base intervals pairwise disjoint
  std::set<int> seen;
  for (const auto& b : base_cells)
    for (int c : b.cells)
      require(seen.insert(c).second, ErrorCode::invalid_argument,
              "invalid-configuration: base cells overlap");

  // every S_k must be a union of base intervals
  for (const auto& s : supports) {
    for (const auto& b : base_cells) {
      bool any = std::any_of(b.cells.begin(), b.cells.end(),
                             [&](int c) { return s.contains(c); });
      if (any)
        require(s.contains_all(b), ErrorCode::invalid_argument,
                "invalid-configuration: support splits a base interval");
    }
    for (int c : s.cells)
      require(seen.count(c), ErrorCode::invalid_argument,
              "invalid-configuration: support cell outside base intervals");
  }

  NCReport report;
  for (std::size_t k = 0; k < k_count; ++k) {
    NCReport::NC1Entry e;
    e.support_measure = supports[k].measure();
    e.density = beurling_density(freqs[k]);
    e.pass = e.support_measure >= e.density;
    report.nc1.push_back(e);
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    // distinct offsets of the union of Lambda_l over l with S_l containing I_k
    std::vector<Rational> covering;
    for (std::size_t l = 0; l < k_count; ++l) {
      if (!supports[l].contains_all(base_cells[k])) continue;
      for (const auto& c : freqs[l].offsets)
        if (std::find(covering.begin(), covering.end(), c) == covering.end())
          covering.push_back(c);
    }
    NCReport::NC2Entry e;
    e.covering_density = Rational(static_cast<std::int64_t>(covering.size()), n);
    e.interval_measure = base_cells[k].measure();
    e.pass = e.covering_density >= e.interval_measure;
    report.nc2.push_back(e);
  }
  return report;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<std::vector<RationalInterval>> parse_support_sets(const std::string& text) {
  std::vector<std::vector<RationalInterval>> sets;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<RationalInterval> set;
    for (const auto& piece : split(line, ',')) {
      std::string item = strip(piece);
      require(!item.empty(), ErrorCode::parse, "empty interval in: " + line);
      std::size_t dots = item.find("..");
      require(dots != std::string::npos, ErrorCode::parse,
              "interval must be written lo..hi: " + item);
      RationalInterval iv{Rational::parse(strip(item.substr(0, dots))),
                          Rational::parse(strip(item.substr(dots + 2)))};
      set.push_back(iv);
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

std::vector<Rational> parse_offsets(const std::string& text) {
  std::vector<Rational> offsets;
  for (const auto& piece : split(text, ',')) {
    std::string item = strip(piece);
    require(!item.empty(), ErrorCode::parse, "empty offset in list");
    offsets.push_back(Rational::parse(item));
  }
  return offsets;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& piece : split(text, ',')) {
    std::string item = strip(piece);
    require(!item.empty(), ErrorCode::parse, "empty entry in integer list");
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      require(used == item.size(), ErrorCode::parse, "bad integer: " + item);
      out.push_back(static_cast<int>(v));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "bad integer: " + item);
    }
  }
  return out;
}

}  // namespace expbasis
