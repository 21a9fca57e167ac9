#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace expbasis {

// One refuting object: a diagonal-one mask (conjecture 1) or an index subset
// (conjecture 2 / hierarchical frequencies), always re-verified through the
// numeric-then-exact pipeline.
struct ScanRefutation {
  std::vector<int> rho;
  std::vector<std::uint32_t> mask_rows;  // conjecture 1: row bitmasks incl. diagonal
  std::uint64_t counter = 0;             // canonical mask counter (conjecture 1)
  std::vector<int> subset;               // conjecture 2 / hierarchy
  double sigma_min = 0.0;
  std::optional<bool> exact_singular;
};

struct ScanStats {
  std::uint64_t masks_tested = 0;
  std::uint64_t permutations_tested = 0;
  double wall_time_s = 0.0;  // informational; excluded from determinism checks
};

// Resumable scan position, written as a versioned JSON text file.
struct ScanCheckpoint {
  std::int64_t n = 0;
  std::string conjecture;
  std::string strategy;
  std::optional<std::vector<int>> fixed_rho;
  std::uint64_t rho_rank = 0;
  std::uint64_t mask_counter = 0;  // next counter to test
  std::uint64_t masks_tested = 0;
  std::uint64_t permutations_tested = 0;
  std::uint64_t seed = 0;
  std::vector<ScanRefutation> refutations;
};

void save_checkpoint(const ScanCheckpoint& cp, const std::string& path);
ScanCheckpoint load_checkpoint(const std::string& path);
nlohmann::json checkpoint_to_json(const ScanCheckpoint& cp);

struct ScanVerdict {
  std::int64_t n = 0;
  std::string conjecture;  // "one" | "two" | "hierarchy"
  std::string strategy;
  bool completed = true;   // false when a mask budget interrupted the scan
  bool pass = false;
  std::optional<std::vector<int>> witness_rho;   // populated iff pass
  std::optional<std::vector<int>> fixed_rho;
  std::vector<ScanRefutation> refutations;       // populated iff !pass (completed scans)
  ScanStats stats;
  std::optional<ScanCheckpoint> checkpoint;      // present when interrupted
};

struct Conjecture1Options {
  std::optional<std::vector<int>> rho;   // fixed permutation; absent = search
  std::string strategy = "exhaustive";   // or "randomized_refute"
  std::uint64_t seed = 1;
  int threads = 0;                       // 0 = available parallelism
  std::uint64_t mask_budget = 0;         // 0 = unlimited
  std::string checkpoint_path;
  std::uint64_t checkpoint_every = 0;
  std::optional<ScanCheckpoint> resume;
};

// Masks are all M in {0,1}^{NxN} with ones on the diagonal; off-diagonal bits
// form a little-endian row-major counter. Fixed-rho exhaustive scans
// enumerate the family completely and report every singular mask; the
// witness search early-exits each permutation on its first (lowest-counter)
// counterexample.
ScanVerdict conjecture1_scan(std::int64_t n, const Conjecture1Options& options);

// Principal submatrices [exp(-2*pi*i*rho(k)*l/N)]_{k,l in K} over every
// nonempty K. Fixed rho reports all singular subsets; the search returns the
// lexicographically first passing permutation.
ScanVerdict conjecture2_scan(std::int64_t n, const std::optional<std::vector<int>>& rho);

// Frequencies N*Z + k*N/P for prime P > N: every subset matrix
// [exp(-2*pi*i*k*l/P)] must be invertible (numeric path; offsets are not
// integers).
ScanVerdict hierarchical_noninteger_check(std::int64_t n, std::int64_t p);

bool is_prime(std::int64_t value);

// Lexicographic rank helpers over S_n (rank 0 = identity).
std::vector<int> permutation_of_rank(int n, std::uint64_t rank);
std::uint64_t factorial_u64(int n);

}  // namespace expbasis
