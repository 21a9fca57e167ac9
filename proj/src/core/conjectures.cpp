#include "core/conjectures.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/parallel.hpp"
#include "core/rootunity.hpp"

namespace expbasis {

namespace {

using json = nlohmann::json;

constexpr double kSigmaFilter = 1e-6;       // numeric-then-exact pipeline threshold
constexpr std::uint64_t kChunk = 2048;      // fixed chunk geometry for reproducibility
constexpr std::uint64_t kRandomDrawCap = 100'000'000;

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return ((a % n) * (b % n)) % n;
}

// Row k of P_rho W_N: entries exp(-2*pi*i*rho(k)*l/N).
ComplexMatrix permuted_fourier(std::int64_t n, const std::vector<int>& rho) {
  ComplexMatrix w(n, n);
  for (std::int64_t k = 0; k < n; ++k)
    for (std::int64_t l = 0; l < n; ++l) {
      double angle = -2.0 * std::numbers::pi *
                     static_cast<double>(mul_mod(rho[static_cast<std::size_t>(k)], l, n)) /
                     static_cast<double>(n);
      w(k, l) = std::complex<double>(std::cos(angle), std::sin(angle));
    }
  return w;
}

template <int N>
double masked_sigma_min_fixed(const ComplexMatrix& w, const std::vector<std::uint32_t>& rows) {
  Eigen::Matrix<std::complex<double>, N, N> b;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      b(r, c) = ((rows[static_cast<std::size_t>(r)] >> c) & 1u) ? w(r, c)
                                                                : std::complex<double>(0, 0);
  Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, N, N>> svd(b);
  return svd.singularValues()(N - 1);
}

double masked_sigma_min(const ComplexMatrix& w, const std::vector<std::uint32_t>& rows) {
  const int n = static_cast<int>(w.rows());
  switch (n) {
    case 2: return masked_sigma_min_fixed<2>(w, rows);
    case 3: return masked_sigma_min_fixed<3>(w, rows);
    case 4: return masked_sigma_min_fixed<4>(w, rows);
    case 5: return masked_sigma_min_fixed<5>(w, rows);
    case 6: return masked_sigma_min_fixed<6>(w, rows);
    case 7: return masked_sigma_min_fixed<7>(w, rows);
    case 8: return masked_sigma_min_fixed<8>(w, rows);
    default: {
      ComplexMatrix b = ComplexMatrix::Zero(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if ((rows[static_cast<std::size_t>(r)] >> c) & 1u) b(r, c) = w(r, c);
      return sigma_min(b);
    }
  }
}

bool masked_exact_singular(std::int64_t n, const std::vector<int>& rho,
                           const std::vector<std::uint32_t>& rows) {
  auto spec = RootOfUnitySpec::make(n, static_cast<int>(n), static_cast<int>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if ((rows[static_cast<std::size_t>(r)] >> c) & 1u)
        spec.set(r, c, static_cast<std::int64_t>(rho[static_cast<std::size_t>(r)]) * c);
  return exact_zero_det(spec);
}

std::vector<std::uint32_t> mask_from_counter(std::int64_t n, std::uint64_t counter) {
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(n), 0u);
  int bit = 0;
  for (int r = 0; r < n; ++r) {
    rows[static_cast<std::size_t>(r)] |= (1u << r);  // nonvanishing diagonal
    for (int c = 0; c < n; ++c) {
      if (c == r) continue;
      if ((counter >> bit) & 1ull) rows[static_cast<std::size_t>(r)] |= (1u << c);
      ++bit;
    }
  }
  return rows;
}

std::uint64_t counter_from_mask(std::int64_t n, const std::vector<std::uint32_t>& rows) {
  std::uint64_t counter = 0;
  int bit = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (c == r) continue;
      if ((rows[static_cast<std::size_t>(r)] >> c) & 1u) counter |= (1ull << bit);
      ++bit;
    }
  return counter;
}

struct MaskTest {
  bool singular = false;
  double sigma_min = 0.0;
  bool exact = false;
};

MaskTest test_mask(std::int64_t n, const std::vector<int>& rho, const ComplexMatrix& w_rho,
                   const std::vector<std::uint32_t>& rows) {
  MaskTest t;
  t.sigma_min = masked_sigma_min(w_rho, rows);
  if (t.sigma_min > kSigmaFilter) return t;
  t.exact = masked_exact_singular(n, rho, rows);
  t.singular = t.exact;
  return t;
}

ScanRefutation make_mask_refutation(std::int64_t n, const std::vector<int>& rho,
                                    std::uint64_t counter, const MaskTest& t) {
  ScanRefutation ref;
  ref.rho = rho;
  ref.mask_rows = mask_from_counter(n, counter);
  ref.counter = counter;
  ref.sigma_min = t.sigma_min;
  ref.exact_singular = t.exact;
  return ref;
}

// Complete enumeration of [begin, end); returns every singular counter in
// ascending order. Chunk geometry is independent of the worker count.
std::vector<ScanRefutation> scan_range_full(std::int64_t n, const std::vector<int>& rho,
                                            const ComplexMatrix& w_rho, std::uint64_t begin,
                                            std::uint64_t end, int threads) {
  const std::uint64_t total = end - begin;
  const std::uint64_t chunk_count = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<ScanRefutation>> slots(static_cast<std::size_t>(chunk_count));
  parallel_chunks(total, kChunk, threads, [&](std::uint64_t index, std::uint64_t lo,
                                              std::uint64_t hi) {
    auto& local = slots[static_cast<std::size_t>(index)];
    for (std::uint64_t off = lo; off < hi; ++off) {
      const std::uint64_t counter = begin + off;
      MaskTest t = test_mask(n, rho, w_rho, mask_from_counter(n, counter));
      if (t.singular) local.push_back(make_mask_refutation(n, rho, counter, t));
    }
  });
  std::vector<ScanRefutation> merged;
  for (auto& slot : slots)
    for (auto& ref : slot) merged.push_back(std::move(ref));
  return merged;
}

// Early-exit enumeration: the lowest singular counter in [begin, end), if
// any. Workers may overshoot, but the returned counter is canonical.
std::optional<std::uint64_t> scan_range_first(std::int64_t n, const std::vector<int>& rho,
                                              const ComplexMatrix& w_rho, std::uint64_t begin,
                                              std::uint64_t end, int threads) {
  std::atomic<std::uint64_t> best{UINT64_MAX};
  parallel_chunks(
      end - begin, kChunk, threads,
      [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t off = lo; off < hi; ++off) {
          if (begin + off > best.load(std::memory_order_relaxed)) return;
          const std::uint64_t counter = begin + off;
          MaskTest t = test_mask(n, rho, w_rho, mask_from_counter(n, counter));
          if (t.singular) {
            std::uint64_t prev = best.load();
            while (counter < prev && !best.compare_exchange_weak(prev, counter)) {
            }
            return;
          }
        }
      },
      [&](std::uint64_t chunk_begin) {
        return begin + chunk_begin > best.load(std::memory_order_relaxed);
      });
  std::uint64_t found = best.load();
  if (found == UINT64_MAX) return std::nullopt;
  return found;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t rank) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (rank + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Randomized refutation of one permutation: first look for a singular
// principal submatrix (which forces a singular block-triangular mask), then
// draw seeded random masks until one is exactly singular.
struct RandomizedOutcome {
  ScanRefutation refutation;
  std::uint64_t tested = 0;
};

RandomizedOutcome randomized_refute_one(std::int64_t n, const std::vector<int>& rho,
                                        const ComplexMatrix& w_rho, std::uint64_t seed,
                                        std::uint64_t rank) {
  RandomizedOutcome out;
  const std::uint32_t all = static_cast<std::uint32_t>((1u << n) - 1u);

  for (std::uint32_t subset = 1; subset <= all; ++subset) {
    out.tested += 1;
    const int size = std::popcount(subset);
    ComplexMatrix sub(size, size);
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if ((subset >> i) & 1u) members.push_back(i);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) sub(r, c) = w_rho(members[r], members[c]);
    if (sigma_min(sub) > kSigmaFilter) continue;

    // rows in the subset see only subset columns; remaining rows are full
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(n), 0u);
    for (int r = 0; r < n; ++r)
      rows[static_cast<std::size_t>(r)] = ((subset >> r) & 1u) ? subset : all;
    MaskTest t = test_mask(n, rho, w_rho, rows);
    if (t.singular) {
      out.refutation = make_mask_refutation(n, rho, counter_from_mask(n, rows), t);
      return out;
    }
  }

  std::mt19937_64 rng(mix_seed(seed, rank));
  const int offbits = static_cast<int>(n * n - n);
  const std::uint64_t space = 1ull << offbits;
  for (std::uint64_t draw = 0; draw < kRandomDrawCap; ++draw) {
    const std::uint64_t counter = rng() & (space - 1);
    out.tested += 1;
    MaskTest t = test_mask(n, rho, w_rho, mask_from_counter(n, counter));
    if (t.singular) {
      out.refutation = make_mask_refutation(n, rho, counter, t);
      return out;
    }
  }
  fail(ErrorCode::internal, "randomized refutation exhausted its draw budget");
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void validate_rho(std::int64_t n, const std::vector<int>& rho) {
  require(static_cast<std::int64_t>(rho.size()) == n, ErrorCode::invalid_argument,
          "permutation length must equal N");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : rho) {
    require(v >= 0 && v < n, ErrorCode::invalid_argument, "permutation image out of range");
    require(!seen[static_cast<std::size_t>(v)], ErrorCode::invalid_argument,
            "permutation image repeated");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

void maybe_checkpoint(const Conjecture1Options& options, const ScanVerdict& verdict,
                      std::uint64_t rho_rank, std::uint64_t next_counter) {
  if (options.checkpoint_path.empty()) return;
  ScanCheckpoint cp;
  cp.n = verdict.n;
  cp.conjecture = "one";
  cp.strategy = verdict.strategy;
  cp.fixed_rho = verdict.fixed_rho;
  cp.rho_rank = rho_rank;
  cp.mask_counter = next_counter;
  cp.masks_tested = verdict.stats.masks_tested;
  cp.permutations_tested = verdict.stats.permutations_tested;
  cp.seed = options.seed;
  cp.refutations = verdict.refutations;
  save_checkpoint(cp, options.checkpoint_path);
}

}  // namespace

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<int> permutation_of_rank(int n, std::uint64_t rank) {
  std::vector<int> pool;
  for (int i = 0; i < n; ++i) pool.push_back(i);
  std::vector<int> out;
  for (int i = n; i >= 1; --i) {
    std::uint64_t f = factorial_u64(i - 1);
    std::uint64_t idx = rank / f;
    rank %= f;
    out.push_back(pool[static_cast<std::size_t>(idx)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

bool is_prime(std::int64_t value) {
  if (value < 2) return false;
  for (std::int64_t d = 2; d * d <= value; ++d)
    if (value % d == 0) return false;
  return true;
}

ScanVerdict conjecture1_scan(std::int64_t n, const Conjecture1Options& options) {
  require(n >= 2, ErrorCode::invalid_argument, "conjecture 1 needs N >= 2");
  const bool randomized = options.strategy == "randomized_refute";
  require(randomized || options.strategy == "exhaustive", ErrorCode::invalid_argument,
          "unknown strategy: " + options.strategy);
  if (!randomized)
    require(n <= 6, ErrorCode::size_limit, "exhaustive conjecture-1 scans are limited to N <= 6");
  require(n <= 8, ErrorCode::size_limit, "conjecture-1 scans are limited to N <= 8");

  Stopwatch timer;
  ScanVerdict verdict;
  verdict.n = n;
  verdict.conjecture = "one";
  verdict.strategy = options.strategy;
  verdict.fixed_rho = options.rho;
  if (options.rho) validate_rho(n, *options.rho);

  if (options.resume) {
    const auto& cp = *options.resume;
    require(cp.n == n && cp.conjecture == "one" && cp.strategy == options.strategy &&
                cp.fixed_rho == options.rho && cp.seed == options.seed,
            ErrorCode::invalid_argument, "checkpoint does not match the requested scan");
    verdict.stats.masks_tested = cp.masks_tested;
    verdict.stats.permutations_tested = cp.permutations_tested;
    verdict.refutations = cp.refutations;
  }

  const int offbits = static_cast<int>(n * n - n);
  const std::uint64_t space = 1ull << offbits;
  std::uint64_t budget =
      options.mask_budget == 0 ? UINT64_MAX : options.mask_budget;

  if (options.rho && !randomized) {
    // Complete enumeration for one permutation; every singular mask is kept.
    const auto& rho = *options.rho;
    ComplexMatrix w_rho = permuted_fourier(n, rho);
    std::uint64_t cursor = options.resume ? options.resume->mask_counter : 0;
    const std::uint64_t segment =
        options.checkpoint_every ? options.checkpoint_every : space;
    while (cursor < space) {
      const std::uint64_t step = std::min({space - cursor, segment, budget});
      if (step == 0) break;
      auto found = scan_range_full(n, rho, w_rho, cursor, cursor + step, options.threads);
      for (auto& ref : found) verdict.refutations.push_back(std::move(ref));
      cursor += step;
      budget -= step;
      verdict.stats.masks_tested += step;
      maybe_checkpoint(options, verdict, 0, cursor);
      if (budget == 0) break;
    }
    verdict.stats.permutations_tested = 1;
    if (cursor < space) {
      verdict.completed = false;
      ScanCheckpoint cp;
      cp.n = n;
      cp.conjecture = "one";
      cp.strategy = options.strategy;
      cp.fixed_rho = options.rho;
      cp.mask_counter = cursor;
      cp.masks_tested = verdict.stats.masks_tested;
      cp.permutations_tested = verdict.stats.permutations_tested;
      cp.seed = options.seed;
      cp.refutations = verdict.refutations;
      verdict.checkpoint = cp;
      if (!options.checkpoint_path.empty()) save_checkpoint(cp, options.checkpoint_path);
    } else {
      verdict.pass = verdict.refutations.empty();
      if (verdict.pass) {
        verdict.witness_rho = rho;
        verdict.refutations.clear();
      }
    }
    verdict.stats.wall_time_s = timer.seconds();
    return verdict;
  }

  if (options.rho && randomized) {
    const auto& rho = *options.rho;
    ComplexMatrix w_rho = permuted_fourier(n, rho);
    auto outcome = randomized_refute_one(n, rho, w_rho, options.seed, 0);
    verdict.refutations.push_back(std::move(outcome.refutation));
    verdict.stats.masks_tested += outcome.tested;
    verdict.stats.permutations_tested = 1;
    verdict.pass = false;
    verdict.stats.wall_time_s = timer.seconds();
    return verdict;
  }

  // Permutation search over S_N in lexicographic order.
  const std::uint64_t rho_count = factorial_u64(static_cast<int>(n));
  if (randomized) {
    // Refute every permutation; parallel across ranks, merged in rank order.
    const std::uint64_t chunk = 8;
    const std::uint64_t chunk_count = (rho_count + chunk - 1) / chunk;
    std::vector<std::vector<ScanRefutation>> slots(static_cast<std::size_t>(chunk_count));
    std::vector<std::uint64_t> tested(static_cast<std::size_t>(chunk_count), 0);
    parallel_chunks(rho_count, chunk, options.threads,
                    [&](std::uint64_t index, std::uint64_t lo, std::uint64_t hi) {
                      for (std::uint64_t rank = lo; rank < hi; ++rank) {
                        auto rho = permutation_of_rank(static_cast<int>(n), rank);
                        ComplexMatrix w_rho = permuted_fourier(n, rho);
                        auto outcome =
                            randomized_refute_one(n, rho, w_rho, options.seed, rank);
                        slots[static_cast<std::size_t>(index)].push_back(
                            std::move(outcome.refutation));
                        tested[static_cast<std::size_t>(index)] += outcome.tested;
                      }
                    });
    for (auto& slot : slots)
      for (auto& ref : slot) verdict.refutations.push_back(std::move(ref));
    for (auto t : tested) verdict.stats.masks_tested += t;
    verdict.stats.permutations_tested = rho_count;
    verdict.pass = false;
    verdict.stats.wall_time_s = timer.seconds();
    return verdict;
  }

  std::uint64_t rank = options.resume ? options.resume->rho_rank : 0;
  std::uint64_t counter = options.resume ? options.resume->mask_counter : 0;
  while (rank < rho_count) {
    auto rho = permutation_of_rank(static_cast<int>(n), rank);
    ComplexMatrix w_rho = permuted_fourier(n, rho);
    bool refuted = false;
    const std::uint64_t segment =
        options.checkpoint_every ? options.checkpoint_every : space;
    while (counter < space) {
      const std::uint64_t step = std::min({space - counter, segment, budget});
      if (step == 0) break;
      auto first = scan_range_first(n, rho, w_rho, counter, counter + step, options.threads);
      if (first) {
        MaskTest t = test_mask(n, rho, w_rho, mask_from_counter(n, *first));
        verdict.refutations.push_back(make_mask_refutation(n, rho, *first, t));
        verdict.stats.masks_tested += *first - counter + 1;
        budget -= std::min<std::uint64_t>(budget, *first - counter + 1);
        counter = space;
        refuted = true;
        break;
      }
      counter += step;
      budget -= step;
      verdict.stats.masks_tested += step;
      maybe_checkpoint(options, verdict, rank, counter);
      if (budget == 0) break;
    }
    if (counter < space) {
      // interrupted inside this permutation
      verdict.completed = false;
      ScanCheckpoint cp;
      cp.n = n;
      cp.conjecture = "one";
      cp.strategy = options.strategy;
      cp.rho_rank = rank;
      cp.mask_counter = counter;
      cp.masks_tested = verdict.stats.masks_tested;
      cp.permutations_tested = verdict.stats.permutations_tested;
      cp.seed = options.seed;
      cp.refutations = verdict.refutations;
      verdict.checkpoint = cp;
      if (!options.checkpoint_path.empty()) save_checkpoint(cp, options.checkpoint_path);
      verdict.stats.wall_time_s = timer.seconds();
      return verdict;
    }
    verdict.stats.permutations_tested += 1;
    if (!refuted) {
      verdict.pass = true;
      verdict.witness_rho = rho;
      verdict.refutations.clear();
      break;
    }
    rank += 1;
    counter = 0;
    if (budget == 0 && rank < rho_count) {
      verdict.completed = false;
      ScanCheckpoint cp;
      cp.n = n;
      cp.conjecture = "one";
      cp.strategy = options.strategy;
      cp.rho_rank = rank;
      cp.mask_counter = 0;
      cp.masks_tested = verdict.stats.masks_tested;
      cp.permutations_tested = verdict.stats.permutations_tested;
      cp.seed = options.seed;
      cp.refutations = verdict.refutations;
      verdict.checkpoint = cp;
      if (!options.checkpoint_path.empty()) save_checkpoint(cp, options.checkpoint_path);
      verdict.stats.wall_time_s = timer.seconds();
      return verdict;
    }
  }
  verdict.stats.wall_time_s = timer.seconds();
  return verdict;
}

namespace {

struct SubsetTest {
  bool singular = false;
  double sigma_min = 0.0;
  bool exact = false;
};

SubsetTest test_subset(std::int64_t n, const std::vector<int>& rho,
                       const std::vector<int>& members, std::int64_t denominator) {
  const int size = static_cast<int>(members.size());
  ComplexMatrix sub(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      double angle = -2.0 * std::numbers::pi *
                     static_cast<double>((static_cast<std::int64_t>(rho[members[r]]) *
                                          members[c]) %
                                         denominator) /
                     static_cast<double>(denominator);
      sub(r, c) = std::complex<double>(std::cos(angle), std::sin(angle));
    }
  SubsetTest t;
  t.sigma_min = sigma_min(sub);
  if (t.sigma_min > kSigmaFilter) return t;
  if (denominator == n) {
    auto spec = RootOfUnitySpec::make(n, size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c)
        spec.set(r, c, static_cast<std::int64_t>(rho[members[r]]) * members[c]);
    t.exact = exact_zero_det(spec);
    t.singular = t.exact;
  } else {
    t.singular = true;  // numeric-only path
  }
  return t;
}

std::vector<int> subset_members(std::int64_t n, std::uint32_t bits) {
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if ((bits >> i) & 1u) members.push_back(i);
  return members;
}

}  // namespace

ScanVerdict conjecture2_scan(std::int64_t n, const std::optional<std::vector<int>>& rho) {
  require(n >= 1, ErrorCode::invalid_argument, "conjecture 2 needs N >= 1");
  Stopwatch timer;
  ScanVerdict verdict;
  verdict.n = n;
  verdict.conjecture = "two";
  verdict.strategy = "exhaustive";
  verdict.fixed_rho = rho;

  const std::uint32_t all = static_cast<std::uint32_t>((1u << n) - 1u);
  if (rho) {
    require(n <= 16, ErrorCode::size_limit, "fixed-permutation scans limited to N <= 16");
    validate_rho(n, *rho);
    for (std::uint32_t bits = 1; bits <= all; ++bits) {
      auto members = subset_members(n, bits);
      SubsetTest t = test_subset(n, *rho, members, n);
      verdict.stats.masks_tested += 1;
      if (t.singular) {
        ScanRefutation ref;
        ref.rho = *rho;
        ref.subset = members;
        ref.sigma_min = t.sigma_min;
        ref.exact_singular = t.exact;
        verdict.refutations.push_back(std::move(ref));
      }
    }
    verdict.stats.permutations_tested = 1;
    verdict.pass = verdict.refutations.empty();
    if (verdict.pass) verdict.witness_rho = *rho;
    verdict.stats.wall_time_s = timer.seconds();
    return verdict;
  }

  require(n <= 12, ErrorCode::size_limit, "witness search limited to N <= 12");
  const std::uint64_t rho_count = factorial_u64(static_cast<int>(n));
  for (std::uint64_t rank = 0; rank < rho_count; ++rank) {
    auto candidate = permutation_of_rank(static_cast<int>(n), rank);
    bool refuted = false;
    for (std::uint32_t bits = 1; bits <= all; ++bits) {
      auto members = subset_members(n, bits);
      SubsetTest t = test_subset(n, candidate, members, n);
      verdict.stats.masks_tested += 1;
      if (t.singular) {
        ScanRefutation ref;
        ref.rho = candidate;
        ref.subset = members;
        ref.sigma_min = t.sigma_min;
        ref.exact_singular = t.exact;
        verdict.refutations.push_back(std::move(ref));
        refuted = true;
        break;
      }
    }
    verdict.stats.permutations_tested += 1;
    if (!refuted) {
      verdict.pass = true;
      verdict.witness_rho = candidate;
      verdict.refutations.clear();
      break;
    }
  }
  verdict.stats.wall_time_s = timer.seconds();
  return verdict;
}

ScanVerdict hierarchical_noninteger_check(std::int64_t n, std::int64_t p) {
  require(is_prime(p) && p > n, ErrorCode::invalid_argument,
          "invalid-input: P must be a prime greater than N");
  require(n >= 1 && n <= 10, ErrorCode::size_limit, "hierarchical check limited to N <= 10");

  Stopwatch timer;
  ScanVerdict verdict;
  verdict.n = n;
  verdict.conjecture = "hierarchy";
  verdict.strategy = "exhaustive";

  std::vector<int> identity;
  for (int i = 0; i < n; ++i) identity.push_back(i);

  const std::uint32_t all = static_cast<std::uint32_t>((1u << n) - 1u);
  for (std::uint32_t bits = 1; bits <= all; ++bits) {
    auto members = subset_members(n, bits);
    // frequencies N*Z + k*N/P give entries exp(-2*pi*i*k*l/P)
    SubsetTest t = test_subset(n, identity, members, p);
    verdict.stats.masks_tested += 1;
    if (t.singular) {
      ScanRefutation ref;
      ref.rho = identity;
      ref.subset = members;
      ref.sigma_min = t.sigma_min;
      verdict.refutations.push_back(std::move(ref));
    }
  }
  verdict.pass = verdict.refutations.empty();
  verdict.stats.wall_time_s = timer.seconds();
  return verdict;
}

namespace {

json refutation_to_json(const ScanRefutation& ref) {
  json j;
  j["rho"] = ref.rho;
  j["sigma_min"] = ref.sigma_min;
  if (ref.exact_singular) j["exact_singular"] = *ref.exact_singular;
  if (!ref.mask_rows.empty()) {
    json rows = json::array();
    const int n = static_cast<int>(ref.rho.size());
    for (auto bits : ref.mask_rows) {
      json row = json::array();
      for (int c = 0; c < n; ++c) row.push_back(static_cast<int>((bits >> c) & 1u));
      rows.push_back(row);
    }
    j["mask"] = rows;
    j["counter"] = ref.counter;
  }
  if (!ref.subset.empty()) j["subset"] = ref.subset;
  return j;
}

ScanRefutation refutation_from_json(const json& j) {
  ScanRefutation ref;
  ref.rho = j.at("rho").get<std::vector<int>>();
  ref.sigma_min = j.at("sigma_min").get<double>();
  if (j.contains("exact_singular")) ref.exact_singular = j.at("exact_singular").get<bool>();
  if (j.contains("mask")) {
    for (const auto& row : j.at("mask")) {
      std::uint32_t bits = 0;
      int c = 0;
      for (const auto& v : row) {
        if (v.get<int>()) bits |= (1u << c);
        ++c;
      }
      ref.mask_rows.push_back(bits);
    }
    ref.counter = j.at("counter").get<std::uint64_t>();
  }
  if (j.contains("subset")) ref.subset = j.at("subset").get<std::vector<int>>();
  return ref;
}

}  // namespace

nlohmann::json checkpoint_to_json(const ScanCheckpoint& cp) {
  json j;
  j["schema_version"] = "1";
  j["kind"] = "checkpoint";
  j["n"] = cp.n;
  j["conjecture"] = cp.conjecture;
  j["strategy"] = cp.strategy;
  if (cp.fixed_rho) j["rho"] = *cp.fixed_rho;
  j["rho_rank"] = cp.rho_rank;
  j["mask_counter"] = cp.mask_counter;
  j["masks_tested"] = cp.masks_tested;
  j["permutations_tested"] = cp.permutations_tested;
  j["seed"] = cp.seed;
  json refs = json::array();
  for (const auto& ref : cp.refutations) refs.push_back(refutation_to_json(ref));
  j["refutations"] = refs;
  return j;
}

void save_checkpoint(const ScanCheckpoint& cp, const std::string& path) {
  json j = checkpoint_to_json(cp);
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot write checkpoint: " + path);
  out << j.dump(2) << "\n";
  require(out.good(), ErrorCode::io, "failed writing checkpoint: " + path);
}

ScanCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot read checkpoint: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::verification, std::string("malformed checkpoint: ") + e.what());
  }
  require(j.value("kind", "") == "checkpoint" && j.value("schema_version", "") == "1",
          ErrorCode::verification, "unsupported checkpoint schema");
  ScanCheckpoint cp;
  cp.n = j.at("n").get<std::int64_t>();
  cp.conjecture = j.at("conjecture").get<std::string>();
  cp.strategy = j.at("strategy").get<std::string>();
  if (j.contains("rho")) cp.fixed_rho = j.at("rho").get<std::vector<int>>();
  cp.rho_rank = j.at("rho_rank").get<std::uint64_t>();
  cp.mask_counter = j.at("mask_counter").get<std::uint64_t>();
  cp.masks_tested = j.at("masks_tested").get<std::uint64_t>();
  cp.permutations_tested = j.at("permutations_tested").get<std::uint64_t>();
  cp.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& ref : j.at("refutations")) cp.refutations.push_back(refutation_from_json(ref));
  return cp;
}

}  // namespace expbasis
