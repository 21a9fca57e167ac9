#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/masked.hpp"

namespace expbasis {

// Membership structure of a three-interval support configuration:
// membership[k] is L_{k+1}, a subset of {1,2,3} containing k+1, and
// S_{k+1} = union of I_n over n in L_{k+1}.
enum class TriCase { case_i, case_ii, case_star };

struct CaseTag {
  TriCase tag = TriCase::case_star;
  int k = 0;                 // the witnessing index for cases (i) and (ii), 1-based
  std::string proof_branch;  // enumeration id, e.g. "2-7"
};

const char* tri_case_name(TriCase tag);

// Dispatches a membership triple to the proof cases, preferring (i), then
// (ii), then (*). Every admissible triple (k in L_k) receives a tag.
CaseTag classify_triple(const std::vector<std::vector<int>>& membership);

// Contraction constant sqrt(1 - min alpha_k) for the perturbation argument;
// inputs are lower Riesz bounds in (0, 1].
double paley_wiener_lambda(const std::array<double, 3>& alphas);

// Assembles the masked matrix induced by interval supports S_k built from a
// membership table (one row per coset offset, mask = cells of S_k) and
// classifies it. Intervals must partition Z_N with matching per-interval
// coset counts; empty intervals are dropped together with their (necessarily
// empty) frequency sets.
Classification cross_check_periodic(std::int64_t modulus,
                                    const std::vector<GridSupport>& intervals,
                                    const std::vector<CosetSystem>& freqs,
                                    const std::vector<std::vector<int>>& membership);

// Per-interval lower Riesz bound (1/N) sigma_min^2 of E(I_k, Lambda_k);
// absent for empty intervals.
std::vector<std::optional<double>> periodic_interval_alphas(
    std::int64_t modulus, const std::vector<GridSupport>& intervals,
    const std::vector<CosetSystem>& freqs);

// The 64-row enumeration table (branch id, memberships, case tag) in the
// proof's ordering, as CSV text.
std::string tri_case_table_csv();

// All 64 admissible membership triples in enumeration order.
std::vector<std::vector<std::vector<int>>> all_admissible_memberships();

}  // namespace expbasis
