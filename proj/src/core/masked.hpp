#pragma once

#include <optional>
#include <vector>

#include "core/grid.hpp"
#include "core/linalg.hpp"
#include "core/rational.hpp"
#include "core/rootunity.hpp"

namespace expbasis {

// The K x L matrix W with w_{k,l} = exp(-2*pi*i*c_k*l/N) for l in the k-th
// mask and 0 elsewhere. Row order follows the offset list; columns are the
// sorted union of the masks.
struct MaskedMatrix {
  std::int64_t modulus = 1;
  std::vector<Rational> offsets;          // c_k, reduced into [0, N)
  std::vector<int> column_labels;         // sorted union of all masks
  std::vector<std::vector<int>> masks;    // per-row sorted cell sets L_k
  ComplexMatrix matrix;

  int k_rows() const { return static_cast<int>(offsets.size()); }
  int l_cols() const { return static_cast<int>(column_labels.size()); }
  bool all_integer_offsets() const;

  // Exact root-of-unity view; only available for integer offsets.
  std::optional<RootOfUnitySpec> exact_spec() const;
};

enum class SystemVerdict { riesz_basis, frame_only, riesz_sequence_only, neither };

const char* verdict_name(SystemVerdict verdict);
SystemVerdict verdict_from_name(const std::string& name);

struct Classification {
  SystemVerdict verdict = SystemVerdict::neither;
  std::optional<double> lower_bound;   // (1/N) * sigma_min^2, absent for "neither"
  double sigma_min = 0.0;
  std::optional<bool> exact_singular;  // square systems with integer offsets only
};

MaskedMatrix build_masked_matrix(std::int64_t modulus, const std::vector<Rational>& offsets,
                                 const std::vector<std::vector<int>>& masks);

// Frame / Riesz sequence / Riesz basis trichotomy from the shape and rank of
// the masked matrix, with the optimal lower bound when the system is not
// "neither".
Classification classify_system(const MaskedMatrix& m, double singular_scale = kSingularScale);

// Dual Riesz basis data for square integer-offset systems covering Z_N:
// z is the matrix inverse and filter_g[k][j] = exp(-2*pi*i*c_k*j/N) * z_{j,k}
// is the constant of the k-th dual filter on cell j.
struct DualData {
  ComplexMatrix z;
  std::vector<std::vector<std::complex<double>>> filter_g;
};

DualData dual_basis(const MaskedMatrix& m);

// Max over primal/dual pairs (frequency shifts within +-trunc periods) of
// |<dual, primal> - delta|. Inner products are integrated in closed form, so
// the defect carries no quadrature error.
double verify_biorthogonality(const MaskedMatrix& m, const DualData& dual, int trunc = 3);

}  // namespace expbasis
