#include "core/masked.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "core/errors.hpp"

namespace expbasis {

namespace {

std::complex<double> unit_phase(double turns) {
  // exp(2*pi*i*turns)
  double angle = 2.0 * std::numbers::pi * turns;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

bool MaskedMatrix::all_integer_offsets() const {
  return std::all_of(offsets.begin(), offsets.end(),
                     [](const Rational& c) { return c.is_integer(); });
}

std::optional<RootOfUnitySpec> MaskedMatrix::exact_spec() const {
  if (!all_integer_offsets()) return std::nullopt;
  auto spec = RootOfUnitySpec::make(modulus, k_rows(), l_cols());
  for (int k = 0; k < k_rows(); ++k) {
    const auto& mask = masks[k];
    for (int c = 0; c < l_cols(); ++c) {
      int label = column_labels[c];
      if (std::binary_search(mask.begin(), mask.end(), label))
        spec.set(k, c, offsets[k].num() * label);
    }
  }
  return spec;
}

const char* verdict_name(SystemVerdict verdict) {
  switch (verdict) {
    case SystemVerdict::riesz_basis: return "riesz_basis";
    case SystemVerdict::frame_only: return "frame_only";
    case SystemVerdict::riesz_sequence_only: return "riesz_sequence_only";
    case SystemVerdict::neither: return "neither";
  }
  return "unknown";
}

SystemVerdict verdict_from_name(const std::string& name) {
  if (name == "riesz_basis") return SystemVerdict::riesz_basis;
  if (name == "frame_only") return SystemVerdict::frame_only;
  if (name == "riesz_sequence_only") return SystemVerdict::riesz_sequence_only;
  if (name == "neither") return SystemVerdict::neither;
  fail(ErrorCode::parse, "unknown verdict: " + name);
}

MaskedMatrix build_masked_matrix(std::int64_t modulus, const std::vector<Rational>& offsets,
                                 const std::vector<std::vector<int>>& masks) {
  require(modulus >= 1, ErrorCode::invalid_argument, "modulus must be positive");
  require(!offsets.empty(), ErrorCode::invalid_argument, "invalid-offsets: empty list");
  require(offsets.size() == masks.size(), ErrorCode::invalid_argument,
          "offsets and masks must pair up");

  MaskedMatrix m;
  m.modulus = modulus;
  for (const auto& c : offsets) m.offsets.push_back(c.mod(modulus));
  for (std::size_t i = 0; i < m.offsets.size(); ++i)
    for (std::size_t j = i + 1; j < m.offsets.size(); ++j)
      require(m.offsets[i] != m.offsets[j], ErrorCode::invalid_argument,
              "invalid-offsets: duplicate offset " + m.offsets[i].str());

  std::set<int> label_set;
  for (const auto& mask : masks) {
    require(!mask.empty(), ErrorCode::invalid_argument, "invalid-mask: empty mask");
    GridSupport s = support_from_cells(modulus, mask);
    label_set.insert(s.cells.begin(), s.cells.end());
    m.masks.push_back(std::move(s.cells));
  }
  m.column_labels.assign(label_set.begin(), label_set.end());

  const int k_rows = m.k_rows();
  const int l_cols = m.l_cols();
  m.matrix = ComplexMatrix::Zero(k_rows, l_cols);
  for (int k = 0; k < k_rows; ++k) {
    const auto& mask = m.masks[k];
    for (int c = 0; c < l_cols; ++c) {
      int label = m.column_labels[c];
      if (!std::binary_search(mask.begin(), mask.end(), label)) continue;
      Rational phase = (m.offsets[k] * Rational(label)).mod(modulus);
      m.matrix(k, c) = unit_phase(-phase.to_double() / static_cast<double>(modulus));
    }
  }
  return m;
}

Classification classify_system(const MaskedMatrix& m, double singular_scale) {
  Classification result;
  Eigen::JacobiSVD<ComplexMatrix> svd(m.matrix);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  result.sigma_min = smin;

  const int k = m.k_rows();
  const int l = m.l_cols();
  bool full_rank = smin > singular_scale * static_cast<double>(std::max(k, l)) * smax;

  if (k == l) {
    if (auto spec = m.exact_spec()) {
      result.exact_singular = exact_zero_det(*spec);
      if (*result.exact_singular) full_rank = false;
    }
  }

  if (!full_rank)
    result.verdict = SystemVerdict::neither;
  else if (k == l)
    result.verdict = SystemVerdict::riesz_basis;
  else if (k > l)
    result.verdict = SystemVerdict::frame_only;
  else
    result.verdict = SystemVerdict::riesz_sequence_only;

  if (result.verdict != SystemVerdict::neither)
    result.lower_bound = smin * smin / static_cast<double>(m.modulus);
  return result;
}

DualData dual_basis(const MaskedMatrix& m) {
  const int n = static_cast<int>(m.modulus);
  require(m.k_rows() == n && m.l_cols() == n, ErrorCode::unsupported,
          "unsupported-configuration: dual requires K = L = N");
  require(m.all_integer_offsets(), ErrorCode::unsupported,
          "unsupported-configuration: dual requires integer offsets");

  DualData dual;
  dual.z = invert(m.matrix);  // throws singular-matrix when not a Riesz basis
  dual.filter_g.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k < n; ++k) {
    auto& g = dual.filter_g[k];
    g.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      Rational phase = (m.offsets[k] * Rational(j)).mod(m.modulus);
      g[j] = unit_phase(-phase.to_double() / static_cast<double>(n)) * dual.z(j, k);
    }
  }
  return dual;
}

namespace {

// Integral of exp(2*pi*i*delta*t) over [j/N, (j+1)/N) for integer delta.
std::complex<double> cell_exponential_integral(int j, std::int64_t n, std::int64_t delta) {
  if (delta == 0) return {1.0 / static_cast<double>(n), 0.0};
  double d = static_cast<double>(delta);
  std::complex<double> hi = unit_phase(d * (j + 1) / static_cast<double>(n));
  std::complex<double> lo = unit_phase(d * j / static_cast<double>(n));
  return (hi - lo) / std::complex<double>(0.0, 2.0 * std::numbers::pi * d);
}

}  // namespace

double verify_biorthogonality(const MaskedMatrix& m, const DualData& dual, int trunc) {
  const int n = static_cast<int>(m.modulus);
  require(dual.z.rows() == n && dual.z.cols() == n &&
              static_cast<int>(dual.filter_g.size()) == n,
          ErrorCode::invalid_argument, "incompatible: dual does not match the system");
  require(m.k_rows() == n && m.all_integer_offsets(), ErrorCode::unsupported,
          "unsupported-configuration: biorthogonality requires the dual setting");
  require(trunc >= 0, ErrorCode::invalid_argument, "negative truncation");

  double defect = 0.0;
  for (int kp = 0; kp < n; ++kp) {      // dual channel
    for (int k = 0; k < n; ++k) {       // primal channel
      for (int mp = -trunc; mp <= trunc; ++mp) {
        for (int mm = -trunc; mm <= trunc; ++mm) {
          const std::int64_t lambda_dual = static_cast<std::int64_t>(n) * mp + m.offsets[kp].num();
          const std::int64_t lambda_primal = static_cast<std::int64_t>(n) * mm + m.offsets[k].num();
          const std::int64_t delta = lambda_dual - lambda_primal;
          std::complex<double> ip{0.0, 0.0};
          for (int j : m.masks[k])
            ip += dual.filter_g[kp][j] * cell_exponential_integral(j, n, delta);
          ip *= static_cast<double>(n);
          const double expected = (k == kp && mm == mp) ? 1.0 : 0.0;
          defect = std::max(defect, std::abs(ip - expected));
        }
      }
    }
  }
  return defect;
}

}  // namespace expbasis
