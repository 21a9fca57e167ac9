#include "core/rootunity.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace expbasis {

RootOfUnitySpec RootOfUnitySpec::make(std::int64_t order, int rows, int cols) {
  require(order >= 1, ErrorCode::invalid_argument, "root-of-unity order must be positive");
  require(rows >= 1 && cols >= 1, ErrorCode::invalid_argument, "empty root-of-unity spec");
  RootOfUnitySpec spec;
  spec.order = order;
  spec.rows = rows;
  spec.cols = cols;
  spec.exponents.assign(static_cast<std::size_t>(rows) * cols, std::nullopt);
  return spec;
}

void RootOfUnitySpec::set(int r, int c, std::int64_t exponent) {
  std::int64_t e = exponent % order;
  if (e < 0) e += order;
  at(r, c) = e;
}

ComplexMatrix RootOfUnitySpec::materialize() const {
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (auto e = at(r, c)) {
        double angle = -2.0 * std::numbers::pi * static_cast<double>(*e) / static_cast<double>(order);
        m(r, c) = std::complex<double>(std::cos(angle), std::sin(angle));
      }
  return m;
}

namespace {

using Poly = std::vector<std::int64_t>;  // ascending coefficients

// Exact division p / q for monic q, used to build cyclotomic polynomials.
Poly divide_monic(const Poly& p, const Poly& q) {
  Poly rem = p;
  Poly quot(p.size() - q.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    std::int64_t c = rem[i + q.size() - 1];
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) rem[i + j] -= c * q[j];
  }
  for (std::int64_t c : rem)
    require(c == 0, ErrorCode::internal, "inexact cyclotomic division");
  return quot;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1, ErrorCode::invalid_argument, "cyclotomic order must be positive");
  std::vector<Poly> phi(static_cast<std::size_t>(n) + 1);
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Poly p(static_cast<std::size_t>(d) + 1, 0);  // x^d - 1
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    for (std::int64_t e = 1; e < d; ++e)
      if (d % e == 0) p = divide_monic(p, phi[static_cast<std::size_t>(e)]);
    phi[static_cast<std::size_t>(d)] = std::move(p);
  }
  return phi[static_cast<std::size_t>(n)];
}

nlohmann::json root_of_unity_to_json(const RootOfUnitySpec& spec) {
  nlohmann::json doc;
  doc["order"] = spec.order;
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < spec.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < spec.cols; ++c) {
      const auto& e = spec.at(r, c);
      row.push_back(e ? nlohmann::json(*e) : nlohmann::json());
    }
    rows.push_back(row);
  }
  doc["exponents"] = rows;
  return doc;
}

RootOfUnitySpec root_of_unity_from_json(const nlohmann::json& doc) {
  const auto& rows = doc.at("exponents");
  require(!rows.empty() && !rows[0].empty(), ErrorCode::parse, "empty exponent table");
  auto spec = RootOfUnitySpec::make(doc.at("order").get<std::int64_t>(),
                                    static_cast<int>(rows.size()),
                                    static_cast<int>(rows[0].size()));
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c)
      if (!rows[r][c].is_null()) spec.set(r, c, rows[r][c].get<std::int64_t>());
  return spec;
}

bool exact_zero_det(const RootOfUnitySpec& spec) {
  require(spec.rows == spec.cols, ErrorCode::shape, "exact_zero_det requires a square spec");
  const int k = spec.rows;
  const std::int64_t n = spec.order;
  require(k <= 16, ErrorCode::size_limit, "exact_zero_det limited to K <= 16");
  require(n <= 64, ErrorCode::size_limit, "exact_zero_det limited to order <= 64");

  // Determinant as an element of Z[x]/(x^N - 1) by Laplace expansion over
  // column subsets: minor[S] is the signed determinant of the first
  // popcount(S) rows on columns S. Coefficients are bounded by K! and fit
  // in 64 bits for K <= 16.
  const std::size_t words = static_cast<std::size_t>(n);
  const std::uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1u);
  std::vector<std::vector<std::int64_t>> minor(static_cast<std::size_t>(1) << k);
  minor[0] = std::vector<std::int64_t>(words, 0);
  minor[0][0] = 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int row = std::popcount(s) - 1;
    std::vector<std::int64_t> acc(words, 0);
    int position = 0;  // index of column j within s, for the cofactor sign
    for (std::uint32_t bits = s; bits != 0; bits &= bits - 1, ++position) {
      const int j = std::countr_zero(bits);
      const auto& entry = spec.at(row, j);
      if (!entry) continue;
      const auto& sub = minor[s & ~(1u << j)];
      const int sign = ((row + position) % 2 == 0) ? 1 : -1;
      const std::int64_t shift = *entry;
      for (std::size_t t = 0; t < words; ++t) {
        if (sub[t] == 0) continue;
        std::size_t u = t + static_cast<std::size_t>(shift);
        if (u >= words) u -= words;
        acc[u] += sign * sub[t];
      }
    }
    minor[s] = std::move(acc);
  }
  const std::vector<std::int64_t>& det_poly = minor[full];

  // Reduce modulo the N-th cyclotomic polynomial; det vanishes in Q(omega)
  // iff the remainder is identically zero.
  Poly phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  std::vector<__int128> rem(det_poly.begin(), det_poly.end());
  for (std::size_t i = rem.size(); i-- > deg;) {
    __int128 c = rem[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j < phi.size(); ++j) rem[i - deg + j] -= c * phi[j];
  }
  for (std::size_t i = 0; i < deg; ++i)
    if (rem[i] != 0) return false;
  return true;
}

}  // namespace expbasis
