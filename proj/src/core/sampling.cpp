#include "core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/errors.hpp"

namespace expbasis {

namespace {

using cdouble = std::complex<double>;

// exp(2*pi*i * num/den) with exact phase reduction.
cdouble unit_turns(std::int64_t num, std::int64_t den) {
  num %= den;
  if (num < 0) num += den;
  double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

// Integral of exp(2*pi*i*mu*w) over [a_num/den, b_num/den] for integer mu.
cdouble exp_integral(std::int64_t mu, std::int64_t a_num, std::int64_t b_num, std::int64_t den) {
  if (mu == 0)
    return {static_cast<double>(b_num - a_num) / static_cast<double>(den), 0.0};
  cdouble hi = unit_turns(mu * b_num, den);
  cdouble lo = unit_turns(mu * a_num, den);
  return (hi - lo) / cdouble(0.0, 2.0 * std::numbers::pi * static_cast<double>(mu));
}

// Iterative radix-2 FFT; inverse applies 1/P scaling.
void fft_pow2(std::vector<cdouble>& a, bool inverse) {
  const std::size_t p = a.size();
  for (std::size_t i = 1, j = 0; i < p; ++i) {
    std::size_t bit = p >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= p; len <<= 1) {
    double angle = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    cdouble step(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < p; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        cdouble u = a[i + j];
        cdouble v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= step;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(p);
}

std::size_t next_pow2(std::size_t value) {
  std::size_t p = 1;
  while (p < value) p <<= 1;
  return p;
}

// Coefficient table of an expansion sum_t exp(2*pi*i*lambda_t*w) * h_t(w)
// over the truncation lattice lambda = -N*M .. N*M + N - 1, where each h_t is
// piecewise constant on the N shifted cells.
struct LatticeExpansion {
  std::int64_t n = 1;
  int mtrunc = 0;
  // h[t * n + j]: cell-j constant of the lambda_t component
  std::vector<cdouble> h;

  std::int64_t lambda_min() const { return -n * mtrunc; }
  std::int64_t size() const { return n * (2 * static_cast<std::int64_t>(mtrunc) + 1); }
  cdouble& at(std::int64_t t, int j) { return h[static_cast<std::size_t>(t * n + j)]; }
  const cdouble& at(std::int64_t t, int j) const {
    return h[static_cast<std::size_t>(t * n + j)];
  }
};

std::vector<int> inverse_permutation(const std::vector<int>& rho) {
  std::vector<int> inv(rho.size(), 0);
  for (std::size_t k = 0; k < rho.size(); ++k) inv[static_cast<std::size_t>(rho[k])] = static_cast<int>(k);
  return inv;
}

LatticeExpansion expansion_from_samples(const ChannelSamples& samples, const FilterBank& bank,
                                        int mtrunc) {
  const std::int64_t n = bank.n;
  LatticeExpansion ex;
  ex.n = n;
  ex.mtrunc = mtrunc;
  ex.h.assign(static_cast<std::size_t>(ex.size() * n), cdouble(0, 0));
  auto inv = inverse_permutation(bank.rho);
  for (std::int64_t t = 0; t < ex.size(); ++t) {
    const std::int64_t lambda = ex.lambda_min() + t;
    std::int64_t residue = lambda % n;
    if (residue < 0) residue += n;
    const int k = inv[static_cast<std::size_t>(residue)];
    const std::int64_t m = (static_cast<std::int64_t>(bank.rho[k]) - lambda) / n;
    const cdouble coeff = samples[static_cast<std::size_t>(k)]
                                 [static_cast<std::size_t>(m + mtrunc)] *
                          static_cast<double>(n);
    for (int j = 0; j < n; ++j) ex.at(t, j) += coeff * bank.g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  }
  return ex;
}

// || sum_t exp(2*pi*i*lambda_t w) h_t(w) ||^2 via per-cell autocorrelation
// over the frequency lattice. Exact kernel integrals; FFT only for the
// correlation sums.
double lattice_norm_sq(const LatticeExpansion& ex) {
  const std::int64_t n = ex.n;
  const std::int64_t total = ex.size();
  const std::size_t p = next_pow2(static_cast<std::size_t>(2 * total));
  double norm_sq = 0.0;
  std::vector<cdouble> buf;
  for (int j = 0; j < n; ++j) {
    buf.assign(p, cdouble(0, 0));
    for (std::int64_t t = 0; t < total; ++t) buf[static_cast<std::size_t>(t)] = ex.at(t, j);
    fft_pow2(buf, false);
    for (auto& x : buf) x = cdouble(std::norm(x), 0.0);
    fft_pow2(buf, true);
    // buf[d] now holds sum_t h_t conj(h_{t-d}) for d >= 0
    norm_sq += buf[0].real() / static_cast<double>(n);
    for (std::int64_t d = 1; d < total; ++d) {
      if (d % n == 0) continue;  // cell integrals vanish on multiples of N
      // integral over cell j: endpoints (2j - n)/(2n), (2j + 2 - n)/(2n)
      cdouble kernel = exp_integral(d, 2 * j - n, 2 * j + 2 - n, 2 * n);
      cdouble corr = buf[static_cast<std::size_t>(d)];
      norm_sq += 2.0 * (kernel * corr).real();
    }
  }
  return norm_sq;
}

void validate_bank(const FilterBank& bank) {
  const std::int64_t n = bank.n;
  require(n >= 1, ErrorCode::invalid_argument, "bank modulus must be positive");
  require(static_cast<std::int64_t>(bank.rho.size()) == n &&
              static_cast<std::int64_t>(bank.masks.size()) == n &&
              static_cast<std::int64_t>(bank.g.size()) == n,
          ErrorCode::invalid_argument, "incompatible: malformed filter bank");
}

}  // namespace

double SpectrumFunction::l2_norm() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return std::sqrt(sum / static_cast<double>(subcells()));
}

SpectrumFunction random_spectrum(std::int64_t n, int refine, std::uint64_t seed) {
  require(n >= 1 && refine >= 1, ErrorCode::invalid_argument, "bad spectrum grid");
  SpectrumFunction f;
  f.n = n;
  f.refine = refine;
  std::mt19937_64 rng(seed);
  auto draw = [&]() { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  for (int s = 0; s < f.subcells(); ++s) {
    double re = draw();
    double im = draw();
    f.values.emplace_back(re, im);
  }
  return f;
}

FilterBank build_filters(std::int64_t n, const std::vector<std::vector<int>>& masks,
                         const std::optional<std::vector<int>>& rho) {
  require(n >= 1, ErrorCode::invalid_argument, "modulus must be positive");
  require(static_cast<std::int64_t>(masks.size()) == n, ErrorCode::invalid_argument,
          "invalid-configuration: need one mask per channel");
  for (int k = 0; k < n; ++k) {
    bool own = std::find(masks[static_cast<std::size_t>(k)].begin(),
                         masks[static_cast<std::size_t>(k)].end(), k) !=
               masks[static_cast<std::size_t>(k)].end();
    require(own, ErrorCode::invalid_argument,
            "invalid-configuration: channel mask must contain its own cell");
  }

  FilterBank bank;
  bank.n = n;
  bank.masks = masks;
  if (rho) {
    require(static_cast<std::int64_t>(rho->size()) == n, ErrorCode::invalid_argument,
            "invalid-configuration: permutation size mismatch");
    PermutationAssignment::from_map(*rho);  // validates bijection
    bank.rho = *rho;
  } else {
    std::vector<int> cells;
    for (int c = 0; c < n; ++c) cells.push_back(c);
    Theorem1Result built = theorem1_construct(n, cells, masks);
    for (int k = 0; k < n; ++k)
      bank.rho.push_back((built.rho.map[static_cast<std::size_t>(k)] + 1) % static_cast<int>(n));
  }

  std::vector<Rational> offsets;
  for (int r : bank.rho) offsets.emplace_back(r);
  MaskedMatrix matrix = build_masked_matrix(n, offsets, masks);
  Classification cls = classify_system(matrix);
  require(cls.verdict == SystemVerdict::riesz_basis, ErrorCode::invalid_argument,
          "invalid-configuration: assignment does not induce a Riesz basis");

  ComplexMatrix z = invert(matrix.matrix);
  bank.g.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k < n; ++k) {
    auto& g = bank.g[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j)
      g.push_back(unit_turns(-static_cast<std::int64_t>(bank.rho[static_cast<std::size_t>(k)]) * j, n) *
                  z(j, k));
  }
  return bank;
}

ChannelSamples generalized_samples(const SpectrumFunction& fhat, const FilterBank& bank,
                                   int mtrunc) {
  validate_bank(bank);
  require(fhat.n == bank.n, ErrorCode::invalid_argument, "incompatible: grid mismatch");
  require(mtrunc >= 1, ErrorCode::invalid_argument, "truncation must be >= 1");
  const std::int64_t n = bank.n;
  const std::int64_t sub = fhat.subcells();
  const std::int64_t den = 2 * sub;  // subcell s = [(2s - sub)/(2 sub), (2s + 2 - sub)/(2 sub))

  ChannelSamples samples(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& row = samples[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(2 * mtrunc + 1), cdouble(0, 0));
    for (int shift = -mtrunc; shift <= mtrunc; ++shift) {
      // sample(k, m) integrates fhat against exp(2*pi*i*(N*m - rho(k))*w)
      const std::int64_t mu = n * shift - bank.rho[static_cast<std::size_t>(k)];
      cdouble acc(0, 0);
      for (int cell : bank.masks[static_cast<std::size_t>(k)]) {
        for (std::int64_t s = static_cast<std::int64_t>(cell) * fhat.refine;
             s < static_cast<std::int64_t>(cell + 1) * fhat.refine; ++s) {
          const cdouble v = fhat.values[static_cast<std::size_t>(s)];
          if (v == cdouble(0, 0)) continue;
          acc += v * exp_integral(mu, 2 * s - sub, 2 * s + 2 - sub, den);
        }
      }
      row[static_cast<std::size_t>(shift + mtrunc)] = acc;
    }
  }
  return samples;
}

ReconstructionResult reconstruct(const ChannelSamples& samples, const FilterBank& bank,
                                 int mtrunc, const std::optional<SpectrumFunction>& reference,
                                 int refine_out) {
  validate_bank(bank);
  require(mtrunc >= 1, ErrorCode::invalid_argument, "truncation must be >= 1");
  require(refine_out >= 1, ErrorCode::invalid_argument, "bad output refinement");
  const std::int64_t n = bank.n;
  require(static_cast<std::int64_t>(samples.size()) == n, ErrorCode::invalid_argument,
          "incompatible: channel count mismatch");
  for (const auto& row : samples)
    require(static_cast<int>(row.size()) == 2 * mtrunc + 1, ErrorCode::invalid_argument,
            "incompatible: samples were produced for a different truncation");
  if (reference)
    require(reference->n == n, ErrorCode::invalid_argument, "incompatible: grid mismatch");

  LatticeExpansion ex = expansion_from_samples(samples, bank, mtrunc);

  ReconstructionResult result;
  result.projection.n = n;
  result.projection.refine = refine_out;
  const std::int64_t sub = n * refine_out;
  const std::int64_t den = 2 * sub;
  result.projection.values.assign(static_cast<std::size_t>(sub), cdouble(0, 0));
  for (std::int64_t s = 0; s < sub; ++s) {
    const int cell = static_cast<int>(s / refine_out);
    cdouble acc(0, 0);
    for (std::int64_t t = 0; t < ex.size(); ++t) {
      const cdouble h = ex.at(t, cell);
      if (h == cdouble(0, 0)) continue;
      acc += h * exp_integral(ex.lambda_min() + t, 2 * s - sub, 2 * s + 2 - sub, den);
    }
    result.projection.values[static_cast<std::size_t>(s)] =
        acc * static_cast<double>(sub);  // cell average
  }

  if (reference) {
    const double rec_norm_sq = lattice_norm_sq(ex);
    const std::int64_t rsub = reference->subcells();
    const std::int64_t rden = 2 * rsub;
    cdouble inner(0, 0);  // <rec, ref>
    for (std::int64_t s = 0; s < rsub; ++s) {
      const cdouble v = reference->values[static_cast<std::size_t>(s)];
      if (v == cdouble(0, 0)) continue;
      const int cell = static_cast<int>(s / reference->refine);
      cdouble cell_acc(0, 0);
      for (std::int64_t t = 0; t < ex.size(); ++t) {
        const cdouble h = ex.at(t, cell);
        if (h == cdouble(0, 0)) continue;
        cell_acc += h * exp_integral(ex.lambda_min() + t, 2 * s - rsub, 2 * s + 2 - rsub, rden);
      }
      inner += cell_acc * std::conj(v);
    }
    const double ref_norm = reference->l2_norm();
    double err_sq = rec_norm_sq - 2.0 * inner.real() + ref_norm * ref_norm;
    result.error_abs = std::sqrt(std::max(0.0, err_sq));
    result.error_rel = ref_norm > 0 ? *result.error_abs / ref_norm : *result.error_abs;
  }
  return result;
}

double reconstruction_error_vs_coeffs(const ChannelSamples& samples, const FilterBank& bank,
                                      int mtrunc,
                                      const std::vector<std::complex<double>>& coeffs,
                                      std::int64_t lo) {
  validate_bank(bank);
  LatticeExpansion ex = expansion_from_samples(samples, bank, mtrunc);
  double poly_norm_sq = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::int64_t lambda = lo + static_cast<std::int64_t>(i);
    const std::int64_t t = lambda - ex.lambda_min();
    require(t >= 0 && t < ex.size(), ErrorCode::invalid_argument,
            "incompatible: reference frequency outside the truncation span");
    for (int j = 0; j < ex.n; ++j) ex.at(t, j) -= coeffs[i];
    poly_norm_sq += std::norm(coeffs[i]);
  }
  const double err = std::sqrt(std::max(0.0, lattice_norm_sq(ex)));
  const double ref = std::sqrt(poly_norm_sq);
  return ref > 0 ? err / ref : err;
}

ChannelSamples trig_poly_samples(const std::vector<std::complex<double>>& coeffs,
                                 std::int64_t lo, const FilterBank& bank, int mtrunc) {
  validate_bank(bank);
  const std::int64_t n = bank.n;
  ChannelSamples samples(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& row = samples[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(2 * mtrunc + 1), cdouble(0, 0));
    for (int shift = -mtrunc; shift <= mtrunc; ++shift) {
      const std::int64_t lambda =
          -static_cast<std::int64_t>(n) * shift + bank.rho[static_cast<std::size_t>(k)];
      cdouble acc(0, 0);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::int64_t delta = lo + static_cast<std::int64_t>(i) - lambda;
        for (int cell : bank.masks[static_cast<std::size_t>(k)])
          acc += coeffs[i] * exp_integral(delta, 2 * cell - n, 2 * cell + 2 - n, 2 * n);
      }
      row[static_cast<std::size_t>(shift + mtrunc)] = acc;
    }
  }
  return samples;
}

std::string spectrum_to_csv(const SpectrumFunction& fhat) {
  std::ostringstream out;
  out << "subcell,real,imag\n";
  out.precision(17);
  for (std::size_t s = 0; s < fhat.values.size(); ++s)
    out << s << "," << fhat.values[s].real() << "," << fhat.values[s].imag() << "\n";
  return out.str();
}

SpectrumFunction spectrum_from_csv(const std::string& text, std::int64_t n) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<long, cdouble>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])))) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    require(std::getline(ls, a, ',') && std::getline(ls, b, ',') && std::getline(ls, c),
            ErrorCode::parse, "spectrum rows must be subcell,real,imag");
    try {
      rows.emplace_back(std::stol(a), cdouble(std::stod(b), std::stod(c)));
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "malformed spectrum row: " + line);
    }
  }
  require(!rows.empty(), ErrorCode::parse, "empty spectrum file");
  require(static_cast<std::int64_t>(rows.size()) % n == 0, ErrorCode::parse,
          "subcell count must be a multiple of N");
  SpectrumFunction f;
  f.n = n;
  f.refine = static_cast<int>(static_cast<std::int64_t>(rows.size()) / n);
  f.values.assign(rows.size(), cdouble(0, 0));
  for (const auto& [index, value] : rows) {
    require(index >= 0 && index < static_cast<long>(rows.size()), ErrorCode::parse,
            "subcell index out of range");
    f.values[static_cast<std::size_t>(index)] = value;
  }
  return f;
}

}  // namespace expbasis
