#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/permsearch.hpp"

namespace expbasis {

// Piecewise-constant spectrum on the refine*N subcells of [-1/2, 1/2).
struct SpectrumFunction {
  std::int64_t n = 1;
  int refine = 1;
  std::vector<std::complex<double>> values;

  int subcells() const { return static_cast<int>(n) * refine; }
  double l2_norm() const;
};

SpectrumFunction random_spectrum(std::int64_t n, int refine, std::uint64_t seed);

// Bandpass reconstruction filters G_k, piecewise constant on the N shifted
// cells -1/2 + [j/N, (j+1)/N), built from the inverse masked matrix of a
// frequency assignment rho on Z_N.
struct FilterBank {
  std::int64_t n = 1;
  std::vector<int> rho;                                 // bijection on Z_N
  std::vector<std::vector<int>> masks;                  // channel supports S_k
  std::vector<std::vector<std::complex<double>>> g;     // per channel: N constants
};

// Masks must contain their own cell (Theorem-1 hypotheses on the shifted
// grid); when rho is absent a feasible permutation is searched.
FilterBank build_filters(std::int64_t n, const std::vector<std::vector<int>>& masks,
                         const std::optional<std::vector<int>>& rho);

// samples[k][i] = integral of fhat * chi_{S_k} * exp(2*pi*i*(N*(i-mtrunc)-rho(k))*w),
// i.e. the generalized sample f * phi_{S_k}(N*m - rho(k)) for m = i - mtrunc.
// Exact closed-form integration.
using ChannelSamples = std::vector<std::vector<std::complex<double>>>;

ChannelSamples generalized_samples(const SpectrumFunction& fhat, const FilterBank& bank,
                                   int mtrunc);

struct ReconstructionResult {
  SpectrumFunction projection;  // L2 projection of the reconstruction onto the grid
  std::optional<double> error_abs;
  std::optional<double> error_rel;
};

// Partial-sum reconstruction in the frequency domain. The reported error is
// the exact L2 distance between the reconstruction (which is not piecewise
// constant) and the reference spectrum; the returned spectrum is the grid
// projection at refine_out.
ReconstructionResult reconstruct(const ChannelSamples& samples, const FilterBank& bank,
                                 int mtrunc, const std::optional<SpectrumFunction>& reference,
                                 int refine_out);

// Exact relative L2 error of the reconstruction against a trigonometric
// polynomial sum_l coeffs[l] * exp(2*pi*i*(lo+l)*w); every frequency must lie
// in the truncation span of the bank.
double reconstruction_error_vs_coeffs(const ChannelSamples& samples, const FilterBank& bank,
                                      int mtrunc,
                                      const std::vector<std::complex<double>>& coeffs,
                                      std::int64_t lo);

// Exact inner products of the trig polynomial against the primal system,
// arranged as channel samples (used to feed reconstruct for in-span tests).
ChannelSamples trig_poly_samples(const std::vector<std::complex<double>>& coeffs,
                                 std::int64_t lo, const FilterBank& bank, int mtrunc);

std::string spectrum_to_csv(const SpectrumFunction& fhat);
SpectrumFunction spectrum_from_csv(const std::string& text, std::int64_t n);

}  // namespace expbasis
