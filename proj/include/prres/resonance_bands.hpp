#pragma once

// Closed-form Pollicott-Ruelle resonances of the frame flow on line bundles,
// from Laplacian spectra on trace-free divergence-free symmetric tensors.

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prres/exact.hpp"
#include "prres/surd.hpp"

namespace prres::bands {

struct SpectrumEntry {
  Rational nu;
  unsigned multiplicity = 1;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Eigenvalues nu of the Laplacian on rank-k tensors, per rank k.
struct SpectrumTable {
  std::string manifold;
  std::string provenance;
  std::map<unsigned, std::vector<SpectrumEntry>> ranks;

  /// Entries at `rank`; throws IncompleteSpectrumError when absent.
  const std::vector<SpectrumEntry>& at_rank(unsigned rank) const;
  bool has_rank(unsigned rank) const { return ranks.contains(rank); }

  /// Sorts each rank by nu and merges repeated values (summing multiplicities).
  void normalize();

  /// Structural checks plus the admissibility bounds: nu >= 0 everywhere,
  /// nu >= k + 1 on ranks k >= 1, and (when `closed_manifold`) nu = 0 present
  /// at rank 0. Throws InputError naming the first violation.
  void validate(bool closed_manifold = true) const;

  /// Same checks, returning the message instead of throwing.
  std::optional<std::string> admissibility_violation(bool closed_manifold = true) const;
};

/// {"manifold": ..., "spectra": {"0": [[nu, mult], ...], ...}}. nu may be a
/// JSON number (read exactly from its shortest decimal form) or a string
/// such as "3/4". Throws InputError on schema violations.
SpectrumTable spectrum_from_json(const nlohmann::json& j);
SpectrumTable load_spectrum(const std::string& path);
nlohmann::json spectrum_to_json(const SpectrumTable& s);

struct Resonance {
  Surd lambda;
  unsigned band = 0;  // m
  int bundle = 0;     // n
  unsigned k = 0;     // source index, rank |n + m - 2k|
  unsigned rank = 0;
  Rational nu;
  bool excluded = false;  // lambda in -1 - (1/2) N_0

  friend bool operator==(const Resonance&, const Resonance&) = default;
};

/// True iff z lies in -1 - (1/2) N_0 = {-1, -3/2, -2, ...}.
bool in_exclusion_ray(const Surd& z);

/// -lambda (lambda + 2) + n.
std::complex<double> mu_n(std::complex<double> lambda, int n);
GaussRational mu_n(const GaussRational& lambda, int n);

/// sqrt(1 - nu) - 1 over nu < 1, sorted descending.
std::vector<Surd> first_band_poles(const std::vector<Rational>& spectrum0);

struct BandQuery {
  int n = 0;
  unsigned m = 0;
  std::optional<double> re_min;
  std::optional<double> re_max;
  std::optional<double> im_cutoff;  // keep |Im lambda| <= cutoff
};

enum class BandCase {
  /// n + m odd, or n + m even with |n| > m: all ranks >= 1.
  VerticalLineOnly,
  /// n + m even and |n| <= m: rank 0 contributes.
  WithRankZero,
};

struct BandSet {
  BandCase band_case = BandCase::VerticalLineOnly;
  std::vector<Resonance> resonances;
};

/// Tensor ranks |n + m - 2k|, k = 0..m, needed for the query.
std::set<unsigned> required_ranks(int n, unsigned m);

/// All lambda = -1 - m +- sqrt(|n+m-2k| + 1 - nu) for k = 0..m and nu at rank
/// |n+m-2k|, both branches, excluded flags set, filtered by the query window.
/// The set is the union over the bundles +n and -n.
BandSet band_set(const BandQuery& query, const SpectrumTable& spectrum);

/// Orders by Re desc, Im asc, then n, m, k.
void sort_resonances(std::vector<Resonance>& rs);

struct GapViolation {
  int n;
  unsigned m;
  unsigned k;
  Rational nu;
  Surd lambda;
};

struct GapReport {
  bool pass = true;
  std::optional<GapViolation> witness;
  /// Resonances with Re > -1 (all at n = 0, m = 0 when the check passes).
  std::vector<Resonance> above_line;
};

/// Over |n| <= n_max, m <= m_max: the only non-excluded resonances with
/// Re > -1 sit at n = m = 0, come from nu < 1 at rank 0 and equal -1 + sqrt(1 - nu).
GapReport gap_check(const SpectrumTable& spectrum, unsigned n_max, unsigned m_max);

/// (-n + [-2a, -a-1]) u (n + [-2b, -b-1]), integers.
std::set<long> exclusion_set(unsigned a, unsigned b, int n);
/// Union of exclusion_set(a, b, n) over a + b = m.
std::set<long> exclusion_set_m(unsigned m, int n);

/// Distinct values of band_set(n, m) outside exclusion_set_m(m, n), and of the
/// union over a + b = m of band_set(n + a - b, 0) shifted by -m, outside the
/// same set. The two routes agree when the band shift holds.
struct BandShiftComparison {
  std::set<Surd> direct;
  std::set<Surd> shifted;
  bool equal() const { return direct == shifted; }
};
BandShiftComparison band_shift_compare(int n, unsigned m, const SpectrumTable& spectrum);

struct MixingPrediction {
  std::vector<Surd> exponents;  // first-band poles, lambda_0 = 0 first
  double remainder_rate = 0.0;  // -beta
  double predicted_rate = 0.0;  // max(lambda_1, -beta)
};

/// Throws InputError unless 0 < beta < 1.
MixingPrediction mixing_terms(const std::vector<Rational>& spectrum0, double beta);

nlohmann::json resonance_to_json(const Resonance& r);
nlohmann::json resonances_to_json(const std::vector<Resonance>& rs);

}  // namespace prres::bands
