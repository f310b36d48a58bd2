#include "prres/resonance_bands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "prres/errors.hpp"

namespace prres::bands {

using nlohmann::json;

bool in_exclusion_ray(const Surd& z) {
  if (!z.is_rational()) return false;
  const Rational w = Rational(-2) * (z.offset() + 1);
  return sgn(w) >= 0 && w.get_den() == 1;
}

std::complex<double> mu_n(std::complex<double> lambda, int n) {
  return -lambda * (lambda + 2.0) + static_cast<double>(n);
}

GaussRational mu_n(const GaussRational& lambda, int n) {
  return -(lambda * (lambda + GaussRational(2))) + GaussRational(n);
}

std::vector<Surd> first_band_poles(const std::vector<Rational>& spectrum0) {
  std::vector<Surd> poles;
  for (const auto& nu : spectrum0) {
    if (sgn(nu) < 0) throw InputError("first_band_poles: negative eigenvalue " + nu.get_str());
    if (nu >= 1) continue;
    poles.emplace_back(Rational(-1), 1, Rational(1 - nu));
  }
  std::sort(poles.begin(), poles.end(), [](const Surd& a, const Surd& b) { return Surd::compare_real(a, b) > 0; });
  return poles;
}

std::set<unsigned> required_ranks(int n, unsigned m) {
  std::set<unsigned> ranks;
  for (unsigned k = 0; k <= m; ++k)
    ranks.insert(static_cast<unsigned>(std::abs(n + static_cast<int>(m) - 2 * static_cast<int>(k))));
  return ranks;
}

void sort_resonances(std::vector<Resonance>& rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const Resonance& a, const Resonance& b) {
    if (int c = Surd::compare_real(a.lambda, b.lambda); c != 0) return c > 0;
    if (int c = Surd::compare_imag(a.lambda, b.lambda); c != 0) return c < 0;
    if (a.bundle != b.bundle) return a.bundle < b.bundle;
    if (a.band != b.band) return a.band < b.band;
    return a.k < b.k;
  });
}

BandSet band_set(const BandQuery& query, const SpectrumTable& spectrum) {
  if (query.re_min && query.re_max && *query.re_min > *query.re_max)
    throw InputError("band_set: window lower bound exceeds upper bound");
  // Fail on the first missing rank before producing anything.
  for (unsigned rank : required_ranks(query.n, query.m)) (void)spectrum.at_rank(rank);

  const int m = static_cast<int>(query.m);
  BandSet out;
  out.band_case = ((query.n + m) % 2 != 0 || std::abs(query.n) > m) ? BandCase::VerticalLineOnly
                                                                    : BandCase::WithRankZero;
  const Rational centre(-1 - m);
  for (unsigned k = 0; k <= query.m; ++k) {
    const auto rank = static_cast<unsigned>(std::abs(query.n + m - 2 * static_cast<int>(k)));
    for (const auto& entry : spectrum.at_rank(rank)) {
      const Rational radicand = Rational(rank + 1) - entry.nu;
      for (int sign : {1, -1}) {
        Resonance r{Surd(centre, sign, radicand), query.m, query.n, k, rank, entry.nu, false};
        r.excluded = in_exclusion_ray(r.lambda);
        const auto z = r.lambda.to_complex();
        if (query.re_min && z.real() < *query.re_min) continue;
        if (query.re_max && z.real() > *query.re_max) continue;
        if (query.im_cutoff && std::abs(z.imag()) > *query.im_cutoff) continue;
        out.resonances.push_back(std::move(r));
      }
    }
  }
  sort_resonances(out.resonances);
  return out;
}

GapReport gap_check(const SpectrumTable& spectrum, unsigned n_max, unsigned m_max) {
  GapReport report;
  const Surd line(Rational(-1));
  std::vector<int> bundles{0};
  for (int n = 1; n <= static_cast<int>(n_max); ++n) {
    bundles.push_back(n);
    bundles.push_back(-n);
  }
  for (int n : bundles) {
    for (unsigned m = 0; m <= m_max; ++m) {
      for (const auto& r : band_set({n, m, {}, {}, {}}, spectrum).resonances) {
        if (r.excluded || Surd::compare_real(r.lambda, line) <= 0) continue;
        const bool allowed = n == 0 && m == 0 && r.rank == 0 && r.nu < 1 &&
                             r.lambda == Surd(Rational(-1), 1, Rational(1 - r.nu));
        if (allowed) {
          report.above_line.push_back(r);
        } else if (report.pass) {
          report.pass = false;
          report.witness = GapViolation{n, m, r.k, r.nu, r.lambda};
        }
      }
    }
  }
  sort_resonances(report.above_line);
  return report;
}

std::set<long> exclusion_set(unsigned a, unsigned b, int n) {
  std::set<long> out;
  const long al = static_cast<long>(a);
  const long bl = static_cast<long>(b);
  for (long x = -2 * al; x <= -al - 1; ++x) out.insert(-n + x);
  for (long x = -2 * bl; x <= -bl - 1; ++x) out.insert(n + x);
  return out;
}

std::set<long> exclusion_set_m(unsigned m, int n) {
  std::set<long> out;
  for (unsigned a = 0; a <= m; ++a) {
    auto part = exclusion_set(a, m - a, n);
    out.insert(part.begin(), part.end());
  }
  return out;
}

BandShiftComparison band_shift_compare(int n, unsigned m, const SpectrumTable& spectrum) {
  const auto excluded = exclusion_set_m(m, n);
  auto outside = [&excluded](const Surd& z) {
    if (!z.is_rational() || z.offset().get_den() != 1) return true;
    return !excluded.contains(z.offset().get_num().get_si());
  };
  BandShiftComparison cmp;
  for (const auto& r : band_set({n, m, {}, {}, {}}, spectrum).resonances)
    if (outside(r.lambda)) cmp.direct.insert(r.lambda);
  const Rational shift(static_cast<long>(m));
  for (unsigned a = 0; a <= m; ++a) {
    const int bundle = n + static_cast<int>(a) - static_cast<int>(m - a);
    for (const auto& r : band_set({bundle, 0, {}, {}, {}}, spectrum).resonances) {
      const Surd z = r.lambda - shift;
      if (outside(z)) cmp.shifted.insert(z);
    }
  }
  return cmp;
}

MixingPrediction mixing_terms(const std::vector<Rational>& spectrum0, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("mixing_terms: beta must lie in (0, 1)");
  MixingPrediction out;
  out.exponents = first_band_poles(spectrum0);
  out.remainder_rate = -beta;
  out.predicted_rate = -beta;
  for (const auto& z : out.exponents) {
    if (z == Surd(Rational(0))) continue;
    out.predicted_rate = std::max(z.to_complex().real(), -beta);
    break;
  }
  return out;
}

json resonance_to_json(const Resonance& r) {
  const auto z = r.lambda.to_complex();
  return json{{"re", z.real()},          {"im", z.imag()},       {"band", r.band},
              {"n", r.bundle},           {"k", r.k},             {"nu", r.nu.get_d()},
              {"excluded", r.excluded},  {"exact", r.lambda.str()}};
}

json resonances_to_json(const std::vector<Resonance>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(resonance_to_json(r));
  return out;
}

}  // namespace prres::bands
