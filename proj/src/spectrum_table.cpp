#include <algorithm>
#include <charconv>
#include <fstream>

#include "prres/errors.hpp"
#include "prres/resonance_bands.hpp"

namespace prres::bands {

using nlohmann::json;

const std::vector<SpectrumEntry>& SpectrumTable::at_rank(unsigned rank) const {
  auto it = ranks.find(rank);
  if (it == ranks.end()) throw IncompleteSpectrumError(static_cast<int>(rank));
  return it->second;
}

void SpectrumTable::normalize() {
  for (auto& [rank, entries] : ranks) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.nu < b.nu; });
    std::vector<SpectrumEntry> merged;
    for (const auto& e : entries) {
      if (!merged.empty() && merged.back().nu == e.nu) {
        merged.back().multiplicity += e.multiplicity;
      } else {
        merged.push_back(e);
      }
    }
    entries = std::move(merged);
  }
}

std::optional<std::string> SpectrumTable::admissibility_violation(bool closed_manifold) const {
  for (const auto& [rank, entries] : ranks) {
    for (const auto& e : entries) {
      if (e.multiplicity == 0) return "rank " + std::to_string(rank) + ": multiplicity must be positive";
      if (sgn(e.nu) < 0) return "rank " + std::to_string(rank) + ": negative eigenvalue " + e.nu.get_str();
      if (rank >= 1 && e.nu < Rational(rank + 1))
        return "rank " + std::to_string(rank) + ": eigenvalue " + e.nu.get_str() + " below the bound " +
               std::to_string(rank + 1);
    }
  }
  if (closed_manifold) {
    auto it = ranks.find(0);
    if (it == ranks.end() || it->second.empty()) return std::string("rank 0: spectrum is empty");
    const bool has_zero = std::any_of(it->second.begin(), it->second.end(),
                                      [](const SpectrumEntry& e) { return sgn(e.nu) == 0; });
    if (!has_zero) return std::string("rank 0: eigenvalue 0 (constants) missing");
  }
  return std::nullopt;
}

void SpectrumTable::validate(bool closed_manifold) const {
  if (auto v = admissibility_violation(closed_manifold)) throw InputError("spectrum table: " + *v);
}

namespace {

Rational read_nu(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw InputError(where + ": eigenvalue must be a number or a rational string");
}

unsigned parse_rank_key(const std::string& key) {
  unsigned rank = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), rank);
  if (ec != std::errc() || ptr != key.data() + key.size() || key.empty())
    throw InputError("spectra: rank key '" + key + "' is not a non-negative decimal integer");
  return rank;
}

}  // namespace

SpectrumTable spectrum_from_json(const json& j) {
  if (!j.is_object()) throw InputError("spectrum table: top level must be an object");
  SpectrumTable s;
  if (j.contains("manifold")) {
    if (!j["manifold"].is_string()) throw InputError("spectrum table: 'manifold' must be a string");
    s.manifold = j["manifold"].get<std::string>();
  }
  if (j.contains("provenance") && j["provenance"].is_string()) s.provenance = j["provenance"].get<std::string>();
  if (!j.contains("spectra") || !j["spectra"].is_object())
    throw InputError("spectrum table: 'spectra' object is required");
  for (const auto& [key, list] : j["spectra"].items()) {
    const unsigned rank = parse_rank_key(key);
    if (!list.is_array()) throw InputError("spectra[" + key + "]: must be an array");
    auto& entries = s.ranks[rank];
    std::size_t pos = 0;
    for (const auto& item : list) {
      const std::string where = "spectra[" + key + "][" + std::to_string(pos++) + "]";
      if (item.is_array()) {
        if (item.size() != 2) throw InputError(where + ": expected [nu, multiplicity]");
        if (!item[1].is_number_integer() || item[1].get<long>() <= 0)
          throw InputError(where + ": multiplicity must be a positive integer");
        entries.push_back({read_nu(item[0], where), static_cast<unsigned>(item[1].get<long>())});
      } else {
        entries.push_back({read_nu(item, where), 1});
      }
    }
  }
  s.normalize();
  return s;
}

SpectrumTable load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spectrum file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("spectrum file '" + path + "': " + e.what());
  }
  return spectrum_from_json(j);
}

json spectrum_to_json(const SpectrumTable& s) {
  json spectra = json::object();
  for (const auto& [rank, entries] : s.ranks) {
    json list = json::array();
    for (const auto& e : entries) list.push_back(json::array({e.nu.get_str(), e.multiplicity}));
    spectra[std::to_string(rank)] = std::move(list);
  }
  json j = {{"manifold", s.manifold}, {"spectra", spectra}};
  if (!s.provenance.empty()) j["provenance"] = s.provenance;
  return j;
}

}  // namespace prres::bands
