#include <fstream>

#include "prres/errors.hpp"
#include "prres/flow_sim.hpp"

namespace prres::flow {

using nlohmann::json;

namespace {

GroupMatrix read_matrix(const json& m, std::size_t index) {
  const std::string where = "generators[" + std::to_string(index) + "]";
  GroupMatrix g;
  if (m.is_array() && m.size() == 16) {
    for (int k = 0; k < 16; ++k) {
      if (!m[k].is_number()) throw InputError(where + ": entries must be numbers");
      g(k / 4, k % 4) = m[k].get<double>();
    }
    return g;
  }
  if (m.is_array() && m.size() == 4) {
    for (int r = 0; r < 4; ++r) {
      if (!m[r].is_array() || m[r].size() != 4) throw InputError(where + ": expected a 4x4 matrix");
      for (int c = 0; c < 4; ++c) {
        if (!m[r][c].is_number()) throw InputError(where + ": entries must be numbers");
        g(r, c) = m[r][c].get<double>();
      }
    }
    return g;
  }
  throw InputError(where + ": expected 16 numbers (row-major) or 4 rows of 4");
}

}  // namespace

std::size_t normalize_lattice(LatticeData& L) {
  const std::size_t original = L.generators.size();
  for (std::size_t i = 0; i < original; ++i) {
    const GroupMatrix inv = lie::lorentz_inverse(L.generators[i]);
    bool found = false;
    for (const auto& h : L.generators) {
      if ((h - inv).cwiseAbs().maxCoeff() <= 1e-9) {
        found = true;
        break;
      }
    }
    if (!found) L.generators.push_back(inv);
  }
  return L.generators.size() - original;
}

void validate_lattice(const LatticeData& L) {
  for (std::size_t i = 0; i < L.generators.size(); ++i) {
    const auto& g = L.generators[i];
    if (!g.allFinite()) throw InputError("generators[" + std::to_string(i) + "]: non-finite entry");
    if (!lie::is_lorentz(g, 1e-9))
      throw InputError("generators[" + std::to_string(i) + "]: not in SO+(1,3) (form defect " +
                       std::to_string(lie::form_defect(g)) + ", g00 " + std::to_string(g(0, 0)) + ")");
    if (g.determinant() <= 0.0) throw InputError("generators[" + std::to_string(i) + "]: determinant is not +1");
  }
  if (L.diameter_hint && !(*L.diameter_hint > 0.0)) throw InputError("lattice: diameter_hint must be positive");
}

LatticeData lattice_from_json(const json& j) {
  if (!j.is_object()) throw InputError("lattice: top level must be an object");
  LatticeData L;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InputError("lattice: 'label' must be a string");
    L.label = j["label"].get<std::string>();
  }
  if (!j.contains("generators") || !j["generators"].is_array())
    throw InputError("lattice: 'generators' array is required");
  std::size_t index = 0;
  for (const auto& m : j["generators"]) L.generators.push_back(read_matrix(m, index++));
  if (j.contains("diameter_hint") && !j["diameter_hint"].is_null()) {
    if (!j["diameter_hint"].is_number()) throw InputError("lattice: 'diameter_hint' must be a number");
    L.diameter_hint = j["diameter_hint"].get<double>();
  }
  validate_lattice(L);
  normalize_lattice(L);
  return L;
}

LatticeData load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lattice file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("lattice file '" + path + "': " + e.what());
  }
  return lattice_from_json(j);
}

json lattice_to_json(const LatticeData& L) {
  json gens = json::array();
  for (const auto& g : L.generators) {
    json row = json::array();
    for (int k = 0; k < 16; ++k) row.push_back(g(k / 4, k % 4));
    gens.push_back(std::move(row));
  }
  json j = {{"label", L.label}, {"generators", gens}};
  if (L.diameter_hint) j["diameter_hint"] = *L.diameter_hint;
  return j;
}

}  // namespace prres::flow
