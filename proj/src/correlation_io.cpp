#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prres/errors.hpp"
#include "prres/flow_sim.hpp"

namespace prres::flow {

using nlohmann::json;

void CorrelationSeries::check_invariants() const {
  if (values.size() != times.size()) throw InputError("series: times and values differ in length");
  if (!stderrs.empty() && stderrs.size() != times.size())
    throw InputError("series: times and stderr differ in length");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw InputError("series: times not strictly increasing at row " + std::to_string(k));
  for (std::size_t k = 0; k < stderrs.size(); ++k)
    if (!(stderrs[k] >= 0.0)) throw InputError("series: negative or NaN stderr at row " + std::to_string(k));
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_field(const std::string& s, std::size_t line) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw InputError("series line " + std::to_string(line) + ": empty field");
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + b, s.data() + e + 1, v);
  if (ec != std::errc() || ptr != s.data() + e + 1)
    throw InputError("series line " + std::to_string(line) + ": '" + s.substr(b, e - b + 1) + "' is not a number");
  return v;
}

std::vector<double> doubles(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw InputError(std::string("series: '") + key + "' is required");
    return {};
  }
  if (!j[key].is_array()) throw InputError(std::string("series: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw InputError(std::string("series: '") + key + "' must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string series_to_csv(const CorrelationSeries& c) {
  std::string out = "t,value,stderr\n";
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    out += shortest(c.times[k]) + "," + shortest(c.values[k]) + "," +
           shortest(c.stderrs.empty() ? 0.0 : c.stderrs[k]) + "\n";
  }
  return out;
}

json series_to_json(const CorrelationSeries& c) {
  return json{{"metadata", c.metadata}, {"samples", c.samples},     {"flagged", c.flagged},
              {"diagnostics", c.diagnostics}, {"t", c.times},       {"value", c.values},
              {"value_imag", c.values_imag},  {"stderr", c.stderrs}};
}

CorrelationSeries series_from_text(const std::string& text) {
  CorrelationSeries c;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("series: ") + e.what());
    }
    c.times = doubles(j, "t", true);
    c.values = doubles(j, "value", true);
    c.values_imag = doubles(j, "value_imag", false);
    c.stderrs = doubles(j, "stderr", false);
    if (j.contains("samples") && j["samples"].is_number_unsigned()) c.samples = j["samples"].get<std::size_t>();
    if (j.contains("flagged") && j["flagged"].is_boolean()) c.flagged = j["flagged"].get<bool>();
    if (j.contains("metadata")) c.metadata = j["metadata"];
  } else {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (lineno == 1 && std::isalpha(static_cast<unsigned char>(line[line.find_first_not_of(" \t")]))) continue;  // header
      std::vector<std::string> fields;
      std::stringstream ls(line);
      std::string field;
      while (std::getline(ls, field, ',')) fields.push_back(field);
      if (fields.size() < 2 || fields.size() > 3)
        throw InputError("series line " + std::to_string(lineno) + ": expected t,value[,stderr]");
      c.times.push_back(parse_field(fields[0], lineno));
      c.values.push_back(parse_field(fields[1], lineno));
      c.stderrs.push_back(fields.size() == 3 ? parse_field(fields[2], lineno) : 0.0);
    }
  }
  c.check_invariants();
  return c;
}

CorrelationSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open series file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return series_from_text(ss.str());
}

json fit_to_json(const DecayFit& fit) {
  return json{{"rate", fit.rate}, {"r_squared", fit.r_squared}, {"rate_stderr", fit.rate_stderr}, {"points", fit.points}};
}

}  // namespace prres::flow
