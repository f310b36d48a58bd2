#include "prres/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prres/errors.hpp"
#include "prres/expr_parser.hpp"
#include "prres/flow_sim.hpp"
#include "prres/lie_core.hpp"
#include "prres/ncalg.hpp"
#include "prres/rep_tensor.hpp"
#include "prres/resonance_bands.hpp"

namespace prres::cli {

using nlohmann::json;

namespace {

struct Options {
  // algebra
  std::string expression;
  std::string order = "leftmost";
  std::uint64_t rewrite_seed = 0;
  std::uint64_t fuel = 50'000'000;
  unsigned ladder_m = 1;
  long inv_n = 0;
  unsigned inv_a = 0;
  unsigned inv_b = 0;
  std::string inv_lambda = "0";
  // bands
  std::string spectra;
  int band_n = 0;
  unsigned band_m = 0;
  std::vector<double> window;
  std::optional<double> im_cutoff;
  unsigned n_max = 5;
  unsigned m_max = 3;
  double beta = 0.5;
  // simulate / fit
  std::string lattice;
  std::string observable = "height";
  std::string observable2;
  double t_max = 5.0;
  double dt = 0.5;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  double burn_in = flow::SamplerOptions{}.burn_in;
  std::optional<double> height_bound;
  bool csv = false;
  bool strict = false;
  std::string out_path;
  std::string series;
  double t_min = 0.0;
  std::string fit_spectra;
  std::optional<double> fit_beta;
  // tensor
  unsigned p = 1;
  unsigned q = 1;
  unsigned tensor_m = 2;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

const char* status(bool pass) { return pass ? "pass" : "fail"; }

GaussRational parse_scalar(const std::string& text) {
  const auto value = ncalg::normal_form(ncalg::parse_expression(text)).as_scalar();
  if (!value) throw InputError("'" + text + "' is not a scalar");
  return *value;
}

json surd_json(const Surd& z) {
  const auto c = z.to_complex();
  return json{{"re", c.real()}, {"im", c.imag()}, {"exact", z.str()}};
}

// ------------------------------------------------------------------- algebra

int cmd_verify(std::ostream& out) {
  json rows = json::array();
  std::size_t passed = 0;
  const auto ids = lie::commutation_identities();
  for (const auto& id : ids) {
    const bool ok = id.holds();
    passed += ok ? 1 : 0;
    rows.push_back({{"family", id.family}, {"identity", id.text}, {"holds", ok}});
  }
  const ncalg::NCPoly delta = ncalg::laplacian_element();
  const bool r_commutes = ncalg::commutator(ncalg::NCPoly::generator(ncalg::Generator::R), delta).is_zero();
  const bool pass = passed == ids.size() && r_commutes;
  emit(out, {{"config", {{"command", "algebra verify"}}},
             {"identities", rows},
             {"passed", passed},
             {"total", ids.size()},
             {"laplacian_commutes_with_R", r_commutes},
             {"status", status(pass)}});
  return pass ? kOk : kCheckFailed;
}

int cmd_normal_form(const Options& o, std::ostream& out) {
  ncalg::RewriteOptions ro;
  if (o.order == "leftmost") ro.order = ncalg::RewriteOrder::Leftmost;
  else if (o.order == "rightmost") ro.order = ncalg::RewriteOrder::Rightmost;
  else if (o.order == "random") ro.order = ncalg::RewriteOrder::Random;
  else throw InputError("--order must be leftmost, rightmost or random");
  ro.seed = o.rewrite_seed;
  ro.fuel = o.fuel;
  const ncalg::NCPoly nf = ncalg::normal_form(ncalg::parse_expression(o.expression), ro);
  emit(out, {{"config",
              {{"command", "algebra normal-form"},
               {"expression", o.expression},
               {"order", o.order},
               {"seed", o.rewrite_seed},
               {"fuel", o.fuel}}},
             {"normal_form", nf.str()},
             {"terms", nf.terms().size()},
             {"degree", nf.degree()},
             {"status", "ok"}});
  return kOk;
}

int cmd_laplacian_check(std::ostream& out) {
  using ncalg::NCPoly;
  const NCPoly delta = ncalg::laplacian_element();
  json comm = json::object();
  bool pass = delta == ncalg::laplacian_from_horocyclic();
  const bool forms_agree = pass;
  for (auto g : ncalg::kAllGenerators) {
    const bool zero = ncalg::commutator(NCPoly::generator(g), delta).is_zero();
    comm[ncalg::generator_name(g)] = zero;
    // Only R is required: the inner product is K-invariant, not Ad-invariant.
    if (g == ncalg::Generator::R) pass = pass && zero;
  }
  emit(out, {{"config", {{"command", "algebra laplacian-check"}}},
             {"laplacian", delta.str()},
             {"horocyclic_form_agrees", forms_agree},
             {"commutes_with", comm},
             {"status", status(pass)}});
  return pass ? kOk : kCheckFailed;
}

int cmd_ladder_check(const Options& o, std::ostream& out) {
  if (o.ladder_m == 0) throw InputError("--m must be at least 1");
  const bool ladder = ncalg::ladder_identity_check(o.ladder_m);
  const bool plus = ncalg::commutation_Q_decomposition(o.ladder_m, ncalg::Sign::Plus).product_matches();
  const bool minus = ncalg::commutation_Q_decomposition(o.ladder_m, ncalg::Sign::Minus).product_matches();
  const bool pass = ladder && plus && minus;
  emit(out, {{"config", {{"command", "algebra ladder-check"}, {"m", o.ladder_m}}},
             {"ladder_identity", ladder},
             {"product_part_plus", plus},
             {"product_part_minus", minus},
             {"expected_product_plus", ncalg::q_product(o.ladder_m, ncalg::Sign::Plus).str()},
             {"status", status(pass)}});
  return pass ? kOk : kCheckFailed;
}

int cmd_inversion(const Options& o, std::ostream& out) {
  using ncalg::Generator;
  using ncalg::NCPoly;
  const GaussRational lambda = parse_scalar(o.inv_lambda);
  const auto c = ncalg::inversion_constants(o.inv_n, o.inv_a, o.inv_b, lambda);
  const NCPoly word = pow(NCPoly::generator(Generator::EtaPlus), o.inv_a) *
                      pow(NCPoly::generator(Generator::EtaMinus), o.inv_b) *
                      pow(NCPoly::generator(Generator::MuMinus), o.inv_a) *
                      pow(NCPoly::generator(Generator::MuPlus), o.inv_b);
  const auto state = ncalg::FormalState::horocyclic_invariant(o.inv_n, o.inv_a, o.inv_b, lambda);
  const NCPoly image = ncalg::apply_to_state(word, state);
  const bool pass = image == NCPoly(c.p_plus * c.p_minus);
  emit(out, {{"config",
              {{"command", "algebra inversion"},
               {"n", o.inv_n},
               {"a", o.inv_a},
               {"b", o.inv_b},
               {"lambda", lambda.str()}}},
             {"q_plus", c.q_plus.str()},
             {"q_minus", c.q_minus.str()},
             {"p_plus", c.p_plus.str()},
             {"p_minus", c.p_minus.str()},
             {"state_image", image.str()},
             {"status", status(pass)}});
  return pass ? kOk : kCheckFailed;
}

// --------------------------------------------------------------------- bands

int cmd_bands(const Options& o, std::ostream& out) {
  const auto spec = bands::load_spectrum(o.spectra);
  bands::BandQuery q{o.band_n, o.band_m, {}, {}, o.im_cutoff};
  json cfg = {{"command", "bands"}, {"spectra", o.spectra}, {"n", o.band_n}, {"m", o.band_m}};
  if (!o.window.empty()) {
    q.re_min = o.window[0];
    q.re_max = o.window[1];
    cfg["window"] = o.window;
  }
  if (o.im_cutoff) cfg["im_cutoff"] = *o.im_cutoff;
  const auto set = bands::band_set(q, spec);
  emit(out, {{"config", cfg},
             {"band_case", set.band_case == bands::BandCase::WithRankZero ? "with-rank-zero" : "vertical-line-only"},
             {"resonances", bands::resonances_to_json(set.resonances)}});
  return kOk;
}

int cmd_gap(const Options& o, std::ostream& out) {
  const auto spec = bands::load_spectrum(o.spectra);
  const auto report = bands::gap_check(spec, o.n_max, o.m_max);
  json witness = nullptr;
  if (report.witness) {
    const auto& w = *report.witness;
    witness = {{"n", w.n}, {"m", w.m}, {"k", w.k}, {"nu", w.nu.get_str()}, {"lambda", surd_json(w.lambda)}};
  }
  emit(out, {{"config", {{"command", "bands gap"}, {"spectra", o.spectra}, {"n_max", o.n_max}, {"m_max", o.m_max}}},
             {"pass", report.pass},
             {"witness", witness},
             {"above_line", bands::resonances_to_json(report.above_line)},
             {"status", status(report.pass)}});
  return report.pass ? kOk : kCheckFailed;
}

json mixing_json(const bands::SpectrumTable& spec, double beta) {
  std::vector<Rational> nu0;
  for (const auto& e : spec.at_rank(0)) nu0.push_back(e.nu);
  const auto m = bands::mixing_terms(nu0, beta);
  json exps = json::array();
  for (const auto& z : m.exponents) exps.push_back(surd_json(z));
  return {{"exponents", exps}, {"remainder_rate", m.remainder_rate}, {"predicted_rate", m.predicted_rate}};
}

int cmd_mixing(const Options& o, std::ostream& out) {
  const auto spec = bands::load_spectrum(o.spectra);
  json j = mixing_json(spec, o.beta);
  j["config"] = {{"command", "bands mixing"}, {"spectra", o.spectra}, {"beta", o.beta}};
  emit(out, j);
  return kOk;
}

// ------------------------------------------------------------ simulate / fit

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto lattice = flow::load_lattice(o.lattice);
  const auto f = flow::Observable::parse(o.observable);
  const auto fp = flow::Observable::parse(o.observable2.empty() ? o.observable : o.observable2);
  flow::CorrelateOptions co;
  co.t_max = o.t_max;
  co.dt = o.dt;
  co.samples = o.samples;
  co.seed = o.seed;
  co.workers = o.workers == 0 ? flow::default_workers() : o.workers;
  co.sampler.burn_in = o.burn_in;
  co.height_bound = o.height_bound;
  const auto series = flow::correlate(f, fp, lattice, co);

  std::string text;
  if (o.csv) {
    text = flow::series_to_csv(series);
  } else {
    json j = flow::series_to_json(series);
    j["config"] = {{"command", "simulate"},
                   {"lattice", o.lattice},
                   {"observable", f.str()},
                   {"observable_prime", fp.str()},
                   {"t_max", o.t_max},
                   {"dt", o.dt},
                   {"samples", o.samples},
                   {"seed", o.seed},
                   {"workers", co.workers},
                   {"burn_in", o.burn_in},
                   {"height_bound", series.metadata["height_bound"]},
                   {"strict", o.strict}};
    text = j.dump(2) + "\n";
  }
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + o.out_path + "'");
    file << text;
  }
  if (series.flagged) {
    for (const auto& d : series.diagnostics) err << "warning: " << d << '\n';
    if (o.strict) return kInternalError;
  }
  return kOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const auto series = flow::load_series(o.series);
  const auto fit = flow::fit_decay(series, o.t_min);
  json j = flow::fit_to_json(fit);
  json cfg = {{"command", "fit"}, {"series", o.series}, {"t_min", o.t_min}};
  int code = kOk;
  if (!o.fit_spectra.empty()) {
    if (!o.fit_beta) throw InputError("--spectra requires --beta");
    cfg["spectra"] = o.fit_spectra;
    cfg["beta"] = *o.fit_beta;
    const json pred = mixing_json(bands::load_spectrum(o.fit_spectra), *o.fit_beta);
    const double bound = pred["predicted_rate"].get<double>() + 3.0 * fit.rate_stderr;
    const bool within = fit.rate <= bound;
    j["prediction"] = pred;
    j["bound"] = bound;
    j["within_prediction"] = within;
    j["status"] = status(within);
    if (!within) code = kCheckFailed;
  }
  j["config"] = cfg;
  emit(out, j);
  return code;
}

// -------------------------------------------------------------------- tensor

int cmd_trace(const Options& o, std::ostream& out) {
  const unsigned m = o.p + o.q;
  if (m < 2) throw InputError("p + q must be at least 2");
  tensor::SymTensor s = tensor::SymTensor::basis(o.p, m);
  const auto image = tensor::trace(s);
  const double coeff = (o.p >= 1 && o.q >= 1) ? image[o.p - 1].real() : 0.0;
  Rational exact = (o.p >= 1 && o.q >= 1) ? Rational(o.p * o.q, m * (m - 1)) : Rational(0);
  exact.canonicalize();
  emit(out, {{"config", {{"command", "tensor trace"}, {"p", o.p}, {"q", o.q}}},
             {"image_degree", m - 2},
             {"coefficient", coeff},
             {"exact", exact.get_str()}});
  return kOk;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  const auto r = tensor::trace_kernel(o.tensor_m);
  emit(out, {{"config", {{"command", "tensor kernel"}, {"m", o.tensor_m}}},
             {"dimension", r.dimension},
             {"extreme_span", r.extreme_span},
             {"status", status(r.extreme_span)}});
  return r.extreme_span ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Frame-flow resonance toolkit", "prres"};
  app.require_subcommand(1, 1);

  auto* algebra = app.add_subcommand("algebra", "Enveloping-algebra checks");
  algebra->require_subcommand(1, 1);
  auto* verify = algebra->add_subcommand("verify", "Check every recorded bracket identity");
  auto* nf = algebra->add_subcommand("normal-form", "PBW normal form of an expression");
  nf->add_option("expression", o.expression, "e.g. \"eta+ * mu-\"")->required();
  nf->add_option("--order", o.order, "leftmost | rightmost | random");
  nf->add_option("--seed", o.rewrite_seed, "seed for --order random");
  nf->add_option("--fuel", o.fuel, "rewrite step budget");
  auto* lap = algebra->add_subcommand("laplacian-check", "Laplacian is central");
  auto* ladder = algebra->add_subcommand("ladder-check", "Ladder identity and Q decomposition");
  ladder->add_option("--m", o.ladder_m)->required();
  auto* inversion = algebra->add_subcommand("inversion", "Inversion constants q, p");
  inversion->add_option("--n", o.inv_n)->required();
  inversion->add_option("--a", o.inv_a)->required();
  inversion->add_option("--b", o.inv_b)->required();
  inversion->add_option("--lambda", o.inv_lambda, "Gaussian rational, e.g. 1/2 or 1+2i")->required();

  auto* bands_cmd = app.add_subcommand("bands", "Resonance bands from a spectrum table");
  bands_cmd->require_subcommand(0, 1);
  bands_cmd->add_option("--spectra", o.spectra);
  bands_cmd->add_option("--n", o.band_n);
  bands_cmd->add_option("--m", o.band_m);
  bands_cmd->add_option("--window", o.window, "Re lambda range r0 r1")->expected(2);
  bands_cmd->add_option("--im-cutoff", o.im_cutoff);
  auto* gap = bands_cmd->add_subcommand("gap", "Spectral gap check");
  gap->add_option("--spectra", o.spectra)->required();
  gap->add_option("--n-max", o.n_max);
  gap->add_option("--m-max", o.m_max);
  auto* mixing = bands_cmd->add_subcommand("mixing", "Mixing exponents");
  mixing->add_option("--spectra", o.spectra)->required();
  mixing->add_option("--beta", o.beta)->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo correlation series");
  simulate->add_option("--lattice", o.lattice)->required();
  simulate->add_option("--observable", o.observable, "const, height, coef(i,j), poly(...), fourier(obs,n[,P])");
  simulate->add_option("--observable2", o.observable2, "second observable (defaults to the first)");
  simulate->add_option("--t-max", o.t_max);
  simulate->add_option("--dt", o.dt);
  simulate->add_option("--samples", o.samples);
  simulate->add_option("--seed", o.seed);
  simulate->add_option("--workers", o.workers, "defaults to PRRES_WORKERS or the core count");
  simulate->add_option("--burn-in", o.burn_in);
  simulate->add_option("--height-bound", o.height_bound, "reduced heights above this count as failures");
  simulate->add_flag("--csv", o.csv, "write t,value,stderr CSV");
  simulate->add_flag("--strict", o.strict, "exit 4 when sampler diagnostics flag the series");
  simulate->add_option("--out", o.out_path);

  auto* fit = app.add_subcommand("fit", "Fit an exponential decay rate");
  fit->add_option("--series", o.series)->required();
  fit->add_option("--t-min", o.t_min);
  fit->add_option("--spectra", o.fit_spectra, "compare against the mixing prediction");
  fit->add_option("--beta", o.fit_beta);

  auto* tensor_cmd = app.add_subcommand("tensor", "Symmetric tensor checks");
  tensor_cmd->require_subcommand(1, 1);
  auto* trace = tensor_cmd->add_subcommand("trace", "Trace of s_{p,q}");
  trace->add_option("--p", o.p)->required();
  trace->add_option("--q", o.q)->required();
  auto* kernel = tensor_cmd->add_subcommand("kernel", "Trace-free kernel in degree m");
  kernel->add_option("--m", o.tensor_m)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*verify) return cmd_verify(out);
    if (*nf) return cmd_normal_form(o, out);
    if (*lap) return cmd_laplacian_check(out);
    if (*ladder) return cmd_ladder_check(o, out);
    if (*inversion) return cmd_inversion(o, out);
    if (*gap) return cmd_gap(o, out);
    if (*mixing) return cmd_mixing(o, out);
    if (*bands_cmd) {
      if (o.spectra.empty()) throw InputError("bands: --spectra is required");
      return cmd_bands(o, out);
    }
    if (*simulate) return cmd_simulate(o, out, err);
    if (*fit) return cmd_fit(o, out);
    if (*trace) return cmd_trace(o, out);
    if (*kernel) return cmd_kernel(o, out);
  } catch (const FuelExhausted& e) {
    err << "fuel exhausted: " << e.what() << '\n';
    return kInternalError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace prres::cli
