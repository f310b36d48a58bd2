#include "prres/flow_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "prres/errors.hpp"

namespace prres::flow {

using nlohmann::json;

GroupMatrix renormalize(const GroupMatrix& g) {
  const auto& j = lie::minkowski_form_d();
  const Eigen::Matrix4d e = g.transpose() * j * g - j;
  return g * (Eigen::Matrix4d::Identity() - 0.5 * j * e);
}

FrameState flow(const FrameState& s, double t) {
  FrameState out = s;
  if (t == 0.0) return out;
  out.g = s.g * lie::exp_tX(t);
  if (lie::form_defect(out.g) > kRenormThreshold) out.g = renormalize(out.g);
  return out;
}

FrameState reduce(const FrameState& s, const LatticeData& L, ReduceStats* stats, int max_steps) {
  FrameState out = s;
  ReduceStats local;
  double h = height(out.g);
  while (true) {
    int best = -1;
    double best_h = h;
    for (std::size_t i = 0; i < L.generators.size(); ++i) {
      const double hi = L.generators[i].row(0).dot(out.g.col(0));
      if (hi < best_h) {
        best_h = hi;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || best_h >= h - 1e-12) break;
    if (local.steps >= max_steps) {
      local.hit_cap = true;
      break;
    }
    out.g = L.generators[static_cast<std::size_t>(best)] * out.g;
    if (lie::form_defect(out.g) > kRenormThreshold) out.g = renormalize(out.g);
    out.word.push_back(best);
    h = height(out.g);
    ++local.steps;
  }
  local.final_height = h;
  if (stats != nullptr) *stats = local;
  return out;
}

// ---------------------------------------------------------------- observables

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void check_index(int i, int j) {
  if (i < 0 || i > 3 || j < 0 || j > 3)
    throw InputError("matrix coefficient indices must lie in 0..3, got (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
}

class ObservableParser {
 public:
  explicit ObservableParser(const std::string& text) : s_(text) {}

  Observable parse_all() {
    Observable obs = parse_obs();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return obs;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("observable: " + what + " at position " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    skip_ws();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }
  long parse_int() {
    skip_ws();
    long v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  double parse_number() {
    skip_ws();
    double v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc() || !std::isfinite(v)) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  bool at_number() {
    skip_ws();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
  }

  Observable parse_obs() {
    if (accept_word("raw")) {
      expect(':');
      Observable o = parse_obs();
      o.set_mean_subtract(false);
      return o;
    }
    if (accept_word("const")) {
      if (accept('=')) {
        const bool neg = accept('-');
        const double v = parse_number();
        return Observable::constant(neg ? -v : v);
      }
      return Observable::constant(1.0);
    }
    if (accept_word("height")) return Observable::matrix_coefficient(0, 0);
    if (accept_word("coef")) {
      expect('(');
      const long i = parse_int();
      expect(',');
      const long j = parse_int();
      expect(')');
      check_index(static_cast<int>(i), static_cast<int>(j));
      return Observable::matrix_coefficient(static_cast<int>(i), static_cast<int>(j));
    }
    if (accept_word("fourier")) {
      expect('(');
      Observable inner = parse_obs();
      expect(',');
      const long n = parse_int();
      long points = 4 * std::labs(n) + 4;
      if (accept(',')) points = parse_int();
      expect(')');
      if (points < 4 * std::labs(n) + 4) fail("quadrature points must be at least 4|n|+4");
      return fourier_project(inner, static_cast<int>(n), static_cast<int>(points));
    }
    if (accept_word("poly")) {
      expect('(');
      std::vector<Observable::Monomial> terms;
      bool first = true;
      while (true) {
        double sign = 1.0;
        if (accept('-')) {
          sign = -1.0;
        } else if (!accept('+') && !first) {
          break;
        }
        first = false;
        terms.push_back(parse_monomial(sign));
      }
      expect(')');
      if (terms.empty()) fail("empty polynomial");
      return Observable::custom_table(std::move(terms));
    }
    fail("unknown observable");
  }

  Observable::Monomial parse_monomial(double sign) {
    Observable::Monomial m;
    m.coeff = sign;
    bool need_factor = true;
    if (at_number()) {
      m.coeff *= parse_number();
      need_factor = accept('*');
      if (!need_factor) return m;
    }
    while (true) {
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != 'g') {
        if (need_factor) fail("expected a factor g(i,j)");
        break;
      }
      ++pos_;
      int i = 0;
      int j = 0;
      if (accept('(')) {
        i = static_cast<int>(parse_int());
        expect(',');
        j = static_cast<int>(parse_int());
        expect(')');
      } else {
        if (pos_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
            !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
          fail("expected gIJ with two digits");
        i = s_[pos_] - '0';
        j = s_[pos_ + 1] - '0';
        pos_ += 2;
      }
      check_index(i, j);
      long p = 1;
      if (accept('^')) {
        p = parse_int();
        if (p < 0) fail("negative power");
      }
      m.factors.push_back({i, j, static_cast<int>(p)});
      need_factor = false;
      if (!accept('*')) break;
      need_factor = true;
    }
    return m;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Observable Observable::constant(double c) {
  Observable o;
  o.kind_ = Kind::Constant;
  o.value_ = c;
  return o;
}

Observable Observable::matrix_coefficient(int i, int j) {
  check_index(i, j);
  Observable o;
  o.kind_ = Kind::MatrixCoefficient;
  o.i_ = i;
  o.j_ = j;
  return o;
}

Observable Observable::custom_table(std::vector<Monomial> terms) {
  for (const auto& t : terms)
    for (const auto& f : t.factors) {
      check_index(f[0], f[1]);
      if (f[2] < 0) throw InputError("custom table: negative power");
    }
  Observable o;
  o.kind_ = Kind::CustomTable;
  o.terms_ = std::move(terms);
  return o;
}

Observable Observable::parse(const std::string& text) { return ObservableParser(text).parse_all(); }

std::complex<double> Observable::operator()(const GroupMatrix& g) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::MatrixCoefficient:
      return g(i_, j_);
    case Kind::CustomTable: {
      double acc = 0.0;
      for (const auto& t : terms_) {
        double v = t.coeff;
        for (const auto& f : t.factors) {
          const double x = g(f[0], f[1]);
          for (int p = 0; p < f[2]; ++p) v *= x;
        }
        acc += v;
      }
      return acc;
    }
    case Kind::FourierProjected: {
      std::complex<double> acc = 0.0;
      for (int p = 0; p < points_; ++p) {
        const double theta = 2.0 * std::numbers::pi * p / points_;
        acc += std::polar(1.0, -weight_ * theta) * (*inner_)(g * lie::exp_thetaR(theta));
      }
      return acc / static_cast<double>(points_);
    }
  }
  throw InternalError("observable: unknown kind");
}

std::string Observable::str() const {
  std::string body;
  switch (kind_) {
    case Kind::Constant:
      body = "const=" + fmt_double(value_);
      break;
    case Kind::MatrixCoefficient:
      body = "coef(" + std::to_string(i_) + "," + std::to_string(j_) + ")";
      break;
    case Kind::CustomTable: {
      body = "poly(";
      for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& t = terms_[k];
        const double c = t.coeff;
        if (k > 0) body += c < 0 ? " - " : " + ";
        else if (c < 0) body += "-";
        body += fmt_double(std::abs(c));
        for (const auto& f : t.factors) {
          body += "*g(" + std::to_string(f[0]) + "," + std::to_string(f[1]) + ")";
          if (f[2] != 1) body += "^" + std::to_string(f[2]);
        }
      }
      body += ")";
      break;
    }
    case Kind::FourierProjected:
      body = "fourier(" + inner_->str() + "," + std::to_string(weight_) + "," + std::to_string(points_) + ")";
      break;
  }
  return mean_subtract_ ? body : "raw:" + body;
}

Observable fourier_project(const Observable& f, int n, int quadrature_points) {
  if (quadrature_points < 4 * std::abs(n) + 4)
    throw InputError("fourier_project: need at least 4|n|+4 = " + std::to_string(4 * std::abs(n) + 4) +
                     " quadrature points, got " + std::to_string(quadrature_points));
  Observable o;
  o.kind_ = Observable::Kind::FourierProjected;
  o.mean_subtract_ = f.mean_subtract();
  o.inner_ = std::make_shared<const Observable>(f);
  o.weight_ = n;
  o.points_ = quadrature_points;
  return o;
}

// ------------------------------------------------------------------- sampling

GroupMatrix random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : q) {
      x = normal(rng);
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  const double w = q[0] / norm, x = q[1] / norm, y = q[2] / norm, z = q[3] / norm;
  GroupMatrix k = GroupMatrix::Identity();
  k(1, 1) = 1 - 2 * (y * y + z * z);
  k(1, 2) = 2 * (x * y - z * w);
  k(1, 3) = 2 * (x * z + y * w);
  k(2, 1) = 2 * (x * y + z * w);
  k(2, 2) = 1 - 2 * (x * x + z * z);
  k(2, 3) = 2 * (y * z - x * w);
  k(3, 1) = 2 * (x * z - y * w);
  k(3, 2) = 2 * (y * z + x * w);
  k(3, 3) = 1 - 2 * (x * x + y * y);
  return k;
}

namespace {

// Flows by t in unit steps, reducing after each so entries stay bounded.
FrameState advance(FrameState s, double t, const LatticeData& L, int cap, bool& failed) {
  const double sign = t < 0 ? -1.0 : 1.0;
  double left = std::abs(t);
  do {
    const double step = std::min(left, 1.0);
    left -= step;
    ReduceStats st;
    s = reduce(flow(s, sign * step), L, &st, cap);
    s.word.clear();
    failed = failed || st.hit_cap;
  } while (left > 0.0);
  return s;
}

}  // namespace

FrameState haar_sample(const LatticeData& L, std::mt19937_64& rng, const SamplerOptions& opts, ReduceStats* stats) {
  FrameState s;
  if (!L.generators.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, L.generators.size() - 1);
    for (int i = 0; i < opts.word_length; ++i) {
      s.g = renormalize(s.g * L.generators[pick(rng)]);
    }
  }
  s.g = s.g * random_rotation(rng);
  double t = 0.0;
  if (opts.burn_in > 0.0) t = std::exponential_distribution<double>(1.0 / opts.burn_in)(rng);
  bool failed = false;
  s = reduce(s, L, nullptr, opts.reduce_cap);
  s = advance(s, t, L, opts.reduce_cap, failed);
  ReduceStats st;
  s = reduce(s, L, &st, opts.reduce_cap);
  st.hit_cap = st.hit_cap || failed;
  if (stats != nullptr) *stats = st;
  return s;
}

FrameState haar_sample(const LatticeData& L, double burn_in, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  SamplerOptions opts;
  opts.burn_in = burn_in;
  return haar_sample(L, rng, opts);
}

unsigned default_workers() {
  if (const char* env = std::getenv("PRRES_WORKERS")) {
    unsigned v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------- correlation

CorrelationSeries correlate(const Observable& f, const Observable& fprime, const LatticeData& L,
                            const CorrelateOptions& opts) {
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw InputError("correlate: dt must be positive");
  if (!(opts.t_max >= 0.0) || !std::isfinite(opts.t_max)) throw InputError("correlate: t_max must be non-negative");
  if (opts.samples < 2) throw InputError("correlate: need at least 2 samples");
  if (opts.chunk_size == 0) throw InputError("correlate: chunk size must be positive");

  const auto steps = static_cast<std::size_t>(std::floor(opts.t_max / opts.dt + 1e-9));
  const std::size_t nt = steps + 1;
  const std::size_t n = opts.samples;
  std::optional<double> bound = opts.height_bound;
  if (!bound && L.diameter_hint) bound = std::cosh(*L.diameter_hint);

  std::vector<std::complex<double>> a(n * nt);
  std::vector<std::complex<double>> b(n);
  std::vector<char> failed(n, 0);

  const std::size_t chunks = (n + opts.chunk_size - 1) / opts.chunk_size;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(opts.workers == 0 ? default_workers() : opts.workers, chunks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run_chunk = [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t end = std::min(n, (c + 1) * opts.chunk_size);
    for (std::size_t i = c * opts.chunk_size; i < end; ++i) {
      ReduceStats st;
      FrameState s = haar_sample(L, rng, opts.sampler, &st);
      bool bad = st.hit_cap;
      auto check_height = [&](const FrameState& x) {
        if (bound && height(x.g) > *bound + 1e-9) bad = true;
      };
      check_height(s);
      b[i] = fprime(s.g);
      a[i * nt] = f(s.g);
      for (std::size_t k = 1; k < nt; ++k) {
        s = advance(s, -opts.dt, L, opts.sampler.reduce_cap, bad);
        check_height(s);
        a[i * nt + k] = f(s.g);
      }
      failed[i] = bad ? 1 : 0;
    }
  };
  auto worker = [&] {
    try {
      for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = chunks;
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  // Means are taken relative to the first sample so constant data centres to exactly zero.
  auto mean_of = [n](auto value_at) {
    const std::complex<double> ref = value_at(0);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += value_at(i) - ref;
    return ref + acc / static_cast<double>(n);
  };
  const std::complex<double> b_mean = fprime.mean_subtract() ? mean_of([&](std::size_t i) { return b[i]; })
                                                             : std::complex<double>(0.0);

  CorrelationSeries out;
  out.samples = n;
  std::vector<std::complex<double>> prod(n);
  for (std::size_t k = 0; k < nt; ++k) {
    const std::complex<double> a_mean = f.mean_subtract()
                                            ? mean_of([&](std::size_t i) { return a[i * nt + k]; })
                                            : std::complex<double>(0.0);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      prod[i] = (a[i * nt + k] - a_mean) * std::conj(b[i] - b_mean);
      acc += prod[i];
    }
    const std::complex<double> mean = acc / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += std::norm(prod[i].real() - mean.real());
    out.times.push_back(static_cast<double>(k) * opts.dt);
    out.values.push_back(mean.real());
    out.values_imag.push_back(mean.imag());
    out.stderrs.push_back(std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n)));
  }

  const auto n_failed = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  const double frac = static_cast<double>(n_failed) / static_cast<double>(n);
  if (frac > opts.failure_threshold) {
    out.flagged = true;
    out.diagnostics.push_back("reduction failures in " + std::to_string(n_failed) + " of " + std::to_string(n) +
                              " samples (cap hit or height above bound)");
  }

  out.metadata = json{{"observable", f.str()},
                      {"observable_prime", fprime.str()},
                      {"lattice", L.label},
                      {"seed", opts.seed},
                      {"samples", n},
                      {"t_max", opts.t_max},
                      {"dt", opts.dt},
                      {"workers", workers},
                      {"chunk_size", opts.chunk_size},
                      {"burn_in", opts.sampler.burn_in},
                      {"word_length", opts.sampler.word_length},
                      {"height_bound", bound ? json(*bound) : json(nullptr)},
                      {"failed_samples", n_failed},
                      {"direction", "f(phi_{-t} x) f'(x)"}};
  return out;
}

// ------------------------------------------------------------------------ fit

DecayFit fit_decay(const CorrelationSeries& c, double t_min) {
  c.check_invariants();
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> se_log;
  bool uniform = false;
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const double v = std::abs(c.values[k]);
    const double se = c.stderrs.empty() ? 0.0 : c.stderrs[k];
    if (c.times[k] < t_min || !(v > 3.0 * se) || v == 0.0) continue;
    t.push_back(c.times[k]);
    y.push_back(std::log(v));
    se_log.push_back(se / v);
    if (se == 0.0) uniform = true;
  }
  if (t.size() < 5)
    throw InputError("fit_decay: only " + std::to_string(t.size()) +
                     " points with t >= t_min and |value| > 3 stderr (need 5)");

  const std::size_t m = t.size();
  std::vector<double> w(m, 1.0);
  if (!uniform)
    for (std::size_t k = 0; k < m; ++k) w[k] = 1.0 / (se_log[k] * se_log[k]);

  double sw = 0, st = 0, sy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sw += w[k];
    st += w[k] * t[k];
    sy += w[k] * y[k];
  }
  const double tbar = st / sw;
  const double ybar = sy / sw;
  double stt = 0, sty = 0, syy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    stt += w[k] * (t[k] - tbar) * (t[k] - tbar);
    sty += w[k] * (t[k] - tbar) * (y[k] - ybar);
    syy += w[k] * (y[k] - ybar) * (y[k] - ybar);
  }
  if (stt == 0.0) throw InputError("fit_decay: qualifying points share a single time");
  DecayFit fit;
  fit.points = m;
  fit.rate = sty / stt;
  double rss = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = y[k] - (ybar + fit.rate * (t[k] - tbar));
    rss += w[k] * r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  fit.rate_stderr = uniform ? std::sqrt(rss / static_cast<double>(m - 2) / stt) : std::sqrt(1.0 / stt);
  return fit;
}

}  // namespace prres::flow
