#include "prres/ncalg.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "prres/errors.hpp"

namespace prres::ncalg {

namespace {

std::size_t idx(Generator g) { return static_cast<std::size_t>(g); }

const GaussRational kI = GaussRational::i();

// Multiplication memo: (generator, monomial) -> generator * monomial.
struct MemoKey {
  Generator g;
  NCMonomial m;
  bool operator==(const MemoKey& o) const { return g == o.g && m == o.m; }
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.g);
    for (auto e : k.m.exponents) h = h * 1000003u ^ e;
    return h;
  }
};

// Each thread keeps its own cache; values are never mutated after insertion.
thread_local std::unordered_map<MemoKey, NCPoly, MemoHash> t_left_mul_cache;

const NCPoly& left_multiply(Generator g, const NCMonomial& m) {
  MemoKey key{g, m};
  if (auto it = t_left_mul_cache.find(key); it != t_left_mul_cache.end()) return it->second;

  std::size_t first = kNumGenerators;
  for (std::size_t k = 0; k < kNumGenerators; ++k)
    if (m.exponents[k] != 0) {
      first = k;
      break;
    }

  NCPoly result;
  if (first == kNumGenerators || idx(g) <= first) {
    NCMonomial out = m;
    ++out.exponents[idx(g)];
    result = NCPoly::monomial(out);
  } else {
    // g h rest = h (g rest) + [g,h] rest, with h the leftmost letter of m.
    const auto h = static_cast<Generator>(first);
    NCMonomial rest = m;
    --rest.exponents[first];
    const NCPoly g_rest = left_multiply(g, rest);
    for (const auto& [mono, c] : g_rest.terms()) {
      NCPoly t = left_multiply(h, mono);
      t *= c;
      result += t;
    }
    for (const auto& [gen, c] : structure_bracket(g, h)) {
      NCPoly t = left_multiply(gen, rest);
      t *= c;
      result += t;
    }
  }
  return t_left_mul_cache.emplace(key, std::move(result)).first->second;
}

NCPoly monomial_product(const NCMonomial& a, const NCMonomial& b) {
  NCPoly acc = NCPoly::monomial(b);
  for (std::size_t k = kNumGenerators; k-- > 0;) {
    for (std::uint32_t rep = 0; rep < a.exponents[k]; ++rep) {
      NCPoly next;
      for (const auto& [mono, c] : acc.terms()) {
        NCPoly t = left_multiply(static_cast<Generator>(k), mono);
        t *= c;
        next += t;
      }
      acc = std::move(next);
    }
  }
  return acc;
}

std::string monomial_str(const NCMonomial& m) {
  std::string out;
  for (auto g : kAllGenerators) {
    const auto e = m[g];
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += generator_name(g);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::MuPlus: return "mu+";
    case Generator::MuMinus: return "mu-";
    case Generator::X: return "X";
    case Generator::R: return "R";
    case Generator::EtaPlus: return "eta+";
    case Generator::EtaMinus: return "eta-";
  }
  return "?";
}

std::optional<Generator> parse_generator(const std::string& name) {
  for (auto g : kAllGenerators)
    if (generator_name(g) == name) return g;
  return std::nullopt;
}

lie::LieMatrix generator_matrix(Generator g) {
  switch (g) {
    case Generator::MuPlus: return lie::mu_plus();
    case Generator::MuMinus: return lie::mu_minus();
    case Generator::X: return lie::LieMatrix::basis(lie::BasisLabel::X);
    case Generator::R: return lie::LieMatrix::basis(lie::BasisLabel::R);
    case Generator::EtaPlus: return lie::eta_plus();
    case Generator::EtaMinus: return lie::eta_minus();
  }
  return {};
}

LinearTerm structure_bracket(Generator a, Generator b) {
  using G = Generator;
  if (a == b) return {};
  // Relations with a listed first; the rest follow by antisymmetry.
  auto direct = [](G x, G y) -> std::optional<LinearTerm> {
    if (x == G::X && (y == G::EtaPlus || y == G::EtaMinus)) return LinearTerm{{y, GaussRational(-1)}};
    if (x == G::X && (y == G::MuPlus || y == G::MuMinus)) return LinearTerm{{y, GaussRational(1)}};
    if (x == G::R && (y == G::EtaPlus || y == G::MuPlus)) return LinearTerm{{y, kI}};
    if (x == G::R && (y == G::EtaMinus || y == G::MuMinus)) return LinearTerm{{y, -kI}};
    if (x == G::EtaPlus && y == G::MuMinus) return LinearTerm{{G::X, GaussRational(-1)}, {G::R, -kI}};
    if (x == G::EtaMinus && y == G::MuPlus) return LinearTerm{{G::X, GaussRational(-1)}, {G::R, kI}};
    if ((x == G::EtaPlus && y == G::MuPlus) || (x == G::EtaMinus && y == G::MuMinus)) return LinearTerm{};
    if ((x == G::X && y == G::R) || (x == G::EtaPlus && y == G::EtaMinus) ||
        (x == G::MuPlus && y == G::MuMinus))
      return LinearTerm{};
    return std::nullopt;
  };
  if (auto t = direct(a, b)) return *t;
  if (auto t = direct(b, a)) {
    for (auto& [g, c] : *t) c = -c;
    return *t;
  }
  return {};
}

NCMonomial NCMonomial::of(Generator g, std::uint32_t power) {
  NCMonomial m;
  m[g] = power;
  return m;
}

std::uint32_t NCMonomial::degree() const {
  std::uint32_t d = 0;
  for (auto e : exponents) d += e;
  return d;
}

NCPoly::NCPoly(const GaussRational& scalar) {
  if (!scalar.is_zero()) terms_.emplace(NCMonomial::unit(), scalar);
}

NCPoly NCPoly::monomial(const NCMonomial& m, const GaussRational& coeff) {
  NCPoly p;
  p.add_term(m, coeff);
  return p;
}

GaussRational NCPoly::coeff(const NCMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRational() : it->second;
}

std::uint32_t NCPoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<GaussRational> NCPoly::as_scalar() const {
  if (terms_.empty()) return GaussRational();
  if (terms_.size() == 1 && terms_.begin()->first.is_unit()) return terms_.begin()->second;
  return std::nullopt;
}

void NCPoly::add_term(const NCMonomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const GaussRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const GaussRational c = ca * cb;
      const NCPoly prod = monomial_product(ma, mb);
      for (const auto& [m, k] : prod.terms()) out.add_term(m, c * k);
    }
  return out;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<NCMonomial, GaussRational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() > y.first.degree();
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : ordered) {
    int sign = 1;
    std::string mag;
    if (sgn(c.im()) == 0) {
      sign = sgn(c.re());
      const Rational a = abs(c.re());
      if (!(a == 1 && !mono.is_unit())) mag = a.get_str();
    } else if (sgn(c.re()) == 0) {
      sign = sgn(c.im());
      const Rational a = abs(c.im());
      mag = a == 1 ? "i" : a.get_str() + " i";
    } else {
      mag = c.str();
    }
    std::string text = mag;
    if (!mono.is_unit()) text += (mag.empty() ? "" : " ") + monomial_str(mono);
    if (first) {
      out += (sign < 0 ? "-" : "") + text;
    } else {
      out += (sign < 0 ? " - " : " + ") + text;
    }
    first = false;
  }
  return out;
}

NCPoly pow(const NCPoly& base, unsigned exponent) {
  NCPoly result(1);
  for (unsigned k = 0; k < exponent; ++k) result = result * base;
  return result;
}

NCPoly commutator(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

NCPoly q_plus() { return -(NCPoly::generator(Generator::X) + kI * NCPoly::generator(Generator::R)); }
NCPoly q_minus() { return -(NCPoly::generator(Generator::X) - kI * NCPoly::generator(Generator::R)); }

NCPoly u1_minus() { return NCPoly::generator(Generator::EtaPlus) + NCPoly::generator(Generator::EtaMinus); }
NCPoly u2_minus() {
  return -kI * (NCPoly::generator(Generator::EtaPlus) - NCPoly::generator(Generator::EtaMinus));
}
NCPoly u1_plus() { return NCPoly::generator(Generator::MuPlus) + NCPoly::generator(Generator::MuMinus); }
NCPoly u2_plus() { return -kI * (NCPoly::generator(Generator::MuPlus) - NCPoly::generator(Generator::MuMinus)); }

NCPoly normal_form(const Word& word, const RewriteOptions& options) {
  using Letters = std::vector<Generator>;
  std::map<Letters, GaussRational> pending;
  auto add = [&pending](const Letters& w, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = pending.emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) pending.erase(it);
  };
  for (const auto& t : word) add(t.letters, t.coeff);

  auto inversions = [](const Letters& w) {
    std::vector<std::size_t> at;
    for (std::size_t p = 0; p + 1 < w.size(); ++p)
      if (w[p] > w[p + 1]) at.push_back(p);
    return at;
  };

  std::mt19937_64 rng(options.seed);
  NCPoly out;
  std::uint64_t steps = 0;
  while (!pending.empty()) {
    auto it = pending.begin();
    if (options.order == RewriteOrder::Random && pending.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
      std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
    }
    Letters w = it->first;
    GaussRational c = it->second;
    pending.erase(it);

    const auto inv = inversions(w);
    if (inv.empty()) {
      NCMonomial m;
      for (auto g : w) ++m[g];
      out.add_term(m, c);
      continue;
    }
    if (++steps > options.fuel) throw FuelExhausted("normal_form: rewrite fuel exhausted after " +
                                                    std::to_string(options.fuel) + " steps");
    std::size_t p = inv.front();
    if (options.order == RewriteOrder::Rightmost) {
      p = inv.back();
    } else if (options.order == RewriteOrder::Random) {
      std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);
      p = inv[pick(rng)];
    }
    // w = ... b a ... with a < b:  b a = a b + [b,a].
    Letters swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    add(swapped, c);
    for (const auto& [g, k] : structure_bracket(w[p], w[p + 1])) {
      Letters shorter;
      shorter.reserve(w.size() - 1);
      shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      shorter.push_back(g);
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(p) + 2, w.end());
      add(shorter, c * k);
    }
  }
  return out;
}

NCPoly laplacian_element() {
  const NCPoly x = NCPoly::generator(Generator::X);
  const NCPoly r = NCPoly::generator(Generator::R);
  const NCPoly ep = NCPoly::generator(Generator::EtaPlus);
  const NCPoly em = NCPoly::generator(Generator::EtaMinus);
  const NCPoly mp = NCPoly::generator(Generator::MuPlus);
  const NCPoly mm = NCPoly::generator(Generator::MuMinus);
  return -(x * x) - r * r - (ep * em + em * ep + mp * mm + mm * mp);
}

NCPoly laplacian_from_horocyclic() {
  const NCPoly x = NCPoly::generator(Generator::X);
  const NCPoly r = NCPoly::generator(Generator::R);
  const NCPoly squares = u1_minus() * u1_minus() + u2_minus() * u2_minus() + u1_plus() * u1_plus() +
                         u2_plus() * u2_plus();
  return -(x * x) - r * r - GaussRational(make_rational(1, 2)) * squares;
}

NCPoly su_minus_power(unsigned m) { return pow(u1_minus(), m); }

bool ladder_identity_check(unsigned m) {
  if (m == 0) throw InputError("ladder_identity_check: m must be positive");
  auto one_side = [m](Generator eta, Generator mu, const NCPoly& q) {
    const NCPoly e = NCPoly::generator(eta);
    const NCPoly u = NCPoly::generator(mu);
    const NCPoly lhs = pow(e, m) * pow(u, m);
    const GaussRational mm(static_cast<long>(m));
    const GaussRational shift(static_cast<long>(m) * (static_cast<long>(m) - 1));
    const NCPoly rhs = pow(e, m - 1) * pow(u, m) * e + pow(e, m - 1) * pow(u, m - 1) * (mm * q - NCPoly(shift));
    return lhs == rhs;
  };
  return one_side(Generator::EtaPlus, Generator::MuMinus, q_plus()) &&
         one_side(Generator::EtaMinus, Generator::MuPlus, q_minus());
}

NCPoly q_product(unsigned m, Sign sign) {
  const NCPoly q = sign == Sign::Plus ? q_plus() : q_minus();
  NCPoly prod(1);
  for (unsigned k = 1; k <= m; ++k) {
    const GaussRational kk(static_cast<long>(k));
    const GaussRational shift(static_cast<long>(k) * (static_cast<long>(k) - 1));
    prod = prod * (kk * q - NCPoly(shift));
  }
  return prod;
}

QDecomposition commutation_Q_decomposition(unsigned m, Sign sign) {
  if (m == 0) throw InputError("commutation_Q_decomposition: m must be positive");
  const Generator eta = sign == Sign::Plus ? Generator::EtaPlus : Generator::EtaMinus;
  const Generator mu = sign == Sign::Plus ? Generator::MuMinus : Generator::MuPlus;
  const NCPoly full = pow(NCPoly::generator(eta), m) * pow(NCPoly::generator(mu), m);
  QDecomposition out;
  for (const auto& [mono, c] : full.terms()) {
    if (mono[eta] > 0) {
      out.ascending_part.add_term(mono, c);
    } else {
      out.product_part.add_term(mono, c);
    }
  }
  out.expected_product = q_product(m, sign);
  return out;
}

InversionConstants inversion_constants(long n, unsigned a, unsigned b, const GaussRational& lambda) {
  const long al = static_cast<long>(a);
  const long bl = static_cast<long>(b);
  const GaussRational base = lambda + GaussRational(al + bl);
  const GaussRational weight(n + al - bl);
  InversionConstants out{base + weight, base - weight, GaussRational(1), GaussRational(1)};
  for (long k = 1; k <= al; ++k) out.p_plus *= GaussRational(k) * out.q_plus - GaussRational(k * (k - 1));
  for (long k = 1; k <= bl; ++k) out.p_minus *= GaussRational(k) * out.q_minus - GaussRational(k * (k - 1));
  return out;
}

FormalState FormalState::horocyclic_invariant(long n, unsigned a, unsigned b, const GaussRational& lambda) {
  const long al = static_cast<long>(a);
  const long bl = static_cast<long>(b);
  return {-(lambda + GaussRational(al + bl)), kI * GaussRational(n + al - bl),
          {Generator::EtaPlus, Generator::EtaMinus}};
}

NCPoly apply_to_state(const NCPoly& p, const FormalState& state) {
  const auto& ann = state.annihilators;
  if (ann.contains(Generator::X) || ann.contains(Generator::R))
    throw InputError("apply_to_state: X and R act by eigenvalues and cannot be annihilators");
  // [eta+-, mu-+] = Q+-: both annihilating forces the Q eigenvalue to vanish.
  const GaussRational q_plus_value = -(state.lambda_x + kI * state.lambda_r);
  const GaussRational q_minus_value = -(state.lambda_x - kI * state.lambda_r);
  if (ann.contains(Generator::EtaPlus) && ann.contains(Generator::MuMinus) && !q_plus_value.is_zero())
    throw InputError("apply_to_state: eta+ and mu- both annihilate but Q+ eigenvalue is " + q_plus_value.str());
  if (ann.contains(Generator::EtaMinus) && ann.contains(Generator::MuPlus) && !q_minus_value.is_zero())
    throw InputError("apply_to_state: eta- and mu+ both annihilate but Q- eigenvalue is " + q_minus_value.str());

  NCPoly out;
  for (const auto& [mono, c] : p.terms()) {
    const auto e = mono[Generator::EtaPlus];
    const auto f = mono[Generator::EtaMinus];
    if ((e > 0 && ann.contains(Generator::EtaPlus)) || (f > 0 && ann.contains(Generator::EtaMinus))) continue;
    // eta+^e eta-^f v is a joint eigenvector with shifted eigenvalues.
    const GaussRational lx = state.lambda_x - GaussRational(static_cast<long>(e + f));
    const GaussRational lr = state.lambda_r + kI * GaussRational(static_cast<long>(e) - static_cast<long>(f));
    const GaussRational scalar = c * pow(lx, mono[Generator::X]) * pow(lr, mono[Generator::R]);
    if (scalar.is_zero()) continue;
    if (e == 0 && f == 0) {
      if ((mono[Generator::MuPlus] > 0 && ann.contains(Generator::MuPlus)) ||
          (mono[Generator::MuMinus] > 0 && ann.contains(Generator::MuMinus)))
        continue;
    }
    NCMonomial residual = mono;
    residual[Generator::X] = 0;
    residual[Generator::R] = 0;
    out.add_term(residual, scalar);
  }
  return out;
}

bool horocyclic_homogeneity_check(unsigned order) {
  for (unsigned a = 0; a <= order; ++a) {
    const NCPoly p = pow(u1_minus(), a) * pow(u2_minus(), order - a);
    for (const auto& [mono, c] : p.terms()) {
      const auto eta_degree = mono[Generator::EtaPlus] + mono[Generator::EtaMinus];
      if (eta_degree != order || mono.degree() != order) return false;
    }
  }
  return true;
}

}  // namespace prres::ncalg
