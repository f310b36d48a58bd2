#pragma once

// PBW normal forms in the universal enveloping algebra of so(1,3)_C, generated
// by mu+, mu-, X, R, eta+, eta- in that (PBW) order. Coefficients are exact
// Gaussian rationals.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prres/exact.hpp"
#include "prres/lie_core.hpp"

namespace prres::ncalg {

/// Generators listed in PBW order: raising operators left, lowering right.
enum class Generator : std::uint8_t { MuPlus = 0, MuMinus = 1, X = 2, R = 3, EtaPlus = 4, EtaMinus = 5 };

inline constexpr std::size_t kNumGenerators = 6;
inline constexpr std::array<Generator, kNumGenerators> kAllGenerators = {
    Generator::MuPlus, Generator::MuMinus, Generator::X, Generator::R, Generator::EtaPlus, Generator::EtaMinus};

std::string generator_name(Generator g);  // "mu+", "mu-", "X", "R", "eta+", "eta-"
std::optional<Generator> parse_generator(const std::string& name);

/// Matrix of the generator in the 4x4 model.
lie::LieMatrix generator_matrix(Generator g);

/// Linear combination of generators.
using LinearTerm = std::vector<std::pair<Generator, GaussRational>>;

/// [a, b] expressed in generators, from the eta/mu/Q relations together with
/// [X,R] = [eta+,eta-] = [mu+,mu-] = 0.
LinearTerm structure_bracket(Generator a, Generator b);

/// Ordered monomial mu+^a mu-^b X^c R^d eta+^e eta-^f.
struct NCMonomial {
  std::array<std::uint32_t, kNumGenerators> exponents{};

  static NCMonomial unit() { return {}; }
  static NCMonomial of(Generator g, std::uint32_t power = 1);

  std::uint32_t& operator[](Generator g) { return exponents[static_cast<std::size_t>(g)]; }
  std::uint32_t operator[](Generator g) const { return exponents[static_cast<std::size_t>(g)]; }
  std::uint32_t degree() const;
  bool is_unit() const { return degree() == 0; }

  friend auto operator<=>(const NCMonomial&, const NCMonomial&) = default;
};

class NCPoly {
 public:
  using Terms = std::map<NCMonomial, GaussRational>;

  NCPoly() = default;
  NCPoly(const GaussRational& scalar);  // NOLINT: scalars embed as multiples of the unit
  NCPoly(int scalar) : NCPoly(GaussRational(scalar)) {}  // NOLINT
  static NCPoly generator(Generator g) { return monomial(NCMonomial::of(g)); }
  static NCPoly monomial(const NCMonomial& m, const GaussRational& coeff = GaussRational(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of `m` (zero when absent).
  GaussRational coeff(const NCMonomial& m) const;
  std::uint32_t degree() const;
  /// Scalar value when the polynomial is a multiple of the unit.
  std::optional<GaussRational> as_scalar() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const GaussRational& s);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) { return a *= GaussRational(-1); }
  friend NCPoly operator*(NCPoly a, const GaussRational& s) { return a *= s; }
  friend NCPoly operator*(const GaussRational& s, NCPoly a) { return a *= s; }
  /// Algebra product, result in normal form.
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  /// Terms ordered by descending degree, e.g. "mu- eta+ - X - i R".
  std::string str() const;

  void add_term(const NCMonomial& m, const GaussRational& c);

 private:
  Terms terms_;
};

NCPoly pow(const NCPoly& base, unsigned exponent);
NCPoly commutator(const NCPoly& a, const NCPoly& b);

/// Q+ = -(X + iR), Q- = -(X - iR).
NCPoly q_plus();
NCPoly q_minus();
/// Horocyclic generators expressed through the ladder elements:
/// U1- = eta+ + eta-, U2- = -i(eta+ - eta-), U1+ = mu+ + mu-, U2+ = -i(mu+ - mu-).
NCPoly u1_minus();
NCPoly u2_minus();
NCPoly u1_plus();
NCPoly u2_plus();

/// A word: a scalar times an ordered (not necessarily PBW-ordered) product.
struct WordTerm {
  GaussRational coeff{1};
  std::vector<Generator> letters;
};
using Word = std::vector<WordTerm>;

/// Which adjacent inversion the rewriter resolves next.
enum class RewriteOrder { Leftmost, Rightmost, Random };

struct RewriteOptions {
  RewriteOrder order = RewriteOrder::Leftmost;
  std::uint64_t seed = 0;
  std::uint64_t fuel = 50'000'000;
};

/// Rewrites a word into PBW order by repeatedly replacing an adjacent
/// inversion "b a" (a < b) with "a b + [b,a]". Throws FuelExhausted when more
/// than `options.fuel` rewrite steps are needed.
NCPoly normal_form(const Word& word, const RewriteOptions& options = {});

/// -X^2 - R^2 - (eta+ eta- + eta- eta+ + mu+ mu- + mu- mu+).
NCPoly laplacian_element();

/// Same element built from -X^2 - R^2 - (1/2)((U1-)^2 + (U2-)^2 + (U1+)^2 + (U2+)^2).
NCPoly laplacian_from_horocyclic();

/// (eta+ + eta-)^m in normal form.
NCPoly su_minus_power(unsigned m);

enum class Sign { Plus, Minus };

/// eta+^m mu-^m = eta+^{m-1} mu-^m eta+ + eta+^{m-1} mu-^{m-1}(m Q+ - m(m-1)),
/// and the eta-/mu+/Q- mirror, both compared in normal form.
bool ladder_identity_check(unsigned m);

struct QDecomposition {
  NCPoly ascending_part;  // terms with positive eta-degree (right factor eta)
  NCPoly product_part;    // the remaining terms, a polynomial in X, R
  NCPoly expected_product;  // prod_{k=1}^m (k Q - k(k-1))

  bool product_matches() const { return product_part == expected_product; }
};

/// Splits eta+^m mu-^m (Sign::Plus) or eta-^m mu+^m (Sign::Minus).
QDecomposition commutation_Q_decomposition(unsigned m, Sign sign = Sign::Plus);

/// prod_{k=1}^m (k Q - k(k-1)) as a polynomial.
NCPoly q_product(unsigned m, Sign sign);

struct InversionConstants {
  GaussRational q_plus, q_minus, p_plus, p_minus;
};

/// q_{+-} = lambda + a + b +- (n + a - b);
/// p_+ = prod_{k=1}^a (k q_+ - k(k-1)), p_- = prod_{k=1}^b (k q_- - k(k-1)).
InversionConstants inversion_constants(long n, unsigned a, unsigned b, const GaussRational& lambda);

/// Formal joint eigenvector: X v = lambda_x v, R v = lambda_r v, g v = 0 for
/// each annihilator g.
struct FormalState {
  GaussRational lambda_x;
  GaussRational lambda_r;
  std::set<Generator> annihilators;

  /// State v in the kernel of eta+ and eta-, on the line bundle of weight
  /// n + a - b, with X v = -(lambda + a + b) v.
  static FormalState horocyclic_invariant(long n, unsigned a, unsigned b, const GaussRational& lambda);
};

/// Computes P v. The result is written as a polynomial in the ladder
/// generators that still act non-trivially on v (X and R are evaluated);
/// a multiple of the unit means P v is a scalar multiple of v.
/// Throws InputError for annihilator sets inconsistent with the bracket
/// relations, e.g. eta+ v = mu- v = 0 while Q+ v != 0.
NCPoly apply_to_state(const NCPoly& p, const FormalState& state);

/// For every a + b = order, (U1-)^a (U2-)^b lies in span{eta+^j eta-^k : j + k = order}.
bool horocyclic_homogeneity_check(unsigned order);

}  // namespace prres::ncalg
