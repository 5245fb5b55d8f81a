#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "utgrad/descriptor.hpp"

namespace utgrad {

/// A graded variable. A sum x^(a) + x^(b) of variables of distinct degrees
/// sharing one index is stored as a single variable listing both degrees; it
/// ranges over A_a + A_b.
struct GradedVariable {
  int index = 0;
  std::vector<GroupElement> degrees;

  friend bool operator==(const GradedVariable&, const GradedVariable&) = default;
};

/// A Lie bracket monomial: a binary tree with variables at the leaves.
class LieTerm {
 public:
  static LieTerm var(GradedVariable v);
  static LieTerm bracket(LieTerm a, LieTerm b);
  /// [[...[a1, a2], ...], am]
  static LieTerm left_normed(const std::vector<LieTerm>& terms);

  bool is_leaf() const;
  const GradedVariable& variable() const;  // leaves only
  const LieTerm& left() const;             // brackets only
  const LieTerm& right() const;

  /// Leaves from left to right.
  std::vector<GradedVariable> variables() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit LieTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A multilinear combination of bracket monomials, or the ad-power
/// f_{g,h}(x^g, x^h) = ad(x^g)^n x^h.
struct GradedLiePolynomial {
  enum class Form { multilinear, adpower };

  Form form = Form::multilinear;
  std::vector<std::pair<std::int64_t, LieTerm>> terms;
  // adpower only
  int power = 0;
  std::optional<GroupElement> g, h;

  /// Checks the multilinear shape: each variable once per monomial, one
  /// variable set for all monomials. Throws InputError.
  void validate() const;
  std::string to_string() const;
};

GradedLiePolynomial multilinear(std::vector<std::pair<std::int64_t, LieTerm>> terms);
GradedLiePolynomial adpower(int power, GroupElement g, GroupElement h);

/// xi_sigma = [xi_s(1), ..., xi_s(n-1)] with xi_i = [x_{2i-1}^(1), x_{2i}^(eta_i)].
/// `sigma` is a permutation of {0, ..., n-2}.
GradedLiePolynomial make_xi(const AbelianGroup& group, const EtaSequence& eta, const std::vector<int>& sigma);

enum class XiPrimeVariant {
  /// xi'_i = [x^(1) + x^(g), x^(g_i) + x^(g g_i)]
  summed,
  /// xi'_i = [x^(1), x^(g_i) + x^(g g_i)], unsummed [x^(1), x^(g_i)] at i = n/2 for even n
  half_summed,
};

GradedLiePolynomial make_xi_prime(const AbelianGroup& group, const GroupElement& g, const EtaSequence& eta,
                                  const std::vector<int>& sigma, XiPrimeVariant variant);

/// Value of a multilinear polynomial under an assignment index -> vector.
Vector evaluate(const GradedLiePolynomial& p, const GradedSpace& space, const std::map<int, Vector>& assignment);

struct MembershipResult {
  bool holds = true;
  /// A basis substitution with nonzero value when the identity fails.
  std::map<int, Vector> witness;
};

/// Decides whether p is a graded identity. A single monomial is decided by
/// spans of values; combinations fall back to basis substitution.
MembershipResult holds_multilinear(const GradedLiePolynomial& p, const GradedSpace& space);
MembershipResult holds_multilinear(const GradedLiePolynomial& p, const Grading& g);

/// Evaluates every basis substitution. Throws BudgetExceeded past `budget` tuples.
MembershipResult holds_multilinear_bruteforce(const GradedLiePolynomial& p, const GradedSpace& space,
                                              std::uint64_t budget = 5'000'000);

struct AdPowerResult {
  bool identity_for_all_h = true;
  // witness when some f_{g,h} fails: x in A_g, y in A_h, ad(x)^n y != 0
  std::optional<GroupElement> h;
  std::optional<UTMatrix> x, y;
};

/// Whether f_{g,h} is an identity of g for every h. It is exactly when
/// A_g lies in span{I} + J; otherwise a basis witness is returned.
AdPowerResult holds_adpower(const GroupElement& deg, const Grading& g);

struct Separator {
  enum class Direction { holds_in_first, holds_in_second };
  GradedLiePolynomial polynomial;
  Direction direction;
  std::string family;  // "xi", "xi'", "f"
};

std::string direction_name(Separator::Direction d);

/// First polynomial among f_{g,h}, xi_sigma and xi'_sigma holding in exactly
/// one of build(a), build(b), regardless of whether they are equivalent.
std::optional<Separator> search_separator(const GradingDescriptor& a, const GradingDescriptor& b, FieldSpec f);

/// nullopt when the descriptors are practically isomorphic; otherwise a
/// separator. Throws Error if the search is exhausted on non-equivalent input.
std::optional<Separator> find_separator(const GradingDescriptor& a, const GradingDescriptor& b, FieldSpec f);

}  // namespace utgrad
