#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "utgrad/group.hpp"
#include "utgrad/triangular.hpp"

namespace utgrad {

/// A candidate decomposition of UT_n into components indexed by group
/// elements. Only nonzero components are stored, keyed in the global order.
/// The grading axioms are checked by verify_grading, not at construction.
class Grading {
 public:
  Grading(int n, FieldSpec f, AbelianGroup group, std::map<GroupElement, Subspace> components);

  int n() const { return n_; }
  FieldSpec field() const { return field_; }
  const AbelianGroup& group() const { return group_; }
  std::size_t dim() const { return ut_dim(n_); }
  const std::map<GroupElement, Subspace>& components() const { return components_; }

  /// A_g, the zero subspace when g is outside the support.
  Subspace component(const GroupElement& g) const;

  /// The unique degree whose component contains the nonzero vector v.
  std::optional<GroupElement> degree_of(const Vector& v) const;
  std::optional<GroupElement> degree_of(const UTMatrix& x) const { return degree_of(x.coords()); }

  friend bool operator==(const Grading&, const Grading&) = default;

 private:
  int n_;
  FieldSpec field_;
  AbelianGroup group_;
  std::map<GroupElement, Subspace> components_;
};

struct VerificationFailure {
  enum class Kind { overlap, not_spanning, bracket_violation };
  Kind kind;
  std::vector<GroupElement> degrees;  // offending degree(s)
  std::vector<Vector> vectors;        // witness vectors
  std::string describe(int n) const;
};

struct VerificationReport {
  bool ok = true;
  std::vector<VerificationFailure> failures;
};

std::string kind_name(VerificationFailure::Kind k);

/// Checks directness, spanning, and [A_g, A_h] ⊆ A_gh on basis pairs.
VerificationReport verify_grading(const Grading& g);

std::set<GroupElement> support(const Grading& g);
/// Degrees whose component is not contained in span{I}.
std::set<GroupElement> essential_support(const Grading& g);

/// True iff W is the sum of its intersections with the components.
bool is_graded_subspace(const Grading& g, const Subspace& w);
/// The nonzero intersections W ∩ A_g.
std::map<GroupElement, Subspace> homogeneous_parts(const Grading& g, const Subspace& w);

struct SemihomogeneousWitness {
  UTMatrix y;  // in A_g
  UTMatrix z;  // central
};

/// x = y + z with y in A_deg and z in span{I}, when such a split exists.
std::optional<SemihomogeneousWitness> is_semihomogeneous(const Grading& g, const UTMatrix& x,
                                                         const GroupElement& deg);

/// Componentwise image f(A_g).
Grading transport(const Automorphism& f, const Grading& g);

/// A vector space with a bracket and a decomposition into homogeneous
/// components, given by bases. Used to evaluate graded polynomials on a
/// grading or on one of its quotients.
struct GradedSpace {
  FieldSpec field;
  AbelianGroup group;
  std::size_t dim;
  std::map<GroupElement, Matrix> bases;  // nonzero components only
  std::function<Vector(const Vector&, const Vector&)> bracket;

  Vector zero() const { return zero_vector(field, dim); }
};

GradedSpace graded_space(const Grading& g);

/// The grading induced on UT_n / ideal, written in coordinates along a fixed
/// complement of the ideal.
class QuotientGrading {
 public:
  /// Throws InputError unless `ideal` is a graded ideal of g.
  QuotientGrading(const Grading& g, const Subspace& ideal);

  std::size_t dim() const { return coords_.dimension(); }
  const std::map<GroupElement, Subspace>& components() const { return components_; }
  const QuotientCoords& coords() const { return coords_; }
  const Grading& parent() const { return parent_; }

  /// Bracket in quotient coordinates.
  Vector bracket(const Vector& a, const Vector& b) const;

  GradedSpace space() const;

 private:
  Grading parent_;
  Subspace ideal_;
  QuotientCoords coords_;
  std::map<GroupElement, Subspace> components_;
};

QuotientGrading quotient_grading(const Grading& g, const Subspace& ideal);

}  // namespace utgrad
