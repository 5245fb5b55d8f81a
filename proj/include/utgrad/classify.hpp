#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "utgrad/descriptor.hpp"

namespace utgrad {

struct ClassificationTrace {
  enum class Branch { n2, elementary, type2 };

  Branch branch = Branch::n2;
  std::optional<GroupElement> g_main;  // absent for n = 2
  /// Conjugators in the order applied; `composed` is their product (last applied on the left).
  std::vector<std::pair<std::string, UTMatrix>> conjugators;
  std::optional<UTMatrix> composed;
  /// Shifts r with target + r semihomogeneous.
  std::vector<std::pair<std::string, UTMatrix>> shifts;
  /// Intermediate subspaces, by name.
  std::vector<std::pair<std::string, Subspace>> subspaces;
  /// Signs found for the homogeneous bases e_{i,i+1} - eps_i e_{n-i,n-i+1}.
  std::vector<Scalar> epsilons;
};

std::string branch_name(ClassificationTrace::Branch b);

struct Classification {
  GradingDescriptor descriptor;  // canonical
  GradingDescriptor raw;         // as read off the normalized frame
  ClassificationTrace trace;
};

/// Degree g of the image of e_11 + e_nn modulo J + span{I}, read inside the
/// centralizer of e_1n within T + J, where T centralizes C(J^(n-2)) modulo J^2.
/// Requires n >= 3.
GroupElement main_division_degree(const Grading& g);

/// r in `allowed_shift` with target + r in A_degree + span{I}, or nullopt.
std::optional<UTMatrix> semihomogenize(const Grading& g, const UTMatrix& target, const GroupElement& degree,
                                       const Subspace& allowed_shift);

/// Replaces x- by x- + [x+, [x-, x+]], then x+ by x+ - (w/2) e_ab where
/// [x-, x+] = w e_ab and (a, b) is where x- has diagonal entries 1 and -1.
/// The returned pair commutes. Requires characteristic other than 2.
std::pair<UTMatrix, UTMatrix> commuting_adjustment(const Grading& g, const UTMatrix& x_minus, const UTMatrix& x_plus);

/// Upper unitriangular P with P x P^-1 diagonal for every x in the family.
/// Throws ClassificationError when no such P exists.
UTMatrix diagonalize_frame(const std::vector<UTMatrix>& elements);

/// Descriptor of a verified grading together with the conjugation that
/// exhibits its homogeneous frame. Throws InputError for an invalid grading
/// and ClassificationError when an expected witness is missing.
Classification classify(const Grading& g);

}  // namespace utgrad
