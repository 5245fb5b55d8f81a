#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "utgrad/grading.hpp"

namespace utgrad {

using EtaSequence = std::vector<GroupElement>;

/// Symbolic class representative of a grading.
///   elementary: e_ij has degree eta_i ... eta_{j-1}; I has degree t.
///   type2:      built on the frame X_ij^± = e_ij ± e_{n+1-j,n+1-i}; X_ii^- in
///               degree 1, X_ii^+ in degree g, I in degree t.
struct GradingDescriptor {
  enum class Kind { elementary, type2 };

  Kind kind = Kind::elementary;
  int n = 0;
  AbelianGroup group{{}, 0};
  GroupElement t;
  std::optional<GroupElement> g;  // type2 only
  EtaSequence eta;

  friend bool operator==(const GradingDescriptor&, const GradingDescriptor&) = default;

  std::string to_string() const;
};

std::string kind_name(GradingDescriptor::Kind k);

GradingDescriptor elementary(const AbelianGroup& group, GroupElement t, EtaSequence eta);
GradingDescriptor type2(const AbelianGroup& group, GroupElement t, GroupElement g, EtaSequence eta);

/// Checks the structural invariants; with a field, also the characteristic
/// restriction of type2. Throws InputError.
void validate(const GradingDescriptor& d, std::optional<FieldSpec> field = std::nullopt);

/// Explicit grading for a descriptor.
Grading build(const GradingDescriptor& d, FieldSpec field);

EtaSequence rev(const EtaSequence& eta);
bool is_symmetric(const EtaSequence& eta);

/// eta = eta' or eta = rev eta'.
bool eta_equiv(const EtaSequence& a, const EtaSequence& b);
/// For symmetric sequences: entries i <= floor((n-1)/2) agree up to a factor
/// g; for even n the middle entry agrees exactly.
bool eta_equiv_g(const AbelianGroup& group, const GroupElement& g, const EtaSequence& a, const EtaSequence& b);

bool graded_isomorphic(const GradingDescriptor& a, const GradingDescriptor& b);
bool practically_isomorphic(const GradingDescriptor& a, const GradingDescriptor& b);

/// Order-minimal representative of the graded isomorphism class.
GradingDescriptor canonical(const GradingDescriptor& d);

struct ClassCount {
  std::size_t graded = 0;
  std::size_t practical = 0;
  std::size_t elementary_graded = 0;
  std::size_t elementary_practical = 0;
  std::size_t type2_graded = 0;
  std::size_t type2_practical = 0;
};

/// Canonical descriptors of all graded classes, in a fixed order:
/// elementary before type2, then by (g, eta, t).
std::vector<GradingDescriptor> canonical_descriptors(int n, const AbelianGroup& group, bool char2);

ClassCount count_classes(int n, const AbelianGroup& group, bool char2);

/// Elements of order exactly 2.
std::vector<GroupElement> involutions(const AbelianGroup& group);

/// A uniformly random eta over `pool` (symmetric when requested).
EtaSequence random_eta(int n, const std::vector<GroupElement>& pool, bool symmetric, std::mt19937_64& rng);

}  // namespace utgrad
