#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "utgrad/descriptor.hpp"

namespace utgrad {

enum class CensusMode { full, pruned, sampled };

std::string mode_name(CensusMode m);
CensusMode parse_mode(const std::string& text);

struct CensusConfig {
  int n = 2;
  FieldSpec field = FieldSpec::prime(2);
  AbelianGroup group = AbelianGroup::cyclic(2);
  CensusMode mode = CensusMode::pruned;
  std::uint64_t budget = 50'000'000;  // search nodes
  std::uint64_t seed = 1;             // sampled mode
  int twists = 20;                    // sampled mode: random automorphisms per class
  int jobs = 1;
};

struct EnumerationStats {
  std::uint64_t gradings = 0;
  std::uint64_t nodes = 0;
};

/// Every subspace of F^dim, by increasing dimension.
std::vector<Subspace> all_subspaces(FieldSpec f, std::size_t dim);

/// Streams every G-grading of UT_n exactly once, in a deterministic order.
/// full: all ordered decompositions, filtered by verify_grading.
/// pruned: deg I and deg e_1n first, then graded decompositions of J^k from
/// the top of the chain down, then the diagonal lifts, checking brackets
/// against the fixed lower part as each vector is placed.
/// Throws BudgetExceeded with the node count reached.
EnumerationStats enumerate_gradings(const CensusConfig& cfg, const std::function<void(const Grading&)>& fn);

/// Every automorphism of UT_n over a finite field, in enumeration order.
std::vector<Automorphism> automorphism_list(int n, FieldSpec f, std::uint64_t budget = 10'000'000);

/// f with transport(f, a) = b, or nullopt after exhausting the list.
std::optional<Automorphism> graded_isomorphic_search(const Grading& a, const Grading& b,
                                                     const std::vector<Automorphism>& autos);
std::optional<Automorphism> graded_isomorphic_search(const Grading& a, const Grading& b);

/// f inducing a graded isomorphism of the central quotients, or nullopt.
std::optional<Automorphism> practical_isomorphic_search(const Grading& a, const Grading& b,
                                                        const std::vector<Automorphism>& autos);
std::optional<Automorphism> practical_isomorphic_search(const Grading& a, const Grading& b);

/// Number of automorphisms with transport(f, g) = g.
std::uint64_t stabilizer_size(const Grading& g, const std::vector<Automorphism>& autos);

struct CensusClass {
  GradingDescriptor descriptor;
  std::uint64_t orbit_size = 0;  // |Aut| / |Stab|
  std::uint64_t found = 0;       // gradings enumerated in this class (full and pruned modes)
  std::string notes;
};

struct CensusResult {
  CensusConfig config;
  std::uint64_t total_gradings = 0;  // enumerated; in sampled mode the sum of orbit sizes
  std::uint64_t nodes = 0;
  std::uint64_t automorphisms = 0;
  std::vector<CensusClass> classes;
  std::size_t practical_classes = 0;
  ClassCount predicted;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
  std::size_t elementary_classes() const;
  std::size_t type2_classes() const;
  /// Deterministic text table.
  std::string report() const;
};

/// Buckets gradings into isomorphism classes and compares them with the
/// predicted class list. Mismatches are collected, not thrown.
CensusResult census(const CensusConfig& cfg);

}  // namespace utgrad
