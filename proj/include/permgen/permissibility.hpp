#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "permgen/generators.hpp"

namespace permgen {

struct PermissibleResult {
  GenerableSet generable;
  GenerableSet permissible;
  /// g(C \ {c}) for each corpus item, in corpus order.
  std::vector<GenerableSet> per_creation;
};

/// p(C) = intersection over c of g(C \ {c}). A singleton corpus gives the
/// empty set because g(empty) is empty.
PermissibleResult permissible_set(const GeneratorSpec& spec, const Corpus& corpus, double tol = kTolGeom);

/// Indices whose removal can change g(C): hull vertices for conv, items
/// attaining a coordinate extreme for box, every item otherwise.
std::vector<std::size_t> critical_items(const GeneratorSpec& spec, const Corpus& corpus, double tol = kTolGeom);

struct Classification {
  enum class Kind { Permissible, Violation, NotGenerable };

  Kind kind = Kind::NotGenerable;
  /// Every c with x in g(C) but not in g(C \ {c}); nonempty iff Violation.
  std::vector<Creation> infringed;
};

const char* to_string(Classification::Kind kind);

Classification classify(const GeneratorSpec& spec, const Corpus& corpus, const Creation& x, double tol = kTolGeom);

struct AdditionReport {
  Classification::Kind case_label;
  PermissibleResult before;
  PermissibleResult after;
  bool unchanged = false;          // p(C + c) = p(C)
  bool includes_before = false;    // p(C) within p(C + c)
  bool strictly_expanded = false;  // witness found in p(C + c) \ p(C)
  std::optional<Creation> witness;
  /// The outcome expected for the case: unchanged for Permissible, strict
  /// expansion witnessed by c itself for Violation, inclusion for NotGenerable.
  bool law_holds = false;
};

/// Throws DuplicateCreation when c is already in the corpus.
AdditionReport add_creation_effect(const GeneratorSpec& spec, const Corpus& corpus, const Creation& c,
                                   double tol = kTolGeom);

struct RadonWitness {
  RadonPartition partition;
  Classification classification;
};

/// Radon point of the first d+2 items, classified against the whole corpus.
/// Throws NotConvexValued or InsufficientPoints.
RadonWitness radon_nonemptiness_witness(const GeneratorSpec& spec, const Corpus& corpus, double tol = kTolGeom);

/// Family of nonempty protected subsets of a corpus.
struct Collection {
  std::vector<Corpus> protected_sets;

  /// Builds protected sets from corpus indices; throws ProtectedSetNotInCorpus
  /// on an out-of-range index and InvalidArgument on an empty set.
  static Collection from_indices(const Corpus& corpus, const std::vector<std::vector<std::size_t>>& sets);
  /// Every item protected on its own.
  static Collection singletons(const Corpus& corpus);
};

/// Intersection over protected sets A of g(C \ A); the empty family gives g(C).
GenerableSet groupwise_permissible(const GeneratorSpec& spec, const Corpus& corpus, const Collection& collection,
                                   double tol = kTolGeom);

/// True iff every set of `b` is contained in some set of `a`.
bool richness_compare(const Collection& a, const Collection& b);

struct SuperadditivityReport {
  /// Violations of the pair family lie within violations of the union.
  bool inclusion_holds = true;
  /// Point generable without A and without B, but not without both.
  std::optional<Creation> strict_witness;
};

/// A and B must be disjoint nonempty subsets of the corpus.
SuperadditivityReport superadditivity_check(const GeneratorSpec& spec, const Corpus& corpus, const Corpus& a,
                                            const Corpus& b, double tol = kTolGeom, std::size_t samples = 10000,
                                            std::uint64_t seed = 0);

}  // namespace permgen
