#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgdd/bigint.hpp"
#include "qgdd/field.hpp"
#include "qgdd/gdd.hpp"
#include "qgdd/linalg.hpp"

namespace qgdd {

/// Number of fat k-subspaces of GF(q^g)^s viewed over GF(q).
BigInt fat_count(unsigned q, unsigned g, unsigned s, unsigned k);

/// Coset label of x in GF(q^g)*/GF(q)*: the smallest encoding among c*x, c in GF(q)*.
Elem coset_label(const Field& ext, Elem x);
/// All (q^g-1)/(q-1) labels, ascending.
std::vector<Elem> coset_labels(const Field& ext);

/// Determinant of the unflattened basis of a fat s-subspace of GF(q^g)^s, as a
/// coset label. Throws WrongDimension or NotFat.
Elem det_invariant(const Subspace& u, const Field& ext);

/// Coset labels selecting orbits of fat s-subspaces.
struct OrbitSelection {
  std::vector<Elem> classes;

  std::size_t alpha() const noexcept { return classes.size(); }
};

/// Index of the GDD built from fat k-subspaces; alpha counts the chosen orbits
/// and only matters for k = s.
BigInt fat_orbit_lambda(unsigned q, unsigned g, unsigned s, unsigned k, unsigned alpha = 1);

struct FatOrbitOptions {
  std::optional<OrbitSelection> selection;  // required iff k = s
  std::optional<std::vector<unsigned>> poly;  // primitive polynomial of GF(q^g)
  std::uint64_t guard = kBruteForceGuard;
};

/// All fat k-subspaces (k < s), or the fat s-subspaces whose det invariant is
/// among the selected classes, with the Desarguesian spread and predicted lambda.
/// Throws TooLarge, SelectionRequired, SelectionOutOfRange.
GddInstance build_fat_orbit_gdd(unsigned q, unsigned g, unsigned s, unsigned k,
                               const FatOrbitOptions& options = {});

/// Projects a 2-(n,k,1)_q design through the point P: blocks through P become
/// the groups, the others become blocks, in GF(q)^(n-1). Only `samples` random
/// lines are checked for the Steiner property. The result is not verified.
/// Throws NotAPoint, AmbientMismatch, NotSteinerSampled, NotAPartition.
GddInstance gdd_from_steiner(const std::vector<Subspace>& design_blocks, const Subspace& point,
                             unsigned samples = 1000, std::uint64_t seed = 0);

}  // namespace qgdd
