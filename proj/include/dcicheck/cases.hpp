#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dcicheck {

struct CaseCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CaseReport {
  std::size_t p = 0;
  std::string case_id;
  std::size_t primitive_root = 0;
  std::vector<CaseCheck> checks;

  bool passed() const;
};

/// Machine checks of the four-way case split on the number of classes of
/// the stabilizer equivalence of P, at a concrete prime p in {5, 7}, with
/// R = <r1, r2, r3> and pi = sigma (y_1, ..., y_6), sigma in {1, (5,6)}.
///
///   "I"   one class: exhaustive over pi = sigma(c^u_i) with u_1 = 0, only
///         pi = sigma lands here; for sigma = (5,6) every pair of points is
///         moved by pi as by an explicit element of G, so pi is in G^(2).
///   "II"  six classes: exhaustive over pi = sigma(alpha^v_i); P^(2) = T,
///         the blockwise element gamma lies in G^(2) and conjugates r1^pi
///         to r1.
///   "III" two classes: exhaustive over the normalized shape; the
///         restrictions of r1 and r3^-1 r3^pi give pi in G^(2) for sigma = 1,
///         the hat-g table does it for sigma = (5,6).
///   "IV"  three classes: only sigma = 1 is possible; pi = g' g'' in G^(2).
///   "reduction"  the Sym(3) block-action dichotomy at this p, a searched
///         conjugator from the right regular dihedral group onto the block
///         model, and seeded checks of the "pi in B" normalization.
///
/// Throws InputError for p outside {5, 7} or an unknown case.
CaseReport reproduce_case_analysis(std::size_t p, std::string_view case_id, std::uint64_t seed = 1);

}  // namespace dcicheck
