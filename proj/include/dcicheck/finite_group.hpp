#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dcicheck/perm_group.hpp"
#include "dcicheck/permutation.hpp"

namespace dcicheck {

/// An abstract finite group stored as a Cayley table. Elements are indices
/// 0..order-1; index 0 is always the identity.
class FiniteGroup {
 public:
  using Element = std::uint32_t;
  using ElementSet = std::vector<Element>;

  FiniteGroup() = default;
  /// Validates closure, identity at index 0, inverses and (when order <= 64)
  /// associativity; throws InputError otherwise.
  FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<Element>> table);

  /// Closure of permutations; elements sorted by image array, labels in
  /// cycle notation.
  static FiniteGroup from_permutations(std::string name, std::size_t degree,
                                       const std::vector<Permutation>& generators);

  const std::string& name() const { return name_; }
  std::size_t order() const { return labels_.size(); }
  Element identity() const { return 0; }
  Element mul(Element x, Element y) const { return table_[x][y]; }
  Element inverse(Element x) const { return inverse_[x]; }
  Element power(Element x, std::int64_t k) const;
  std::size_t element_order(Element x) const { return orders_[x]; }

  const std::string& label(Element x) const { return labels_.at(x); }
  /// Parses a single element label; throws InputError for unknown labels.
  Element parse_element(std::string_view text) const;
  /// Parses "x, y, z" (optionally wrapped in braces); commas inside
  /// parentheses do not separate items. Result sorted and deduplicated.
  ElementSet parse_set(std::string_view text) const;
  std::vector<std::string> labels_of(const ElementSet& s) const;
  std::string format_set(const ElementSet& s) const;
  /// Registers an extra spelling for an element; whitespace is ignored.
  void add_alias(std::string_view label, Element x);

  /// A small generating set (as few elements as a search over pairs and
  /// triples finds).
  const std::vector<Element>& generators() const { return generators_; }

  /// Subgroup generated by the given elements, sorted.
  ElementSet subgroup(const std::vector<Element>& gens) const;
  bool is_abelian() const;
  bool is_normal(const ElementSet& subgroup) const;
  ElementSet derived_subgroup() const;

  /// Cayley table exhaustive checks; used by tests.
  bool check_associativity() const;

  /// For element labels from a permutation representation.
  const std::vector<Permutation>& permutation_elements() const { return perms_; }

 private:
  void finish();

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  std::vector<std::size_t> orders_;
  std::vector<Element> generators_;
  std::map<std::string, Element, std::less<>> by_label_;
  std::vector<Permutation> perms_;
  std::size_t perm_degree_ = 0;
};

/// Dihedral group of order 2n: index i is a^i and index n+i is a^i*b.
/// Labels "1", "a", "a^i", "b", "a*b", "a^i*b"; the parser also accepts
/// "e", "a^0", "ab", "a^ib".
FiniteGroup dihedral(std::size_t n);
FiniteGroup cyclic(std::size_t n);
/// Even permutations of {1,2,3,4}.
FiniteGroup alt4();
/// <(1,2,3),(4,5,6),(2,3)(5,6)> on 6 points, order 18.
FiniteGroup quasidihedral18();
/// "dihedral:n", "cyclic:n", "alt4" or "q18".
FiniteGroup group_from_selector(std::string_view selector);

struct GroupAutomorphism {
  std::vector<FiniteGroup::Element> mapping;
  friend auto operator<=>(const GroupAutomorphism&, const GroupAutomorphism&) = default;
};

/// All automorphisms, by trying every image tuple of the generating set.
/// Throws CapExceeded when the order exceeds 64.
std::vector<GroupAutomorphism> automorphisms(const FiniteGroup& g);

bool is_automorphism(const FiniteGroup& g, const GroupAutomorphism& phi);

/// Image set, sorted. Throws InputError for an invalid index.
FiniteGroup::ElementSet apply_automorphism(const GroupAutomorphism& phi, const FiniteGroup::ElementSet& s);

/// Right multiplication by g: x -> x*g, as a permutation of the elements.
Permutation right_translation(const FiniteGroup& g, FiniteGroup::Element x);
/// The right regular representation, generated by the translations of the
/// group's generators.
PermGroup right_regular(const FiniteGroup& g);

/// Shape invariants used to recognize regular subgroups: the number of
/// elements of each order and the size of the derived subgroup.
struct GroupFingerprint {
  std::map<std::size_t, std::size_t> order_counts;
  std::size_t derived_size = 0;
  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

GroupFingerprint fingerprint(const FiniteGroup& g);
/// Fingerprint of a permutation group by element enumeration.
GroupFingerprint fingerprint(const PermGroup& g, std::uint64_t cap = 100'000);

}  // namespace dcicheck
