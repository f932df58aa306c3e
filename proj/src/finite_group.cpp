#include "dcicheck/finite_group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

#include "dcicheck/error.hpp"

namespace dcicheck {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<Element>> table)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InputError("a group needs at least one element");
  if (table_.size() != n) throw InputError("multiplication table has the wrong size");
  for (std::size_t x = 0; x < n; ++x) {
    if (table_[x].size() != n) throw InputError("multiplication table has the wrong size");
    for (Element y : table_[x]) {
      if (y >= n) throw InputError("multiplication table entry out of range");
    }
    if (table_[0][x] != x || table_[x][0] != x) throw InputError("index 0 is not the identity");
  }
  if (n <= 64 && !check_associativity()) throw InputError("multiplication table is not associative");
  finish();
}

void FiniteGroup::finish() {
  const std::size_t n = labels_.size();
  inverse_.assign(n, 0);
  for (Element x = 0; x < n; ++x) {
    auto it = std::find(table_[x].begin(), table_[x].end(), Element{0});
    if (it == table_[x].end()) throw InputError("element " + labels_[x] + " has no inverse");
    inverse_[x] = static_cast<Element>(it - table_[x].begin());
    if (table_[inverse_[x]][x] != 0) throw InputError("left and right inverses differ");
  }
  orders_.assign(n, 1);
  for (Element x = 0; x < n; ++x) {
    Element y = x;
    while (y != 0) {
      y = table_[y][x];
      ++orders_[x];
    }
  }
  by_label_.clear();
  for (Element x = 0; x < n; ++x) {
    if (!by_label_.emplace(strip_spaces(labels_[x]), x).second) throw InputError("duplicate element label");
  }

  generators_.clear();
  if (n > 1) {
    auto generates = [&](const std::vector<Element>& gens) { return subgroup(gens).size() == n; };
    bool found = false;
    for (Element x = 1; x < n && !found; ++x) {
      if (generates({x})) {
        generators_ = {x};
        found = true;
      }
    }
    for (Element x = 1; x < n && !found; ++x) {
      for (Element y = x + 1; y < n && !found; ++y) {
        if (generates({x, y})) {
          generators_ = {x, y};
          found = true;
        }
      }
    }
    if (!found && n <= 64) {
      for (Element x = 1; x < n && !found; ++x) {
        for (Element y = x + 1; y < n && !found; ++y) {
          for (Element z = y + 1; z < n && !found; ++z) {
            if (generates({x, y, z})) {
              generators_ = {x, y, z};
              found = true;
            }
          }
        }
      }
    }
    if (!found) {
      ElementSet current{0};
      for (Element x = 1; x < n; ++x) {
        if (!std::binary_search(current.begin(), current.end(), x)) {
          generators_.push_back(x);
          current = subgroup(generators_);
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::from_permutations(std::string name, std::size_t degree,
                                           const std::vector<Permutation>& generators) {
  auto elements = brute_force_closure(degree, generators, 100'000);
  std::sort(elements.begin(), elements.end());
  const std::size_t n = elements.size();
  std::unordered_map<Permutation, Element, PermutationHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elements[i], static_cast<Element>(i));
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i][j] = index.at(elements[i] * elements[j]);
  }
  std::vector<std::string> labels;
  for (const auto& e : elements) labels.push_back(e.to_string());
  FiniteGroup g(std::move(name), std::move(labels), std::move(table));
  g.perms_ = std::move(elements);
  g.perm_degree_ = degree;
  g.by_label_.emplace("1", 0);
  g.by_label_.emplace("e", 0);
  return g;
}

FiniteGroup::Element FiniteGroup::power(Element x, std::int64_t k) const {
  std::int64_t m = static_cast<std::int64_t>(orders_[x]);
  k %= m;
  if (k < 0) k += m;
  Element r = 0;
  for (std::int64_t i = 0; i < k; ++i) r = table_[r][x];
  return r;
}

FiniteGroup::Element FiniteGroup::parse_element(std::string_view text) const {
  std::string key = strip_spaces(text);
  auto it = by_label_.find(key);
  if (it != by_label_.end()) return it->second;
  if (!perms_.empty() && !key.empty() && key.front() == '(') {
    auto p = Permutation::parse(key, perm_degree_);
    auto pos = std::lower_bound(perms_.begin(), perms_.end(), p);
    if (pos != perms_.end() && *pos == p) return static_cast<Element>(pos - perms_.begin());
    throw InputError("permutation " + key + " is not an element of " + name_);
  }
  throw InputError("unknown element label '" + std::string(text) + "' for " + name_);
}

FiniteGroup::ElementSet FiniteGroup::parse_set(std::string_view text) const {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw InputError("unbalanced braces in connection set");
    body = body.substr(1, body.size() - 2);
  }
  ElementSet out;
  int depth = 0;
  std::string item;
  auto flush = [&] {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(parse_element(t));
    item.clear();
  };
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw InputError("unbalanced parentheses in connection set");
    if (ch == ',' && depth == 0) {
      flush();
    } else {
      item.push_back(ch);
    }
  }
  if (depth != 0) throw InputError("unbalanced parentheses in connection set");
  flush();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void FiniteGroup::add_alias(std::string_view label, Element x) {
  if (x >= order()) throw InputError("element index out of range");
  auto [it, inserted] = by_label_.emplace(strip_spaces(label), x);
  if (!inserted && it->second != x) throw InputError("alias clashes with an existing label");
}

std::vector<std::string> FiniteGroup::labels_of(const ElementSet& s) const {
  std::vector<std::string> out;
  for (Element x : s) out.push_back(label(x));
  return out;
}

std::string FiniteGroup::format_set(const ElementSet& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += label(s[i]);
  }
  return out + "}";
}

FiniteGroup::ElementSet FiniteGroup::subgroup(const std::vector<Element>& gens) const {
  std::vector<bool> seen(order(), false);
  ElementSet out{0};
  seen[0] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (Element g : gens) {
      Element y = table_[out[k]][g];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroup::is_abelian() const {
  for (Element x : generators_) {
    for (Element y : generators_) {
      if (table_[x][y] != table_[y][x]) return false;
    }
  }
  return true;
}

bool FiniteGroup::is_normal(const ElementSet& h) const {
  for (Element x : h) {
    for (Element g : generators_) {
      Element c = table_[table_[inverse_[g]][x]][g];
      if (!std::binary_search(h.begin(), h.end(), c)) return false;
    }
  }
  return true;
}

FiniteGroup::ElementSet FiniteGroup::derived_subgroup() const {
  std::set<Element> comms;
  for (Element x = 0; x < order(); ++x) {
    for (Element y = 0; y < order(); ++y) {
      comms.insert(table_[table_[table_[inverse_[x]][inverse_[y]]][x]][y]);
    }
  }
  return subgroup(std::vector<Element>(comms.begin(), comms.end()));
}

bool FiniteGroup::check_associativity() const {
  const std::size_t n = order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Element xy = table_[x][y];
      for (std::size_t z = 0; z < n; ++z) {
        if (table_[xy][z] != table_[x][table_[y][z]]) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup dihedral(std::size_t n) {
  if (n < 1) throw InputError("dihedral group needs n >= 1");
  using E = FiniteGroup::Element;
  const std::size_t order = 2 * n;
  std::vector<std::vector<E>> table(order, std::vector<E>(order));
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t i = x % n, s = x / n;
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t j = y % n, t = y / n;
      std::size_t k = s ? (i + n - j) % n : (i + j) % n;
      table[x][y] = static_cast<E>(((s + t) % 2) * n + k);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      std::string a = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
      if (s == 0) {
        labels.push_back(i == 0 ? "1" : a);
      } else {
        labels.push_back(i == 0 ? "b" : a + "*b");
      }
    }
  }
  FiniteGroup g("dihedral:" + std::to_string(n), labels, std::move(table));
  g.add_alias("e", 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::string a = "a^" + std::to_string(i);
    g.add_alias(a, static_cast<E>(i));
    g.add_alias(a + "b", static_cast<E>(n + i));
    g.add_alias(a + "*b", static_cast<E>(n + i));
  }
  if (n > 1) g.add_alias("ab", static_cast<E>(n + 1));
  return g;
}

FiniteGroup cyclic(std::size_t n) {
  if (n < 1) throw InputError("cyclic group needs n >= 1");
  using E = FiniteGroup::Element;
  std::vector<std::vector<E>> table(n, std::vector<E>(n));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "a" : "a^" + std::to_string(i)));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = static_cast<E>((i + j) % n);
  }
  return FiniteGroup("cyclic:" + std::to_string(n), labels, std::move(table));
}

FiniteGroup alt4() {
  return FiniteGroup::from_permutations("alt4", 4,
                                        {Permutation::parse("(1,2,3)", 4), Permutation::parse("(1,2)(3,4)", 4)});
}

FiniteGroup quasidihedral18() {
  return FiniteGroup::from_permutations("q18", 6,
                                        {Permutation::parse("(1,2,3)", 6), Permutation::parse("(4,5,6)", 6),
                                         Permutation::parse("(2,3)(5,6)", 6)});
}

FiniteGroup group_from_selector(std::string_view selector) {
  std::string s = strip_spaces(selector);
  auto numeric_suffix = [&](std::size_t prefix) -> std::size_t {
    std::string digits = s.substr(prefix);
    if (digits.empty() || digits.size() > 4 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw InputError("malformed group selector '" + s + "'");
    }
    return std::stoul(digits);
  };
  if (s == "alt4") return alt4();
  if (s == "q18" || s == "quasidihedral18") return quasidihedral18();
  if (s.rfind("dihedral:", 0) == 0) return dihedral(numeric_suffix(9));
  if (s.rfind("cyclic:", 0) == 0) return cyclic(numeric_suffix(7));
  throw InputError("unknown group selector '" + s + "' (expected dihedral:n, cyclic:n, alt4 or q18)");
}

// ---------------------------------------------------------------------------
// Automorphisms

namespace {

bool extend_homomorphism(const FiniteGroup& g, const std::vector<FiniteGroup::Element>& images,
                         std::vector<FiniteGroup::Element>& map) {
  using E = FiniteGroup::Element;
  const E unset = static_cast<E>(g.order());
  map.assign(g.order(), unset);
  map[0] = 0;
  std::vector<E> queue{0};
  const auto& gens = g.generators();
  for (std::size_t k = 0; k < queue.size(); ++k) {
    E x = queue[k];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      E y = g.mul(x, gens[i]);
      E img = g.mul(map[x], images[i]);
      if (map[y] == unset) {
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        return false;
      }
    }
  }
  std::vector<bool> hit(g.order(), false);
  for (E v : map) {
    if (v == unset || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace

std::vector<GroupAutomorphism> automorphisms(const FiniteGroup& g) {
  if (g.order() > 64) throw CapExceeded("automorphism enumeration is limited to groups of order <= 64");
  using E = FiniteGroup::Element;
  const auto& gens = g.generators();
  std::vector<std::vector<E>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (E x = 0; x < g.order(); ++x) {
      if (g.element_order(x) == g.element_order(gens[i])) candidates[i].push_back(x);
    }
  }
  std::vector<GroupAutomorphism> out;
  std::vector<E> images(gens.size());
  std::vector<E> map;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) {
      if (extend_homomorphism(g, images, map)) out.push_back(GroupAutomorphism{map});
      return;
    }
    for (E x : candidates[i]) {
      images[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_automorphism(const FiniteGroup& g, const GroupAutomorphism& phi) {
  if (phi.mapping.size() != g.order()) return false;
  std::vector<bool> hit(g.order(), false);
  for (auto v : phi.mapping) {
    if (v >= g.order() || hit[v]) return false;
    hit[v] = true;
  }
  for (FiniteGroup::Element x = 0; x < g.order(); ++x) {
    for (FiniteGroup::Element y = 0; y < g.order(); ++y) {
      if (phi.mapping[g.mul(x, y)] != g.mul(phi.mapping[x], phi.mapping[y])) return false;
    }
  }
  return true;
}

FiniteGroup::ElementSet apply_automorphism(const GroupAutomorphism& phi, const FiniteGroup::ElementSet& s) {
  FiniteGroup::ElementSet out;
  for (auto x : s) {
    if (x >= phi.mapping.size()) throw InputError("element index out of range");
    out.push_back(phi.mapping[x]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Permutation right_translation(const FiniteGroup& g, FiniteGroup::Element x) {
  if (x >= g.order()) throw InputError("element index out of range");
  std::vector<Point> images(g.order());
  for (FiniteGroup::Element y = 0; y < g.order(); ++y) images[y] = static_cast<Point>(g.mul(y, x));
  return Permutation(std::move(images));
}

PermGroup right_regular(const FiniteGroup& g) {
  std::vector<Permutation> gens;
  for (auto x : g.generators()) gens.push_back(right_translation(g, x));
  return PermGroup(g.order(), std::move(gens));
}

GroupFingerprint fingerprint(const FiniteGroup& g) {
  GroupFingerprint f;
  for (FiniteGroup::Element x = 0; x < g.order(); ++x) ++f.order_counts[g.element_order(x)];
  f.derived_size = g.derived_subgroup().size();
  return f;
}

GroupFingerprint fingerprint(const PermGroup& g, std::uint64_t cap) {
  GroupFingerprint f;
  g.for_each_element([&](const Permutation& x) { ++f.order_counts[x.order()]; }, cap);
  const auto& gens = g.generators();
  std::vector<Permutation> comms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) comms.push_back(c);
    }
  }
  // Normal closure of the generator commutators.
  PermGroup derived(g.degree(), comms);
  for (std::size_t k = 0; k < comms.size(); ++k) {
    for (const auto& s : gens) {
      Permutation c = conjugate(comms[k], s);
      if (!derived.contains(c)) {
        comms.push_back(c);
        derived = PermGroup(g.degree(), comms);
      }
    }
  }
  f.derived_size = static_cast<std::size_t>(derived.order());
  return f;
}

}  // namespace dcicheck
