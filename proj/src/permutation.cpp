#include "dcicheck/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dcicheck/error.hpp"

namespace dcicheck {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw InputError("image array is not a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation result(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      if (from >= degree) throw InputError("cycle point out of range");
      if (used[from]) throw InputError("point repeated within cycle product");
      used[from] = true;
      result.images_[from] = cycle[(i + 1) % cycle.size()];
    }
  }
  return result;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  std::vector<std::vector<Point>> cycles;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> InputError {
    return InputError("malformed cycle notation '" + std::string(text) + "': " + why);
  };
  while (pos < compact.size()) {
    if (compact[pos] != '(') throw fail("expected '('");
    ++pos;
    std::vector<Point> cycle;
    if (pos < compact.size() && compact[pos] == ')') {
      ++pos;
      continue;
    }
    for (;;) {
      std::size_t start = pos;
      while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
      if (start == pos) throw fail("expected a point");
      if (pos - start > 6) throw fail("point out of range");
      std::size_t value = std::stoul(compact.substr(start, pos - start));
      if (value < 1 || value > degree) throw fail("point out of range");
      cycle.push_back(static_cast<Point>(value - 1));
      if (pos >= compact.size()) throw fail("unterminated cycle");
      if (compact[pos] == ',') {
        ++pos;
        continue;
      }
      if (compact[pos] == ')') {
        ++pos;
        break;
      }
      throw fail("unexpected character");
    }
    cycles.push_back(std::move(cycle));
  }
  return from_cycles(degree, cycles);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation result(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) result.images_[images_[i]] = static_cast<Point>(i);
  return result;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> result;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> cycle;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cycle.push_back(static_cast<Point>(j));
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  for (std::size_t len : cycle_type()) result = std::lcm(result, static_cast<std::uint64_t>(len));
  return result;
}

bool Permutation::is_semiregular() const {
  auto type = cycle_type();
  return type.empty() || type.front() == type.back();
}

std::size_t Permutation::first_moved_point() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return i;
  }
  return images_.size();
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream out;
  for (const auto& cycle : cs) {
    out << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out << ',';
      out << cycle[i] + 1;
    }
    out << ')';
  }
  return out.str();
}

Permutation Permutation::pow(std::int64_t k) const {
  Permutation base = k < 0 ? inverse() : *this;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Permutation result(images_.size());
  while (e) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.degree() != rhs.degree()) throw InputError("degree mismatch in composition");
  Permutation result;
  result.images_.resize(lhs.images_.size());
  for (std::size_t i = 0; i < lhs.images_.size(); ++i) result.images_[i] = rhs.images_[lhs.images_[i]];
  return result;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) { return sigma * tau; }

Permutation conjugate(const Permutation& x, const Permutation& pi) {
  if (x.degree() != pi.degree()) throw InputError("degree mismatch in conjugation");
  std::vector<Point> images(x.degree());
  for (std::size_t i = 0; i < x.degree(); ++i) images[pi[i]] = pi[x[i]];
  return Permutation(std::move(images));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace dcicheck
