#include "dcicheck/wreath.hpp"

#include <numeric>

#include "dcicheck/error.hpp"

namespace dcicheck {

namespace {

std::size_t mod(std::int64_t a, std::size_t m) {
  std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

std::size_t power_mod(std::size_t b, std::size_t e, std::size_t m) {
  std::size_t r = 1 % m;
  for (b %= m; e; e >>= 1U, b = b * b % m) {
    if (e & 1U) r = r * b % m;
  }
  return r;
}

std::size_t inverse_mod(std::size_t a, std::size_t p) { return power_mod(a, p - 2, p); }

}  // namespace

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::size_t smallest_primitive_root(std::size_t p) {
  if (!is_prime(p)) throw InputError("primitive roots are only computed for primes");
  if (p == 2) return 1;
  std::vector<std::size_t> factors;
  std::size_t m = p - 1;
  for (std::size_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::size_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::size_t q : factors) ok = ok && power_mod(g, (p - 1) / q, p) != 1;
    if (ok) return g;
  }
  throw InternalError("no primitive root found");
}

Wreath::Wreath(std::size_t p) : p_(p), root_(0) {
  if (p < 3 || !is_prime(p)) throw InputError("block size must be an odd prime, got " + std::to_string(p));
  root_ = smallest_primitive_root(p);
}

Partition Wreath::blocks() const {
  std::vector<std::vector<Point>> out(6);
  for (std::size_t l = 0; l < 6; ++l) {
    for (std::size_t d = 0; d < p_; ++d) out[l].push_back(point(d, l));
  }
  return Partition::normalized(std::move(out));
}

std::vector<Point> Wreath::block_points(std::initializer_list<std::size_t> lambdas) const {
  std::vector<Point> out;
  for (std::size_t l : lambdas) {
    if (l < 1 || l > 6) throw InputError("block index out of range");
    for (std::size_t d = 0; d < p_; ++d) out.push_back(point(d, l - 1));
  }
  return out;
}

Permutation Wreath::affine(std::int64_t u, std::int64_t v) const {
  std::size_t shift = mod(u, p_);
  std::size_t scale = power_mod(root_, mod(v, p_ - 1), p_);
  std::vector<Point> images(p_);
  for (std::size_t x = 0; x < p_; ++x) images[x] = static_cast<Point>(scale * ((x + shift) % p_) % p_);
  return Permutation(std::move(images));
}

Permutation Wreath::inversion() const {
  std::vector<Point> images(p_);
  for (std::size_t x = 0; x < p_; ++x) images[x] = static_cast<Point>((p_ - x) % p_);
  return Permutation(std::move(images));
}

Permutation Wreath::element(const Permutation& sigma, const std::array<Permutation, 6>& ys) const {
  if (sigma.degree() != 6) throw InputError("block permutation must have degree 6");
  for (const auto& y : ys) {
    if (y.degree() != p_) throw InputError("block component has the wrong degree");
  }
  std::vector<Point> images(degree());
  for (std::size_t l = 0; l < 6; ++l) {
    std::size_t target = sigma[l];
    for (std::size_t d = 0; d < p_; ++d) images[point(d, l)] = point(ys[target][d], target);
  }
  return Permutation(std::move(images));
}

Permutation Wreath::base(const std::array<Permutation, 6>& ys) const { return element(Permutation(6), ys); }

Permutation Wreath::top(const Permutation& sigma) const {
  std::array<Permutation, 6> ys;
  ys.fill(Permutation(p_));
  return element(sigma, ys);
}

std::optional<std::pair<Permutation, std::array<Permutation, 6>>> Wreath::decompose(const Permutation& x) const {
  if (x.degree() != degree()) throw InputError("permutation degree does not match 6p");
  std::vector<Point> sigma(6);
  std::array<std::vector<Point>, 6> ys;
  for (std::size_t l = 0; l < 6; ++l) {
    std::size_t target = block_of(x[point(0, l)]);
    sigma[l] = static_cast<Point>(target);
    ys[target].resize(p_);
    for (std::size_t d = 0; d < p_; ++d) {
      Point image = x[point(d, l)];
      if (block_of(image) != target) return std::nullopt;
      ys[target][d] = static_cast<Point>(image - target * p_);
    }
  }
  std::array<Permutation, 6> parts;
  for (std::size_t l = 0; l < 6; ++l) parts[l] = Permutation(std::move(ys[l]));
  return std::make_pair(Permutation(std::move(sigma)), std::move(parts));
}

Permutation Wreath::r1() const {
  std::array<Permutation, 6> ys;
  ys.fill(c());
  return base(ys);
}

Permutation Wreath::r2() const { return top(Permutation::parse("(1,2,3)(4,5,6)", 6)); }

Permutation Wreath::r3() const { return top(Permutation::parse("(1,4)(2,6)(3,5)", 6)); }

Permutation Wreath::r3_dihedral() const {
  std::array<Permutation, 6> ys;
  ys.fill(inversion());
  return r3() * base(ys);
}

PermGroup Wreath::literal_r() const { return PermGroup(degree(), {r1(), r2(), r3()}); }

PermGroup Wreath::dihedral_r() const { return PermGroup(degree(), {r1() * r2(), r3_dihedral()}); }

std::optional<std::array<std::size_t, 6>> Wreath::translation_vector(const Permutation& x) const {
  auto parts = decompose(x);
  if (!parts || !parts->first.is_identity()) return std::nullopt;
  std::array<std::size_t, 6> t{};
  for (std::size_t l = 0; l < 6; ++l) {
    const auto& y = parts->second[l];
    t[l] = y[0];
    for (std::size_t d = 0; d < p_; ++d) {
      if (y[d] != (d + t[l]) % p_) return std::nullopt;
    }
  }
  return t;
}

Permutation Wreath::translation(const std::array<std::size_t, 6>& t) const {
  std::array<Permutation, 6> ys;
  for (std::size_t l = 0; l < 6; ++l) ys[l] = affine(static_cast<std::int64_t>(t[l]), 0);
  return base(ys);
}

PermGroup block_kernel(const PermGroup& g, const Wreath& w) {
  const std::size_t n = w.degree();
  if (g.degree() != n) throw PreconditionError("group degree is not 6p");
  std::vector<Permutation> augmented;
  for (const auto& gen : g.generators()) {
    auto parts = w.decompose(gen);
    if (!parts) throw PreconditionError("generator " + gen.to_string() + " does not preserve the blocks");
    std::vector<Point> images(6 + n);
    for (std::size_t l = 0; l < 6; ++l) images[l] = parts->first[l];
    for (std::size_t i = 0; i < n; ++i) images[6 + i] = static_cast<Point>(6 + gen[i]);
    augmented.emplace_back(std::move(images));
  }
  PermGroup big(6 + n, std::move(augmented));
  std::vector<Point> lambda{0, 1, 2, 3, 4, 5};
  auto stab = big.stabilizer(lambda);
  std::vector<Permutation> gens;
  for (const auto& s : stab.generators()) {
    std::vector<Point> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Point>(s[6 + i] - 6);
    gens.emplace_back(std::move(images));
  }
  return PermGroup(n, std::move(gens));
}

namespace {

// Row-reduced basis of a subspace of F_p^6.
class Subspace {
 public:
  explicit Subspace(std::size_t p) : p_(p) {}

  // Returns true when v was independent of the current basis.
  bool add(std::array<std::size_t, 6> v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      std::size_t f = v[pivot];
      for (std::size_t i = 0; i < 6; ++i) v[i] = (v[i] + p_ * p_ - f * row[i]) % p_;
    }
    std::size_t pivot = 6;
    for (std::size_t i = 0; i < 6 && pivot == 6; ++i) {
      if (v[i]) pivot = i;
    }
    if (pivot == 6) return false;
    std::size_t inv = inverse_mod(v[pivot], p_);
    for (auto& e : v) e = e * inv % p_;
    for (auto& [other_pivot, row] : rows_) {
      if (row[pivot] == 0) continue;
      std::size_t f = row[pivot];
      for (std::size_t i = 0; i < 6; ++i) row[i] = (row[i] + p_ * p_ - f * v[i]) % p_;
    }
    rows_.emplace_back(pivot, v);
    return true;
  }

  std::vector<std::array<std::size_t, 6>> basis() const {
    std::vector<std::array<std::size_t, 6>> out;
    for (const auto& r : rows_) out.push_back(r.second);
    return out;
  }

 private:
  std::size_t p_;
  std::vector<std::pair<std::size_t, std::array<std::size_t, 6>>> rows_;
};

}  // namespace

PermGroup normal_p_subgroup(const PermGroup& g, const Wreath& w) {
  const std::size_t p = w.p();
  if (g.degree() != w.degree()) throw PreconditionError("group degree is not 6p");
  for (const auto& gen : g.generators()) {
    auto parts = w.decompose(gen);
    if (!parts) throw PreconditionError("generator " + gen.to_string() + " does not preserve the blocks");
    for (const auto& y : parts->second) {
      std::size_t b = y[0];
      std::size_t a = (y[1] + p - b) % p;
      for (std::size_t x = 0; x < p; ++x) {
        if (a == 0 || y[x] != (a * x + b) % p) {
          throw PreconditionError("generator " + gen.to_string() + " acts non-affinely on a block");
        }
      }
    }
  }

  auto kernel = block_kernel(g, w);
  std::vector<Permutation> seeds;
  const auto& kg = kernel.generators();
  for (std::size_t i = 0; i < kg.size(); ++i) {
    seeds.push_back(kg[i].pow(static_cast<std::int64_t>(p - 1)));
    for (std::size_t j = i + 1; j < kg.size(); ++j) {
      seeds.push_back(kg[i].inverse() * kg[j].inverse() * kg[i] * kg[j]);
    }
  }

  Subspace space(p);
  std::vector<Permutation> queue;
  for (const auto& s : seeds) {
    auto t = w.translation_vector(s);
    if (!t) throw InternalError("kernel element outside the translation subgroup");
    if (space.add(*t)) queue.push_back(s);
  }
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& gen : g.generators()) {
      Permutation conj = conjugate(queue[k], gen);
      auto t = w.translation_vector(conj);
      if (!t) throw InternalError("conjugate of a translation is not a translation");
      if (space.add(*t)) queue.push_back(conj);
    }
  }

  std::vector<Permutation> gens;
  for (const auto& v : space.basis()) gens.push_back(w.translation(v));
  PermGroup result(w.degree(), gens);
  for (const auto& x : gens) {
    if (!g.contains(x)) throw InternalError("normal p-part is not contained in the group");
    for (const auto& gen : g.generators()) {
      if (!result.contains(conjugate(x, gen))) throw InternalError("normal p-part is not normal");
    }
  }
  return result;
}

}  // namespace dcicheck
