#include "dcicheck/canon.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "dcicheck/error.hpp"

namespace dcicheck {

ColoredGraph::ColoredGraph(std::size_t vertices)
    : n(vertices), vertex_color(vertices, 0), arc(vertices * vertices, 0) {}

bool ColoredGraph::is_automorphism(const Permutation& g) const {
  if (g.degree() != n) return false;
  for (std::size_t u = 0; u < n; ++u) {
    if (vertex_color[g[u]] != vertex_color[u]) return false;
    const std::uint32_t* row = &arc[u * n];
    const std::uint32_t* image_row = &arc[g[u] * n];
    for (std::size_t v = 0; v < n; ++v) {
      if (image_row[g[v]] != row[v]) return false;
    }
  }
  return true;
}

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(digits[b >> 4U]);
    out.push_back(digits[b & 15U]);
  }
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  x ^= x >> 30U;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27U;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31U;
  return h ^ x;
}

std::uint64_t scramble(std::uint64_t x) {
  x ^= x >> 33U;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33U;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33U;
  return x;
}

// Ordered partition: lab lists the vertices, start[i] marks the first
// position of each cell (start[n] is a sentinel).
struct Part {
  std::vector<Point> lab;
  std::vector<std::uint8_t> start;
  std::size_t cells = 0;
};

struct Neighbor {
  Point w;
  std::uint32_t out;
  std::uint32_t in;
};

class Search {
 public:
  Search(const ColoredGraph& g, CanonMode mode, std::uint64_t budget) : g_(g), n_(g.n), mode_(mode), budget_(budget) {
    nbrs_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      for (std::size_t w = 0; w < n_; ++w) {
        std::uint32_t out = g.at(v, w), in = g.at(w, v);
        if (out || in) nbrs_[v].push_back({static_cast<Point>(w), out, in});
      }
    }
    cellof_.resize(n_);
    h_.resize(n_);
  }

  void add_automorphism(const Permutation& a) {
    if (a.is_identity()) return;
    if (!g_.is_automorphism(a)) throw InternalError("claimed automorphism does not preserve the graph");
    if (seen_autos_.insert(a).second) autos_.push_back(a);
  }

  void run() {
    Part root;
    root.lab.resize(n_);
    std::iota(root.lab.begin(), root.lab.end(), Point{0});
    std::stable_sort(root.lab.begin(), root.lab.end(),
                     [&](Point a, Point b) { return g_.vertex_color[a] < g_.vertex_color[b]; });
    root.start.assign(n_ + 1, 0);
    root.start[n_] = 1;
    std::uint64_t seed = mix(0, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == 0 || g_.vertex_color[root.lab[i]] != g_.vertex_color[root.lab[i - 1]]) {
        root.start[i] = 1;
        ++root.cells;
        seed = mix(seed, g_.vertex_color[root.lab[i]]);
        seed = mix(seed, i);
      }
    }
    std::uint64_t t = refine(root, seed);
    path_.clear();
    trace_.clear();
    trace_.push_back(t);
    visit(root, true);
  }

  CanonResult result() const {
    CanonResult r;
    r.automorphisms = autos_;
    r.nodes = nodes_;
    if (mode_ == CanonMode::kCanonical) {
      r.labeling.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) r.labeling[best_lab_[i]] = static_cast<Point>(i);
      r.certificate = encode(best_lab_);
    }
    return r;
  }

 private:
  std::uint64_t refine(Part& p, std::uint64_t trace) {
    for (;;) {
      std::size_t cur = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (p.start[i]) cur = i;
        cellof_[p.lab[i]] = static_cast<Point>(cur);
      }
      for (std::size_t v = 0; v < n_; ++v) {
        std::uint64_t sum = 0;
        for (const auto& nb : nbrs_[v]) {
          sum += scramble((static_cast<std::uint64_t>(cellof_[nb.w]) << 42U) ^
                          (static_cast<std::uint64_t>(nb.out) << 21U) ^ nb.in ^ 0x5bd1e995ULL);
        }
        h_[v] = sum;
      }
      bool split = false;
      std::size_t s = 0;
      while (s < n_) {
        std::size_t e = s + 1;
        while (!p.start[e]) ++e;
        if (e - s > 1) {
          std::sort(p.lab.begin() + static_cast<long>(s), p.lab.begin() + static_cast<long>(e),
                    [&](Point a, Point b) { return h_[a] != h_[b] ? h_[a] < h_[b] : a < b; });
          bool here = false;
          for (std::size_t i = s + 1; i < e; ++i) {
            if (h_[p.lab[i]] != h_[p.lab[i - 1]]) {
              p.start[i] = 1;
              ++p.cells;
              here = true;
              trace = mix(trace, i);
              trace = mix(trace, h_[p.lab[i]]);
            }
          }
          if (here) {
            split = true;
            trace = mix(trace, s);
            trace = mix(trace, h_[p.lab[s]]);
          }
        }
        s = e;
      }
      if (!split) {
        // Equitable now: fold in each cell's common signature.
        for (std::size_t i = 0; i < n_; ++i) {
          if (p.start[i]) trace = mix(trace, h_[p.lab[i]] ^ (static_cast<std::uint64_t>(i) << 56U));
        }
        return mix(trace, p.cells);
      }
    }
  }

  std::vector<std::uint32_t> relabeled(const std::vector<Point>& lab) const {
    std::vector<std::uint32_t> m(n_ * n_ + n_);
    for (std::size_t i = 0; i < n_; ++i) {
      m[i] = g_.vertex_color[lab[i]];
      const std::uint32_t* row = &g_.arc[lab[i] * n_];
      std::uint32_t* out = &m[n_ + i * n_];
      for (std::size_t j = 0; j < n_; ++j) out[j] = row[lab[j]];
    }
    return m;
  }

  std::string encode(const std::vector<Point>& lab) const {
    auto m = relabeled(lab);
    bool binary = std::all_of(m.begin() + static_cast<long>(n_), m.end(), [](std::uint32_t x) { return x <= 1; });
    std::string out;
    auto put = [&](std::uint32_t x) {
      do {
        unsigned char b = x & 0x7FU;
        x >>= 7U;
        out.push_back(static_cast<char>(x ? (b | 0x80U) : b));
      } while (x);
    };
    put(static_cast<std::uint32_t>(n_));
    out.push_back(binary ? 1 : 0);
    for (std::size_t i = 0; i < n_; ++i) put(m[i]);
    if (binary) {
      unsigned char acc = 0;
      std::size_t bits = 0;
      for (std::size_t k = n_; k < m.size(); ++k) {
        acc = static_cast<unsigned char>(acc | (m[k] << (bits % 8)));
        if (++bits % 8 == 0) {
          out.push_back(static_cast<char>(acc));
          acc = 0;
        }
      }
      if (bits % 8) out.push_back(static_cast<char>(acc));
    } else {
      for (std::size_t k = n_; k < m.size(); ++k) put(m[k]);
    }
    return out;
  }

  Permutation map_leaf(const std::vector<Point>& from, const std::vector<Point>& to) const {
    std::vector<Point> images(n_);
    for (std::size_t i = 0; i < n_; ++i) images[from[i]] = to[i];
    return Permutation(std::move(images));
  }

  static std::size_t common_prefix(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  // Lexicographic comparison of the current trace prefix with the best path.
  int compare_best() const {
    for (std::size_t i = 0; i < trace_.size(); ++i) {
      if (i >= best_trace_.size()) return 1;
      if (trace_[i] != best_trace_[i]) return trace_[i] < best_trace_[i] ? -1 : 1;
    }
    return 0;
  }

  void leaf(const Part& p, bool eq_first) {
    if (!have_first_) {
      have_first_ = true;
      first_lab_ = p.lab;
      first_path_ = path_;
      first_trace_ = trace_;
      if (mode_ == CanonMode::kCanonical) {
        best_lab_ = p.lab;
        best_path_ = path_;
        best_trace_ = trace_;
        best_matrix_ = relabeled(p.lab);
      }
      return;
    }
    if (eq_first) {
      Permutation gamma = map_leaf(p.lab, first_lab_);
      if (g_.is_automorphism(gamma)) {
        add_automorphism(gamma);
        jump_ = common_prefix(path_, first_path_);
        return;
      }
    }
    if (mode_ != CanonMode::kCanonical) return;
    int cmp = compare_best();
    if (cmp < 0) return;
    auto m = relabeled(p.lab);
    if (cmp == 0) cmp = m < best_matrix_ ? -1 : (m == best_matrix_ ? 0 : 1);
    if (cmp == 0) {
      Permutation gamma = map_leaf(p.lab, best_lab_);
      add_automorphism(gamma);
      jump_ = common_prefix(path_, best_path_);
    } else if (cmp > 0) {
      best_lab_ = p.lab;
      best_path_ = path_;
      best_trace_ = trace_;
      best_matrix_ = std::move(m);
    }
  }

  // The trace of the current node is trace_.back(); path_ holds the
  // individualized vertices leading here.
  void visit(const Part& p, bool eq_first) {
    if (++nodes_ > budget_) throw CapExceeded("canonical labelling exceeded its node budget");
    const std::size_t level = path_.size();
    if (have_first_) {
      std::uint64_t t = trace_.back();
      eq_first = eq_first && level < first_trace_.size() && first_trace_[level] == t;
      if (!eq_first && (mode_ == CanonMode::kAutomorphismsOnly || compare_best() < 0)) return;
    }
    if (p.cells == n_) {
      leaf(p, eq_first);
      return;
    }

    // Target cell: first smallest non-singleton.
    std::size_t best_s = n_, best_len = n_ + 1;
    for (std::size_t s = 0; s < n_;) {
      std::size_t e = s + 1;
      while (!p.start[e]) ++e;
      if (e - s > 1 && e - s < best_len) {
        best_s = s;
        best_len = e - s;
      }
      s = e;
    }
    std::vector<Point> cell(p.lab.begin() + static_cast<long>(best_s),
                            p.lab.begin() + static_cast<long>(best_s + best_len));
    std::sort(cell.begin(), cell.end());

    std::vector<Point> tried;
    std::vector<std::size_t> parent(n_);
    std::size_t autos_used = std::numeric_limits<std::size_t>::max();
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (Point v : cell) {
      if (autos_used != autos_.size()) {
        autos_used = autos_.size();
        std::iota(parent.begin(), parent.end(), 0);
        for (const auto& a : autos_) {
          bool fixes = std::all_of(path_.begin(), path_.end(), [&](Point x) { return a[x] == x; });
          if (!fixes) continue;
          for (std::size_t x = 0; x < n_; ++x) {
            std::size_t r1 = find(x), r2 = find(a[x]);
            if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
          }
        }
      }
      bool equivalent = std::any_of(tried.begin(), tried.end(), [&](Point u) { return find(u) == find(v); });
      if (equivalent) continue;
      tried.push_back(v);

      Part child = p;
      auto it = std::find(child.lab.begin() + static_cast<long>(best_s),
                          child.lab.begin() + static_cast<long>(best_s + best_len), v);
      std::rotate(child.lab.begin() + static_cast<long>(best_s), it, it + 1);
      child.start[best_s + 1] = 1;
      ++child.cells;
      std::uint64_t t = refine(child, mix(trace_.back(), best_s));
      path_.push_back(v);
      trace_.push_back(t);
      visit(child, eq_first);
      path_.pop_back();
      trace_.pop_back();
      if (jump_ != kNoJump) {
        if (jump_ < level) return;
        jump_ = kNoJump;
      }
    }
  }

  static constexpr std::size_t kNoJump = std::numeric_limits<std::size_t>::max();

  const ColoredGraph& g_;
  std::size_t n_;
  CanonMode mode_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Neighbor>> nbrs_;
  std::vector<Point> cellof_;
  std::vector<std::uint64_t> h_;

  std::vector<Point> path_;
  std::vector<std::uint64_t> trace_;
  std::size_t jump_ = kNoJump;

  bool have_first_ = false;
  std::vector<Point> first_lab_, first_path_;
  std::vector<std::uint64_t> first_trace_;
  std::vector<Point> best_lab_, best_path_;
  std::vector<std::uint64_t> best_trace_;
  std::vector<std::uint32_t> best_matrix_;

  std::vector<Permutation> autos_;
  std::set<Permutation> seen_autos_;
};

}  // namespace

CanonResult canonize(const ColoredGraph& g, CanonMode mode, const std::vector<Permutation>& hints,
                     std::uint64_t node_budget) {
  if (g.n > 64) throw CapExceeded("canonical labelling is limited to 64 vertices");
  if (g.vertex_color.size() != g.n || g.arc.size() != g.n * g.n) throw InputError("malformed coloured graph");
  if (g.n == 0) {
    CanonResult r;
    r.certificate = std::string(2, '\0');
    return r;
  }
  Search search(g, mode, node_budget);
  for (const auto& h : hints) {
    if (h.degree() != g.n) throw InputError("automorphism hint has the wrong degree");
    search.add_automorphism(h);
  }
  search.run();
  return search.result();
}

}  // namespace dcicheck
