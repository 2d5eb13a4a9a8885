#pragma once

// Backtracking search for finite matrices that validate a set of axiom
// schemes, are closed under modus ponens, and refute given target schemes.
//
// Search order: designated set (ascending bitmask), then the cells of neg,
// dimp, dand, or in row-major order, values ascending. Implication goes
// first because most axioms are implication-rooted and become decidable
// only once the implication cells they touch are known. After every cell
// assignment each ground instance of each validated scheme that has become
// fully determined is checked; instances watch the first unknown cell their
// evaluation reaches and are revisited only when that cell is assigned.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2lab/axioms.hpp"
#include "d2lab/matrix.hpp"

namespace d2lab {

class SearchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr Value kUnknown = 0;

struct SearchConstraints {
  int size = 2;
  std::vector<Axiom> validate;
  std::vector<Axiom> refute;
  std::optional<std::vector<Value>> designated;
  std::optional<std::vector<Value>> neg;
  bool prune_isomorphs = false;
  std::optional<std::size_t> limit;
  std::optional<std::chrono::milliseconds> budget;
};

/// Cell layout shared with Matrix::cells(): neg (n), or (n*n), dand (n*n),
/// dimp (n*n). Unassigned cells hold kUnknown.
struct PartialMatrix {
  int size = 0;
  std::uint32_t designated_mask = 0;
  std::vector<Value> cells;

  static std::size_t cell_count(int n) { return static_cast<std::size_t>(n + 3 * n * n); }

  static PartialMatrix empty(int n, std::uint32_t designated_mask) {
    return {n, designated_mask, std::vector<Value>(cell_count(n), kUnknown)};
  }

  bool complete() const {
    return std::none_of(cells.begin(), cells.end(), [](Value v) { return v == kUnknown; });
  }

  Matrix to_matrix() const {
    const auto n = static_cast<std::size_t>(size);
    std::vector<Value> des;
    for (int v = 1; v <= size; ++v)
      if ((designated_mask >> (v - 1)) & 1u) des.push_back(v);
    auto slice = [&](std::size_t from, std::size_t len) {
      return std::vector<Value>(cells.begin() + static_cast<std::ptrdiff_t>(from),
                                cells.begin() + static_cast<std::ptrdiff_t>(from + len));
    };
    return Matrix(size, des, slice(0, n), slice(n, n * n), slice(n + n * n, n * n), slice(n + 2 * n * n, n * n));
  }
};

enum class Termination { exhausted, limit_reached, stopped, budget_exhausted };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::exhausted: return "exhausted";
    case Termination::limit_reached: return "limit_reached";
    case Termination::stopped: return "stopped";
    default: return "budget_exhausted";
  }
}

struct SearchOutcome {
  std::vector<Matrix> matrices;
  Termination termination = Termination::exhausted;
  std::uint64_t nodes = 0;
};

// ---------------------------------------------------------------------------
// Value permutations

/// Permutations of 1..n (as 0-based arrays, perm[v-1] = image of v) mapping
/// the designated set onto itself.
inline std::vector<std::vector<Value>> designated_preserving_permutations(int n, std::uint32_t designated_mask) {
  std::vector<Value> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<Value>> out;
  do {
    bool ok = true;
    for (int v = 1; v <= n && ok; ++v)
      ok = (((designated_mask >> (v - 1)) & 1u) == ((designated_mask >> (perm[v - 1] - 1)) & 1u));
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// The matrix obtained by renaming every value v to perm[v-1].
inline Matrix permute(const Matrix& m, const std::vector<Value>& perm) {
  const int n = m.size();
  auto p = [&](Value v) { return perm[static_cast<std::size_t>(v - 1)]; };
  std::vector<Value> des;
  for (Value v : m.designated()) des.push_back(p(v));
  std::sort(des.begin(), des.end());
  std::vector<Value> ng(static_cast<std::size_t>(n));
  std::vector<Value> lo(static_cast<std::size_t>(n * n)), dc(lo.size()), di(lo.size());
  for (Value a = 1; a <= n; ++a) {
    ng[static_cast<std::size_t>(p(a) - 1)] = p(m.neg(a));
    for (Value b = 1; b <= n; ++b) {
      const auto at = static_cast<std::size_t>((p(a) - 1) * n + (p(b) - 1));
      lo[at] = p(m.lor(a, b));
      dc[at] = p(m.dconj(a, b));
      di[at] = p(m.dimp(a, b));
    }
  }
  return Matrix(n, des, ng, lo, dc, di);
}

/// Least isomorphic copy under designated-preserving permutations, ordered
/// by (designated bitmask, neg, or, dand, dimp) as one concatenated string.
inline Matrix canonicalize(const Matrix& m) {
  Matrix best = m;
  auto best_cells = m.cells();
  for (const auto& perm : designated_preserving_permutations(m.size(), m.designated_mask())) {
    Matrix img = permute(m, perm);
    auto cells = img.cells();
    if (cells < best_cells) {
      best = std::move(img);
      best_cells = std::move(cells);
    }
  }
  return best;
}

/// Every matrix of size n <= 2, in (designated, cells) lexicographic order.
inline std::vector<Matrix> naive_enumerate(int n) {
  if (n < 1 || n > 2) throw SearchError("naive_enumerate supports sizes 1 and 2 only");
  std::vector<Matrix> out;
  const std::size_t cells = PartialMatrix::cell_count(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    PartialMatrix pm{n, mask, std::vector<Value>(cells, 1)};
    for (;;) {
      out.push_back(pm.to_matrix());
      std::size_t i = cells;
      while (i > 0 && pm.cells[i - 1] == n) pm.cells[--i] = 1;
      if (i == 0) break;
      ++pm.cells[i - 1];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search engine

class MatrixSearch {
 public:
  explicit MatrixSearch(SearchConstraints c) : c_(std::move(c)) {
    const int n = c_.size;
    if (n < 1 || n > 6) throw SearchError("search size must be in 1..6");
    const auto sq = static_cast<std::size_t>(n * n);
    if (c_.designated) {
      if (c_.designated->empty()) throw SearchError("fixed designated set must be nonempty");
      std::uint32_t mask = 0;
      for (Value v : *c_.designated) {
        if (v < 1 || v > n) throw SearchError("fixed designated value out of range");
        mask |= 1u << (v - 1);
      }
      fixed_mask_ = mask;
    }
    if (c_.neg) {
      if (c_.neg->size() != static_cast<std::size_t>(n)) throw SearchError("fixed negation table must have n entries");
      for (Value v : *c_.neg)
        if (v < 1 || v > n) throw SearchError("fixed negation value out of range");
    }
    for (const auto& ax : c_.validate) programs_.emplace_back(ax.scheme);
    for (std::size_t p = 0; p < programs_.size(); ++p) {
      const std::size_t k = programs_[p].leaves().size();
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(n);
      if (total > (1u << 20)) throw SearchError("scheme " + c_.validate[p].id + " has too many instances");
      std::vector<Value> vals(k, 1);
      for (std::uint64_t t = 0; t < total; ++t) {
        instances_.push_back({p, vals});
        std::size_t i = k;
        while (i > 0 && vals[i - 1] == n) vals[--i] = 1;
        if (i > 0) ++vals[i - 1];
      }
    }
    for (const auto& ax : c_.refute) (void)Program(ax.scheme);
    // neg, then dimp, dand, or; each row-major.
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) order_.push_back(i);
    for (std::size_t table : {2u, 1u, 0u})
      for (std::size_t i = 0; i < sq; ++i) order_.push_back(static_cast<std::size_t>(n) + table * sq + i);
  }

  const SearchConstraints& constraints() const noexcept { return c_; }

  /// Calls `emit` for each solution in search order; `emit` returning false
  /// ends the search with Termination::stopped.
  Termination run(const std::function<bool(const Matrix&)>& emit) {
    nodes_ = 0;
    emitted_ = 0;
    emit_ = &emit;
    start_ = std::chrono::steady_clock::now();
    status_ = Termination::exhausted;
    const int n = c_.size;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (fixed_mask_ && mask != *fixed_mask_) continue;
      if (!reset(mask)) continue;
      if (c_.prune_isomorphs) {
        perms_ = designated_preserving_permutations(n, mask);
        if (c_.neg) std::erase_if(perms_, [&](const auto& p) { return !commutes_with_neg(p); });
      }
      if (!descend(0)) break;
    }
    emit_ = nullptr;
    return status_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  /// True when constraint propagation alone (validated schemes, MP closure,
  /// fixed tables) rules out every completion of `pm`.
  bool rejects(const PartialMatrix& pm) {
    if (pm.size != c_.size || pm.cells.size() != PartialMatrix::cell_count(c_.size))
      throw SearchError("partial matrix does not match the search size");
    if (fixed_mask_ && pm.designated_mask != *fixed_mask_) return true;
    if (!reset(pm.designated_mask)) return true;
    for (std::size_t cell = 0; cell < pm.cells.size(); ++cell) {
      const Value v = pm.cells[cell];
      if (v == kUnknown) continue;
      if (v < 1 || v > c_.size) throw SearchError("partial matrix value out of range");
      if (!allowed(cell, v)) return true;
      if (!assign(cell, v)) return true;
    }
    return false;
  }

 private:
  struct Instance {
    std::size_t program;
    std::vector<Value> leaf_values;
  };

  struct Probe {
    Value value;       // kUnknown when blocked
    std::size_t cell;  // blocking cell
  };

  std::size_t n() const { return static_cast<std::size_t>(c_.size); }
  std::size_t neg_cell(Value a) const { return static_cast<std::size_t>(a - 1); }
  std::size_t bin_cell(std::size_t table, Value a, Value b) const {
    return n() + table * n() * n() + static_cast<std::size_t>(a - 1) * n() + static_cast<std::size_t>(b - 1);
  }
  bool designated(Value v) const { return (mask_ >> (v - 1)) & 1u; }

  Probe probe(const Instance& inst) const {
    const auto& steps = programs_[inst.program].steps();
    Value stack[128];
    std::vector<Value> heap;
    Value* st = stack;
    if (steps.size() > 128) {
      heap.resize(steps.size());
      st = heap.data();
    }
    int sp = 0;
    for (const Step& s : steps) {
      std::size_t cell = 0;
      switch (s.instr) {
        case Instr::leaf: st[sp++] = inst.leaf_values[s.slot]; continue;
        case Instr::neg: cell = neg_cell(st[sp - 1]); break;
        case Instr::lor: --sp; cell = bin_cell(0, st[sp - 1], st[sp]); break;
        case Instr::dconj: --sp; cell = bin_cell(1, st[sp - 1], st[sp]); break;
        case Instr::dimp: --sp; cell = bin_cell(2, st[sp - 1], st[sp]); break;
      }
      const Value v = cells_[cell];
      if (v == kUnknown) return {kUnknown, cell};
      st[sp - 1] = v;
    }
    return {st[0], 0};
  }

  // Fresh state for a designated set; false if some instance is already
  // refuted with every cell unknown (e.g. a bare metavariable scheme).
  bool reset(std::uint32_t mask) {
    mask_ = mask;
    cells_.assign(PartialMatrix::cell_count(c_.size), kUnknown);
    watches_.assign(cells_.size(), {});
    trail_.clear();
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      const Probe pr = probe(instances_[i]);
      if (pr.value == kUnknown)
        watches_[pr.cell].push_back(i);
      else if (!designated(pr.value))
        return false;
    }
    return true;
  }

  bool allowed(std::size_t cell, Value v) const {
    if (cell < n()) return !c_.neg || (*c_.neg)[cell] == v;
    const std::size_t dimp_base = n() + 2 * n() * n();
    if (cell >= dimp_base) {
      const auto a = static_cast<Value>((cell - dimp_base) / n() + 1);
      const auto b = static_cast<Value>((cell - dimp_base) % n() + 1);
      if (designated(a) && !designated(b) && designated(v)) return false;
    }
    return true;
  }

  // Assigns and propagates. On conflict the watch lists are left as they
  // were before the call and the cell is still assigned; callers unassign.
  bool assign(std::size_t cell, Value v) {
    cells_[cell] = v;
    const std::size_t mark = trail_.size();
    const auto& watching = watches_[cell];
    for (std::size_t idx : watching) {
      const Probe pr = probe(instances_[idx]);
      if (pr.value == kUnknown) {
        watches_[pr.cell].push_back(idx);
        trail_.push_back(pr.cell);
      } else if (!designated(pr.value)) {
        undo_to(mark);
        return false;
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      watches_[trail_.back()].pop_back();
      trail_.pop_back();
    }
  }

  bool commutes_with_neg(const std::vector<Value>& perm) const {
    for (Value a = 1; a <= c_.size; ++a)
      if (perm[static_cast<std::size_t>((*c_.neg)[static_cast<std::size_t>(a - 1)] - 1)] !=
          (*c_.neg)[static_cast<std::size_t>(perm[static_cast<std::size_t>(a - 1)] - 1)])
        return false;
    return true;
  }

  // Source cell whose value, renamed by perm, lands at `cell` of the image.
  std::size_t preimage_cell(std::size_t cell, const std::vector<Value>& inv) const {
    auto pre = [&](std::size_t v0) { return inv[v0]; };
    if (cell < n()) return neg_cell(pre(cell));
    const std::size_t off = cell - n();
    const std::size_t table = off / (n() * n());
    const std::size_t within = off % (n() * n());
    return bin_cell(table, pre(within / n()), pre(within % n()));
  }

  // True if some permutation maps the assigned cells to something
  // lexicographically smaller in canonical cell order, so no completion is
  // canonical. Comparison stops at the first position either side of which
  // is still unknown.
  bool dominated() const {
    for (const auto& perm : perms_) {
      std::vector<Value> inv(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i] - 1)] = static_cast<Value>(i + 1);
      for (std::size_t j = 0; j < cells_.size(); ++j) {
        const Value src = cells_[preimage_cell(j, inv)];
        if (src == kUnknown || cells_[j] == kUnknown) break;
        const Value img = perm[static_cast<std::size_t>(src - 1)];
        if (img < cells_[j]) return true;
        if (img > cells_[j]) break;
      }
    }
    return false;
  }

  bool out_of_time() {
    if (!c_.budget) return false;
    if ((nodes_ & 255u) != 0) return false;
    return std::chrono::steady_clock::now() - start_ > *c_.budget;
  }

  // Returns false when the whole search must stop.
  bool descend(std::size_t depth) {
    if (depth == order_.size()) return leaf();
    const std::size_t cell = order_[depth];
    for (Value v = 1; v <= c_.size; ++v) {
      if (!allowed(cell, v)) continue;
      ++nodes_;
      if (out_of_time()) {
        cells_[cell] = kUnknown;
        status_ = Termination::budget_exhausted;
        return false;
      }
      const std::size_t mark = trail_.size();
      if (assign(cell, v) && !(c_.prune_isomorphs && dominated())) {
        if (!descend(depth + 1)) {
          cells_[cell] = kUnknown;
          return false;
        }
      }
      undo_to(mark);
      cells_[cell] = kUnknown;
    }
    return true;
  }

  bool leaf() {
    const Matrix m = PartialMatrix{c_.size, mask_, cells_}.to_matrix();
    for (const auto& ax : c_.refute)
      if (check_scheme(m, ax.scheme).passed()) return true;
    ++emitted_;
    if (!(*emit_)(m)) {
      status_ = Termination::stopped;
      return false;
    }
    if (c_.limit && emitted_ >= *c_.limit) {
      status_ = Termination::limit_reached;
      return false;
    }
    return true;
  }

  SearchConstraints c_;
  std::optional<std::uint32_t> fixed_mask_;
  std::vector<Program> programs_;
  std::vector<Instance> instances_;
  std::vector<std::size_t> order_;

  std::uint32_t mask_ = 0;
  std::vector<Value> cells_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<std::size_t> trail_;
  std::vector<std::vector<Value>> perms_;

  const std::function<bool(const Matrix&)>* emit_ = nullptr;
  std::chrono::steady_clock::time_point start_;
  Termination status_ = Termination::exhausted;
  std::uint64_t nodes_ = 0;
  std::size_t emitted_ = 0;
};

/// Collects the full result stream.
inline SearchOutcome find_matrices(const SearchConstraints& c) {
  MatrixSearch search(c);
  SearchOutcome out;
  out.termination = search.run([&](const Matrix& m) {
    out.matrices.push_back(m);
    return true;
  });
  out.nodes = search.nodes();
  return out;
}

}  // namespace d2lab
