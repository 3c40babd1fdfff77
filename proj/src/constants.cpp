#include "zslab/constants.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "zslab/error.hpp"
#include "zslab/indicator_set.hpp"
#include "zslab/sumset.hpp"

namespace zslab {

std::uint64_t eh_bound(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  if (m < 1 || m > n) throw InputError("eh_bound needs 1 <= m <= n");
  const std::uint64_t v = m * n - m * m + 1;
  return std::min(p, v);
}

namespace {

// Branch order and the fixed parts of one search.
struct Engine {
  GroupSpec spec;
  SearchMode mode;
  bool symmetry;
  std::optional<std::uint64_t> order_seed;
  std::vector<Element> order;       // position -> element
  std::vector<std::uint32_t> pos;   // element index -> position

  Engine(GroupSpec s, SearchMode m, bool sym, std::optional<std::uint64_t> seed)
      : spec(std::move(s)), mode(m), symmetry(sym), order_seed(seed) {
    order.resize(spec.order());
    for (std::uint32_t i = 0; i < spec.order(); ++i) order[i] = Element{i};
    if (seed) {
      std::mt19937_64 rng(*seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    pos.resize(spec.order());
    for (std::uint32_t q = 0; q < order.size(); ++q) pos[order[q].index] = q;
  }

  std::uint32_t child_start(std::uint32_t q) const { return mode == SearchMode::Olson ? q + 1 : q; }
};

struct SharedState {
  std::atomic<std::uint64_t> best{0};
  std::atomic<std::uint64_t> nodes{0};  // parallel mode only
  std::atomic<bool> halt{false};
};

struct Control {
  std::uint64_t budget = 0;  // this invocation, 0 = unlimited
  const std::atomic<bool>* stop = nullptr;
  SharedState* shared = nullptr;
  // Sequential periodic checkpoints.
  std::uint64_t every = 0;
  std::function<void()> on_period;
};

class Walker {
 public:
  Walker(const Engine& e, const OpenBranch& b, std::uint64_t best, std::vector<std::uint32_t> witness)
      : e_(e), base_(b.base), next_(b.next), best_(best), witness_(std::move(witness)) {
    sums_.emplace_back(e_.spec);
    for (Element x : b.path) push(e_.pos[x.index]);
  }

  // Runs until the branch is finished (true) or control says stop (false).
  // `split_depth` > 0 turns nodes at that depth into emitted tasks.
  bool run(const Control& ctl, std::uint32_t split_depth = 0, std::vector<OpenBranch>* tasks = nullptr) {
    std::uint64_t last_period = nodes_;
    for (;;) {
      if (should_stop(ctl)) return false;
      if (ctl.every && ctl.on_period && nodes_ != last_period && nodes_ % ctl.every == 0) {
        last_period = nodes_;
        ctl.on_period();
      }
      const std::size_t k = path_.size();
      bool descended = false;
      if (split_depth && k == split_depth) {
        tasks->push_back(cursor());
        tasks->back().base = static_cast<std::uint32_t>(k);
      } else if (promising(k, ctl)) {
        const IndicatorSet& s = sums_[k];
        for (std::uint32_t q = next_; q < e_.order.size(); ++q) {
          if (e_.symmetry && k == 0) {
            if (q > e_.pos[1]) break;
            if (q != e_.pos[1]) continue;
          }
          const Element x = e_.order[q];
          if (x.index == 0 || s.contains(e_.spec.neg(x))) continue;
          push(q);
          ++nodes_;
          if (ctl.shared) ctl.shared->nodes.fetch_add(1, std::memory_order_relaxed);
          record(ctl);
          next_ = e_.child_start(q);
          descended = true;
          break;
        }
      }
      if (!descended) {
        if (k == base_) return true;
        const std::uint32_t q = path_.back();
        path_.pop_back();
        next_ = q + 1;
      }
    }
  }

  OpenBranch cursor() const {
    OpenBranch b{base_, {}, next_};
    for (std::uint32_t q : path_) b.path.push_back(e_.order[q]);
    return b;
  }
  std::uint64_t best() const { return best_; }
  const std::vector<std::uint32_t>& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }
  void set_nodes(std::uint64_t n) { nodes_ = n; }

 private:
  void push(std::uint32_t q) {
    const std::size_t k = path_.size();
    if (sums_.size() <= k + 1) sums_.emplace_back(e_.spec);
    const Element x = e_.order[q];
    sums_[k + 1] = sums_[k];
    sums_[k + 1].or_translated(sums_[k], x);
    sums_[k + 1].insert(x);
    path_.push_back(q);
  }

  void record(const Control& ctl) {
    const std::uint64_t k = path_.size();
    if (k <= best_) return;
    best_ = k;
    witness_ = path_;
    if (ctl.shared) {
      std::uint64_t cur = ctl.shared->best.load();
      while (cur < k && !ctl.shared->best.compare_exchange_weak(cur, k)) {
      }
    }
  }

  bool should_stop(const Control& ctl) const {
    if (ctl.stop && ctl.stop->load(std::memory_order_relaxed)) return true;
    if (ctl.shared) {
      if (ctl.shared->halt.load(std::memory_order_relaxed)) return true;
      return ctl.budget && ctl.shared->nodes.load(std::memory_order_relaxed) >= ctl.budget;
    }
    return ctl.budget && nodes_ >= ctl.budget;
  }

  // Upper bound on the size reachable below the current node beats the incumbent.
  bool promising(std::size_t k, const Control& ctl) {
    const IndicatorSet& s = sums_[k];
    const std::uint64_t room = e_.spec.order() - 1 - s.size();
    std::uint64_t bound = k + room;
    if (e_.mode == SearchMode::Olson && bound > best_) {
      // Remaining admissible elements; x and -x can never both be added.
      const std::uint32_t gen = ++generation_;
      if (mark_.size() != e_.spec.order()) mark_.assign(e_.spec.order(), 0);
      std::uint64_t allowed = 0;
      for (std::uint32_t q = next_; q < e_.order.size(); ++q) {
        const Element x = e_.order[q];
        if (x.index == 0 || s.contains(e_.spec.neg(x))) continue;
        mark_[x.index] = gen;
      }
      for (std::uint32_t q = next_; q < e_.order.size(); ++q) {
        const Element x = e_.order[q];
        if (mark_[x.index] != gen) continue;
        const Element nx = e_.spec.neg(x);
        if (nx == x || mark_[nx.index] != gen || x.index < nx.index) ++allowed;
      }
      bound = std::min(bound, k + allowed);
    }
    if (bound <= best_) return false;
    if (ctl.shared && bound < ctl.shared->best.load(std::memory_order_relaxed)) return false;
    return true;
  }

  const Engine& e_;
  std::uint32_t base_;
  std::uint32_t next_;
  std::vector<std::uint32_t> path_;
  std::vector<IndicatorSet> sums_;
  std::uint64_t best_;
  std::vector<std::uint32_t> witness_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t generation_ = 0;
};

struct RunState {
  std::uint64_t best = 0;
  std::vector<std::uint32_t> witness;  // positions
  std::uint64_t nodes = 0;
  std::vector<OpenBranch> open;
};

Checkpoint make_checkpoint(const Engine& e, const RunState& st) {
  Checkpoint c;
  c.p = e.spec.p();
  c.d = e.spec.d();
  c.mode = e.mode;
  c.best_size = st.best;
  for (std::uint32_t q : st.witness) c.witness.push_back(e.order[q]);
  c.nodes = st.nodes;
  c.symmetry = e.symmetry;
  c.order_seed = e.order_seed;
  c.open = st.open;
  return c;
}

bool witness_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void run_sequential(const Engine& e, RunState& st, const SearchOptions& opts) {
  const std::uint64_t start = st.nodes;
  std::vector<OpenBranch> todo = std::move(st.open);
  st.open.clear();
  for (std::size_t i = 0; i < todo.size(); ++i) {
    Walker w(e, todo[i], st.best, st.witness);
    w.set_nodes(st.nodes - start);
    Control ctl;
    ctl.budget = opts.budget;
    ctl.stop = opts.stop;
    if (!opts.checkpoint_path.empty() && opts.checkpoint_every) {
      ctl.every = opts.checkpoint_every;
      ctl.on_period = [&] {
        RunState snap{w.best(), w.witness(), start + w.nodes(), {w.cursor()}};
        snap.open.insert(snap.open.end(), todo.begin() + static_cast<std::ptrdiff_t>(i) + 1, todo.end());
        save_checkpoint(opts.checkpoint_path, make_checkpoint(e, snap));
      };
    }
    const bool done = w.run(ctl);
    st.best = w.best();
    st.witness = w.witness();
    st.nodes = start + w.nodes();
    if (!done) {
      st.open.push_back(w.cursor());
      st.open.insert(st.open.end(), todo.begin() + static_cast<std::ptrdiff_t>(i) + 1, todo.end());
      return;
    }
  }
}

void run_parallel(const Engine& e, RunState& st, const SearchOptions& opts, bool fresh) {
  SharedState shared;
  shared.best = st.best;
  shared.nodes = 0;
  std::vector<OpenBranch> tasks;
  if (fresh) {
    // Nodes above the split depth are visited here, once, in order.
    Walker gen(e, OpenBranch{}, st.best, st.witness);
    Control ctl;
    ctl.stop = opts.stop;
    gen.run(ctl, std::max<std::uint32_t>(1, opts.split_depth), &tasks);
    st.best = gen.best();
    st.witness = gen.witness();
    st.nodes += gen.nodes();
    shared.best = st.best;
  } else {
    tasks = std::move(st.open);
  }
  st.open.clear();

  struct Slot {
    bool started = false;
    bool done = false;
    std::uint64_t best = 0;
    std::vector<std::uint32_t> witness;
    OpenBranch cursor;
  };
  std::vector<Slot> slots(tasks.size());
  std::atomic<std::size_t> next_task{0};
  Control ctl;
  ctl.budget = opts.budget;
  ctl.stop = opts.stop;
  ctl.shared = &shared;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      Slot& slot = slots[i];
      if (shared.halt.load() || (opts.stop && opts.stop->load()) ||
          (opts.budget && shared.nodes.load() >= opts.budget)) {
        shared.halt = true;
        slot.cursor = tasks[i];
        continue;
      }
      slot.started = true;
      Walker w(e, tasks[i], 0, {});
      slot.done = w.run(ctl);
      slot.best = w.best();
      slot.witness = w.witness();
      if (!slot.done) {
        slot.cursor = w.cursor();
        shared.halt = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < opts.threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  st.nodes += shared.nodes.load();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    if (s.best > st.best || (s.best == st.best && s.best > 0 && witness_less(s.witness, st.witness))) {
      st.best = s.best;
      st.witness = s.witness;
    }
    if (!s.done) st.open.push_back(s.started ? s.cursor : tasks[i]);
  }
}

SearchResult run_search(const GroupSpec& spec, SearchMode mode, const SearchOptions& opts,
                        const Checkpoint* resume) {
  if (opts.threads == 0) throw InputError("threads must be at least 1");
  bool symmetry;
  std::optional<std::uint64_t> seed;
  RunState st;
  if (resume) {
    symmetry = resume->symmetry;
    seed = resume->order_seed;
  } else {
    seed = opts.order_seed;
    symmetry = opts.symmetry.value_or(spec.d() == 1) && !seed;
    st.open.push_back(OpenBranch{});
  }
  Engine e(spec, mode, symmetry, seed);
  if (resume) {
    st.best = resume->best_size;
    for (Element x : resume->witness) {
      if (!spec.contains(x)) throw InputError("checkpoint witness index out of range");
      st.witness.push_back(e.pos[x.index]);
    }
    st.nodes = resume->nodes;
    for (const auto& b : resume->open) {
      for (Element x : b.path) {
        if (!spec.contains(x)) throw InputError("checkpoint path index out of range");
      }
      if (b.next > spec.order()) throw InputError("checkpoint next position out of range");
    }
    st.open = resume->open;
  }

  if (opts.threads <= 1) {
    run_sequential(e, st, opts);
  } else {
    run_parallel(e, st, opts, resume == nullptr);
  }

  const bool exhausted = st.open.empty();
  if (!opts.checkpoint_path.empty()) save_checkpoint(opts.checkpoint_path, make_checkpoint(e, st));

  SearchResult r{spec, mode, st.best, ElementSequence(spec), exhausted, st.nodes, symmetry, seed};
  for (std::uint32_t q : st.witness) r.witness.add(e.order[q]);
  if (r.witness.length() != r.best_size) throw InternalError("witness length differs from best size");
  if (r.best_size > 0 && !is_zero_sum_free(r.witness)) throw InternalError("search witness has a zero sum");
  return r;
}

}  // namespace

SearchResult max_zero_sum_free_set(const GroupSpec& spec, const SearchOptions& options) {
  return run_search(spec, SearchMode::Olson, options, nullptr);
}

SearchResult longest_zero_sum_free_sequence(const GroupSpec& spec, const SearchOptions& options) {
  return run_search(spec, SearchMode::Davenport, options, nullptr);
}

SearchResult resume_search(const GroupSpec& spec, SearchMode mode, const std::string& path,
                           const SearchOptions& options) {
  Checkpoint c = load_checkpoint(path);
  if (c.p != spec.p() || c.d != spec.d() || c.mode != mode) {
    throw PreconditionError("checkpoint-spec mismatch: file holds F_" + std::to_string(c.p) + "^" +
                            std::to_string(c.d) + " " + to_string(c.mode) + ", requested " + spec.describe() +
                            " " + to_string(mode));
  }
  return run_search(spec, mode, options, &c);
}

ConstantValue olson_constant(const GroupSpec& spec, const SearchOptions& options) {
  SearchResult r = max_zero_sum_free_set(spec, options);
  return ConstantValue{r.best_size + 1, r.exhausted, std::move(r)};
}

ConstantValue davenport_constant(const GroupSpec& spec, const SearchOptions& options) {
  SearchResult r = longest_zero_sum_free_sequence(spec, options);
  return ConstantValue{r.best_size + 1, r.exhausted, std::move(r)};
}

namespace {

struct Enumerator {
  const GroupSpec& spec;
  std::uint64_t target;
  std::optional<Element> must;
  std::uint64_t budget;
  SetEnumeration out;
  std::vector<Element> chosen;
  std::vector<IndicatorSet> sums;

  bool has_must() const { return !must || std::find(chosen.begin(), chosen.end(), *must) != chosen.end(); }

  // false once the budget is spent
  bool dfs(std::uint32_t from) {
    const std::size_t k = chosen.size();
    if (k == target) {
      if (has_must()) out.sets.push_back(chosen);
      return true;
    }
    const IndicatorSet& s = sums[k];
    if (k + (spec.order() - 1 - s.size()) < target) return true;
    std::uint64_t allowed = 0;
    for (std::uint32_t i = std::max<std::uint32_t>(from, 1); i < spec.order(); ++i) {
      const Element x{i};
      const Element nx = spec.neg(x);
      if (s.contains(nx)) continue;
      // x and -x never both fit; count the pair at its smaller index
      if (nx == x || nx.index < from || s.contains(x) || x.index < nx.index) ++allowed;
    }
    if (k + allowed < target) return true;
    for (std::uint32_t i = std::max<std::uint32_t>(from, 1); i < spec.order(); ++i) {
      if (must && !has_must() && i > must->index) break;
      const Element x{i};
      if (s.contains(spec.neg(x))) continue;
      if (budget && out.nodes >= budget) return false;
      ++out.nodes;
      sums[k + 1] = s;
      sums[k + 1].or_translated(s, x);
      sums[k + 1].insert(x);
      chosen.push_back(x);
      const bool ok = dfs(i + 1);
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

SetEnumeration enumerate_zero_sum_free_sets(const GroupSpec& spec, std::uint64_t size,
                                            std::optional<Element> must_contain, std::uint64_t budget) {
  if (must_contain && !spec.contains(*must_contain)) throw InputError("required element outside the group");
  Enumerator en{spec, size, must_contain, budget, {}, {}, {}};
  if (size >= spec.order()) {
    en.out.exhausted = true;
    return en.out;
  }
  en.sums.assign(size + 1, IndicatorSet(spec));
  if (size == 0) {
    en.out.sets.push_back({});
    en.out.exhausted = true;
    return en.out;
  }
  en.out.exhausted = en.dfs(1);
  return en.out;
}

}  // namespace zslab
