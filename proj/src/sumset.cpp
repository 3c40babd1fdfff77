#include "zslab/sumset.hpp"

#include <unordered_map>

#include "zslab/error.hpp"

namespace zslab {

IndicatorSet subsums_all(const ElementSequence& a) {
  const GroupSpec& spec = a.spec();
  IndicatorSet reach(spec);
  for (const auto& e : a.entries()) {
    for (std::uint32_t copy = 0; copy < e.multiplicity; ++copy) {
      const std::size_t before = reach.size();
      reach.or_translated(reach, e.element);
      reach.insert(e.element);
      // A further copy cannot add anything once a copy added nothing.
      if (reach.size() == before || reach.is_full()) break;
    }
    if (reach.is_full()) break;
  }
  return reach;
}

namespace {

// Layers 0..max_m; if `target` is set, layers that can no longer feed it are skipped.
std::vector<IndicatorSet> build_layers(const ElementSequence& a, std::uint64_t max_m,
                                       std::optional<std::uint64_t> target) {
  const GroupSpec& spec = a.spec();
  std::vector<IndicatorSet> layers(max_m + 1, IndicatorSet(spec));
  layers[0].insert(spec.zero());
  std::uint64_t processed = 0;
  std::uint64_t remaining = a.length();
  for (const auto& e : a.entries()) {
    for (std::uint32_t copy = 0; copy < e.multiplicity; ++copy) {
      --remaining;
      ++processed;
      std::uint64_t top = std::min(processed, max_m);
      std::uint64_t bottom = 1;
      if (target && *target > remaining + 1) bottom = *target - remaining;
      for (std::uint64_t t = top; t >= bottom && t >= 1; --t) {
        if (!layers[t - 1].empty()) layers[t].or_translated(layers[t - 1], e.element);
      }
    }
  }
  return layers;
}

}  // namespace

std::vector<IndicatorSet> subsums_layers(const ElementSequence& a, std::uint64_t max_m) {
  return build_layers(a, max_m, std::nullopt);
}

IndicatorSet subsums_exact(const ElementSequence& a, std::uint64_t m) {
  if (m < 1 || m > a.length()) {
    throw InputError("m = " + std::to_string(m) + " is outside [1, " + std::to_string(a.length()) + "]");
  }
  auto layers = build_layers(a, m, m);
  return std::move(layers[m]);
}

std::optional<std::uint64_t> first_complete_layer(const ElementSequence& a, std::uint64_t max_m) {
  max_m = std::min<std::uint64_t>(max_m, a.length());
  if (max_m == 0) return std::nullopt;
  auto layers = build_layers(a, max_m, std::nullopt);
  for (std::uint64_t m = 1; m <= max_m; ++m) {
    if (layers[m].is_full()) return m;
  }
  return std::nullopt;
}

bool is_zero_sum_free(const ElementSequence& a) {
  if (a.empty()) return true;
  return !subsums_all(a).contains(a.spec().zero());
}

bool is_incomplete(const ElementSequence& a) { return !subsums_all(a).is_full(); }

bool is_m_incomplete(const ElementSequence& a, std::uint64_t m) { return !subsums_exact(a, m).is_full(); }

std::optional<Element> find_contained_coset(const IndicatorSet& s, const Subspace& h) {
  if (!(s.spec() == h.spec())) throw InputError("set and subspace live in different groups");
  const std::uint64_t need = h.size();
  if (s.size() < need) return std::nullopt;
  if (h.dim() == 0) return s.elements().front();
  std::unordered_map<std::uint32_t, std::uint64_t> per_coset;
  s.for_each([&](Element x) { ++per_coset[h.coset_rep(x).index]; });
  std::optional<Element> best;
  for (const auto& [rep, count] : per_coset) {
    if (count == need && (!best || rep < best->index)) best = Element{rep};
  }
  return best;
}

bool meets_growth_threshold(std::size_t gain, std::size_t y_size, std::uint32_t p, double w) noexcept {
  return static_cast<double>(gain) * 16.0 * p >= w * static_cast<double>(y_size);
}

GrowthOutcome growth_step(const ElementSequence& a, const IndicatorSet& y, Element a_prev, double w) {
  const GroupSpec& spec = a.spec();
  if (!(y.spec() == spec)) throw InputError("sequence and set live in different groups");
  if (w < 1.0) throw InputError("W must be at least 1");
  if (y.empty()) throw PreconditionError("growth step needs a nonempty Y");
  if (2 * static_cast<std::uint64_t>(y.size()) > spec.order()) {
    throw PreconditionError("growth step needs |Y| <= p^d/2, got |Y| = " + std::to_string(y.size()));
  }
  if (a.multiplicity(a_prev) == 0) throw PreconditionError("a_prev is not an element of A");

  GrowthWitness best{a_prev, 0};
  for (const auto& e : a.entries()) {
    std::size_t gain = y.translate_gain(spec.sub(e.element, a_prev));
    if (gain > best.gain) best = GrowthWitness{e.element, gain};
  }
  if (best.gain > 0 && meets_growth_threshold(best.gain, y.size(), spec.p(), w)) return best;

  const double need = static_cast<double>(a.length()) / (4.0 * w);
  for (auto through : {std::optional<Element>(a_prev), std::optional<Element>()}) {
    HyperplaneCount h = richest_affine_hyperplane(a, through);
    if (static_cast<double>(h.count) > need) return ConcentratedHyperplane{h.hyperplane, h.count};
  }
  throw InternalError("growth dichotomy failed: best gain " + std::to_string(best.gain) +
                      " below threshold and no hyperplane holds more than |A|/(4W) elements");
}

}  // namespace zslab
