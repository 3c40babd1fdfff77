#include "zslab/structure.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "zslab/error.hpp"

namespace zslab {

namespace {

bool in_unit_interval(double x) { return x > 0.0 && x <= 1.0; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

void DecompositionParams::validate() const {
  if (!in_unit_interval(alpha)) throw InputError("alpha must lie in (0, 1], got " + fmt(alpha));
  if (!in_unit_interval(beta)) throw InputError("beta must lie in (0, 1], got " + fmt(beta));
  if (!in_unit_interval(delta)) throw InputError("delta must lie in (0, 1], got " + fmt(delta));
  if (!(w >= 1.0)) throw InputError("W must be at least 1, got " + fmt(w));
  if (epsilon) {
    if (!in_unit_interval(*epsilon)) throw InputError("epsilon must lie in (0, 1], got " + fmt(*epsilon));
    if (*epsilon > alpha) throw InputError("epsilon must not exceed alpha");
  }
  if (norm_cutoff && !(*norm_cutoff > 0.0)) throw InputError("norm cutoff must be positive");
}

std::uint64_t block_length(double epsilon, std::uint32_t p) noexcept {
  return static_cast<std::uint64_t>(std::floor(epsilon * p + 1e-9));
}

const char* to_string(GrowthStop stop) noexcept {
  switch (stop) {
    case GrowthStop::HalfSpace: return "half-space";
    case GrowthStop::PoolExhausted: return "pool-exhausted";
    case GrowthStop::StepCap: return "step-cap";
    case GrowthStop::Concentrated: return "concentrated";
  }
  return "?";
}

const char* to_string(CompletenessRoute route) noexcept {
  return route == CompletenessRoute::Growth ? "growth" : "exact-scan";
}

AffineBasisExtraction extract_disjoint_affine_bases(const ElementSequence& a, std::size_t count) {
  const GroupSpec& spec = a.spec();
  const std::uint32_t need = spec.d() + 1;
  std::vector<Element> pool = a.expanded();
  AffineBasisExtraction out{{}, ElementSequence(spec)};

  while (out.bases.size() < count && pool.size() >= need) {
    std::vector<std::size_t> picked;
    std::vector<Coords> diffs;
    for (std::size_t i = 0; i < pool.size() && picked.size() < need; ++i) {
      if (picked.empty()) {
        picked.push_back(i);
        continue;
      }
      diffs.push_back(spec.decode(spec.sub(pool[i], pool[picked.front()])));
      if (rank(spec.p(), diffs) == diffs.size()) {
        picked.push_back(i);
      } else {
        diffs.pop_back();
      }
    }
    if (picked.size() < need) break;
    std::vector<Element> basis;
    for (std::size_t i : picked) basis.push_back(pool[i]);
    for (auto it = picked.rbegin(); it != picked.rend(); ++it) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*it));
    out.bases.push_back(std::move(basis));
  }
  for (Element x : pool) out.remainder.add(x);
  return out;
}

HalfSpaceGrowth grow_to_half_space(IndicatorSet seed, const ElementSequence& pool, double w,
                                   std::size_t step_cap) {
  const GroupSpec& spec = pool.spec();
  if (!(seed.spec() == spec)) throw InputError("seed and pool live in different groups");
  if (seed.empty()) throw PreconditionError("growth needs a nonempty seed");
  if (pool.empty()) throw PreconditionError("growth needs a nonempty pool");

  HalfSpaceGrowth g{std::move(seed), {}, {}, {}, 0, GrowthStop::HalfSpace, std::nullopt};
  ElementSequence remaining = pool;
  const std::uint64_t order = spec.order();
  for (;;) {
    g.sizes.push_back(g.grown.size());
    if (2 * static_cast<std::uint64_t>(g.grown.size()) > order) {
      g.stop = GrowthStop::HalfSpace;
      break;
    }
    if (g.rounds >= step_cap) {
      g.stop = GrowthStop::StepCap;
      break;
    }
    if (remaining.length() < 2) {
      g.stop = GrowthStop::PoolExhausted;
      break;
    }
    const Element a_prev = remaining.entries().front().element;
    GrowthOutcome step = growth_step(remaining, g.grown, a_prev, w);
    if (auto* c = std::get_if<ConcentratedHyperplane>(&step)) {
      g.stop = GrowthStop::Concentrated;
      g.concentration = *c;
      break;
    }
    const GrowthWitness wit = std::get<GrowthWitness>(step);
    IndicatorSet next = g.grown.translated(a_prev);
    next.or_translated(g.grown, wit.a);
    if (next.size() != g.grown.size() + wit.gain) {
      throw InternalError("growth round produced " + std::to_string(next.size()) + " elements, expected " +
                          std::to_string(g.grown.size() + wit.gain));
    }
    g.grown = std::move(next);
    remaining.remove(a_prev);
    remaining.remove(wit.a);
    g.used.push_back(a_prev);
    g.used.push_back(wit.a);
    g.gains.push_back(wit.gain);
    ++g.rounds;
  }
  return g;
}

namespace {

struct GrowthAttempt {
  std::optional<CompletenessWitness> witness;
  double fraction = 0.0;
  std::string note;
};

// Two disjoint families of affine bases seed E and F; each side grows past
// half the group from its own half of the leftover pool, so E + F is everything.
GrowthAttempt try_growth_route(const ElementSequence& a, const DecompositionParams& params) {
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  GrowthAttempt out;
  const double c1 = std::min(params.beta, params.delta) / (4.0 * (spec.d() + 1));
  const std::size_t s = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(c1 * p)));
  AffineBasisExtraction ext = extract_disjoint_affine_bases(a, 2 * s);
  const std::size_t half = ext.bases.size() / 2;
  if (half == 0) {
    out.note = "growth route: fewer than two disjoint affine bases";
    return out;
  }
  ElementSequence rest = ext.remainder;
  if (ext.bases.size() % 2 == 1) {
    for (Element x : ext.bases.back()) rest.add(x);
  }
  const std::uint64_t cap = static_cast<std::uint64_t>(std::floor(params.beta * p));
  if (2 * half > cap) {
    out.note = "growth route: basis count exceeds beta*p";
    return out;
  }

  auto seed_of = [&](std::size_t from) {
    IndicatorSet acc = IndicatorSet::singleton(spec, spec.zero());
    for (std::size_t i = from; i < from + half; ++i) acc = sumset(acc, IndicatorSet::from_elements(spec, ext.bases[i]));
    return acc;
  };
  ElementSequence pool_e(spec), pool_f(spec);
  std::vector<Element> flat = rest.expanded();
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2) {
    pool_e.add(flat[i]);
    pool_f.add(flat[i + 1]);
  }

  std::uint64_t budget = cap - 2 * half;
  auto grow = [&](IndicatorSet seed, const ElementSequence& pool) -> std::optional<HalfSpaceGrowth> {
    if (2 * static_cast<std::uint64_t>(seed.size()) > spec.order() || pool.empty()) {
      HalfSpaceGrowth g{std::move(seed), {}, {}, {}, 0, GrowthStop::PoolExhausted, std::nullopt};
      g.sizes.push_back(g.grown.size());
      if (2 * static_cast<std::uint64_t>(g.grown.size()) > spec.order()) g.stop = GrowthStop::HalfSpace;
      return g;
    }
    return grow_to_half_space(std::move(seed), pool, params.w, budget);
  };
  auto ge = grow(seed_of(0), pool_e);
  out.fraction = static_cast<double>(ge->grown.size()) / spec.order();
  if (ge->stop != GrowthStop::HalfSpace) {
    out.note = std::string("growth route: E side stopped (") + to_string(ge->stop) + ")";
    return out;
  }
  budget -= ge->rounds;
  auto gf = grow(seed_of(half), pool_f);
  out.fraction = std::min(out.fraction, static_cast<double>(gf->grown.size()) / spec.order());
  if (gf->stop != GrowthStop::HalfSpace) {
    out.note = std::string("growth route: F side stopped (") + to_string(gf->stop) + ")";
    return out;
  }

  const std::uint64_t m = 2 * half + ge->rounds + gf->rounds;
  if (!sumset(ge->grown, gf->grown).is_full()) throw InternalError("E + F is not the whole group after both sides passed half");
  if (!subsums_exact(a, m).is_full()) throw InternalError("m*A misses elements of E + F");
  out.witness = CompletenessWitness{m, CompletenessRoute::Growth, ge->grown.size(), gf->grown.size(), 2 * half,
                                    ge->rounds + gf->rounds};
  return out;
}

}  // namespace

RichHyperplaneResult find_rich_hyperplane(const ElementSequence& a, const DecompositionParams& params,
                                          const RichHyperplaneOptions& options) {
  params.validate();
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  if (static_cast<double>(a.length()) < params.delta * p) {
    throw PreconditionError("need |A| >= delta*p: |A| = " + std::to_string(a.length()) + ", delta*p = " +
                            fmt(params.delta * p));
  }
  Inconclusive diag{"find_rich_hyperplane", "", 0, 0.0, {}};
  if (!options.skip_completeness) {
    GrowthAttempt g = try_growth_route(a, params);
    if (g.witness) return *g.witness;
    diag.best_growth_fraction = g.fraction;
    diag.notes.push_back(g.note);
    const auto cap = static_cast<std::uint64_t>(std::floor(params.beta * p));
    if (auto m = first_complete_layer(a, cap)) {
      return CompletenessWitness{*m, CompletenessRoute::ExactScan, 0, 0, 0, 0};
    }
    diag.notes.push_back("m*A misses an element for every m <= beta*p");
  }
  const double eps = params.epsilon_or_default();
  const auto threshold = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(eps * p - 1e-9)));
  HyperplaneCount h = richest_affine_hyperplane(a);
  diag.best_hyperplane_count = h.count;
  if (h.count >= threshold) return RichHyperplane{h.hyperplane, h.hyperplane.flat(spec), h.count};
  diag.reason = "richest affine hyperplane holds " + std::to_string(h.count) + " < ceil(epsilon*p) = " +
                std::to_string(threshold) + " elements";
  return diag;
}

D1Classification classify_d1(const ElementSequence& a) {
  const GroupSpec& spec = a.spec();
  if (spec.d() != 1) throw DomainError("dilation split is defined for d = 1 only");
  const std::uint32_t p = spec.p();
  IndicatorSet s = subsums_all(a);
  if (s.is_full()) return CompleteSequence{s.size()};

  using Key = std::tuple<std::uint64_t, std::uint64_t, int, std::uint32_t>;
  std::optional<Key> best_key;
  std::optional<DilationDecomposition> best;
  std::vector<ElementSequence::Entry> image;
  for (std::uint32_t b = 1; b < p; ++b) {
    ElementSequence dil = dilate(b, a);
    image.assign(dil.entries().begin(), dil.entries().end());
    std::sort(image.begin(), image.end(), [&](const auto& x, const auto& y) {
      return std::pair(norm(spec, x.element), x.element.index) < std::pair(norm(spec, y.element), y.element.index);
    });
    DilationDecomposition cur{b, ElementSequence(spec), ElementSequence(spec), 0, false};
    std::int64_t signed_sum = 0;
    for (const auto& e : image) {
      const std::uint64_t n = norm(spec, e.element);
      std::uint64_t take = e.multiplicity;
      if (n > 0) take = std::min<std::uint64_t>(take, (p - 1 - cur.sharp_norm_sum) / n);
      if (take > 0) {
        cur.sharp.add(e.element, static_cast<std::uint32_t>(take));
        cur.sharp_norm_sum += take * n;
        const std::int64_t rep = e.element.index <= p / 2 ? std::int64_t{e.element.index}
                                                           : std::int64_t{e.element.index} - std::int64_t{p};
        signed_sum += static_cast<std::int64_t>(take) * rep;
      }
      if (take < e.multiplicity) cur.flat.add(e.element, static_cast<std::uint32_t>(e.multiplicity - take));
    }
    Key key{cur.flat.length(), cur.sharp_norm_sum, signed_sum < 0 ? 1 : 0, b};
    if (!best_key || key < *best_key) {
      best_key = key;
      best = std::move(cur);
    }
  }
  best->meets_theorem_bound = static_cast<double>(best->flat.length()) <= std::pow(static_cast<double>(p), 12.0 / 13.0);
  return *best;
}

AffineFlat dimension_increment(const ElementSequence& a1, std::uint64_t m1, const Subspace& h1,
                               const ElementSequence& a2, std::uint64_t m2, const Subspace& h1c,
                               const Subspace& h2) {
  const GroupSpec& spec = a1.spec();
  if (!(a2.spec() == spec && h1.spec() == spec && h1c.spec() == spec && h2.spec() == spec)) {
    throw InputError("dimension increment inputs live in different groups");
  }
  if (h1.dim() + h1c.dim() != spec.d() || !(h1 + h1c == Subspace::full(spec))) {
    throw PreconditionError("H1 and H1c are not complementary");
  }
  if (!h2.is_subspace_of(h1c)) throw PreconditionError("H2 is not contained in H1c");
  if (m1 < 1 || m1 > a1.length()) throw PreconditionError("m1 must lie in [1, |A1|]");
  if (m2 < 1 || m2 > a2.length()) throw PreconditionError("m2 must lie in [1, |A2|]");

  IndicatorSet s1 = subsums_exact(a1, m1);
  auto v1 = find_contained_coset(s1, h1);
  if (!v1) throw PreconditionError("m1*A1 contains no translate of H1");

  ElementSequence proj(spec);
  for (const auto& e : a2.entries()) proj.add(project(e.element, h1, h1c).onto_second, e.multiplicity);
  auto v2 = find_contained_coset(subsums_exact(proj, m2), h2);
  if (!v2) throw PreconditionError("m2*pi(A2) contains no translate of H2");

  AffineFlat flat{spec.add(*v1, *v2), h1 + h2};
  IndicatorSet both = sumset(s1, subsums_exact(a2, m2));
  for (Element x : flat.elements()) {
    if (!both.contains(x)) throw InternalError("lifted flat escapes m1*A1 + m2*A2");
  }
  return flat;
}

bool VerificationReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseCheck& c) { return c.passed; });
}

const ClauseCheck* VerificationReport::failed_clause() const {
  for (const auto& c : clauses) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

VerificationReport verify_decomposition(const ElementSequence& a, const Decomposition& d,
                                        const DecompositionParams& params) {
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  VerificationReport r;
  auto clause = [&](std::string name, bool ok, std::string detail) {
    r.clauses.push_back(ClauseCheck{std::move(name), ok, std::move(detail)});
  };

  bool same_group = d.a0.spec() == spec && d.h.spec() == spec;
  for (const auto& b : d.blocks) same_group = same_group && b.spec() == spec;
  clause("same-group", same_group, spec.describe());
  if (!same_group) return r;

  ElementSequence joined = d.a0;
  for (const auto& b : d.blocks) joined += b;
  clause("partition", joined == a,
         "parts hold " + std::to_string(joined.length()) + " of " + std::to_string(a.length()) + " elements");

  clause("exceptional-size", static_cast<double>(d.a0.length()) <= params.alpha * p + 1e-9,
         "|A0| = " + std::to_string(d.a0.length()) + ", alpha*p = " + fmt(params.alpha * p));

  const std::uint64_t k = block_length(d.epsilon, p);
  bool lengths = d.epsilon > 0.0 && d.epsilon <= params.alpha + 1e-12 && k >= 1;
  for (const auto& b : d.blocks) lengths = lengths && b.length() == k;
  clause("block-length", lengths, "floor(epsilon*p) = " + std::to_string(k) + ", epsilon = " + fmt(d.epsilon));

  bool in_translate = true;
  for (const auto& b : d.blocks) {
    if (b.empty()) continue;
    const Element base = b.entries().front().element;
    for (const auto& e : b.entries()) in_translate = in_translate && d.h.contains(spec.sub(e.element, base));
  }
  clause("blocks-in-translates", in_translate, "dim H = " + std::to_string(d.h.dim()));

  bool covers = d.m_witness >= 1 && d.m_witness <= d.a0.length();
  if (covers) {
    IndicatorSet s = subsums_exact(d.a0, d.m_witness);
    const AffineFlat flat{d.translate_witness, d.h};
    for (Element x : flat.elements()) {
      if (!s.contains(x)) {
        covers = false;
        break;
      }
    }
  }
  clause("exceptional-covers-translate", covers, "m = " + std::to_string(d.m_witness));
  return r;
}

}  // namespace zslab
