#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "zslab/error.hpp"
#include "zslab/structure.hpp"

namespace zslab {

namespace {

// A decomposition at one recursion level. m == 0 only when a0 is empty and h = {0}.
struct Partial {
  ElementSequence a0;
  std::vector<ElementSequence> blocks;
  Subspace h;
  std::uint64_t m = 0;
  Element v;
  std::uint64_t k = 0;  // block length
  std::string route;
  std::vector<std::string> notes;
};

using LevelResult = std::variant<Partial, CompletenessWitness, Inconclusive>;

Inconclusive fail(std::string stage, std::string reason) {
  return Inconclusive{std::move(stage), std::move(reason), 0, 0.0, {}};
}

double cutoff_of(const DecompositionParams& params, double eps) {
  return params.norm_cutoff.value_or(2.0 / eps);
}

// Heights (values in F_p) the dilation split marks as exceptional, as a multiset.
std::map<std::uint32_t, std::uint64_t> exceptional_heights(const DilationDecomposition& dd, double cutoff) {
  const GroupSpec& line = dd.flat.spec();
  const std::uint32_t binv = inverse_mod(dd.b, line.p());
  std::map<std::uint32_t, std::uint64_t> out;
  for (const auto& e : dd.flat.entries()) out[line.scale(binv, e.element).index] += e.multiplicity;
  for (const auto& e : dd.sharp.entries()) {
    if (norm(line, e.element) >= cutoff) out[line.scale(binv, e.element).index] += e.multiplicity;
  }
  return out;
}

struct Grouping {
  ElementSequence exceptional;
  std::map<std::uint32_t, std::vector<Element>> groups;  // height -> elements, canonical order
};

Grouping group_by_height(const ElementSequence& rest, const std::vector<std::uint32_t>& heights_of_entries,
                         std::map<std::uint32_t, std::uint64_t> exceptional) {
  Grouping g{ElementSequence(rest.spec()), {}};
  std::size_t i = 0;
  for (const auto& e : rest.entries()) {
    const std::uint32_t c = heights_of_entries[i++];
    std::uint64_t& ex = exceptional[c];
    const std::uint64_t take = std::min<std::uint64_t>(ex, e.multiplicity);
    ex -= take;
    if (take > 0) g.exceptional.add(e.element, static_cast<std::uint32_t>(take));
    for (std::uint64_t j = take; j < e.multiplicity; ++j) g.groups[c].push_back(e.element);
  }
  return g;
}

// Cuts each group into blocks of length k; leftovers join a0.
void cut_groups(const Grouping& g, std::uint64_t k, ElementSequence& a0, std::vector<ElementSequence>& blocks) {
  const GroupSpec& spec = a0.spec();
  for (const auto& [c, xs] : g.groups) {
    std::size_t full = xs.size() / k * k;
    for (std::size_t i = 0; i < full; i += k) {
      ElementSequence b(spec);
      for (std::size_t j = i; j < i + k; ++j) b.add(xs[j]);
      blocks.push_back(std::move(b));
    }
    for (std::size_t j = full; j < xs.size(); ++j) a0.add(xs[j]);
  }
}

std::uint64_t leftovers(const Grouping& g, std::uint64_t k) {
  std::uint64_t r = 0;
  for (const auto& [c, xs] : g.groups) r += xs.size() % k;
  return r;
}

// d = 1: blocks are runs of one repeated value.
LevelResult decompose_line(const ElementSequence& a, const DecompositionParams& params, double eps) {
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  const std::uint64_t k = block_length(eps, p);
  if (k < 1) return fail("line", "floor(epsilon*p) = 0");

  std::vector<std::uint32_t> heights;
  for (const auto& e : a.entries()) heights.push_back(e.element.index);
  std::vector<std::map<std::uint32_t, std::uint64_t>> tiers;
  std::vector<std::string> tier_notes;
  D1Classification cls = classify_d1(a);
  if (auto* dd = std::get_if<DilationDecomposition>(&cls)) {
    tiers.push_back(exceptional_heights(*dd, cutoff_of(params, eps)));
    tier_notes.push_back("dilation b = " + std::to_string(dd->b));
  }
  tiers.emplace_back();
  tier_notes.push_back("plain value runs");

  std::optional<Partial> best;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    Grouping g = group_by_height(a, heights, tiers[t]);
    Partial cur{g.exceptional, {}, Subspace::zero(spec), 0, spec.zero(), k, "line", {tier_notes[t]}};
    cut_groups(g, k, cur.a0, cur.blocks);
    if (!best || cur.a0.length() < best->a0.length()) best = std::move(cur);
  }
  if (!best->a0.empty()) {
    best->m = 1;
    best->v = best->a0.entries().front().element;
  }
  return std::move(*best);
}

// Case where some block B_i (on the hyperplane n.x = c) has a layer m*B_i
// that fills its whole translate: everything off B_i is sorted by height n.x.
std::optional<Partial> regroup_by_height(const ElementSequence& a, const ElementSequence& bi,
                                         const AffineHyperplane& hp, std::uint64_t m, Element v,
                                         const DecompositionParams& params, double eps) {
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  const GroupSpec line = GroupSpec::make(p, 1);
  const Subspace h = Subspace::kernel(spec, std::vector<Coords>{hp.normal});
  const ElementSequence rest = a.minus(bi);

  std::vector<std::uint32_t> heights;
  ElementSequence height_seq(line);
  for (const auto& e : rest.entries()) {
    heights.push_back(spec.dot(hp.normal, e.element));
    height_seq.add(Element{heights.back()}, e.multiplicity);
  }

  std::vector<std::map<std::uint32_t, std::uint64_t>> tiers;
  std::vector<std::string> tier_notes;
  if (!height_seq.empty()) {
    D1Classification cls = classify_d1(height_seq);
    if (auto* dd = std::get_if<DilationDecomposition>(&cls)) {
      tiers.push_back(exceptional_heights(*dd, cutoff_of(params, eps)));
      tier_notes.push_back("heights dilated by b = " + std::to_string(dd->b));
    }
  }
  tiers.emplace_back();
  tier_notes.push_back("heights without exceptional set");

  const double cap = params.alpha * p + 1e-9;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    Grouping g = group_by_height(rest, heights, tiers[t]);
    const std::uint64_t fixed = bi.length() + g.exceptional.length();
    if (static_cast<double>(fixed) > cap) continue;
    const std::uint64_t groups = std::max<std::size_t>(1, g.groups.size());
    const auto k_top = std::max(block_length(eps, p),
                                static_cast<std::uint64_t>(std::floor(params.alpha * p / (2.0 * groups) + 1e-9)));
    for (std::uint64_t k = k_top; k >= 2; --k) {
      if (static_cast<double>(fixed + leftovers(g, k)) > cap) continue;
      Partial out{bi + g.exceptional, {}, h, m, v, k, "hyperplane-cover", {}};
      cut_groups(g, k, out.a0, out.blocks);
      out.notes.push_back(tier_notes[t]);
      out.notes.push_back(std::to_string(g.groups.size()) + " height classes, block length " + std::to_string(k) +
                          (k == k_top ? "" : " (reduced from " + std::to_string(k_top) + ")"));
      return out;
    }
  }
  return std::nullopt;
}

// Keeps `core` as the exceptional part and cuts everything else along the
// cosets of h, trying block lengths from k_top down to 2.
std::optional<Partial> regroup_by_coset(const ElementSequence& a, const ElementSequence& core, const Subspace& h,
                                        std::uint64_t m, Element v, std::uint64_t k_top,
                                        const DecompositionParams& params) {
  const GroupSpec& spec = a.spec();
  const double cap = params.alpha * spec.p() + 1e-9;
  if (static_cast<double>(core.length()) > cap || !a.includes(core)) return std::nullopt;
  Grouping g{ElementSequence(spec), {}};
  for (const auto& e : a.minus(core).entries()) {
    auto& xs = g.groups[h.coset_rep(e.element).index];
    xs.insert(xs.end(), e.multiplicity, e.element);
  }
  for (std::uint64_t k = k_top; k >= 2; --k) {
    if (static_cast<double>(core.length() + leftovers(g, k)) > cap) continue;
    Partial out{core, {}, h, m, v, k, "coset-regroup", {}};
    cut_groups(g, k, out.a0, out.blocks);
    out.notes.push_back(std::to_string(g.groups.size()) + " cosets of a " + std::to_string(h.dim()) +
                        "-dimensional H, block length " + std::to_string(k));
    return out;
  }
  return std::nullopt;
}

LevelResult decompose_level(const ElementSequence& a, const DecompositionParams& params, double eps, bool top);

// One dimension down, blocks may be shorter: epsilon, epsilon/2, ... while
// blocks keep at least two elements. Keeps the smallest exceptional part.
LevelResult decompose_block(const ElementSequence& local, const DecompositionParams& params, double eps) {
  const std::uint32_t p = local.spec().p();
  std::optional<LevelResult> best;
  for (double e = eps; block_length(e, p) >= 2; e /= 2.0) {
    LevelResult r = decompose_level(local, params, e, false);
    if (std::holds_alternative<CompletenessWitness>(r)) return r;
    if (auto* part = std::get_if<Partial>(&r)) {
      auto* cur = best ? std::get_if<Partial>(&*best) : nullptr;
      if (!cur || part->a0.length() < cur->a0.length()) best = std::move(r);
    } else if (!best) {
      best = std::move(r);
    }
  }
  if (!best) return fail("recursive", "block too short for blocks of length 2");
  return std::move(*best);
}

// Each peeled block is decomposed inside its own hyperplane, one dimension
// down, and the exceptional parts are glued with the dimension increment.
LevelResult recurse_into_blocks(const ElementSequence& a, const ElementSequence& residue, const std::vector<ElementSequence>& peeled,
                                const std::vector<AffineHyperplane>& planes, const DecompositionParams& params,
                                double eps) {
  const GroupSpec& spec = residue.spec();
  const std::uint32_t p = spec.p();
  const GroupSpec sub_spec = GroupSpec::make(p, spec.d() - 1);

  struct Lifted {
    ElementSequence a0;
    std::vector<ElementSequence> blocks;
    Subspace h;
    std::uint64_t m;
    Element v;
  };
  std::vector<Lifted> parts;
  std::uint64_t k_min = 0;
  std::vector<std::string> notes;

  for (std::size_t i = 0; i < peeled.size(); ++i) {
    const Subspace hi = planes[i].flat(spec).space;
    const Element t = peeled[i].entries().front().element;
    ElementSequence local(sub_spec);
    for (const auto& e : peeled[i].entries()) {
      local.add(sub_spec.encode(hi.coordinates(spec.sub(e.element, t))), e.multiplicity);
    }
    auto lift = [&](Element y) { return spec.add(t, hi.combine(sub_spec.decode(y))); };
    auto lift_seq = [&](const ElementSequence& s) {
      ElementSequence out(spec);
      for (const auto& e : s.entries()) out.add(lift(e.element), e.multiplicity);
      return out;
    };
    auto lift_space = [&](const Subspace& s) {
      std::vector<Element> gens;
      for (const auto& b : s.basis()) gens.push_back(hi.combine(b));
      return Subspace::span(spec, gens);
    };

    LevelResult r = decompose_block(local, params, eps);
    if (auto* inc = std::get_if<Inconclusive>(&r)) {
      inc->notes.insert(inc->notes.begin(), "inside block " + std::to_string(i) + ": " + inc->reason);
      inc->stage = "recursive";
      return *inc;
    }
    if (auto* c = std::get_if<CompletenessWitness>(&r)) {
      // m*B_i covers the whole hyperplane translate.
      parts.push_back(Lifted{peeled[i], {}, hi, c->m, spec.scale(c->m, t)});
      continue;
    }
    Partial& s = std::get<Partial>(r);
    Lifted l{lift_seq(s.a0), {}, lift_space(s.h), s.m, spec.zero()};
    if (s.m > 0) l.v = spec.add(hi.combine(sub_spec.decode(s.v)), spec.scale(s.m, t));
    for (const auto& b : s.blocks) l.blocks.push_back(lift_seq(b));
    if (!s.blocks.empty()) k_min = k_min == 0 ? s.k : std::min(k_min, s.k);
    parts.push_back(std::move(l));
  }

  Partial out{residue, {}, Subspace::zero(spec), 0, spec.zero(), k_min, "recursive", {}};
  for (auto& part : parts) {
    for (auto& b : part.blocks) {
      std::vector<Element> xs = b.expanded();
      const std::size_t full = xs.size() / k_min * k_min;
      for (std::size_t i = 0; i < full; i += k_min) {
        ElementSequence piece(spec);
        for (std::size_t j = i; j < i + k_min; ++j) piece.add(xs[j]);
        out.blocks.push_back(std::move(piece));
      }
      for (std::size_t j = full; j < xs.size(); ++j) out.a0.add(xs[j]);
    }
  }

  bool started = false;
  ElementSequence acc_a(spec);
  for (auto& part : parts) {
    out.a0 += part.a0;
    if (part.m == 0) continue;
    if (!started) {
      acc_a = part.a0;
      out.h = part.h;
      out.m = part.m;
      out.v = part.v;
      started = true;
      continue;
    }
    const Subspace h1c = out.h.complement();
    std::vector<Element> gens;
    for (const auto& b : part.h.basis()) gens.push_back(project(spec.encode(b), out.h, h1c).onto_second);
    const Subspace h2 = Subspace::span(spec, gens);
    AffineFlat flat = dimension_increment(acc_a, out.m, out.h, part.a0, part.m, h1c, h2);
    acc_a += part.a0;
    out.m += part.m;
    out.h = flat.space;
    out.v = flat.translate;
  }
  out.notes.push_back(std::to_string(peeled.size()) + " hyperplane blocks, sub-block length " + std::to_string(k_min));
  if (static_cast<double>(out.a0.length()) <= params.alpha * p + 1e-9) return out;

  // Too many leftovers: keep only a covering core and cut the rest along H.
  const std::uint64_t k0 = block_length(eps, p);
  if (started && out.h.dim() > 0) {
    if (auto alt = regroup_by_coset(a, acc_a, out.h, out.m, out.v, k0, params)) return std::move(*alt);
  }
  for (const auto& part : parts) {
    if (part.m == 0 || part.h.dim() == 0) continue;
    if (auto alt = regroup_by_coset(a, part.a0, part.h, part.m, part.v, k0, params)) return std::move(*alt);
  }
  return out;
}

// k elements of a on the hyperplane, one copy of each distinct point per pass,
// so the block's sumsets are as wide as they can be.
ElementSequence spread_block(const ElementSequence& a, const AffineHyperplane& plane, std::uint64_t k) {
  ElementSequence on_plane(a.spec()), block(a.spec());
  for (const auto& e : a.entries()) {
    if (plane.contains(a.spec(), e.element)) on_plane.add(e.element, e.multiplicity);
  }
  if (on_plane.length() < k) throw InternalError("hyperplane holds fewer elements than a block");
  while (block.length() < k) {
    for (const auto& e : on_plane.entries()) {
      if (block.length() == k) break;
      if (block.multiplicity(e.element) < e.multiplicity) block.add(e.element);
    }
  }
  return block;
}

LevelResult decompose_level(const ElementSequence& a, const DecompositionParams& params, double eps, bool top) {
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  if (!top) {
    if (auto m = first_complete_layer(a, static_cast<std::uint64_t>(std::floor(params.beta * p)))) {
      return CompletenessWitness{*m, CompletenessRoute::ExactScan, 0, 0, 0, 0};
    }
  }
  if (spec.d() == 1) return decompose_line(a, params, eps);

  const std::uint64_t k0 = block_length(eps, p);
  if (k0 < 1) return fail("peel", "floor(epsilon*p) = 0");

  // Peel blocks of k0 elements off the richest affine hyperplane while one holds k0.
  DecompositionParams sub = params;
  sub.epsilon = static_cast<double>(k0) / p;
  sub.delta = *sub.epsilon;
  ElementSequence r = a;
  std::vector<ElementSequence> peeled;
  std::vector<AffineHyperplane> planes;
  while (r.length() >= k0) {
    RichHyperplaneResult rh = find_rich_hyperplane(r, sub, RichHyperplaneOptions{true});
    auto* hit = std::get_if<RichHyperplane>(&rh);
    if (!hit) break;
    ElementSequence block(spec);
    for (const auto& e : r.entries()) {
      if (block.length() == k0) break;
      if (!hit->hyperplane.contains(spec, e.element)) continue;
      block.add(e.element, static_cast<std::uint32_t>(std::min<std::uint64_t>(e.multiplicity, k0 - block.length())));
    }
    r = r.minus(block);
    peeled.push_back(std::move(block));
    planes.push_back(hit->hyperplane);
  }
  if (peeled.empty()) {
    auto inc = fail("peel", "no affine hyperplane holds floor(epsilon*p) = " + std::to_string(k0) + " elements");
    inc.best_hyperplane_count = richest_affine_hyperplane(a).count;
    return inc;
  }

  // A block whose layer fills its translate gives the covering case directly.
  const std::uint64_t layer_cap = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::floor(params.beta * p / 2.0)), k0);
  const std::uint64_t hyper_size = spec.order() / p;
  for (std::size_t i = 0; i < peeled.size(); ++i) {
    std::vector<ElementSequence> cores{peeled[i]};
    ElementSequence spread = spread_block(a, planes[i], k0);
    if (!(spread == peeled[i])) cores.push_back(std::move(spread));
    for (const ElementSequence& core : cores) {
      std::vector<IndicatorSet> layers = subsums_layers(core, layer_cap);
      for (std::uint64_t m = 1; m < layers.size(); ++m) {
        if (layers[m].size() != hyper_size) continue;
        const Subspace h = Subspace::kernel(spec, std::vector<Coords>{planes[i].normal});
        auto v = find_contained_coset(layers[m], h);
        if (!v) throw InternalError("full layer of a hyperplane block is not a translate");
        if (auto out = regroup_by_height(a, core, planes[i], m, *v, params, eps)) return std::move(*out);
        break;
      }
    }
  }
  return recurse_into_blocks(a, r, peeled, planes, params, eps);
}

Decomposition finalize(Partial&& part, double eps, std::uint32_t p) {
  const GroupSpec spec = part.a0.spec();
  Decomposition d{std::move(part.a0), std::move(part.blocks), std::move(part.h), part.m, part.v, 0.0,
                  std::move(part.route), std::move(part.notes)};
  if (d.a0.empty() && !d.blocks.empty()) {
    d.a0 = std::move(d.blocks.back());
    d.blocks.pop_back();
    d.notes.push_back("one block moved into A0 to carry the witness");
  }
  if (d.m_witness == 0 && !d.a0.empty()) {
    d.h = Subspace::zero(spec);
    d.m_witness = 1;
    d.translate_witness = d.a0.entries().front().element;
  }
  d.epsilon = part.k > 0 ? static_cast<double>(part.k) / p : eps;
  return d;
}

}  // namespace

DecomposeResult decompose(const ElementSequence& a, const DecompositionParams& params) {
  params.validate();
  const GroupSpec& spec = a.spec();
  const std::uint32_t p = spec.p();
  if (static_cast<double>(a.length()) < params.delta * p) {
    throw PreconditionError("need |A| >= delta*p: |A| = " + std::to_string(a.length()));
  }
  if (auto m = first_complete_layer(a, static_cast<std::uint64_t>(std::floor(params.beta * p)))) {
    return CompletenessWitness{*m, CompletenessRoute::ExactScan, 0, 0, 0, 0};
  }

  std::vector<double> candidates;
  if (params.epsilon) {
    candidates.push_back(*params.epsilon);
  } else {
    for (double e = params.alpha / 2.0; e * p >= 2.0 - 1e-9; e /= 2.0) candidates.push_back(e);
  }
  Inconclusive diag{"decompose", "", 0, 0.0, {}};
  if (candidates.empty()) {
    diag.reason = "no epsilon <= alpha/2 gives blocks of length >= 2 at p = " + std::to_string(p);
    return diag;
  }
  for (double eps : candidates) {
    LevelResult r = decompose_level(a, params, eps, true);
    if (auto* inc = std::get_if<Inconclusive>(&r)) {
      diag.best_hyperplane_count = std::max(diag.best_hyperplane_count, inc->best_hyperplane_count);
      diag.notes.push_back("epsilon = " + std::to_string(eps) + ": " + inc->stage + ": " + inc->reason);
      for (auto& n : inc->notes) diag.notes.push_back("  " + n);
      continue;
    }
    if (auto* c = std::get_if<CompletenessWitness>(&r)) return *c;
    Decomposition d = finalize(std::move(std::get<Partial>(r)), eps, p);
    VerificationReport rep = verify_decomposition(a, d, params);
    if (rep.passed()) return d;
    const ClauseCheck* bad = rep.failed_clause();
    diag.notes.push_back("epsilon = " + std::to_string(eps) + ": candidate failed clause " + bad->name + " (" +
                         bad->detail + ")");
  }
  diag.reason = "no candidate epsilon produced a verified decomposition";
  return diag;
}

}  // namespace zslab
