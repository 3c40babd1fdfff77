#include "zslab/extremal.hpp"

#include <algorithm>
#include <map>

#include "zslab/error.hpp"
#include "zslab/linalg.hpp"
#include "zslab/sumset.hpp"

namespace zslab {

namespace {

Element pt(const GroupSpec& plane, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t c[2] = {x % plane.p(), y % plane.p()};
  return plane.encode(c);
}

// Maximum zero-sum-free set of F_p of size ol_p - 1, or throws.
std::vector<Element> line_witness(std::uint32_t p, std::uint64_t ol_p) {
  const GroupSpec line = GroupSpec::make(p, 1);
  SearchResult r = max_zero_sum_free_set(line);
  if (r.best_size + 1 != ol_p) {
    throw PreconditionError("ol_p = " + std::to_string(ol_p) + " is not OL(F_" + std::to_string(p) +
                            ") = " + std::to_string(r.best_size + 1));
  }
  return r.witness.expanded();
}

}  // namespace

GrtConstruction construct_grt_config(std::uint32_t p, int variant, std::uint64_t ol_p) {
  if (variant != 1 && variant != 2) throw InputError("variant must be 1 or 2");
  if (variant == 2 && p < 3) throw DomainError("the second shape needs three distinct lines, so p >= 3");
  const GroupSpec plane = GroupSpec::make(p, 2);
  const GroupSpec line = GroupSpec::make(p, 1);
  GrtConstruction g{p, variant, ElementSequence(plane), p + ol_p - 2, false, line_witness(p, ol_p)};

  ElementSequence base(plane);
  for (Element y : g.line_witness) base.add(pt(plane, 0, y.index));

  if (variant == 1) {
    g.set = base;
    for (std::uint32_t y = 1; y < p; ++y) g.set.add(pt(plane, 1, y));
    g.verified = g.set.length() == g.expected_size && is_zero_sum_free(g.set);
    if (!g.verified) throw PreconditionError("first shape failed to verify at p = " + std::to_string(p));
    return g;
  }

  // Every shape: any maximum zero-sum-free set on x = 0, x = 1 minus two
  // points, one point on x = 2. The fixed witness above goes first.
  std::vector<std::vector<Element>> witnesses{g.line_witness};
  for (auto& w : enumerate_zero_sum_free_sets(line, ol_p - 1).sets) {
    if (w != g.line_witness) witnesses.push_back(std::move(w));
  }
  g.line_witnesses = witnesses.size();
  bool have = false;
  for (const auto& w : witnesses) {
    ElementSequence on_axis(plane);
    for (Element y : w) on_axis.add(pt(plane, 0, y.index));
    for (std::uint32_t r1 = 0; r1 < p; ++r1) {
      for (std::uint32_t r2 = r1 + 1; r2 < p; ++r2) {
        ElementSequence shape = on_axis;
        std::uint64_t ysum = 0;
        for (std::uint32_t y = 0; y < p; ++y) {
          if (y == r1 || y == r2) continue;
          shape.add(pt(plane, 1, y));
          ysum += y;
        }
        for (std::uint32_t y2 = 0; y2 < p; ++y2) {
          ++g.choices;
          // x = 1 and x = 2 together sum onto the y-axis at height ysum + y2
          ElementSequence side = ElementSequence::from_elements(line, w);
          side.add(Element{static_cast<std::uint32_t>((ysum + y2) % p)});
          const bool side_ok = is_zero_sum_free(side);
          ElementSequence cand = shape;
          cand.add(pt(plane, 2, y2));
          const bool ok = is_zero_sum_free(cand);
          g.side_condition_holds += side_ok;
          g.shape_verifies += ok;
          g.shape_without_side_condition += ok && !side_ok;
          if (ok && side_ok && !have) {
            have = true;
            g.set = cand;
            g.line_witness = w;
            g.omitted_y = {r1, r2};
            g.extra_y = y2;
          }
        }
      }
    }
  }
  g.verified = have && g.set.length() == g.expected_size;
  if (!g.verified) {
    throw PreconditionError("no choice of the second shape verifies at p = " + std::to_string(p) + " (" +
                            std::to_string(g.choices) + " shapes tried)");
  }
  return g;
}

StackedConstruction construct_stacked(std::uint32_t p, std::uint32_t d, const ElementSequence& lower_witness) {
  if (d < 2) throw InputError("stacking needs d >= 2");
  const GroupSpec lower = GroupSpec::make(p, d - 1);
  if (!(lower_witness.spec() == lower)) throw InputError("lower witness must live in " + lower.describe());
  for (const auto& e : lower_witness.entries()) {
    if (e.multiplicity != 1) throw InputError("lower witness must be a set");
  }
  if (!is_zero_sum_free(lower_witness)) throw PreconditionError("lower witness is not zero-sum-free");
  const GroupSpec spec = GroupSpec::make(p, d);
  StackedConstruction out{ElementSequence(spec), lower_witness.length() + p - 1, false};
  for (const auto& e : lower_witness.entries()) {
    Coords c = lower.decode(e.element);
    c.push_back(0);
    out.set.add(spec.encode(c));
  }
  for (std::uint32_t j = 0; j + 1 < p; ++j) out.set.add(Element{spec.power(d - 1) + j});
  out.verified = out.set.length() == out.expected_size && is_zero_sum_free(out.set);
  if (!out.verified) throw PreconditionError("stacked set failed to verify");
  return out;
}

Classification classify_max_zero_sum_free_F_p2(std::uint32_t p, std::uint64_t budget) {
  if (p == 2) throw DomainError("p = 2 is out of theorem scope");
  const GroupSpec plane = GroupSpec::make(p, 2);
  Classification c;
  c.p = p;
  c.ol_p = max_zero_sum_free_set(GroupSpec::make(p, 1)).best_size + 1;
  SearchOptions opts;
  opts.symmetry = true;
  SearchResult top = max_zero_sum_free_set(plane, opts);
  c.max_size = top.best_size;
  c.nodes = top.nodes;
  c.restricted_to_e1 = p >= 7;
  SetEnumeration en = enumerate_zero_sum_free_sets(plane, c.max_size,
                                                   c.restricted_to_e1 ? std::optional<Element>(Element{1}) : std::nullopt,
                                                   budget);
  c.exhausted = en.exhausted;
  c.nodes += en.nodes;
  c.sets = en.sets.size();

  const std::vector<LinearMap> maps = enumerate_general_linear(plane);
  std::map<std::vector<Element>, std::size_t> orbit_of;  // every image -> its orbit
  auto shape = [&](const std::vector<Element>& s, std::uint64_t on0, std::uint64_t on1, std::uint64_t on2) {
    std::uint64_t n[3] = {0, 0, 0};
    for (Element x : s) {
      const std::uint32_t col = plane.coord(x, 0);
      if (col > 2) return false;
      ++n[col];
    }
    return n[0] == on0 && n[1] == on1 && n[2] == on2;
  };

  for (const auto& s : en.sets) {
    if (!is_zero_sum_free(ElementSequence::from_elements(plane, s))) {
      throw InternalError("enumerated set is not zero-sum-free");
    }
    if (auto it = orbit_of.find(s); it != orbit_of.end()) {
      ++c.orbits[it->second].members;
      continue;
    }
    OrbitClass oc;
    oc.members = 1;
    const std::size_t id = c.orbits.size();
    std::vector<Element> img(s.size());
    for (const auto& m : maps) {
      for (std::size_t i = 0; i < s.size(); ++i) img[i] = m.apply(s[i]);
      std::sort(img.begin(), img.end());
      if (orbit_of.emplace(img, id).second) {
        ++oc.orbit_size;
        if (oc.representative.empty() || img < oc.representative) oc.representative = img;
        oc.matches_variant1 = oc.matches_variant1 || shape(img, c.ol_p - 1, p - 1, 0);
        oc.matches_variant2 = oc.matches_variant2 || shape(img, c.ol_p - 1, p - 2, 1);
      }
    }
    c.orbits.push_back(std::move(oc));
  }
  if (c.max_size != p + c.ol_p - 2) {
    c.deviations.push_back("maximum size " + std::to_string(c.max_size) + " differs from p + OL(F_p) - 2 = " +
                           std::to_string(p + c.ol_p - 2));
  }
  for (std::size_t i = 0; i < c.orbits.size(); ++i) {
    const auto& o = c.orbits[i];
    if (!o.matches_variant1 && !o.matches_variant2) {
      c.deviations.push_back("orbit " + std::to_string(i) + " matches neither shape");
    } else if (o.matches_variant1 && o.matches_variant2) {
      c.deviations.push_back("orbit " + std::to_string(i) + " matches both shapes");
    }
  }
  if (!c.exhausted) c.deviations.push_back("enumeration stopped at the node budget; classification is partial");
  return c;
}

bool check_adding_lines(const ElementSequence& b1, const ElementSequence& b2, std::uint32_t b) {
  const GroupSpec& plane = b1.spec();
  if (plane.d() != 2 || !(b2.spec() == plane)) throw InputError("both sets must live in F_p^2");
  const std::uint32_t p = plane.p();
  if (b % p == 0) throw InputError("b must be nonzero mod p");
  for (const auto& e : b1.entries()) {
    if (plane.coord(e.element, 0) != b % p) throw InputError("B1 has a point off the line x = b");
  }
  for (const auto& e : b2.entries()) {
    if (plane.coord(e.element, 0) != (p - b % p) % p) throw InputError("B2 has a point off the line x = p - b");
  }
  IndicatorSet sum = sumset(IndicatorSet::from_elements(plane, b1.expanded()),
                            IndicatorSet::from_elements(plane, b2.expanded()));
  for (std::uint32_t y = 0; y < p; ++y) {
    if (!sum.contains(pt(plane, 0, y))) return false;
  }
  return true;
}

Olson3Report olson3_experiment(std::uint32_t p, double gamma, std::uint64_t budget) {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  SearchOptions exact;
  exact.symmetry = true;
  ConstantValue ol1 = olson_constant(GroupSpec::make(p, 1), exact);
  SearchOptions two = exact;
  two.budget = budget;
  ConstantValue ol2 = olson_constant(GroupSpec::make(p, 2), two);
  SearchOptions three = two;
  ConstantValue ol3 = olson_constant(GroupSpec::make(p, 3), three);

  StackedConstruction st = construct_stacked(p, 3, ol2.search.witness);
  const std::uint64_t lower = std::max(ol3.value, st.set.length() + 1);
  return Olson3Report{p, gamma, std::move(ol1), std::move(ol2), std::move(ol3), st.set.length(), lower,
                      (2.0 + gamma) * p, p + ol2.value - 1};
}

}  // namespace zslab
