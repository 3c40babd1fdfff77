#include "zslab/report.hpp"

#include <sstream>

namespace zslab::report {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Exact: return "exact";
    case Status::Bound: return "bound";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

Json spec_json(const GroupSpec& spec) {
  return Json{{"p", spec.p()}, {"d", spec.d()}, {"order", spec.order()}};
}

Json coords_json(const GroupSpec& spec, Element x) { return Json(spec.decode(x)); }

Json elements_json(const GroupSpec& spec, const std::vector<Element>& xs) {
  Json out = Json::array();
  for (Element x : xs) out.push_back(coords_json(spec, x));
  return out;
}

Json sequence_json(const ElementSequence& a) {
  Json out = Json::array();
  for (const auto& e : a.entries()) {
    out.push_back(Json{{"coords", coords_json(a.spec(), e.element)}, {"multiplicity", e.multiplicity}});
  }
  return out;
}

Json subspace_json(const Subspace& h) {
  return Json{{"dim", h.dim()}, {"basis", Json(h.basis())}};
}

Json verification_json(const VerificationReport& r) {
  Json out = Json::array();
  for (const auto& c : r.clauses) out.push_back(Json{{"clause", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

Json decomposition_json(const Decomposition& d) {
  const GroupSpec& spec = d.a0.spec();
  Json blocks = Json::array();
  for (const auto& b : d.blocks) blocks.push_back(sequence_json(b));
  return Json{{"kind", "decomposition"},
              {"route", d.route},
              {"epsilon", d.epsilon},
              {"block_length", d.blocks.empty() ? 0 : d.blocks.front().length()},
              {"exceptional_size", d.a0.length()},
              {"block_count", d.blocks.size()},
              {"subspace", subspace_json(d.h)},
              {"m", d.m_witness},
              {"translate", coords_json(spec, d.translate_witness)},
              {"exceptional", sequence_json(d.a0)},
              {"blocks", blocks},
              {"notes", d.notes}};
}

Json completeness_json(const CompletenessWitness& c) {
  Json out{{"kind", "completeness"}, {"m", c.m}, {"route", to_string(c.route)}};
  if (c.route == CompletenessRoute::Growth) {
    out["bases"] = c.bases;
    out["growth_rounds"] = c.rounds;
    out["e_size"] = c.e_size;
    out["f_size"] = c.f_size;
  }
  return out;
}

Json inconclusive_json(const Inconclusive& i) {
  return Json{{"kind", "inconclusive"},
              {"stage", i.stage},
              {"reason", i.reason},
              {"best_hyperplane_count", i.best_hyperplane_count},
              {"best_growth_fraction", i.best_growth_fraction},
              {"notes", i.notes}};
}

Json search_json(const SearchResult& r) {
  return Json{{"mode", zslab::to_string(r.mode)},
              {"best_size", r.best_size},
              {"exhausted", r.exhausted},
              {"symmetry", r.symmetry},
              {"witness", sequence_json(r.witness)}};
}

Json grt_json(const GrtConstruction& g) {
  Json out{{"p", g.p},
           {"variant", g.variant},
           {"size", g.set.length()},
           {"expected_size", g.expected_size},
           {"verified", g.verified},
           {"set", sequence_json(g.set)}};
  if (g.variant == 2) {
    out["omitted_y"] = Json::array({g.omitted_y[0], g.omitted_y[1]});
    out["line_witnesses"] = g.line_witnesses;
    out["extra_point"] = Json::array({2, g.extra_y});
    out["choices"] = g.choices;
    out["side_condition_holds"] = g.side_condition_holds;
    out["shape_verifies"] = g.shape_verifies;
    out["shape_without_side_condition"] = g.shape_without_side_condition;
  }
  return out;
}

Json stacked_json(const StackedConstruction& s) {
  return Json{{"size", s.set.length()}, {"expected_size", s.expected_size}, {"verified", s.verified},
              {"set", sequence_json(s.set)}};
}

Json classification_json(const Classification& c) {
  const GroupSpec plane = GroupSpec::make(c.p, 2);
  Json orbits = Json::array();
  for (const auto& o : c.orbits) {
    orbits.push_back(Json{{"representative", elements_json(plane, o.representative)},
                          {"members", o.members},
                          {"orbit_size", o.orbit_size},
                          {"matches_variant1", o.matches_variant1},
                          {"matches_variant2", o.matches_variant2}});
  }
  return Json{{"p", c.p},
              {"ol_p", c.ol_p},
              {"max_size", c.max_size},
              {"exhausted", c.exhausted},
              {"restricted_to_e1", c.restricted_to_e1},
              {"sets", c.sets},
              {"orbit_count", c.orbits.size()},
              {"orbits", orbits},
              {"deviations", c.deviations}};
}

Json olson3_json(const Olson3Report& r) {
  auto constant = [](const ConstantValue& v) {
    return Json{{"value", v.value}, {"exact", v.exact}, {"nodes", v.search.nodes}};
  };
  Json table = Json::array();
  table.push_back(Json{{"quantity", "OL(F_p^3)"}, {"value", r.lower_bound}, {"exact", r.ol3.exact}});
  table.push_back(Json{{"quantity", "(2+gamma)p"}, {"value", r.linear_bound}, {"exact", true}});
  table.push_back(Json{{"quantity", "p+OL(F_p^2)-1"}, {"value", r.conjectured}, {"exact", r.ol2.exact}});
  return Json{{"p", r.p},
              {"gamma", r.gamma},
              {"ol1", constant(r.ol1)},
              {"ol2", constant(r.ol2)},
              {"ol3", constant(r.ol3)},
              {"stacked_size", r.stacked_size},
              {"ol3_lower_bound", r.lower_bound},
              {"within_linear_bound", static_cast<double>(r.lower_bound) <= r.linear_bound},
              {"matches_conjecture", r.ol3.exact && r.ol2.exact && r.ol3.value == r.conjectured},
              {"table", table}};
}

Json envelope_json(const Envelope& e) {
  Json out{{"schema_version", kSchemaVersion},
           {"command", e.command},
           {"spec", e.spec},
           {"parameters", e.parameters},
           {"result", e.result},
           {"verification", Json{{"status", to_string(e.status)}, {"checks", e.checks}}}};
  Json timing = Json::object();
  if (e.seconds) timing["seconds"] = *e.seconds;
  if (e.nodes) timing["nodes"] = *e.nodes;
  out["timing"] = timing;
  return out;
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) &&
             !(j.front().is_array() && !j.front().empty() && j.front().front().is_number())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

std::string render_text(const Envelope& e) {
  std::ostringstream out;
  out << e.command;
  if (!e.spec.is_null()) out << " over F_" << e.spec["p"].get<std::uint32_t>() << "^" << e.spec["d"].get<std::uint32_t>();
  out << " [" << to_string(e.status) << "]\n";
  flatten(e.result, "", out);
  for (auto it = e.checks.begin(); it != e.checks.end(); ++it) {
    out << "check " << it.key() << ": " << (it.value().get<bool>() ? "pass" : "FAIL") << '\n';
  }
  if (e.seconds) out << "time: " << *e.seconds << " s\n";
  if (e.nodes) out << "nodes: " << *e.nodes << '\n';
  return out.str();
}

}  // namespace zslab::report
