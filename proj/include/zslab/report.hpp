#pragma once

// JSON report envelope shared by every CLI command, plus a flat text rendering.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "zslab/constants.hpp"
#include "zslab/extremal.hpp"
#include "zslab/linalg.hpp"
#include "zslab/sequence.hpp"
#include "zslab/structure.hpp"

namespace zslab::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Status { Exact, Bound, Inconclusive };
const char* to_string(Status s) noexcept;

Json spec_json(const GroupSpec& spec);
Json coords_json(const GroupSpec& spec, Element x);
Json elements_json(const GroupSpec& spec, const std::vector<Element>& xs);
/// [{"coords": [...], "multiplicity": k}, ...] in canonical order.
Json sequence_json(const ElementSequence& a);
Json subspace_json(const Subspace& h);
Json verification_json(const VerificationReport& r);
Json decomposition_json(const Decomposition& d);
Json completeness_json(const CompletenessWitness& c);
Json inconclusive_json(const Inconclusive& i);
Json search_json(const SearchResult& r);
Json grt_json(const GrtConstruction& g);
Json stacked_json(const StackedConstruction& s);
Json classification_json(const Classification& c);
Json olson3_json(const Olson3Report& r);

struct Envelope {
  std::string command;
  Json spec;  // null when the command has no single ambient group
  Json parameters = Json::object();
  Json result = Json::object();
  Status status = Status::Exact;
  Json checks = Json::object();  // name -> bool
  std::optional<double> seconds;
  std::optional<std::uint64_t> nodes;
};

Json envelope_json(const Envelope& e);
/// One "path: value" line per scalar leaf of the result and checks.
std::string render_text(const Envelope& e);

}  // namespace zslab::report
