#ifndef GBS_JSON_IO_HPP
#define GBS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "gbs/graph.hpp"
#include "gbs/iso.hpp"
#include "gbs/moves.hpp"

namespace gbs {

// JSON mirror of the .gbs schema.
nlohmann::json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& j);

// MoveSequence schema used by certificate files:
//   {"initial": "<fingerprint>", "moves": [{"kind": "slide", ...}, ...]}
nlohmann::json move_to_json(const Move& m);
Move move_from_json(const nlohmann::json& j);
nlohmann::json sequence_to_json(const MoveSequence& seq);
MoveSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json match_to_json(const GraphMatch& m);
GraphMatch match_from_json(const nlohmann::json& j);

// Certificate files (.cert.json) embed both input graphs so a verifier only
// needs the file naming graph A plus the certificate.
nlohmann::json certificate_to_json(const IsoCertificate& cert, const LabeledGraph& a,
                                   const LabeledGraph& b);
IsoCertificate certificate_from_json(const nlohmann::json& j, LabeledGraph* a_out,
                                     LabeledGraph* b_out);

}  // namespace gbs

#endif
