#include "gbs/json_io.hpp"

namespace gbs {

using nlohmann::json;

json graph_to_json(const LabeledGraph& g) {
    json j;
    j["vertices"] = g.vertex_names;
    json edges = json::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        json je;
        je["name"] = g.edge_names[e];
        je["origin"] = g.vertex_names[g.origin[2 * e]];
        je["terminus"] = g.vertex_names[g.origin[2 * e + 1]];
        je["labels"] = {g.labels[2 * e].value(), g.labels[2 * e + 1].value()};
        edges.push_back(je);
    }
    j["edges"] = edges;
    return j;
}

LabeledGraph graph_from_json(const json& j) {
    // Reuse the text parser so both formats share validation.
    std::string text;
    for (const auto& v : j.at("vertices")) text += v.get<std::string>() + " ";
    for (const auto& e : j.at("edges")) {
        text += "; " + e.at("name").get<std::string>() + ": " +
                e.at("origin").get<std::string>() + " " + e.at("terminus").get<std::string>() +
                " " + std::to_string(e.at("labels").at(0).get<long long>()) + " " +
                std::to_string(e.at("labels").at(1).get<long long>());
    }
    return parse_graph(text);
}

namespace {

const char* kind_name(Move::Kind k) {
    switch (k) {
        case Move::Kind::slide: return "slide";
        case Move::Kind::induction: return "induction";
        case Move::Kind::amove_plus: return "amove_plus";
        case Move::Kind::amove_minus: return "amove_minus";
        case Move::Kind::collapse: return "collapse";
        case Move::Kind::expansion: return "expansion";
    }
    return "?";
}

Move::Kind kind_from_name(const std::string& s) {
    if (s == "slide") return Move::Kind::slide;
    if (s == "induction") return Move::Kind::induction;
    if (s == "amove_plus") return Move::Kind::amove_plus;
    if (s == "amove_minus") return Move::Kind::amove_minus;
    if (s == "collapse") return Move::Kind::collapse;
    if (s == "expansion") return Move::Kind::expansion;
    throw InvalidSequence("unknown move kind '" + s + "'");
}

}  // namespace

json move_to_json(const Move& m) {
    json j;
    j["kind"] = kind_name(m.kind);
    switch (m.kind) {
        case Move::Kind::slide:
            j["edge"] = m.edge;
            j["path"] = m.path;
            break;
        case Move::Kind::induction:
            j["edge"] = m.edge;
            j["l"] = m.factor;
            j["divide"] = m.divide;
            break;
        case Move::Kind::amove_plus:
            j["edge"] = m.edge;
            j["l"] = m.factor;
            j["new_vertex"] = m.new_vertex;
            j["new_edge"] = m.new_edge;
            break;
        case Move::Kind::amove_minus:
            j["vertex"] = m.vertex;
            break;
        case Move::Kind::collapse:
            j["edge"] = m.edge;
            break;
        case Move::Kind::expansion:
            j["vertex"] = m.vertex;
            j["new_vertex"] = m.new_vertex;
            j["new_edge"] = m.new_edge;
            j["factor"] = m.factor;
            j["moved"] = m.moved;
            j["sign_flip"] = m.sign_flip;
            break;
    }
    return j;
}

Move move_from_json(const json& j) {
    Move m;
    m.kind = kind_from_name(j.at("kind").get<std::string>());
    switch (m.kind) {
        case Move::Kind::slide:
            m.edge = j.at("edge").get<std::string>();
            m.path = j.at("path").get<std::vector<std::string>>();
            break;
        case Move::Kind::induction:
            m.edge = j.at("edge").get<std::string>();
            m.factor = j.at("l").get<long long>();
            m.divide = j.value("divide", false);
            break;
        case Move::Kind::amove_plus:
            m.edge = j.at("edge").get<std::string>();
            m.factor = j.at("l").get<long long>();
            m.new_vertex = j.at("new_vertex").get<std::string>();
            m.new_edge = j.at("new_edge").get<std::string>();
            break;
        case Move::Kind::amove_minus:
            m.vertex = j.at("vertex").get<std::string>();
            break;
        case Move::Kind::collapse:
            m.edge = j.at("edge").get<std::string>();
            break;
        case Move::Kind::expansion:
            m.vertex = j.at("vertex").get<std::string>();
            m.new_vertex = j.at("new_vertex").get<std::string>();
            m.new_edge = j.at("new_edge").get<std::string>();
            m.factor = j.at("factor").get<long long>();
            m.moved = j.at("moved").get<std::vector<std::string>>();
            m.sign_flip = j.value("sign_flip", false);
            break;
    }
    return m;
}

json sequence_to_json(const MoveSequence& seq) {
    json j;
    j["initial"] = seq.initial_fingerprint;
    json moves = json::array();
    for (const auto& m : seq.moves) moves.push_back(move_to_json(m));
    j["moves"] = moves;
    return j;
}

MoveSequence sequence_from_json(const json& j) {
    MoveSequence seq;
    seq.initial_fingerprint = j.value("initial", std::string{});
    for (const auto& jm : j.at("moves")) seq.moves.push_back(move_from_json(jm));
    return seq;
}

json match_to_json(const GraphMatch& m) {
    json j;
    j["vertex_map"] = m.vertex_map;
    j["edge_map"] = m.edge_map;
    j["flip"] = m.flip;
    j["vertex_signs"] = m.vertex_signs;
    j["edge_signs"] = m.edge_signs;
    return j;
}

GraphMatch match_from_json(const json& j) {
    GraphMatch m;
    m.vertex_map = j.at("vertex_map").get<std::vector<int>>();
    m.edge_map = j.at("edge_map").get<std::vector<int>>();
    m.flip = j.at("flip").get<std::vector<bool>>();
    m.vertex_signs = j.at("vertex_signs").get<std::vector<int>>();
    m.edge_signs = j.at("edge_signs").get<std::vector<int>>();
    return m;
}

json certificate_to_json(const IsoCertificate& cert, const LabeledGraph& a,
                         const LabeledGraph& b) {
    json j;
    j["schema"] = "gbs.cert.v1";
    j["graph_a"] = serialize_graph(a);
    j["graph_b"] = serialize_graph(b);
    j["reduction_a"] = sequence_to_json(cert.reduction_a);
    j["reduction_b"] = sequence_to_json(cert.reduction_b);
    j["normalized_a"] = cert.normalized_a;
    j["normalized_b"] = cert.normalized_b;
    j["snm"] = sequence_to_json(cert.snm);
    json mobile = json::array();
    for (const auto& seq : cert.mobile) mobile.push_back(sequence_to_json(seq));
    j["mobile"] = mobile;
    j["final_match"] = match_to_json(cert.final_match);
    return j;
}

IsoCertificate certificate_from_json(const json& j, LabeledGraph* a_out, LabeledGraph* b_out) {
    if (j.value("schema", std::string{}) != "gbs.cert.v1")
        throw InvalidSequence("unknown certificate schema");
    if (a_out) *a_out = parse_graph(j.at("graph_a").get<std::string>());
    if (b_out) *b_out = parse_graph(j.at("graph_b").get<std::string>());
    IsoCertificate cert;
    cert.reduction_a = sequence_from_json(j.at("reduction_a"));
    cert.reduction_b = sequence_from_json(j.at("reduction_b"));
    cert.normalized_a = j.at("normalized_a").get<std::string>();
    cert.normalized_b = j.at("normalized_b").get<std::string>();
    cert.snm = sequence_from_json(j.at("snm"));
    for (const auto& js : j.at("mobile")) cert.mobile.push_back(sequence_from_json(js));
    cert.final_match = match_from_json(j.at("final_match"));
    return cert;
}

}  // namespace gbs
