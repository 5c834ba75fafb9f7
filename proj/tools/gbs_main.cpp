// gbs: decision procedures for generalized Baumslag-Solitar groups given as
// labeled graphs. Exit codes: 0 yes/true, 1 no/false, 2 error, 3
// inconclusive, 64 usage.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gbs/json_io.hpp"
#include "gbs/oracle.hpp"

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitInconclusive = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gbs::GbsError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Options {
    bool as_json = false;
    int budget_slack = 8;
    long long budget_paths = 4096;
    long long snm_cap = 10000;
    int threads = 1;  // reserved; execution is sequential for reproducibility

    gbs::SearchBudget budget() const {
        gbs::SearchBudget b;
        b.exponent_slack = budget_slack;
        b.max_path_len = budget_paths;
        b.snm_cap = snm_cap;
        return b;
    }
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_flag("--json", opt.as_json, "machine-readable report");
    cmd->add_option("--budget-slack,--max-exponent-slack", opt.budget_slack,
                    "exponent box slack");
    cmd->add_option("--budget-paths,--max-path-len", opt.budget_paths,
                    "maximum slide path length");
    cmd->add_option("--snm-cap", opt.snm_cap, "state cap for the non-mobile closure");
    cmd->add_option("--threads", opt.threads, "reserved; runs are sequential");
}

void emit(const Options& opt, const json& report, const std::string& text) {
    if (opt.as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

json base_report(const std::string& command) {
    json j;
    j["schema"] = "gbs.report.v1";
    j["command"] = command;
    return j;
}

template <typename T>
void fill_verdict(json& j, const gbs::Decision<T>& d) {
    j["verdict"] = gbs::to_string(d.verdict);
    if (!d.reason.empty()) j["reason"] = d.reason;
    if (d.bound) j["bound"] = *d.bound;
}

int verdict_exit(gbs::Verdict v) {
    switch (v) {
        case gbs::Verdict::yes: return kExitYes;
        case gbs::Verdict::no: return kExitNo;
        default: return kExitInconclusive;
    }
}

json witness_json(const gbs::LabeledGraph& g, const gbs::MonotoneCycleWitness& w) {
    json j;
    j["path"] = gbs::path_names(g, w.path);
    j["last_edge"] = g.half_edge_name(w.last_edge);
    j["modulus"] = w.modulus.to_string();
    return j;
}

int run_reduce(const std::string& file, const Options& opt) {
    gbs::LabeledGraph g = gbs::parse_graph(read_file(file));
    auto [red, seq] = gbs::reduce(g);
    json j = base_report("reduce");
    j["graph"] = gbs::graph_to_json(red);
    j["text"] = gbs::serialize_graph(red);
    j["collapses"] = gbs::sequence_to_json(seq);
    emit(opt, j, gbs::serialize_graph(red));
    return kExitYes;
}

int run_ascending(const std::string& file, const Options& opt) {
    gbs::LabeledGraph g = gbs::parse_graph(read_file(file));
    auto [red, seq] = gbs::reduce(g);
    auto d = gbs::is_ascending(gbs::normalize_signs(red).first, opt.budget());
    json j = base_report("ascending");
    fill_verdict(j, d);
    std::string text = d.is_yes() ? "ascending"
                       : d.is_no() ? "non-ascending"
                                   : "inconclusive: " + d.reason;
    if (d.is_yes()) {
        j["witness"] = witness_json(gbs::normalize_signs(red).first, d.value().cycle);
        j["exhibition"] = gbs::sequence_to_json(d.value().exhibition);
    }
    emit(opt, j, text);
    return verdict_exit(d.verdict);
}

int run_smc(const std::string& file, const Options& opt) {
    gbs::LabeledGraph g = gbs::parse_graph(read_file(file));
    auto [red, seq] = gbs::reduce(g);
    gbs::LabeledGraph n = gbs::normalize_signs(red).first;
    auto d = gbs::has_smc(n, opt.budget());
    json j = base_report("smc");
    fill_verdict(j, d);
    std::string text;
    if (d.is_yes()) {
        j["witness"] = witness_json(n, d.value());
        text = "strict monotone cycle: (";
        for (const auto& name : gbs::path_names(n, d.value().path)) text += name + ",";
        text += n.half_edge_name(d.value().last_edge) + ") modulus " +
                d.value().modulus.to_string();
    } else if (d.is_no()) {
        text = "no strict monotone cycle";
    } else {
        text = "inconclusive: " + d.reason;
    }
    emit(opt, j, text);
    return verdict_exit(d.verdict);
}

int run_mobile(const std::string& file, const Options& opt) {
    gbs::LabeledGraph g = gbs::parse_graph(read_file(file));
    auto [red, seq] = gbs::reduce(g);
    gbs::LabeledGraph n = gbs::normalize_signs(red).first;
    auto d = gbs::mobile_edge_set(n, opt.budget());
    json j = base_report("mobile");
    fill_verdict(j, d);
    std::string text;
    if (d.is_yes()) {
        json mob = json::array(), non = json::array();
        text = "mobile:";
        for (int e = 0; e < n.edge_count(); ++e) {
            bool is_mob = std::find(d.value().begin(), d.value().end(), e) != d.value().end();
            (is_mob ? mob : non).push_back(n.edge_names[e]);
            if (is_mob) text += " " + n.edge_names[e];
        }
        if (d.value().empty()) text += " (none)";
        j["mobile"] = mob;
        j["non_mobile"] = non;
    } else {
        text = "inconclusive: " + d.reason;
    }
    emit(opt, j, text);
    return d.is_yes() ? kExitYes : kExitInconclusive;
}

int run_snm(const std::string& file, const Options& opt) {
    gbs::LabeledGraph g = gbs::parse_graph(read_file(file));
    auto [red, seq] = gbs::reduce(g);
    gbs::LabeledGraph n = gbs::normalize_signs(red).first;
    if (!gbs::rose_shape(n)) throw gbs::UnsupportedClass("S_NM enumeration needs a rose");
    auto mob = gbs::mobile_edge_set(n, opt.budget());
    if (!mob.is_yes()) {
        json j = base_report("snm");
        j["verdict"] = "inconclusive";
        j["reason"] = mob.reason;
        emit(opt, j, "inconclusive: " + mob.reason);
        return kExitInconclusive;
    }
    auto d = gbs::enumerate_snm(n, mob.value(), opt.budget());
    json j = base_report("snm");
    fill_verdict(j, d);
    const gbs::SnmSet& set = d.value();
    json graphs = json::array();
    std::string text = "S_NM size " + std::to_string(set.graphs.size()) +
                       (set.complete ? "" : " (capped)");
    for (const auto& gr : set.graphs) {
        graphs.push_back(gbs::serialize_graph(gr));
        text += "\n" + gbs::serialize_graph(gr);
    }
    j["graphs"] = graphs;
    j["complete"] = set.complete;
    emit(opt, j, text);
    return d.is_yes() ? kExitYes : kExitInconclusive;
}

int run_iso(const std::string& file_a, const std::string& file_b, const std::string& cert_out,
            const Options& opt) {
    gbs::LabeledGraph a = gbs::parse_graph(read_file(file_a));
    gbs::LabeledGraph b = gbs::parse_graph(read_file(file_b));
    auto d = gbs::are_isomorphic(a, b, opt.budget());
    json j = base_report("iso");
    fill_verdict(j, d);
    std::string text;
    if (d.is_yes()) {
        json cert = gbs::certificate_to_json(d.value(), a, b);
        j["certificate"] = cert;
        if (!cert_out.empty()) {
            std::ofstream out(cert_out);
            if (!out) throw gbs::GbsError("cannot write '" + cert_out + "'");
            out << cert.dump(2) << "\n";
        }
        text = "isomorphic";
        if (!cert_out.empty()) text += " (certificate: " + cert_out + ")";
    } else if (d.is_no()) {
        text = "not isomorphic: " + d.reason;
    } else {
        text = "inconclusive: " + d.reason;
    }
    emit(opt, j, text);
    return verdict_exit(d.verdict);
}

int run_verify_cert(const std::string& file_a, const std::string& cert_file,
                    const Options& opt) {
    gbs::LabeledGraph a = gbs::parse_graph(read_file(file_a));
    json jc = json::parse(read_file(cert_file));
    gbs::LabeledGraph cert_a, cert_b;
    gbs::IsoCertificate cert = gbs::certificate_from_json(jc, &cert_a, &cert_b);
    json j = base_report("verify-cert");
    if (gbs::serialize_graph(a) != gbs::serialize_graph(cert_a)) {
        j["verdict"] = "no";
        j["reason"] = "certificate was issued for a different graph";
        emit(opt, j, "certificate was issued for a different graph");
        return kExitNo;
    }
    std::string why;
    bool ok = gbs::verify_certificate(cert_a, cert_b, cert, &why);
    j["verdict"] = ok ? "yes" : "no";
    if (!ok) j["reason"] = why;
    emit(opt, j, ok ? "certificate valid" : "certificate invalid: " + why);
    return ok ? kExitYes : kExitNo;
}

int run_oracle(const std::string& file_a, const std::string& file_b, long long max_label,
               int max_depth, const Options& opt) {
    gbs::LabeledGraph a = gbs::parse_graph(read_file(file_a));
    gbs::LabeledGraph b = gbs::parse_graph(read_file(file_b));
    auto [ra, sa] = gbs::reduce(a);
    auto [rb, sb] = gbs::reduce(b);
    auto d = gbs::oracle_bfs(gbs::normalize_signs(ra).first, gbs::normalize_signs(rb).first,
                             max_label, max_depth);
    json j = base_report("oracle-bfs");
    fill_verdict(j, d);
    std::string text;
    if (d.is_yes()) {
        j["depth"] = d.value();
        text = "reachable at depth " + std::to_string(d.value());
    } else if (d.is_no()) {
        text = "unreachable (exhaustive)";
    } else {
        text = "inconclusive: " + d.reason;
    }
    emit(opt, j, text);
    return verdict_exit(d.verdict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision procedures for GBS groups presented by labeled graphs"};
    app.require_subcommand(1);
    Options opt;

    std::string file_a, file_b, cert_out, cert_file;
    long long max_label = 1000000;
    int max_depth = 10;

    auto* c_reduce = app.add_subcommand("reduce", "collapse to a reduced labeled graph");
    c_reduce->add_option("file", file_a)->required();
    add_common(c_reduce, opt);

    auto* c_asc = app.add_subcommand("ascending", "decide whether the group is ascending");
    c_asc->add_option("file", file_a)->required();
    add_common(c_asc, opt);

    auto* c_smc = app.add_subcommand("smc", "search for a strict monotone cycle");
    c_smc->add_option("file", file_a)->required();
    add_common(c_smc, opt);

    auto* c_mob = app.add_subcommand("mobile", "classify mobile edges");
    c_mob->add_option("file", file_a)->required();
    add_common(c_mob, opt);

    auto* c_snm = app.add_subcommand("snm", "enumerate the non-mobile slide closure");
    c_snm->add_option("file", file_a)->required();
    add_common(c_snm, opt);

    auto* c_iso = app.add_subcommand("iso", "decide isomorphism with a certificate");
    c_iso->add_option("fileA", file_a)->required();
    c_iso->add_option("fileB", file_b)->required();
    c_iso->add_option("--cert", cert_out, "write the certificate here on yes");
    add_common(c_iso, opt);

    auto* c_ver = app.add_subcommand("verify-cert", "replay a certificate");
    c_ver->add_option("file", file_a)->required();
    c_ver->add_option("cert", cert_file)->required();
    add_common(c_ver, opt);

    auto* c_orc = app.add_subcommand("oracle-bfs", "brute-force slide-space reachability");
    c_orc->add_option("fileA", file_a)->required();
    c_orc->add_option("fileB", file_b)->required();
    c_orc->add_option("--max-label", max_label, "largest |label| explored");
    c_orc->add_option("--max-depth", max_depth, "largest slide count explored");
    add_common(c_orc, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (app.got_subcommand(c_reduce)) return run_reduce(file_a, opt);
        if (app.got_subcommand(c_asc)) return run_ascending(file_a, opt);
        if (app.got_subcommand(c_smc)) return run_smc(file_a, opt);
        if (app.got_subcommand(c_mob)) return run_mobile(file_a, opt);
        if (app.got_subcommand(c_snm)) return run_snm(file_a, opt);
        if (app.got_subcommand(c_iso)) return run_iso(file_a, file_b, cert_out, opt);
        if (app.got_subcommand(c_ver)) return run_verify_cert(file_a, cert_file, opt);
        if (app.got_subcommand(c_orc)) return run_oracle(file_a, file_b, max_label, max_depth, opt);
    } catch (const gbs::GbsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitError;
    }
    return 64;
}
