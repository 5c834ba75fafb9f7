#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef GBS_CLI_PATH
#error "GBS_CLI_PATH must be defined"
#endif
#ifndef GBS_FIXTURE_DIR
#error "GBS_FIXTURE_DIR must be defined"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(GBS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string fx(const std::string& name) { return std::string(GBS_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("exit-code contract is total") {
    CHECK(run("ascending " + fx("e1.gbs")).exit_code == 1);     // no/false
    CHECK(run("smc " + fx("e2.gbs")).exit_code == 0);           // yes
    CHECK(run("smc " + fx("e2p.gbs")).exit_code == 1);          // exhaustive no
    CHECK(run("iso " + fx("bs23.gbs") + " " + fx("bs32.gbs")).exit_code == 0);
    CHECK(run("iso " + fx("bs23.gbs") + " " + fx("bs25.gbs")).exit_code == 1);
    CHECK(run("oracle-bfs " + fx("bs23.gbs") + " " + fx("bs25.gbs")).exit_code == 1);
    CHECK(run("mobile " + fx("e1.gbs")).exit_code == 0);
    CHECK(run("reduce " + fx("e1.gbs")).exit_code == 0);
    // errors: missing file, unsupported class
    CHECK(run("ascending /nonexistent.gbs").exit_code == 2);
    CHECK(run("ascending " + fx("e2.gbs")).exit_code == 2);  // 4-rose, two mobile edges
    // inconclusive: cap the non-mobile closure below its size
    CHECK(run("snm " + fx("snm46.gbs") + " --snm-cap 2").exit_code == 3);
    // usage
    CHECK(run("").exit_code == 64);
    CHECK(run("frobnicate x").exit_code == 64);
}

TEST_CASE("plain-text verdicts") {
    auto asc = run("ascending " + fx("e1.gbs"));
    CHECK(asc.out == "non-ascending\n");
    auto smc = run("smc " + fx("e2p.gbs"));
    CHECK(smc.out == "no strict monotone cycle\n");
    auto smc2 = run("smc " + fx("e2.gbs"));
    CHECK(smc2.out.find("modulus 3") != std::string::npos);
    auto mob = run("mobile " + fx("e1.gbs"));
    CHECK(mob.out == "mobile: f1\n");
    auto red = run("reduce " + fx("bs23.gbs"));
    CHECK(red.out == "v0; e: v0 v0 2 3\n");
}

TEST_CASE("json reports are byte-stable and well-formed") {
    auto a = run("smc " + fx("e2.gbs") + " --json");
    auto b = run("smc " + fx("e2.gbs") + " --json");
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("schema") == "gbs.report.v1");
    CHECK(j.at("command") == "smc");
    CHECK(j.at("verdict") == "yes");
    CHECK(j.at("witness").at("modulus") == "3");
    CHECK(j.at("witness").at("path") == nlohmann::json({"f3", "f2", "f4"}));

    auto m = nlohmann::json::parse(run("mobile " + fx("e1.gbs") + " --json").out);
    CHECK(m.at("mobile") == nlohmann::json({"f1"}));
    CHECK(m.at("non_mobile") == nlohmann::json({"f2", "f3"}));
}

TEST_CASE("iso certificate files replay through verify-cert") {
    std::string cert = "cli_roundtrip.cert.json";
    auto iso = run("iso " + fx("e1.gbs") + " " + fx("e1_slid.gbs") + " --cert " + cert);
    REQUIRE(iso.exit_code == 0);
    CHECK(run("verify-cert " + fx("e1.gbs") + " " + cert).exit_code == 0);
    // a certificate for a different graph is rejected
    CHECK(run("verify-cert " + fx("e2.gbs") + " " + cert).exit_code == 1);
    // a tampered certificate fails replay
    {
        std::ifstream in(cert);
        nlohmann::json j = nlohmann::json::parse(in);
        j["normalized_b"] = "v0; f1: v0 v0 7 61; f2: v0 v0 6 15; f3: v0 v0 10 8";
        std::ofstream out("tampered.cert.json");
        out << j.dump(2);
    }
    CHECK(run("verify-cert " + fx("e1.gbs") + " tampered.cert.json").exit_code == 1);
}

TEST_CASE("oracle depth counts whole slide moves") {
    auto same = run("oracle-bfs " + fx("e1.gbs") + " " + fx("e1.gbs") + " --json");
    REQUIRE(same.exit_code == 0);
    CHECK(nlohmann::json::parse(same.out).at("depth") == 0);
    auto r = run("oracle-bfs " + fx("e1.gbs") + " " + fx("e1_slid.gbs") + " --json");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out).at("depth") == 1);
}

TEST_CASE("iso json embeds the certificate") {
    auto r = run("iso " + fx("e1.gbs") + " " + fx("e1_slid.gbs") + " --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("verdict") == "yes");
    CHECK(j.at("certificate").at("schema") == "gbs.cert.v1");
}

TEST_CASE("budget flags accept both spellings") {
    CHECK(run("smc " + fx("e2.gbs") + " --budget-slack 8 --budget-paths 64").exit_code == 0);
    CHECK(run("smc " + fx("e2.gbs") + " --max-exponent-slack 8 --max-path-len 64").exit_code == 0);
}
