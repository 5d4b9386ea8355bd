// End-to-end tests of the command-line tool: output documents, exit codes,
// determinism, and the no-stdout-on-failure contract.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#ifndef RESQ_CLI_PATH
#error "RESQ_CLI_PATH must point at the built CLI binary"
#endif
#ifndef RESQ_MODELS_DIR
#error "RESQ_MODELS_DIR must point at the shipped model files"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;  // standard output only; stderr is discarded
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + RESQ_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    const int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string temp_path(const std::string& stem) {
    return std::string("/tmp/resq_cli_test_") + std::to_string(getpid()) + "_" + stem;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char ch : s) n += ch == '\n';
    return n;
}

}  // namespace

TEST_CASE("compute emits the full report document") {
    const RunResult r = run_cli("compute --pt 0.2 --dh 2 --da 2");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["resp"].get<double>() == Catch::Approx(0.54740803792624761).margin(1e-12));
    CHECK(doc["automation"]["beta"].get<double>() ==
          Catch::Approx(8.0 / 3.0).margin(1e-14));
    CHECK(doc["automation"]["d_prime"].get<double>() == 2.0);
    CHECK(doc["params"]["loop_mode"].get<std::string>() == "in");
    CHECK(doc["tables"]["joint_xy"]["target"]["engage"].get<double>() ==
          Catch::Approx(0.1525962690975173).margin(1e-13));
    CHECK(doc["tables"]["dist_x"]["abort"].get<double>() ==
          Catch::Approx(0.80297245482502274).margin(1e-12));
    CHECK(doc["dual_criteria"]["beta_given_noise"].get<double>() ==
          Catch::Approx(8.1435646818523991).margin(1e-12));
    CHECK(doc.contains("h_x_given_y"));
}

TEST_CASE("compute honors overrides and loop mode in the echo") {
    const RunResult r =
        run_cli("compute --pt 0.2 --dh 2 --da 2 --beta-h 5 --loop-mode on");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["params"]["beta_human_base_override"].get<double>() == 5.0);
    CHECK(doc["params"]["loop_mode"].get<std::string>() == "on");
}

TEST_CASE("compute self-check passes and is reported") {
    const RunResult r = run_cli("compute --pt 0.3 --dh 1.5 --da 2.5 --self-check");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["self_check"]["ok"].get<bool>());
    CHECK(doc["self_check"]["max_marginal_abs_error"].get<double>() <= 1e-12);
}

TEST_CASE("flag errors exit 1 with silent stdout") {
    CHECK(run_cli("compute --dh 2 --da 2").exit_code == 1);          // missing required --pt
    CHECK(run_cli("compute --dh 2 --da 2").out.empty());
    CHECK(run_cli("compute --pt 1.5 --dh 2 --da 2").exit_code == 1); // out-of-range parameter
    CHECK(run_cli("compute --pt 1.5 --dh 2 --da 2").out.empty());
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("compute --pt 0.2 --dh 2 --da 2 --loop-mode sideways").exit_code == 1);
}

TEST_CASE("help is an ordinary success") {
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("compute") != std::string::npos);
    CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("degenerate entropy exits 3 with silent stdout") {
    const RunResult r = run_cli("compute --pt 0.5 --dh 0.1 --da 0.1 --beta-h 1e300");
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
}

TEST_CASE("degenerate sample exits 4 with silent stdout") {
    const RunResult r =
        run_cli("simulate --pt 0.5 --dh 1 --da 1 --beta-h 1e12 --trials 50 --seed 3");
    CHECK(r.exit_code == 4);
    CHECK(r.out.empty());
}

TEST_CASE("simulate: reproducible documents and coherent counts") {
    const std::string args = "simulate --pt 0.2 --dh 2 --da 2 --trials 5000 --seed 7";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["generator"].get<std::string>() == "splitmix64_counter_invcdf_v1");
    CHECK(doc["seed"].get<std::uint64_t>() == 7);
    CHECK(doc["trials"].get<std::uint64_t>() == 5000);
    const auto& c = doc["counts"];
    const std::uint64_t total = c["target"]["engage"].get<std::uint64_t>() +
                                c["target"]["abort"].get<std::uint64_t>() +
                                c["noise"]["engage"].get<std::uint64_t>() +
                                c["noise"]["abort"].get<std::uint64_t>();
    CHECK(total == 5000);
    CHECK(doc["analytic_resp"].get<double>() ==
          Catch::Approx(0.54740803792624761).margin(1e-12));

    CHECK(run_cli("simulate --pt 0.2 --dh 2 --da 2 --trials 0 --seed 1").exit_code == 1);
}

TEST_CASE("sweep presets produce the documented CSV shape, byte-stable") {
    const RunResult a = run_cli("sweep --preset fig4");
    const RunResult b = run_cli("sweep --preset fig4");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out) == 290);  // header + 17*17 rows
    CHECK(a.out.substr(0, a.out.find('\n')) == "d_human,d_automation,resp,h_x,h_y,h_x_given_y");

    const RunResult f5 = run_cli("sweep --preset fig5");
    REQUIRE(f5.exit_code == 0);
    CHECK(f5.out.substr(0, f5.out.find('\n')) == "r,d_human,d_automation,resp,h_x,h_y,h_x_given_y");

    const RunResult f6 = run_cli("sweep --preset fig6b");
    REQUIRE(f6.exit_code == 0);
    CHECK(count_lines(f6.out) == 18);  // header + 17 ratios
    CHECK(f6.out.substr(0, f6.out.find('\n')) ==
          "beta_ratio,beta_human_base,resp,h_x,h_y,h_x_given_y");
}

TEST_CASE("sweep with explicit axes") {
    const RunResult r = run_cli("sweep --axis p_t=0.1:0.3:0.1");
    REQUIRE(r.exit_code == 0);
    CHECK(count_lines(r.out) == 4);
    CHECK(r.out.substr(0, r.out.find('\n')) == "p_t,resp,h_x,h_y,h_x_given_y");

    const RunResult grid = run_cli("sweep --axis d_human=1,2 --axis d_automation=1,2,3");
    REQUIRE(grid.exit_code == 0);
    CHECK(count_lines(grid.out) == 7);

    // a failing grid point becomes a warning, not a failure
    const RunResult partial = run_cli("sweep --axis d_human=-1,2");
    CHECK(partial.exit_code == 0);
    CHECK(count_lines(partial.out) == 2);

    CHECK(run_cli("sweep").exit_code == 1);                           // neither selector
    CHECK(run_cli("sweep --preset fig4 --axis p_t=0.2").exit_code == 1);  // both selectors
    CHECK(run_cli("sweep --preset fig9").exit_code == 1);             // unknown preset
    CHECK(run_cli("sweep --axis p_t=banana").exit_code == 1);         // unparsable values
    CHECK(run_cli("sweep --axis d_human=-1,-2").exit_code == 1);      // every point failed
}

TEST_CASE("sweep --out writes the same bytes it would print") {
    const std::string path = temp_path("fig6c.csv");
    const RunResult to_file = run_cli("sweep --preset fig6c --out '" + path + "'");
    REQUIRE(to_file.exit_code == 0);
    CHECK(to_file.out.empty());
    const RunResult to_stdout = run_cli("sweep --preset fig6c");
    CHECK(slurp(path) == to_stdout.out);
    std::remove(path.c_str());
}

TEST_CASE("model evaluation and validation") {
    const std::string dir = RESQ_MODELS_DIR;
    const RunResult aws = run_cli("model --file '" + dir + "/aws3.json'");
    REQUIRE(aws.exit_code == 0);
    const auto aws_doc = nlohmann::json::parse(aws.out);
    CHECK(aws_doc["output_variable"].get<std::string>() == "X");
    CHECK(aws_doc["resp"].get<double>() == Catch::Approx(0.54740803792624761).margin(1e-9));

    const RunResult rec = run_cli("model --file '" + dir + "/recommender.json'");
    REQUIRE(rec.exit_code == 0);
    const auto rec_doc = nlohmann::json::parse(rec.out);
    CHECK(rec_doc["resp"].get<double>() == Catch::Approx(0.515959612725899).margin(1e-12));
    CHECK(rec_doc["automation_variables"] == nlohmann::json::array({"R"}));

    const RunResult valid = run_cli("model --file '" + dir + "/aws3.json' --validate-only");
    REQUIRE(valid.exit_code == 0);
    const auto vdoc = nlohmann::json::parse(valid.out);
    CHECK(vdoc["valid"].get<bool>());
    CHECK(vdoc["output"].get<std::string>() == "X");
}

TEST_CASE("model errors exit 2, missing files exit 1") {
    const std::string cyclic = temp_path("cyclic.json");
    {
        std::ofstream out(cyclic);
        out << R"({"variables": [
                {"name": "A", "owner": "automation", "states": ["x", "y"],
                 "parents": ["B"], "cpt": [[0.5, 0.5], [0.5, 0.5]]},
                {"name": "B", "owner": "output", "states": ["x", "y"],
                 "parents": ["A"], "cpt": [[0.5, 0.5], [0.5, 0.5]]}],
               "output": "B"})";
    }
    const RunResult r = run_cli("model --file '" + cyclic + "'");
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    CHECK(run_cli("model --file '" + cyclic + "' --validate-only").exit_code == 2);

    const std::string garbled = temp_path("garbled.json");
    {
        std::ofstream out(garbled);
        out << "this is not json";
    }
    CHECK(run_cli("model --file '" + garbled + "'").exit_code == 2);

    CHECK(run_cli("model --file /no/such/file.json").exit_code == 1);

    std::remove(cyclic.c_str());
    std::remove(garbled.c_str());
}

TEST_CASE("model with a constant output exits 3") {
    const std::string path = temp_path("constant.json");
    {
        std::ofstream out(path);
        out << R"({"variables": [
                {"name": "Y", "owner": "automation", "states": ["t", "n"], "cpt": [[0.5, 0.5]]},
                {"name": "Z", "owner": "output", "states": ["e", "a"], "cpt": [[1.0, 0.0]]}],
               "output": "Z"})";
    }
    const RunResult r = run_cli("model --file '" + path + "'");
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
    std::remove(path.c_str());
}

TEST_CASE("model with no automation variables reports the notice") {
    const std::string path = temp_path("noauto.json");
    {
        std::ofstream out(path);
        out << R"({"variables": [
                {"name": "E", "owner": "environment", "states": ["t", "n"], "cpt": [[0.4, 0.6]]},
                {"name": "Z", "owner": "output", "states": ["e", "a"], "parents": ["E"],
                 "cpt": [[0.8, 0.2], [0.3, 0.7]]}],
               "output": "Z"})";
    }
    const RunResult r = run_cli("model --file '" + path + "'");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["resp"].get<double>() == 1.0);
    CHECK(doc.contains("notice"));
    std::remove(path.c_str());
}
