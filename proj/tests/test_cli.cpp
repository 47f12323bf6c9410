#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef KRULL_CLI_PATH
#error "KRULL_CLI_PATH must point at the built krull-zeta binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KRULL_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        result.out.append(buf.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::filesystem::path write_spec(const std::string& name, const std::string& body) {
    auto dir = std::filesystem::temp_directory_path() / "krull_cli_tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("strong-atoms --json matches the worked Hilbert list") {
    auto spec = write_spec("hilbert.json", R"({"family":"hilbert","bound":100})");
    auto run = run_cli("strong-atoms --spec " + spec.string() + " --bound 100 --json");
    CHECK(run.exit_code == 0);
    auto parsed = json::parse(run.out);
    CHECK(parsed ==
          json::parse("[5,9,13,17,29,37,41,49,53,61,73,89,97]"));
}

TEST_CASE("decay output follows the documented schema") {
    auto spec = write_spec("hilbert.json", R"({"family":"hilbert","bound":100})");
    auto run = run_cli("decay --spec " + spec.string() + " --element 21");
    CHECK(run.exit_code == 0);
    auto parsed = json::parse(run.out);
    CHECK(parsed["m"] == 2);
    CHECK(parsed["delta"] == "1/1");
    REQUIRE(parsed["exponents"].size() == 2);
    CHECK(parsed["exponents"][0]["atom"] == "9");
    CHECK(parsed["exponents"][0]["e"] == 1);
    CHECK(parsed["exponents"][1]["atom"] == "49");
}

TEST_CASE("zeta report round-trips through the schema") {
    auto spec = write_spec("naturals.json", R"({"family":"naturals","bound":200})");
    auto run = run_cli("zeta --spec " + spec.string() +
                       " --scale power:2 --terms 1000 --tail 0.01 --json");
    CHECK(run.exit_code == 0);
    auto parsed = json::parse(run.out);
    for (const char* key :
         {"partial_sum", "product", "lower", "upper", "terms", "atoms", "assumed_tail"})
        CHECK(parsed.contains(key));
    CHECK(parsed["terms"] == 1000);
    CHECK(parsed["lower"].get<double>() <= parsed["partial_sum"].get<double>());
    CHECK(parsed["upper"].get<double>() >= parsed["product"].get<double>());

    auto csv = run_cli("zeta --spec " + spec.string() +
                       " --scale power:2 --terms 1000 --tail 0.01 --csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("partial_sum,product,lower,upper,terms,atoms,assumed_tail\n",
                        0) == 0);
}

TEST_CASE("euler with the wallis scale on a small prefix") {
    auto spec = write_spec("naturals.json", R"({"family":"naturals","bound":200})");
    auto run = run_cli("euler --spec " + spec.string() +
                       " --scale wallis --atoms 3 --json");
    CHECK(run.exit_code == 0);
    auto parsed = json::parse(run.out);
    // (4/3)(16/15)(36/35) = 256/175
    CHECK(parsed["product"].get<double>() == doctest::Approx(256.0 / 175.0).epsilon(1e-12));
    CHECK(parsed["atoms"] == 3);
}

TEST_CASE("dedekind verb emits both routes") {
    auto spec = write_spec(
        "gauss.json",
        R"({"family":"quadratic_field","d":-1,"class_number":1,"norm_bound":2000})");
    auto run = run_cli("dedekind --spec " + spec.string() + " --json");
    CHECK(run.exit_code == 0);
    auto parsed = json::parse(run.out);
    CHECK(parsed["partial_sum"].get<double>() ==
          doctest::Approx(1.50670).epsilon(1e-3));
    CHECK(parsed["product"].get<double>() ==
          doctest::Approx(1.50670).epsilon(1e-3));
}

TEST_CASE("exit codes: usage 64, spec errors 2, bound errors 3") {
    CHECK(run_cli("no-such-verb").exit_code == 64);
    CHECK(run_cli("atoms --bound 10").exit_code == 64); // missing --spec

    auto missing = run_cli("info --spec /nonexistent/path.json");
    CHECK(missing.exit_code == 2);

    auto bad = write_spec("bad.json", R"({"family":"nope"})");
    CHECK(run_cli("info --spec " + bad.string()).exit_code == 2);

    auto hil = write_spec("hilbert_small.json", R"({"family":"hilbert","bound":10})");
    // 13 = 1 (mod 4) is in H but beyond the divisor truncation
    CHECK(run_cli("decay --spec " + hil.string() + " --element 13").exit_code == 3);
    // 7 = 3 (mod 4) is not in H at all
    CHECK(run_cli("decay --spec " + hil.string() + " --element 7").exit_code == 2);
}

TEST_CASE("elements parse as integers, vectors, or exponent maps") {
    auto spec = write_spec("hilbert.json", R"({"family":"hilbert","bound":100})");
    auto as_int = run_cli("decay --spec " + spec.string() + " --element 21");
    auto as_map = run_cli("decay --spec " + spec.string() + " --element 3:1,7:1");
    CHECK(as_int.exit_code == 0);
    CHECK(as_map.exit_code == 0);
    CHECK(json::parse(as_int.out) == json::parse(as_map.out));
}

TEST_CASE("factorize prints every multiset") {
    auto spec = write_spec("hilbert500.json", R"({"family":"hilbert","bound":500})");
    auto run = run_cli("factorize --spec " + spec.string() + " --element 441 --json");
    CHECK(run.exit_code == 0);
    auto parsed = json::parse(run.out);
    CHECK(parsed == json::parse("[[9,49],[21,21]]"));
}

TEST_CASE("affine specs work through the CLI") {
    auto spec = write_spec(
        "affine.json", R"({"family":"affine","d":2,"generators":[[0,2],[1,1],[2,0]]})");
    auto run = run_cli("strong-atoms --spec " + spec.string() + " --bound 10 --json");
    CHECK(run.exit_code == 0);
    CHECK(json::parse(run.out) == json::parse("[[0,2],[2,0]]"));
}

TEST_CASE("output is byte-identical across runs") {
    auto spec = write_spec("naturals2.json", R"({"family":"naturals","bound":500})");
    std::string args = "zeta --spec " + spec.string() +
                       " --scale power:2 --terms 5000 --tail 0.002 --json";
    auto first = run_cli(args);
    auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("info describes specs and fields") {
    auto spec = write_spec("num.json", R"({"family":"numerical","generators":[2,3]})");
    auto run = run_cli("info --spec " + spec.string());
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("numerical") != std::string::npos);

    auto field = write_spec(
        "f5.json",
        R"({"family":"quadratic_field","d":-5,"class_number":2,"norm_bound":100})");
    auto frun = run_cli("info --spec " + field.string());
    CHECK(frun.exit_code == 0);
    CHECK(frun.out.find("-20") != std::string::npos); // discriminant
}
