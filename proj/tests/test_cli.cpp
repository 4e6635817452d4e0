#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "io.hpp"
#include "mcrec/recover.hpp"

using namespace mcrec;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "mcrec");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "mcrec_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("json round trips")
{
    const io::Message m{7, 3, Poly({1, 0, 5})};
    CHECK(io::message_from_json(io::to_json(m)) == m);

    const CodeParams params = CodeParams::make(13, 5, 2, 4);
    const ReceivedWord w = simulate_channel(params, Poly({1, 2, 3}), 3, 2, 9);
    const io::WordFile wf{w, 4};
    CHECK(io::word_from_json(io::to_json(wf)) == wf);

    const io::CodewordFile cf{13, 2, 4, params.points, encode(params, Poly({4, 4}))};
    CHECK(io::codeword_from_json(io::to_json(cf)) == cf);
}

TEST_CASE("malformed files are rejected")
{
    CHECK_THROWS_AS(io::message_from_json(io::json::parse(R"({"p":7,"coeffs":[1]})")), io::FormatError);
    CHECK_THROWS_AS(io::message_from_json(io::json::parse(R"({"p":7,"k":2,"coeffs":[9]})")), io::FormatError);
    CHECK_THROWS_AS(io::word_from_json(io::json::parse(
                        R"({"p":7,"n":2,"s":1,"k":1,"ell":1,"points":[{"alpha":0,"options":[[1]]}]})")),
                    io::FormatError);

    const fs::path bad = scratch("bad.json");
    write_file(bad, "{not json");
    CHECK(run({"encode", "--in", bad.string(), "--s", "2", "--n", "2"}).code == cli::kUsage);
}

TEST_CASE("encode matches the worked example")
{
    const fs::path in = scratch("msg.json");
    write_file(in, R"({"p":7,"k":3,"coeffs":[0,0,1]})");
    const Run r = run({"encode", "--in", in.string(), "--s", "3", "--points", "0,2"});
    REQUIRE(r.code == cli::kOk);
    const auto j = io::json::parse(r.out);
    CHECK(j["symbols"] == io::json::parse("[[0,0,2],[4,4,2]]"));
    CHECK(j["points"] == io::json::parse("[0,2]"));
}

TEST_CASE("encode rejects an oversized message without writing")
{
    const fs::path in = scratch("big.json"), out = scratch("never.json");
    fs::remove(out);
    write_file(in, R"({"p":7,"k":2,"coeffs":[0,0,1]})");
    const Run r = run({"encode", "--in", in.string(), "--s", "3", "--n", "2", "--out", out.string()});
    CHECK(r.code == cli::kUsage);
    CHECK_FALSE(r.err.empty());
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"encode", "--s", "notanumber"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("corrupt is deterministic and checks the agreement count")
{
    const fs::path in = scratch("msg13.json");
    write_file(in, R"({"p":13,"k":3,"coeffs":[1,2,3]})");
    const std::vector<std::string> args{"corrupt", "--in", in.string(), "--n", "6", "--s", "2",
                                        "--ell", "2", "-t", "4", "--seed", "5"};
    const Run a = run(args), b = run(args);
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == b.out);
    const io::WordFile wf = io::word_from_json(io::json::parse(a.out));
    CHECK(agreement_count(PrimeField(13), Poly({1, 2, 3}), wf.word) >= 4);

    auto more = args;
    more[10] = "7";
    CHECK(run(more).code == cli::kUsage);
}

TEST_CASE("encode, corrupt, recover round trip")
{
    const fs::path msg = scratch("rt_msg.json"), cw = scratch("rt_cw.json"), word = scratch("rt_word.json");
    write_file(msg, R"({"p":18446744069414584321,"k":40,"coeffs":[5,4,3,2,1,0,9]})");
    REQUIRE(run({"encode", "--in", msg.string(), "--n", "16", "--s", "10", "--out", cw.string()}).code == cli::kOk);
    REQUIRE(run({"corrupt", "--in", cw.string(), "-t", "16", "--ell", "2", "--out", word.string()}).code ==
            cli::kOk);
    const Run r = run({"recover", "--in", word.string(), "--m", "4", "--threshold", "16"});
    REQUIRE(r.code == cli::kOk);
    const auto list = io::json::parse(r.out);
    REQUIRE(list.size() >= 1);
    bool found = false;
    for (const auto& e : list) found |= io::message_from_json(e) == io::message_from_json(io::json::parse(read_file(msg)));
    CHECK(found);
}

TEST_CASE("recover validates its mode")
{
    const fs::path msg = scratch("mode_msg.json"), word = scratch("mode_word.json");
    write_file(msg, R"({"p":18446744069414584321,"k":40,"coeffs":[1]})");
    REQUIRE(run({"corrupt", "--in", msg.string(), "--n", "16", "--s", "10", "--ell", "2", "-t", "16", "--out",
                 word.string()})
                .code == cli::kOk);
    const Run big = run({"recover", "--in", word.string(), "--epsilon", "0.99"});
    CHECK(big.code == cli::kUsage);
    CHECK(big.err.find("epsilon") != std::string::npos);
    CHECK(run({"recover", "--in", word.string(), "--epsilon", "0.5", "--m", "4"}).code == cli::kUsage);
    CHECK(run({"recover", "--in", word.string(), "--m", "4"}).code == cli::kUsage);
    CHECK(run({"recover", "--in", word.string(), "--m", "4", "--threshold", "17"}).code == cli::kUsage);
}

TEST_CASE("selftest passes and detects an injected fault")
{
    const Run ok = run({"selftest"});
    CHECK(ok.code == cli::kOk);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    const Run bad = run({"selftest", "--inject-fault"});
    CHECK(bad.code == cli::kCheckFailed);
    CHECK(bad.err.find("tau-conditions") != std::string::npos);

    // The fault does not leak into later runs.
    CHECK(run({"selftest"}).code == cli::kOk);
}

TEST_CASE("bench emits one row per size and phase")
{
    const Run r = run({"bench", "--sizes", "16,32"});
    REQUIRE(r.code == cli::kOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,s,m,ell,phase,wall_time_ms,output_list_size");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].rfind("16,24,8,2,basis-build,", 0) == 0);
    CHECK(rows[7].rfind("32,24,8,2,prune,", 0) == 0);
    for (const auto& row : rows) CHECK(row.substr(row.rfind(',') + 1) == "1");
}
