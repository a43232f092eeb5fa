#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(WREATHLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("cli: wreath cycle index json") {
    const auto r = run_cli("cycle-index wreath --gamma C2 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"degree\": 4") != std::string::npos);
    CHECK(r.output.find("\"den\": \"8\"") != std::string::npos);

    const auto text = run_cli("cycle-index wreath --gamma C2 --n 2 --format text");
    CHECK(text.output == "1/8 {x1^4 + 2 x1^2 x2 + 3 x2^2 + 2 x4}\n");
}

TEST_CASE("cli: sampled types conserve weight") {
    const auto r = run_cli("sample type --gamma S3 --n 1000 --count 5 --seed 7");
    CHECK(r.exit_code == 0);
    int lines = 0;
    std::size_t pos = 0;
    while (pos < r.output.size()) {
        const auto eol = r.output.find('\n', pos);
        const std::string line = r.output.substr(pos, eol - pos);
        long long weight = 0;
        std::size_t p = 0;
        while (p < line.size()) {
            auto sp = line.find(' ', p);
            if (sp == std::string::npos) sp = line.size();
            const std::string tok = line.substr(p, sp - p);
            const auto caret = tok.find('^');
            const long long part = std::stoll(tok.substr(0, caret));
            const long long mult = caret == std::string::npos ? 1 : std::stoll(tok.substr(caret + 1));
            weight += part * mult;
            p = sp + 1;
        }
        CHECK(weight == 3000);
        ++lines;
        pos = eol + 1;
    }
    CHECK(lines == 5);
}

TEST_CASE("cli: determinism") {
    const std::string cmd = "sample element --gamma S4 --n 6 --count 4 --seed 99";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());

    // report output is byte-identical apart from the wall-clock runtime_ms
    auto strip_runtime = [](std::string s) {
        const auto pos = s.find("\"runtime_ms\"");
        if (pos != std::string::npos) s.erase(pos, s.find('\n', pos) - pos);
        return s;
    };
    const auto c = run_cli("verify tv-wreath --gamma S3 --n 40 --trunc-B 2 --samples 20000 --seed 5 --threads 2");
    const auto d = run_cli("verify tv-wreath --gamma S3 --n 40 --trunc-B 2 --samples 20000 --seed 5 --threads 2");
    CHECK(c.exit_code == 0);
    CHECK(strip_runtime(c.output) == strip_runtime(d.output));
}

TEST_CASE("cli: chain matrix csv") {
    const auto r = run_cli("chain matrix --n 5 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("state,1^5,1^3 2,1^2 3,1 2^2,1 4,2 3,5") == 0);
    CHECK(r.output.find("1/120") != std::string::npos);
    CHECK(r.output.find("4/5") != std::string::npos);  // row "5", column "5": 96/120
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("no-such-command").exit_code == 1);
    CHECK(run_cli("cycle-index wreath --bogus-flag 3").exit_code == 1);
    CHECK(run_cli("chain step --n 5 --state \"1^2\" --seed 1").exit_code == 1);
    CHECK(run_cli("verify census --gamma S5 --n 12 --trunc-B 2").exit_code == 2);
    CHECK(run_cli("chain matrix --n 40").exit_code == 2);
}

TEST_CASE("cli: limit pmf and spec") {
    const auto r = run_cli("limit build --gamma S3 --trunc-B 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"lambda\": \"1^3\"") != std::string::npos);
    CHECK(r.output.find("\"rate_den\": \"6\"") != std::string::npos);

    const auto pmf = run_cli("limit pmf --gamma C2 --i 1 --support-max 4");
    CHECK(pmf.exit_code == 0);
    CHECK(pmf.output.find("0.6065306597126334") != std::string::npos);  // e^{-1/2}
}

TEST_CASE("cli: verify triangle") {
    const auto r = run_cli("verify triangle --gamma C3 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"pass\": true") != std::string::npos);
}
