#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
};

Run gk(const std::string& args) {
    const std::string cmd = std::string(GK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> data_lines(const std::string& out) {
    std::vector<std::string> lines;
    std::stringstream ss(out);
    std::string l;
    while (std::getline(ss, l))
        if (!l.empty() && l[0] != '#') lines.push_back(l);
    return lines;
}

// errors are reported as a JSON object on the last line
nlohmann::json last_json(const std::string& out) {
    std::stringstream ss(out);
    std::string l, last;
    while (std::getline(ss, l))
        if (!l.empty()) last = l;
    return nlohmann::json::parse(last);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) f.push_back(t);
    return f;
}

}  // namespace

TEST_CASE("weight of the empty partition") {
    const Run r = gk("weight --z 0.5 --zp 0.5 --xi 0.3 --lambda ''");
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "lambda,config,size,weight,log_weight");
    CHECK(std::stod(split(lines[1])[3]) == doctest::Approx(std::pow(0.7, 0.25)).epsilon(1e-15));
    CHECK(r.out.rfind("# argv=", 0) == 0);
}

TEST_CASE("integrable kernel value") {
    const Run r = gk("kernel --method integrable --z 0.5 --zp 0.5 --x 1/2 --y 1/2");
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(std::stod(split(lines[1])[2]) == doctest::Approx(0.094715265430648914).epsilon(1e-14));
}

TEST_CASE("jsonl output starts with the configuration") {
    const Run r = gk("kernel --method integrable --z 0.3+0.5i --x 1/2 --y -3/2 --format jsonl");
    REQUIRE(r.code == 0);
    std::stringstream ss(r.out);
    std::string first, second;
    std::getline(ss, first);
    std::getline(ss, second);
    const auto cfg = nlohmann::json::parse(first);
    CHECK(cfg["config"]["command"] == "kernel");
    CHECK(cfg["config"]["zp"] == "conj");
    const auto row = nlohmann::json::parse(second);
    CHECK(row["x"] == "1/2");
    CHECK(row["value"].is_number());
}

TEST_CASE("error exits") {
    const Run bad = gk("weight --z 1 --zp 1 --xi 0.3 --lambda 1");
    CHECK(bad.code == 2);
    CHECK(last_json(bad.out)["name"] == "admissible_params");
    const Run xi = gk("weight --z 0.5 --zp 0.5 --xi 1.5 --lambda 1");
    CHECK(xi.code == 2);
    CHECK(gk("weight --bogus").code == 2);
    CHECK(gk("weight --z 0.5 --zp 0.5 --xi 0.3 --config 1/2").code == 2);
    const Run conv = gk("kernel --method contour-prelimit --z 0.5 --zp 0.5 --xi 0.9 --x 1/2 --y 1/2 --shape circle "
                        "--nodes 64 --max-nodes 64 --tol 1e-15");
    CHECK(conv.code == 3);
    CHECK(last_json(conv.out)["error"] == "convergence");
}

TEST_CASE("rn and transport subcommands") {
    const Run rn = gk("rn --z 0.5 --zp 0.5 --xi 0.4 --word '[0]' --config ''");
    REQUIRE(rn.code == 0);
    const auto f = split(data_lines(rn.out)[1]);
    CHECK(std::stod(f[2]) == doctest::Approx(0.4 * 0.25).epsilon(1e-13));
    CHECK(std::stod(f[5]) == doctest::Approx(0.4 * 0.25).epsilon(1e-13));
    const Run t = gk("transport --z 0.5 --zp 0.5 --xi 0.2 --word '[0]' --F contains:1/2 --max-size 12");
    REQUIRE(t.code == 0);
    CHECK(split(data_lines(t.out)[1]).back() == "true");
}

TEST_CASE("converge blocknorms gaps decrease") {
    const Run r = gk("converge --sweep 0.9,0.99,0.999 --report blocknorms --z 0.5 --zp 0.5 --window 16");
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 5);
    const auto head = split(lines[0]);
    CHECK(head[3] == "trace_gap");
    CHECK(head[4] == "hs_gap");
    for (int col : {3, 4}) {
        const double g1 = std::stod(split(lines[1])[col]), g2 = std::stod(split(lines[2])[col]),
                     g3 = std::stod(split(lines[3])[col]);
        CHECK(g2 < g1);
        CHECK(g3 < g2);
    }
}

TEST_CASE("sample emits one configuration per line") {
    const Run r = gk("sample --z 0.5 --zp 0.5 --xi 0.3 --window 4 --count 5 --seed 9 --format jsonl");
    REQUIRE(r.code == 0);
    std::stringstream ss(r.out);
    std::string l;
    int n = 0;
    std::getline(ss, l);
    while (std::getline(ss, l)) {
        const auto a = nlohmann::json::parse(l);
        CHECK(a.is_array());
        ++n;
    }
    CHECK(n == 5);
    CHECK(gk("sample --z 0.5 --zp 0.5 --xi 0.3 --window 4 --count 5 --seed 9").out ==
          gk("sample --z 0.5 --zp 0.5 --xi 0.3 --window 4 --count 5 --seed 9").out);
}
