#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

int run(const std::string& args) {
    std::string cmd = std::string(THETAK_CLI_PATH) + " " + args;
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string bin(const std::string& name) { return std::string(THETAK_BINARY_DIR) + "/" + name; }

} // namespace

TEST_CASE("reports are byte-identical across runs") {
    std::string a = bin("e1_a.json"), b = bin("e1_b.json");
    CHECK(run("-o " + a + " transfer-e1 --n 2 --m 1 --eps 0 --j 2 --cutoff 8") == 0);
    CHECK(run("-o " + b + " transfer-e1 --n 2 --m 1 --eps 0 --j 2 --cutoff 8") == 0);
    std::string sa = slurp(a);
    CHECK_FALSE(sa.empty());
    CHECK(sa == slurp(b));
    CHECK(sa.find("\"verdict\": \"match\"") != std::string::npos);
}

TEST_CASE("theta-spectrum matches the pinned series") {
    std::string out = bin("theta.json");
    CHECK(run("-o " + out + " theta-spectrum \"C:sp(2n=2)/o(p=1,q=0)\" --char trivial --cutoff 8") == 0);
    std::string s = slurp(out);
    for (const char* key : {"\"1/2\"", "\"5/2\"", "\"9/2\""})
        CHECK(s.find(key) != std::string::npos);
    CHECK(s.find("\"3/2\"") == std::string::npos);
}

TEST_CASE("exit codes: usage, guard, failure contract") {
    CHECK(run("definitely-not-a-command 2>/dev/null") == 64);
    CHECK(run("theta-spectrum not_a_descriptor 2>/dev/null") == 64);
    // unstable configuration -> guard exit 2
    CHECK(run("-o /dev/null theta-spectrum \"C:sp(2n=2)/o(p=1,q=1)\" --cutoff 4 2>/dev/null") == 2);
}

TEST_CASE("cache directory replays reports and exit codes") {
    std::string dir = bin("cache");
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    setenv("THETAK_CACHE_DIR", dir.c_str(), 1);
    std::string out1 = bin("cached1.json"), out2 = bin("cached2.json");
    CHECK(run("-o " + out1 + " euler-sum --n 2 --m 1 --cutoff 6") == 0);
    CHECK(run("-o " + out2 + " euler-sum --n 2 --m 1 --cutoff 6") == 0);
    CHECK(slurp(out1) == slurp(out2));
    unsetenv("THETAK_CACHE_DIR");
    // the cache holds exactly one entry for the repeated call
    std::string listing = bin("cache_ls.txt");
    REQUIRE(std::system(("ls " + dir + " | wc -l > " + listing).c_str()) == 0);
    CHECK(slurp(listing).substr(0, 1) == "1");
}
