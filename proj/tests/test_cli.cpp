#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    static int counter = 0;
    auto path = std::filesystem::temp_directory_path() / ("stableforms_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::string cmd = std::string(STABLEFORMS_BIN) + " " + args + " > " + path.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::filesystem::remove(path);
    return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify") {
    CHECK(run("verify 'g_{6,38}^0'").code == 0);
    // the printed g6,3 witness fails
    CHECK(run("verify 'g_{6,3}^{0,-1}'").code == 1);
    CHECK(run("verify --equations '(0,0,0,0,0,0)' --F 'e12+e34+e56' --rho 'e135-e146-e236-e245'").code == 0);
    CHECK(run("verify --equations '(0,0,0,0,0,0)' --F 'e12+e34+e56' --rho 'e123'").code == 1);
}

TEST_CASE("classify") {
    CHECK(run("classify 'A_{6,70}^{a,a/2}' --param a=2").code == 0);
    CHECK(run("classify 'N_{6,1}^{a,b,-a,-b}' --param a=1 --param b=1 --field sqrt3").code == 0);
    CHECK(run("classify 'A_{6,54}^{a,a-1}' --param a=2").code == 4);
}

TEST_CASE("obstruct") {
    CHECK(run("obstruct 'g_{6,3}^{0,-1}' --alpha e6").code == 0);
    CHECK(run("obstruct 'g_{6,38}^0' --alpha e6").code == 1);
    CHECK(run("obstruct 'g_{6,78}' --X e1").code == 0);
    CHECK(run("obstruct 'g_{6,78}'").code == 4);
}

TEST_CASE("susy") {
    CHECK(run("susy 'e(1,1)+e(1,1)' --kpar 3/5 --kperp 4/5").code == 0);
    CHECK(run("susy 'g_{6,N3}' --kpar 3/5 --kperp 4/5").code == 0);
    CHECK(run("susy 'g_{5,1}+R' --kpar 1 --kperp 0").code == 4);
    CHECK(run("susy 'g_{5,1}+R' --kpar 1 --kperp 1").code == 4);
}

TEST_CASE("parse") {
    CHECK(run("parse --equations '(0,0,0,0,e12,e13)'").code == 0);
    CHECK(run("parse --form 'e12 + 2e34'").code == 0);
}

TEST_CASE("error exit codes") {
    CHECK(run("verify 'g_{9,9}'").code == 2);
    CHECK(run("verify --equations '(0,0,0,0,e12' --F e12 --rho e135").code == 3);
    CHECK(run("classify 'g_{6,78}' --trials 0").code == 4);
    CHECK(run("frobnicate").code == 4);
}

TEST_CASE("JSON output is deterministic") {
    std::string args = "--json --seed 11 obstruct 'g_{6,13}^{-1,1/2,0}' --X e1";
    Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "obstruct");
    Run c = run("--json classify 'r_2+r_2+r_2'"), d = run("--json classify 'r_2+r_2+r_2'");
    CHECK(c.out == d.out);
    CHECK_FALSE(c.out.empty());
}

}
