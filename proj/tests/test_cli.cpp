#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

#ifndef BILLIARD_CLI_PATH
#define BILLIARD_CLI_PATH "billiard"
#endif

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BILLIARD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "billiard_cli_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("cli end to end") {
    TempDir tmp;
    const fs::path circle = tmp.path / "circle.json";
    const fs::path ellipse = tmp.path / "ellipse.json";
    const fs::path scaled = tmp.path / "scaled_circle.json";
    write_file(circle, "{\"kind\":\"circle\",\"r\":1.0}\n");
    write_file(ellipse, "{\"kind\":\"ellipse\",\"a\":2.0,\"b\":1.0}\n");
    write_file(scaled, "{\"kind\":\"circle\",\"r\":0.4,\"scale\":3.0}\n");

    SUBCASE("simulate closes a triangle on the circle") {
        const int rc = run_cli("simulate --domain " + circle.string() +
                               " --phi0 1.0471975511965976 --n 3 --out " +
                               (tmp.path / "sim").string());
        CHECK(rc == 0);
        const std::string csv = slurp(tmp.path / "sim" / "orbit.csv");
        CHECK(csv.find("k,s,phi,x,y") != std::string::npos);
        // last row returns to s = 0 mod 2 pi (up to solver tolerance)
        const auto last = csv.rfind("\n3,");
        REQUIRE(last != std::string::npos);
        const double s_final = std::stod(csv.substr(last + 3));
        const double two_pi = 2.0 * 3.14159265358979324;
        CHECK(std::min(std::abs(s_final), std::abs(s_final - two_pi)) < 1e-9);
        CHECK(fs::exists(tmp.path / "sim" / "orbit.svg"));
    }

    SUBCASE("bad domain path exits 2 with no partial output") {
        const int rc = run_cli("simulate --domain " + (tmp.path / "nope.json").string() +
                               " --n 5 --out " + (tmp.path / "bad").string());
        CHECK(rc == 2);
        CHECK_FALSE(fs::exists(tmp.path / "bad" / "orbit.csv"));
    }

    SUBCASE("usage errors exit 2") {
        CHECK(run_cli("spectrum --domain " + circle.string() + " --qmax 1 --out " +
                      (tmp.path / "s1").string()) == 2);
        CHECK(run_cli("nonsense") == 2);
        CHECK(run_cli("simulate --domain " + circle.string() + " --n 5 --tolerance bogus=1") == 2);
    }

    SUBCASE("rigidity exit codes: similar 0, not_similar 1, inconclusive 2") {
        CHECK(run_cli("rigidity " + circle.string() + " " + scaled.string() + " --out " +
                      (tmp.path / "r0").string()) == 0);
        CHECK(run_cli("rigidity " + circle.string() + " " + ellipse.string() + " --out " +
                      (tmp.path / "r1").string()) == 1);
        const fs::path wobble = tmp.path / "wobble.json";
        write_file(wobble, "{\"kind\":\"support\",\"c0\":1.0,\"cos\":[0,0,1e-7],\"sin\":[]}\n");
        CHECK(run_cli("rigidity " + wobble.string() + " " + circle.string() + " --out " +
                      (tmp.path / "r2").string()) == 2);
    }

    SUBCASE("spectrum exits 0 and emits the polygon lengths") {
        const int rc = run_cli("spectrum --domain " + circle.string() + " --qmax 5 --out " +
                               (tmp.path / "spec").string());
        CHECK(rc == 0);
        const std::string csv = slurp(tmp.path / "spec" / "spectrum.csv");
        CHECK(csv.find("5.1961524227066") != std::string::npos);  // 3 sqrt(3)
        CHECK(csv.find("9.5105651629515") != std::string::npos);  // 10 sin(2 pi / 5)
    }

    SUBCASE("simulate on the ellipse emits the first-integral defect table") {
        const int rc = run_cli("simulate --domain " + ellipse.string() +
                               " --phi0 0.3 --n 500 --out " + (tmp.path / "esim").string());
        CHECK(rc == 0);
        const std::string integral = slurp(tmp.path / "esim" / "integral.csv");
        REQUIRE(integral.find("k,I,defect") != std::string::npos);
        std::istringstream rows(integral.substr(integral.find("k,I,defect") + 11));
        std::string line;
        while (std::getline(rows, line)) {
            const auto c2 = line.rfind(',');
            REQUIRE(c2 != std::string::npos);
            CHECK(std::abs(std::stod(line.substr(c2 + 1))) <= 1e-8);
        }
    }

    SUBCASE("spectrum with qmax 2 is the single major-axis row") {
        const int rc = run_cli("spectrum --domain " + ellipse.string() + " --qmax 2 --out " +
                               (tmp.path / "spec2").string());
        CHECK(rc == 0);
        const std::string csv = slurp(tmp.path / "spec2" / "spectrum.csv");
        CHECK(csv.find("1,2,0.5,8,") != std::string::npos);
    }

    SUBCASE("lazutkin flags the circle noise floor") {
        const int rc = run_cli("lazutkin --domain " + circle.string() + " --out " +
                               (tmp.path / "laz").string());
        CHECK(rc == 0);
        const std::string csv = slurp(tmp.path / "laz" / "lazutkin.csv");
        CHECK(csv.find("x,y,xp,yp,defect_x,defect_y") != std::string::npos);
    }

    SUBCASE("repeated runs are byte-identical") {
        for (const char* cmd : {"spectrum --qmax 4", "simulate --phi0 0.3 --n 50"}) {
            const std::string sub = cmd;
            const int r1 = run_cli(sub + " --domain " + ellipse.string() + " --out " +
                                   (tmp.path / "da").string());
            const int r2 = run_cli(sub + " --domain " + ellipse.string() + " --out " +
                                   (tmp.path / "db").string());
            CHECK(r1 == 0);
            CHECK(r2 == 0);
            for (const auto& entry : fs::directory_iterator(tmp.path / "da")) {
                const fs::path other = tmp.path / "db" / entry.path().filename();
                REQUIRE(fs::exists(other));
                CHECK(slurp(entry.path()) == slurp(other));
            }
        }
    }

    SUBCASE("tolerance overrides are echoed in the header") {
        const int rc = run_cli("spectrum --domain " + circle.string() +
                               " --qmax 3 --tolerance orbit-residual=1e-9 --out " +
                               (tmp.path / "tol").string());
        CHECK(rc == 0);
        const std::string csv = slurp(tmp.path / "tol" / "spectrum.csv");
        CHECK(csv.find("orbit-residual=1.0000000000000001e-09") != std::string::npos);
    }
}
