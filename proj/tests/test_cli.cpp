#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CHAOSKIT_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "chaoskit_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("moment command") {
    SECTION("squared-Hermite query prints the exact value") {
        auto q = write_scratch("q1.json", R"({"p": [2, 2], "correlation": [["1","1/2"],["1/2","1"]]})");
        auto r = run_cli("moment " + q);
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.substr(0, 5) == "27/2\n");
    }
    SECTION("d = 1 defaults to the identity correlation") {
        auto q = write_scratch("q2.json", R"({"p": [1]})");
        auto r = run_cli("moment " + q);
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.substr(0, 2) == "1\n");
    }
    SECTION("node queries") {
        auto q = write_scratch("q3.json", R"({"nodes": [[1,2],[2,2]], "correlation": [["1","1/3"],["1/3","1"]]})");
        auto r = run_cli("moment " + q);
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.substr(0, 4) == "2/9\n");  // 2! rho^2
    }
    SECTION("exit 1 on malformed input") {
        auto q = write_scratch("q4.json", "{not json");
        REQUIRE(run_cli("moment " + q).exit_code == 1);
        REQUIRE(run_cli("moment /nonexistent/file.json").exit_code == 1);
    }
    SECTION("exit 2 on resource cap") {
        auto q = write_scratch("q5.json", R"({"p": [9, 9]})");
        REQUIRE(run_cli("moment " + q).exit_code == 2);
    }
}

TEST_CASE("verify command") {
    SECTION("hgp campaign summary and exit 0") {
        auto r = run_cli("--seed 7 verify hgp --instances 40");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("campaign=hgp instances=40") != std::string::npos);
        REQUIRE(r.output.find("violations=0") != std::string::npos);
    }
    SECTION("phi campaign is monotone") {
        auto r = run_cli("--seed 11 verify phi --instances 10");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("violations=0") != std::string::npos);
    }
    SECTION("phi H_1-pair fixture echoes the exact curve") {
        auto r = run_cli("--seed 11 verify phi --fixture h1pair");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("s=3/4 phi=209/128 negatif=-81/32") != std::string::npos);
        REQUIRE(r.output.find("violations=0") != std::string::npos);
    }
    SECTION("gpc probe reports findings without touching the exit code") {
        auto r = run_cli("--seed 13 verify gpc --instances 15 --m 2");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("findings=0") != std::string::npos);
    }
    SECTION("negatif campaign distinguishes strict decrease from equality") {
        auto r = run_cli("--seed 9 verify negatif --instances 25");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("violations=0") != std::string::npos);
        // Families sharing coordinates give a strictly negative functional.
        REQUIRE(r.output.find("holds=0 ") == std::string::npos);
    }
    SECTION("reports and CSV emitted, byte-identical across runs") {
        const auto dir1 = scratch_dir() / "out1";
        const auto dir2 = scratch_dir() / "out2";
        fs::remove_all(dir1);
        fs::remove_all(dir2);
        auto r1 = run_cli("--seed 21 verify hgp --instances 12 --out " + dir1.string());
        auto r2 = run_cli("--seed 21 verify hgp --instances 12 --out " + dir2.string());
        REQUIRE(r1.exit_code == 0);
        REQUIRE(r1.output == r2.output);
        REQUIRE(slurp(dir1 / "reports.json") == slurp(dir2 / "reports.json"));
        REQUIRE(slurp(dir1 / "summary.csv") == slurp(dir2 / "summary.csv"));
        REQUIRE(slurp(dir1 / "reports.json").find("\"inequality_id\": \"hgp\"") != std::string::npos);
        const std::string csv = slurp(dir1 / "summary.csv");
        REQUIRE(csv.rfind("inequality_id,status,arithmetic,lhs,rhs,margin,seed,inputs_digest", 0) == 0);
    }
    SECTION("unknown campaign exits 1") {
        REQUIRE(run_cli("--seed 1 verify nonsense").exit_code == 1);
    }
    SECTION("missing seed exits 1") {
        REQUIRE(run_cli("verify hgp --instances 5").exit_code == 1);
    }
}

TEST_CASE("bounds command") {
    auto r = run_cli("bounds --dmin 2 --dmax 3");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("d,n,K,new_bound,pinasco_bound,frenkel_lower,cd_lower,cd_upper,winner") == 0);
    REQUIRE(r.output.find("2,2,2,2.828427125,2,") != std::string::npos);
    REQUIRE(r.output.find(",pinasco") != std::string::npos);

    SECTION("n = o(d) regime row picks the new bound") {
        auto row = run_cli("bounds --dmin 20 --dmax 20 --n 3 --ks twos");
        REQUIRE(row.exit_code == 0);
        REQUIRE(row.output.find(",new") != std::string::npos);
    }
}

TEST_CASE("hadamard command") {
    SECTION("fixture reconstructs det to 1e-6") {
        auto m = write_scratch("m.txt", "0.5 0.2\n0.2 0.5\n");
        auto r = run_cli("hadamard " + m + " --order 30");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("det_direct=0.21") != std::string::npos);
        const auto pos = r.output.find("rel_error=");
        REQUIRE(pos != std::string::npos);
        const double err = std::stod(r.output.substr(pos + 10));
        REQUIRE(err < 1e-6);
    }
    SECTION("JSON matrix input and inadmissible rescale path") {
        auto m = write_scratch("m.json", R"({"matrix": [[4.0, 0.0], [0.0, 4.0]]})");
        auto r = run_cli("hadamard " + m + " --order 40");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("c=0.225") != std::string::npos);
        const auto pos = r.output.find("rel_error=");
        const double err = std::stod(r.output.substr(pos + 10));
        REQUIRE(err < 1e-6);
    }
    SECTION("non-symmetric input exits 1") {
        auto m = write_scratch("bad.txt", "0.5 0.3\n0.2 0.5\n");
        REQUIRE(run_cli("hadamard " + m).exit_code == 1);
    }
    SECTION("non-SPD input exits 1") {
        auto m = write_scratch("bad2.txt", "1.0 2.0\n2.0 1.0\n");
        REQUIRE(run_cli("hadamard " + m).exit_code == 1);
    }
}

TEST_CASE("polarize command") {
    SECTION("single product form fixture") {
        auto f = write_scratch("f1.txt", "2 2; 1,2 = 1\n");
        auto r = run_cli("--seed 5 polarize " + f);
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("\"lower_bound\": true") != std::string::npos);
        REQUIRE(r.output.find("\"killpinasco\"") != std::string::npos);
        REQUIRE(r.output.find("\"status\": \"holds\"") != std::string::npos);
    }
    SECTION("orthonormal triple flags the polarization target as attained") {
        auto f = write_scratch("f2.txt", "3 1; 1 = 1\n3 1; 2 = 1\n3 1; 3 = 1\n");
        auto r = run_cli("--seed 5 polarize " + f);
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("\"attained\": true") != std::string::npos);
    }
    SECTION("random forms and trace output") {
        const auto trace = scratch_dir() / "trace.csv";
        auto r = run_cli("--seed 9 polarize --random 2,3,2 --restarts 16 --trace " + trace.string());
        REQUIRE(r.exit_code == 0);
        const std::string t = slurp(trace);
        REQUIRE(t.rfind("iter,objective,step", 0) == 0);
        REQUIRE(t.size() > 30);
    }
    SECTION("no input exits 1") {
        REQUIRE(run_cli("--seed 1 polarize").exit_code == 1);
    }
}
