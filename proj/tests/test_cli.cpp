#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include "fockng/sweep.hpp"
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_scratch;

int run_cli(const std::string& args, const std::string& env_prefix = "",
            const fs::path& capture = {}) {
    std::string cmd = env_prefix + " \"" + g_cli + "\" " + args;
    if (!capture.empty()) {
        cmd += " > \"" + capture.string() + "\" 2>&1";
    } else {
        cmd += " > /dev/null 2>&1";
    }
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> read_lines(const fs::path& file) {
    std::ifstream in(file);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) cells.push_back(cell);
    return cells;
}

std::string file_bytes(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double parse_report_value(const fs::path& file, const std::string& key) {
    for (const std::string& line : read_lines(file)) {
        if (line.rfind(key, 0) == 0) {
            const auto eq = line.find('=');
            REQUIRE(eq != std::string::npos);
            return std::stod(line.substr(eq + 1));
        }
    }
    FAIL("key not found: " << key);
    return 0.0;
}

}  // namespace

TEST_CASE("figure presets carry the documented grids") {
    using fockng::FigureId;
    const auto f1 = fockng::figure_preset(FigureId::fig1);
    CHECK(f1.nbar_grid == std::vector<double>{0.1, 1.0, 2.0, 5.0});
    CHECK(f1.m_grid == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

    const auto f2 = fockng::figure_preset(FigureId::fig2);
    CHECK(f2.m_grid == std::vector<int>{1, 4, 5, 8, 9});
    REQUIRE(f2.x_grid.size() == 20);
    CHECK(f2.x_grid.front() == 0.0);
    CHECK(f2.x_grid.back() == doctest::Approx(0.95).epsilon(1e-12));

    const auto f3 = fockng::figure_preset(FigureId::fig3);
    CHECK(f3.m_grid == std::vector<int>{1, 4, 5, 8, 9});
    CHECK(f3.nbar == 1.5);
    CHECK(f3.nbar_r == 0.1);
    CHECK(f3.gamma_t_max == 6.0);
    CHECK(f3.gamma_t_step == 0.1);

    const auto f4 = fockng::figure_preset(FigureId::fig4);
    CHECK(f4.m_grid == std::vector<int>{1, 10});
    CHECK(f4.nbar == 1.5);
    CHECK(f4.nbar_r == 0.1);

    CHECK_THROWS_AS(fockng::figure_id_from_string("fig9"),
                    std::invalid_argument);
    CHECK_THROWS_AS(fockng::parse_measure_list("hs,nope"),
                    std::invalid_argument);
    CHECK(fockng::parse_measure_list("re,fid").size() == 2);
}

TEST_CASE("measure subcommand reports the expected values") {
    const fs::path out = g_scratch / "measure_psts.txt";
    REQUIRE(run_cli("measure psts --nbar 1 --m 1", "", out) == 0);
    CHECK(parse_report_value(out, "delta_hs") == doctest::Approx(0.0275).epsilon(1e-10));
    CHECK(parse_report_value(out, "mean_photon") == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(parse_report_value(out, "purity") ==
          doctest::Approx(5.0 / 27.0).epsilon(1e-10));

    const fs::path out_t = g_scratch / "measure_thermal.txt";
    REQUIRE(run_cli("measure thermal --nbar 1", "", out_t) == 0);
    CHECK(std::abs(parse_report_value(out_t, "delta_hs")) < 1e-10);
    CHECK(std::abs(parse_report_value(out_t, "delta_re")) < 1e-10);
    CHECK(std::abs(parse_report_value(out_t, "delta_f")) < 1e-10);
}

TEST_CASE("configuration and domain errors exit with status 1") {
    CHECK(run_cli("measure psts --nbar 0 --m 1") == 1);
    CHECK(run_cli("measure bogus --nbar 1") == 1);
    CHECK(run_cli("measure psts --m 1") == 1);  // missing required --nbar
    CHECK(run_cli("figure fig9 --out " + (g_scratch / "x.csv").string()) == 1);
    CHECK(run_cli("figure fig1 --measures hs,nope --out " +
                  (g_scratch / "x.csv").string()) == 1);
    CHECK(run_cli("figure fig1 --gamma-t-max 3 --out " +
                  (g_scratch / "x.csv").string()) == 1);
    CHECK(run_cli("evolve thermal --nbar 1 --m 0 --nbar-r 0.1 "
                  "--gamma-t-max 1 --steps 2") == 1);
    CHECK(run_cli("nonsense") == 1);
}

TEST_CASE("unwritable output path exits with status 2") {
    CHECK(run_cli("figure fig1 --out /nonexistent_dir_zz/f.csv") == 2);
}

TEST_CASE("help is not an error") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("figure --help") == 0);
}

TEST_CASE("first sweep preset starts from the origin") {
    const fs::path out = g_scratch / "fig1.csv";
    REQUIRE(run_cli("figure fig1 --out " + out.string()) == 0);
    const auto lines = read_lines(out);
    REQUIRE(lines.size() == 1 + 4 * 11);
    CHECK(lines[0] == "nbar,M,delta_hs,delta_re,delta_f");

    const auto first = split(lines[1]);
    REQUIRE(first.size() == 5);
    CHECK(std::stod(first[0]) == doctest::Approx(0.1));
    CHECK(first[1] == "0");
    for (int c = 2; c < 5; ++c) CHECK(std::abs(std::stod(first[c])) <= 1e-10);
}

TEST_CASE("measure selection restricts the columns") {
    const fs::path out = g_scratch / "fig1_hs.csv";
    REQUIRE(run_cli("figure fig1 --measures hs --out " + out.string()) == 0);
    const auto lines = read_lines(out);
    CHECK(lines[0] == "nbar,M,delta_hs");
    CHECK(split(lines[1]).size() == 3);
}

TEST_CASE("identical configs produce byte-identical files at any thread count") {
    const fs::path a = g_scratch / "det_a.csv";
    const fs::path b = g_scratch / "det_b.csv";
    const fs::path c = g_scratch / "det_c.csv";
    REQUIRE(run_cli("figure fig2 --out " + a.string(), "OMP_NUM_THREADS=1") == 0);
    REQUIRE(run_cli("figure fig2 --out " + b.string(), "OMP_NUM_THREADS=4") == 0);
    REQUIRE(run_cli("figure fig2 --out " + c.string(), "OMP_NUM_THREADS=4") == 0);
    const std::string bytes = file_bytes(a);
    CHECK(bytes == file_bytes(b));
    CHECK(bytes == file_bytes(c));
    CHECK(!bytes.empty());

    // same check through the damping path
    const fs::path ta = g_scratch / "det_t1.csv";
    const fs::path tb = g_scratch / "det_t4.csv";
    REQUIRE(run_cli("figure fig3 --gamma-t-max 1 --out " + ta.string(),
                    "OMP_NUM_THREADS=1") == 0);
    REQUIRE(run_cli("figure fig3 --gamma-t-max 1 --out " + tb.string(),
                    "OMP_NUM_THREADS=4") == 0);
    CHECK(file_bytes(ta) == file_bytes(tb));
}

TEST_CASE("evolve subcommand writes an ascending trajectory") {
    const fs::path out = g_scratch / "evolve.csv";
    REQUIRE(run_cli("evolve psts --nbar 1.5 --m 1 --nbar-r 0.1 "
                    "--gamma-t-max 2 --steps 4 --out " + out.string()) == 0);
    const auto lines = read_lines(out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "gamma_t,mean_photon,delta_hs,delta_re,delta_f");
    double prev_t = -1.0;
    double prev_hs = 1e9;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        REQUIRE(cells.size() == 5);
        const double t = std::stod(cells[0]);
        CHECK(t > prev_t);
        prev_t = t;
        const double hs = std::stod(cells[2]);
        CHECK(hs <= prev_hs + 1e-12);
        prev_hs = hs;
    }
    // starting point matches the undamped mean (m+1) nbar
    CHECK(std::stod(split(lines[1])[1]) == doctest::Approx(3.0).epsilon(1e-10));
}

int main(int argc, char** argv) {
    doctest::Context context;
    std::vector<char*> forwarded;
    for (int i = 0; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg.rfind("--cli=", 0) == 0) {
            g_cli = arg.substr(6);
        } else {
            forwarded.push_back(argv[i]);
        }
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli --cli=<path-to-binary>\n");
        return 1;
    }
    g_scratch = fs::temp_directory_path() /
                ("fockng_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(g_scratch);
    context.applyCommandLine(static_cast<int>(forwarded.size()),
                             forwarded.data());
    const int rc = context.run();
    std::error_code ec;
    fs::remove_all(g_scratch, ec);
    return rc;
}
