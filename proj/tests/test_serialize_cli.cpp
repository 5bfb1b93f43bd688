// CSV persistence and the command-line front end. Serialization must be
// bitwise faithful (17 significant digits round-trip every double) and
// fail closed on anything malformed; the CLI is exercised in process
// through run_subcommand with configs written to a scratch directory.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "support.hpp"
#include "xwigner/cli.hpp"

using namespace xwigner;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const GridSpec g(64, 8.0, 1.0);

/// Scratch directory under the system temp root, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("xwigner_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str(const std::string& name) const { return (path / name).string(); }
};

/// Redirect std::cout/std::cerr while a CLI subcommand runs so expected
/// error chatter does not pollute the test log.
struct CoutCapture {
    std::ostringstream captured;
    std::streambuf* saved_out;
    std::streambuf* saved_err;
    CoutCapture()
        : saved_out(std::cout.rdbuf(captured.rdbuf())),
          saved_err(std::cerr.rdbuf(captured.rdbuf())) {}
    ~CoutCapture() {
        std::cout.rdbuf(saved_out);
        std::cerr.rdbuf(saved_err);
    }
};

int run_cli(const std::string& name, const json& cfg, const TempDir& dir,
            int stride = 1) {
    const std::string cfg_path = dir.str("config.json");
    std::ofstream(cfg_path) << cfg.dump(2);
    cli::CliOptions opt;
    opt.config_path = cfg_path;
    opt.out_dir = dir.path.string();
    opt.stride = stride;
    CoutCapture quiet;
    return cli::run_subcommand(name, opt);
}

json small_grid() { return json{{"M", 64}, {"L", 8.0}, {"hbar", 1.0}}; }

}  // namespace

TEST_CASE("wavefunction csv round trip is bitwise exact in both domains") {
    std::mt19937_64 rng(321);
    const WaveFunction psi = random_superposition(g, rng, 6);

    std::stringstream buf;
    write_wavefunction_csv(buf, psi);
    const WaveFunction back = read_wavefunction_csv(buf);
    CHECK(back.grid == psi.grid);
    CHECK(back.domain == Domain::position);
    CHECK(back.samples == psi.samples);

    const WaveFunction tilde = hbar_fourier(psi);
    std::stringstream buf2;
    write_wavefunction_csv(buf2, tilde);
    const WaveFunction back2 = read_wavefunction_csv(buf2);
    CHECK(back2.domain == Domain::momentum);
    CHECK(back2.samples == tilde.samples);
}

TEST_CASE("field csv round trip preserves values and label") {
    const WaveFunction a = gaussian_coherent(g, {0.5, -0.5});
    const WaveFunction b = gaussian_coherent(g, {-0.5, 0.5});
    const PhaseSpaceField f = cross_wigner(a, b);

    std::stringstream buf;
    write_field_csv(buf, f);
    const std::string text = buf.str();
    CHECK(text.find("# kind=field") != std::string::npos);
    CHECK(text.find("# label=CROSS_WIGNER") != std::string::npos);
    CHECK(text.find("# sign_ledger=") != std::string::npos);
    CHECK(text.find("# M=64") != std::string::npos);

    std::stringstream reread(text);
    const PhaseSpaceField back = read_field_csv(reread);
    CHECK(back.label == FieldLabel::cross_wigner);
    CHECK(back.grid == f.grid);
    CHECK(back.values == f.values);
}

TEST_CASE("seventeen digits round-trip doubles bitwise") {
    const double cases[] = {1.0 / 3.0,  kPi,    6.02214076e23, 1e-300, -0.0,
                            0x1p-52,    1e308,  -7.2e-12,      2.0 / 7.0};
    for (double v : cases) {
        const std::string s = detail::format_double(v);
        const double back = detail::parse_double(s, "roundtrip");
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    }
}

TEST_CASE("malformed csv input fails closed") {
    const WaveFunction psi = gaussian_coherent(g);
    std::stringstream buf;
    write_wavefunction_csv(buf, psi);
    const std::string text = buf.str();

    SECTION("truncated body") {
        std::stringstream cut(text.substr(0, text.size() / 2));
        // the cut lands mid-row, so either the row parse or the row count fails
        CHECK_THROWS_AS(read_wavefunction_csv(cut), IoError);
    }
    SECTION("wrong kind") {
        std::stringstream as_field(text);
        CHECK_THROWS_AS(read_field_csv(as_field), IoError);
    }
    SECTION("missing header key") {
        std::stringstream in("# kind=wavefunction\n# M=64\n# L=8\n# domain=position\n");
        CHECK_THROWS_AS(read_wavefunction_csv(in), IoError);
    }
    SECTION("unknown domain") {
        std::string tampered = text;
        tampered.replace(tampered.find("domain=position"), 15, "domain=sideways");
        std::stringstream in(tampered);
        CHECK_THROWS_AS(read_wavefunction_csv(in), IoError);
    }
    SECTION("unparsable number") {
        // note stod accepts hex floats, so the poison must be a real non-number
        std::string tampered = text;
        const std::size_t row = tampered.find("\n0,");
        tampered.insert(tampered.find(',', row + 3) + 1, "zz");
        std::stringstream in(tampered);
        CHECK_THROWS_AS(read_wavefunction_csv(in), IoError);
    }
    SECTION("rows out of order") {
        std::string tampered = text;
        const std::size_t r0 = tampered.find("\n0,") + 1;
        tampered[r0] = '1';
        std::stringstream in(tampered);
        CHECK_THROWS_AS(read_wavefunction_csv(in), IoError);
    }
    SECTION("invalid grid in header is a configuration error") {
        std::string tampered = text;
        tampered.replace(tampered.find("M=64"), 4, "M=65");
        std::stringstream in(tampered);
        CHECK_THROWS_AS(read_wavefunction_csv(in), ConfigurationError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(read_wavefunction_csv(std::string("/nonexistent/x.csv")), IoError);
    }
}

TEST_CASE("label invariants are enforced on read") {
    const PhaseSpaceField w = wigner(gaussian_coherent(g));
    std::stringstream buf;
    write_field_csv(buf, w);
    std::string tampered = buf.str();

    // poison one imaginary cell of a field claiming to be a WIGNER matrix
    const std::size_t row = tampered.find("\n31,32,");
    const std::size_t last_comma = tampered.find_last_of(',', tampered.find('\n', row + 1));
    tampered.replace(last_comma + 1, tampered.find('\n', last_comma) - last_comma - 1, "0.5");
    std::stringstream in(tampered);
    CHECK_THROWS_AS(read_field_csv(in), Error);
}

TEST_CASE("cli selftest passes without a config") {
    cli::CliOptions opt;
    CoutCapture quiet;
    CHECK(cli::run_subcommand("selftest", opt) == cli::kExitOk);
    CHECK(quiet.captured.str().find("fail") == std::string::npos);
}

TEST_CASE("cli wigner writes a field whose integral is the overlap") {
    TempDir dir;
    const json cfg = {{"scenario", "wigner"},
                      {"grid", small_grid()},
                      {"phi", {{"kind", "coherent"}, {"center", {0.5, 0.0}}}},
                      {"psi", {{"kind", "coherent"}, {"center", {-0.5, 0.0}}}},
                      {"output", "field.csv"}};
    REQUIRE(run_cli("wigner", cfg, dir) == cli::kExitOk);

    const PhaseSpaceField f = read_field_csv(dir.str("field.csv"));
    CHECK(f.label == FieldLabel::cross_wigner);
    // centers at +-(0.5, 0): overlap is exp(-1/4) with no symplectic phase
    CHECK(std::abs(phase_space_integral(f) - std::exp(-0.25)) < 1e-8);
}

TEST_CASE("cli wigner without phi falls back to the diagonal distribution") {
    TempDir dir;
    const json cfg = {{"scenario", "wigner"},
                      {"grid", small_grid()},
                      {"psi",
                       {{"kind", "superposition"},
                        {"normalize", true},
                        {"terms",
                         {{{"coeff", {1.0, 0.0}},
                           {"state", {{"kind", "coherent"}, {"center", {1.0, 0.0}}}}},
                          {{"coeff", {0.0, 1.0}},
                           {"state", {{"kind", "coherent"}, {"center", {-1.0, 0.0}}}}}}}}},
                      {"output", "w.csv"}};
    REQUIRE(run_cli("wigner", cfg, dir) == cli::kExitOk);

    const PhaseSpaceField f = read_field_csv(dir.str("w.csv"));
    CHECK(f.label == FieldLabel::wigner);
    CHECK(std::abs(phase_space_integral(f) - 1.0) < 1e-8);
}

TEST_CASE("cli weakvalue runs both routes and they agree") {
    TempDir dir;
    const json cfg = {{"scenario", "weakvalue"},
                      {"grid", {{"M", 128}, {"L", 10.0}, {"hbar", 1.0}}},
                      {"phi", {{"kind", "coherent"}, {"center", {0.0, 1.0}}}},
                      {"psi", {{"kind", "coherent"}, {"center", {0.0, -1.0}}}},
                      {"observable", {{"kind", "poly"}, {"terms", {{{"x", 1}, {"coeff", 1.0}}}}}},
                      {"output", "wv.csv"}};
    REQUIRE(run_cli("weakvalue", cfg, dir) == cli::kExitOk);

    std::ifstream in(dir.str("wv.csv"));
    REQUIRE(in.good());
    std::string line;
    int data_rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++data_rows;
        std::stringstream row(line);
        std::string method, re, im, re_ov, im_ov, res;
        std::getline(row, method, ',');
        std::getline(row, re, ',');
        std::getline(row, im, ',');
        std::getline(row, re_ov, ',');
        std::getline(row, im_ov, ',');
        std::getline(row, res, ',');
        // weak position between coherent states at +-(0, 1) is exactly -i
        CHECK(std::abs(std::stod(re)) < 1e-8);
        CHECK(std::stod(im) == Catch::Approx(-1.0).epsilon(1e-8));
        CHECK(std::stod(res) < 1e-8);
    }
    CHECK(data_rows == 2);
}

TEST_CASE("cli analytic reports overflow as a flag, not a number") {
    TempDir dir;
    const json cfg = {{"scenario", "analytic"},
                      {"hbar", 1.0},
                      {"z0", {{"x", {40.0}}, {"p", {0.0}}}},
                      {"output", "closed.csv"}};
    REQUIRE(run_cli("analytic", cfg, dir) == cli::kExitOk);

    std::ifstream in(dir.str("closed.csv"));
    std::string line;
    bool saw_overflow = false, saw_weak_momentum = false;
    while (std::getline(in, line)) {
        if (line.rfind("amplification_factor", 0) == 0) {
            // |z0|^2 = 1600 overflows exp: value cells empty, flag set
            CHECK(line.substr(line.size() - 3) == ",,1");
            saw_overflow = true;
        }
        if (line.rfind("weak_momentum", 0) == 0) {
            std::stringstream row(line);
            std::string cell;
            for (int c = 0; c < 6; ++c) std::getline(row, cell, ',');
            CHECK(std::stod(cell) == Catch::Approx(40.0).epsilon(1e-12));
            saw_weak_momentum = true;
        }
    }
    CHECK(saw_overflow);
    CHECK(saw_weak_momentum);
}

TEST_CASE("cli evolve emits one agreeing row per sample time") {
    TempDir dir;
    const json cfg = {{"scenario", "evolve"},
                      {"grid", small_grid()},
                      {"hamiltonian", {{"kind", "harmonic"}, {"mass", 1.0}, {"omega", 1.0}}},
                      {"psi_in", {{"kind", "coherent"}, {"center", {1.0, 0.0}}}},
                      {"t_in", 0.0},
                      {"phi_fin", {{"kind", "coherent"}, {"center", {1.0, 0.0}}}},
                      {"t_fin", 1.0},
                      {"observable", {{"kind", "poly"}, {"terms", {{{"x", 1}, {"coeff", 1.0}}}}}},
                      {"sample_times", {0.0, 0.5, 1.0}},
                      {"output", "rows.csv"}};
    REQUIRE(run_cli("evolve", cfg, dir) == cli::kExitOk);

    std::ifstream in(dir.str("rows.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++rows;
        const std::size_t last = line.find_last_of(',');
        CHECK(std::stod(line.substr(last + 1)) < 1e-6);
    }
    CHECK(rows == 3);
}

TEST_CASE("cli reconstruct round-trips a state given only its field") {
    TempDir dir;
    const json cfg = {{"scenario", "reconstruct"},
                      {"grid", small_grid()},
                      {"phi", {{"kind", "coherent"}, {"center", {0.0, 0.0}}}},
                      {"psi", {{"kind", "coherent"}, {"center", {0.4, -0.3}}}},
                      {"output", "rebuilt.csv"}};
    REQUIRE(run_cli("reconstruct", cfg, dir) == cli::kExitOk);

    const WaveFunction rebuilt = read_wavefunction_csv(dir.str("rebuilt.csv"));
    const WaveFunction expected = gaussian_coherent(g, {0.4, -0.3});
    // quadrature floor of the inversion at M = 64 is ~1e-7
    CHECK((rebuilt.samples - expected.samples).norm() * std::sqrt(g.dx()) < 1e-6);
}

TEST_CASE("cli compass writes the total and every pair term") {
    TempDir dir;
    const json cfg = {{"scenario", "compass"},
                      {"grid", small_grid()},
                      {"centers", {{1.5, 0.0}, {-1.5, 0.0}, {0.0, 1.5}, {0.0, -1.5}}},
                      {"write_pairs", true},
                      {"output", "compass.csv"}};
    REQUIRE(run_cli("compass", cfg, dir) == cli::kExitOk);

    const PhaseSpaceField total = read_field_csv(dir.str("compass.csv"));
    CHECK(total.label == FieldLabel::wigner);
    int pair_files = 0;
    for (const auto& entry : fs::directory_iterator(dir.path))
        if (entry.path().filename().string().rfind("compass_pair_", 0) == 0) ++pair_files;
    CHECK(pair_files == 6);
}

TEST_CASE("cli state csv input rejects a grid mismatch") {
    TempDir dir;
    const GridSpec other(128, 8.0, 1.0);
    write_wavefunction_csv(dir.str("state.csv"), gaussian_coherent(other));
    const json cfg = {{"scenario", "wigner"},
                      {"grid", small_grid()},
                      {"psi", {{"kind", "csv"}, {"path", dir.str("state.csv")}}},
                      {"output", "f.csv"}};
    CHECK(run_cli("wigner", cfg, dir) == cli::kExitConfig);
}

TEST_CASE("cli maps failure classes onto documented exit codes") {
    TempDir dir;

    SECTION("grid size that is not a power of two") {
        const json cfg = {{"scenario", "wigner"},
                          {"grid", {{"M", 100}, {"L", 8.0}, {"hbar", 1.0}}},
                          {"psi", {{"kind", "coherent"}, {"center", {0.0, 0.0}}}}};
        CHECK(run_cli("wigner", cfg, dir) == cli::kExitConfig);
    }
    SECTION("unknown top-level key") {
        json cfg = {{"scenario", "wigner"},
                    {"grid", small_grid()},
                    {"psi", {{"kind", "coherent"}, {"center", {0.0, 0.0}}}}};
        cfg["typo"] = 1;
        CHECK(run_cli("wigner", cfg, dir) == cli::kExitConfig);
    }
    SECTION("scenario tag must match the subcommand") {
        const json cfg = {{"scenario", "wigner"},
                          {"grid", small_grid()},
                          {"psi", {{"kind", "coherent"}, {"center", {0.0, 0.0}}}}};
        CHECK(run_cli("compass", cfg, dir) == cli::kExitConfig);
    }
    SECTION("config is required for every subcommand except selftest") {
        cli::CliOptions opt;
        CoutCapture quiet;
        CHECK(cli::run_subcommand("wigner", opt) == cli::kExitConfig);
    }
    SECTION("unreadable config path") {
        cli::CliOptions opt;
        opt.config_path = "/nonexistent/cfg.json";
        CoutCapture quiet;
        CHECK(cli::run_subcommand("wigner", opt) == cli::kExitIo);
    }
    SECTION("config that is not json") {
        std::ofstream(dir.str("bad.json")) << "not json {";
        cli::CliOptions opt;
        opt.config_path = dir.str("bad.json");
        CoutCapture quiet;
        CHECK(cli::run_subcommand("wigner", opt) == cli::kExitConfig);
    }
    SECTION("stride below one") {
        const json cfg = {{"scenario", "wigner"},
                          {"grid", small_grid()},
                          {"psi", {{"kind", "coherent"}, {"center", {0.0, 0.0}}}}};
        CHECK(run_cli("wigner", cfg, dir, 0) == cli::kExitConfig);
    }
    SECTION("orthogonal pair surfaces as a domain error") {
        const json cfg = {{"scenario", "weakvalue"},
                          {"grid", small_grid()},
                          {"phi", {{"kind", "hermite"}, {"n", 0}}},
                          {"psi", {{"kind", "hermite"}, {"n", 1}}},
                          {"observable",
                           {{"kind", "poly"}, {"terms", {{{"x", 1}, {"coeff", 1.0}}}}}}};
        CHECK(run_cli("weakvalue", cfg, dir) == cli::kExitDomain);
    }
    SECTION("unknown subcommand") {
        const json cfg = {{"scenario", "wigner"}, {"grid", small_grid()}};
        CHECK(run_cli("frobnicate", cfg, dir) == cli::kExitConfig);
    }
}
