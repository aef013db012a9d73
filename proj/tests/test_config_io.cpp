#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <filesystem>
#include <random>
#include <string>

#include "peterlin/config.hpp"
#include "peterlin/diagnostics.hpp"
#include "peterlin/snapshot.hpp"

using namespace peterlin;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    RunConfig cfg = parse_config(
        "mode = mp\n"
        "dt = 1e-3\n"
        "t_end = 0.1\n");
    CHECK(cfg.mode == RunMode::mp);
    CHECK(cfg.nx == 64);
    CHECK(cfg.ny == 64);
    CHECK(cfg.n_hermite == 8);
    CHECK(cfg.output_every == 1);
    CHECK(cfg.params.lambda == doctest::Approx(1.0));
    CHECK(cfg.params.eps == doctest::Approx(0.125));
    CHECK(cfg.maxwellian.a == doctest::Approx(1.0));
    CHECK(cfg.init_c0.xx == doctest::Approx(1.0));
    CHECK(cfg.init_c0.xy == 0.0);
    CHECK(cfg.n_steps() == 100);
}

TEST_CASE("comments and spacing are tolerated") {
    RunConfig cfg = parse_config(
        "# a comment line\n"
        "mode=kp   # trailing comment\n"
        "\n"
        "  dt   =  1e-3\n"
        "t_end = 1.0\n"
        "gamma1_kind = power_law\n"
        "gamma1_exponent = 1\n"
        "gamma2_kind = power_law\n"
        "gamma2_exponent = 1\n");
    CHECK(cfg.mode == RunMode::kp);
    CHECK(cfg.gamma1.kind == GammaKind::power_law);
}

TEST_CASE("cutoff guard rejects dt above the bound at parse time") {
    try {
        parse_config(
            "mode = kp\n"
            "dt = 0.01\n"
            "t_end = 1.0\n"
            "gamma1_kind = power_law\n"
            "gamma2_kind = power_law\n"
            "cutoff_L = 10\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 6);
        CHECK(std::string(e.what()).find("4L") != std::string::npos);
    }
    // dt exactly at the bound is allowed
    RunConfig ok = parse_config(
        "mode = kp\n"
        "dt = 0.000625\n"
        "t_end = 1.0\n"
        "gamma1_kind = power_law\n"
        "gamma2_kind = power_law\n"
        "cutoff_L = 20\n");
    CHECK(ok.cutoff_L.has_value());
}

TEST_CASE("ratio condition is fatal for kinetic modes") {
    const std::string base =
        "dt = 1e-3\n"
        "t_end = 0.1\n"
        "gamma1_kind = power_law\n"
        "gamma1_exponent = 2\n"
        "gamma2_kind = power_law\n"
        "gamma2_exponent = 1\n";
    CHECK_THROWS_AS(parse_config("mode = kp\n" + base), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = closure_compare\n" + base), ConfigError);
    // the purely macroscopic constant-coefficient run is exempt
    RunConfig cfg = parse_config(
        "mode = mp\n"
        "dt = 1e-3\n"
        "t_end = 0.1\n"
        "k_tau = 2\n");  // gamma1 = gamma2 = const 1, ratio 1 != 2
    CHECK(cfg.mode == RunMode::mp);
    CHECK_FALSE(admissibility_report(cfg).ratio_ok);
}

TEST_CASE("line numbers identify the offending line") {
    try {
        parse_config("mode = mp\nwibble = 3\ndt = 1e-3\nt_end = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("wibble") != std::string::npos);
    }
    try {
        parse_config("mode = mp\ndt = fast\nt_end = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
    }
    try {
        parse_config("mode = mp\ndt = 1e-3\ndt = 1e-4\nt_end = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_config("mode = mp\ndt = 1e-3\n"), ConfigError);  // missing t_end
}

TEST_CASE("malformed lines always carry a line number") {
    std::mt19937 rng(2024);
    const std::vector<std::string> bad_lines = {
        "this line has no equals sign",
        "= value_without_key",
        "dt = ",
        "unknown_key_xyz = 1",
        "nx = 3.5",
        "mode = warp_drive",
        "init_u = diagonal",
        "gamma1_kind = polynomial",
        "nx = seven",
        "cutoff_L = 0.5",
    };
    std::uniform_int_distribution<size_t> pick(0, bad_lines.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        // embed one malformed line in an otherwise valid config
        const std::string bad = bad_lines[pick(rng)];
        std::string text = "mode = mp\ndt = 1e-3\nt_end = 1.0\n";
        const int bad_line = 4;
        text += bad + "\n";
        try {
            parse_config(text);
            FAIL("expected ConfigError for line: ", bad);
        } catch (const ConfigError& e) {
            CHECK(e.line() == bad_line);
        }
    }
}

TEST_CASE("fp_given requires the field paths") {
    const std::string base =
        "mode = fp_given\n"
        "dt = 1e-3\n"
        "t_end = 0.1\n"
        "gamma1_kind = power_law\n"
        "gamma2_kind = power_law\n";
    CHECK_THROWS_AS(parse_config(base), ConfigError);
    RunConfig cfg = parse_config(base + "u_star_path = u.pkf\nc_star_path = c.pkf\n");
    CHECK(cfg.gamma_source == GammaSource::given_field);
}

TEST_CASE("kinetic initial data must be representable") {
    const std::string base =
        "mode = kp\n"
        "dt = 1e-3\n"
        "t_end = 0.1\n"
        "gamma1_kind = power_law\n"
        "gamma2_kind = power_law\n";
    CHECK_THROWS_AS(parse_config(base + "init_c0_11 = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "init_c0_12 = 1.5\n"), ConfigError);
    RunConfig ok = parse_config(base + "init_c0_11 = 1.5\ninit_c0_22 = 0.5\n");
    CHECK(ok.init_c0.xx == doctest::Approx(1.5));
}

TEST_CASE("admissibility report reflects the configured envelopes") {
    RunConfig cfg = parse_config(
        "mode = kp\n"
        "dt = 1e-3\n"
        "t_end = 0.1\n"
        "gamma1_kind = power_law\n"
        "gamma1_exponent = 1\n"
        "gamma2_kind = power_law\n"
        "gamma2_exponent = 1\n"
        "gamma3_kind = power_law\n"
        "gamma3_exponent = 1\n");
    const AdmissibilityReport rep = admissibility_report(cfg);
    CHECK(rep.ratio_ok);
    // alpha = 1, gamma = 1 < alpha+1, beta = 1: classical fails alpha > beta+1
    CHECK_FALSE(rep.classical.admissible);
    CHECK(rep.regular.admissible);
}

TEST_CASE("field snapshot round trip is bitwise") {
    TorusGrid2D g(8, 12);
    ScalarField f1(g), f2(g);
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (long i = 0; i < f1.size(); ++i) {
        f1[i] = d(rng);
        f2[i] = d(rng);
    }
    FieldSnapshot snap;
    add_field(snap, "u_x", f1);
    add_field(snap, "u_y", f2);
    const std::string path = tmp_path("peterlin_test_snap.pkf");
    write_pkf(path, snap);
    const FieldSnapshot back = read_pkf(path);
    CHECK(back.nx == 8);
    CHECK(back.ny == 12);
    REQUIRE(back.fields.size() == 2);
    CHECK(back.fields[0].first == "u_x");
    ScalarField r1 = extract_field(back, "u_x");
    ScalarField r2 = extract_field(back, "u_y");
    for (long i = 0; i < f1.size(); ++i) {
        CHECK(r1[i] == f1[i]);
        CHECK(r2[i] == f2[i]);
    }
    CHECK_THROWS_AS(extract_field(back, "missing"), IoError);
    std::remove(path.c_str());
}

TEST_CASE("pkf header layout is exactly as specified") {
    TorusGrid2D g(8, 8);
    ScalarField f(g, 1.0);
    FieldSnapshot snap;
    add_field(snap, "p", f);
    const std::string path = tmp_path("peterlin_test_layout.pkf");
    write_pkf(path, snap);
    std::ifstream is(path, std::ios::binary);
    char header[16];
    is.read(header, 16);
    CHECK(std::string(header, 4) == "PKF1");
    const auto u32 = [&](int off) {
        return static_cast<uint32_t>(static_cast<unsigned char>(header[off])) |
               static_cast<uint32_t>(static_cast<unsigned char>(header[off + 1])) << 8 |
               static_cast<uint32_t>(static_cast<unsigned char>(header[off + 2])) << 16 |
               static_cast<uint32_t>(static_cast<unsigned char>(header[off + 3])) << 24;
    };
    CHECK(u32(4) == 8);   // nx
    CHECK(u32(8) == 8);   // ny
    CHECK(u32(12) == 1);  // n_fields
    char name[32];
    is.read(name, 32);
    CHECK(std::string(name, 1) == "p");
    for (int i = 1; i < 32; ++i) CHECK(name[i] == '\0');
    CHECK(std::filesystem::file_size(path) == 4 + 12 + 32 + 8 * 64);
    std::remove(path.c_str());
}

TEST_CASE("kinetic snapshot round trip") {
    TorusGrid2D g(8, 8);
    HermiteBasis basis(1.0, 4);
    HermiteField f(g, basis);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int m = 0; m < basis.n_modes(); ++m)
        for (long i = 0; i < f.n_cells(); ++i) f.mode(m)[i] = d(rng);
    const std::string path = tmp_path("peterlin_test_snap.pkh");
    write_pkh(path, f, basis);
    const KineticSnapshot back = read_pkh(path);
    CHECK(back.nx == 8);
    CHECK(back.ny == 8);
    CHECK(back.max_degree == 4);
    CHECK(back.a == 1.0);
    REQUIRE(back.coeffs.size() ==
            static_cast<size_t>(f.n_cells()) * static_cast<size_t>(basis.n_modes()));
    // cell-major, lexicographic modes within each cell
    for (long cell = 0; cell < f.n_cells(); ++cell)
        for (int m = 0; m < basis.n_modes(); ++m)
            CHECK(back.coeffs[cell * basis.n_modes() + m] == f.mode(m)[cell]);
    std::remove(path.c_str());
}

TEST_CASE("diagnostics csv format") {
    CHECK(std::string(diagnostics_csv_header()) ==
          "step,time,kinetic_energy,trC_mean,mass_min,mass_max,entropy,fisher,moment4_max,"
          "min_psi_node,negativity_mass,closure_err");
    DiagnosticsRow row;
    row.step = 3;
    row.time = 0.25;
    row.kinetic_energy = 1.0;
    row.trC_mean = 2.0;
    const std::string line = to_csv(row);
    CHECK(line == "3,0.25,1,2,,,,,,,,");
    row.mass_min = 1.0;
    row.closure_err = 0.5;
    CHECK(to_csv(row) == "3,0.25,1,2,1,,,,,,,0.5");
    // identical doubles give identical bytes
    DiagnosticsRow again = row;
    CHECK(to_csv(again) == to_csv(row));
}
