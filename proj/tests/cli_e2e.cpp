// Spawns the installed CLI binary and checks the external contract:
// invocation form, artifacts, determinism, exit codes and error reporting.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = OSCBATH_CLI_PATH;

struct RunOutcome {
    int exit_code;
    std::string stdout_text;
};

RunOutcome run(const std::string& args)
{
    const std::string out_file = "/tmp/oscbath_e2e_stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream f(out_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string write_config(const std::string& name, const std::string& body)
{
    const std::string path = "/tmp/oscbath_e2e_" + name + ".cfg";
    std::ofstream f(path);
    f << body;
    return path;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("temperature command: artifact, checks, summary")
{
    const auto cfg = write_config(
        "temp", "model.omega=1.0\nmodel.eps=0.1\nmodel.cutoff=100\n");
    const auto r = run("temperature --config " + cfg + " --out /tmp/oscbath_e2e_t.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("nu=") != std::string::npos);
    const auto csv = slurp("/tmp/oscbath_e2e_t.csv");
    CHECK(csv.rfind("#schema=1", 0) == 0);
    CHECK(csv.find("nu") != std::string::npos);
}

TEST_CASE("byte-identical output for identical config and command")
{
    const auto cfg = write_config(
        "det", "model.omega=1.0\nmodel.eps=1.0\nmodel.cutoff=1000\n");
    run("moments --config " + cfg + " --out /tmp/oscbath_e2e_a.csv");
    run("moments --config " + cfg + " --out /tmp/oscbath_e2e_b.csv");
    const auto a = slurp("/tmp/oscbath_e2e_a.csv");
    const auto b = slurp("/tmp/oscbath_e2e_b.csv");
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);
}

TEST_CASE("config errors surface with the offending key and a nonzero exit")
{
    const auto cfg = write_config("bad", "model.omga=1\n");
    const auto r = run("moments --config " + cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.stdout_text.find("model.omga") != std::string::npos);

    const auto cfg2 = write_config("bad2", "model.omega=-1\n");
    const auto r2 = run("moments --config " + cfg2);
    CHECK(r2.exit_code == 2);
    CHECK(r2.stdout_text.find("model.omega") != std::string::npos);
}

TEST_CASE("unknown command is rejected")
{
    const auto cfg = write_config("cmd", "model.omega=1\n");
    const auto r = run("frobnicate --config " + cfg);
    CHECK(r.exit_code == 2);
}

TEST_CASE("json artifact")
{
    const auto cfg = write_config(
        "json", "model.omega=1.0\nmodel.eps=0.1\nmodel.cutoff=100\noutput.format=json\n");
    const auto r = run("moments --config " + cfg + " --out /tmp/oscbath_e2e_m.json");
    CHECK(r.exit_code == 0);
    const auto js = slurp("/tmp/oscbath_e2e_m.json");
    CHECK(js.rfind("{", 0) == 0);
    CHECK(js.find("\"qq\"") != std::string::npos);
}

TEST_CASE("thermometer command emits the mu ladder plus the extrapolated row")
{
    const auto cfg = write_config(
        "thermo", "model.omega=1.0\nmodel.eps=1.0\nmodel.cutoff=1000\nmodel.lambda_th=0.7\n");
    const auto r = run("thermometer --config " + cfg + " --out /tmp/oscbath_e2e_th.csv");
    CHECK(r.exit_code == 0);
    const auto csv = slurp("/tmp/oscbath_e2e_th.csv");
    // extrapolated row leads with mu=0 and lands on 1/(2*0.7) = 0.714...
    CHECK(csv.find("\n0,0.714285") != std::string::npos);
}

TEST_CASE("correlations command emits the profile with the fit comment")
{
    const auto cfg = write_config(
        "corr", "model.omega=1.0\nmodel.eps=1.0\nmodel.cutoff=1000\n");
    const auto r = run("correlations --config " + cfg + " --out /tmp/oscbath_e2e_c.csv");
    CHECK(r.exit_code == 0);
    const auto csv = slurp("/tmp/oscbath_e2e_c.csv");
    CHECK(csv.find("comm_residual") != std::string::npos);
    CHECK(csv.find("#cloud envelope fit: kappa=") != std::string::npos);
}

TEST_CASE("oracle command runs a compact lattice and writes the series file")
{
    const auto cfg = write_config("oracle",
                                  "model.omega=1.0\nmodel.eps=1.0\nmodel.cutoff=1000\n"
                                  "model.mu=0.01\n"
                                  "lattice.n_sites=1600\nlattice.dx=0.05\n"
                                  "lattice.smear_sigma=0.05\nlattice.dt=0.02\n"
                                  "lattice.t_final=33\nlattice.window_lo=12\n"
                                  "lattice.window_hi=33\nlattice.profile_xs=0,1,2\n"
                                  "tolerances.quad_tol=1e-9\n");
    const auto r = run("oracle --config " + cfg + " --out /tmp/oscbath_e2e_o.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("all gated comparisons pass") != std::string::npos);
    const auto csv = slurp("/tmp/oscbath_e2e_o.csv");
    CHECK(csv.find("qq_vs_smeared_spectral") != std::string::npos);
    const auto series = slurp("/tmp/oscbath_e2e_o.csv.series.csv");
    CHECK(series.find("tau,autocorr") != std::string::npos);
}

TEST_CASE("oracle command requires the lattice section")
{
    const auto cfg = write_config("oracle_missing", "model.omega=1.0\n");
    const auto r = run("oracle --config " + cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.stdout_text.find("lattice") != std::string::npos);
}

TEST_CASE("sweep command preserves input order")
{
    const auto cfg = write_config("sweep",
                                  "model.omega=1.0\nmodel.cutoff=1000\n"
                                  "sweep.axis=eps\nsweep.values=1.0,0.1\n");
    const auto r = run("sweep --config " + cfg);
    CHECK(r.exit_code == 0);
    const auto p1 = r.stdout_text.find("\n1,");
    const auto p2 = r.stdout_text.find("\n0.1,");
    CHECK(p1 != std::string::npos);
    CHECK(p2 != std::string::npos);
    CHECK(p1 < p2);
}
