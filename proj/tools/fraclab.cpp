#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "fraclab/cli.hpp"

namespace {

template <class T>
void override_if(const std::optional<T>& v, T& target) {
    if (v) target = *v;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace fraclab;
    CLI::App app{"fraclab: time-fractional Allen-Cahn / Cahn-Hilliard lab"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a phase-field simulation and its dissipation diagnostics");
    std::string config_path;
    std::optional<std::string> model, mesh, scheme, init, omega, outdir;
    std::optional<double> alpha, nu, T, grading, picard_tol, stab;
    std::optional<int> dim, n, steps, picard_max;
    std::optional<std::uint64_t> seed;
    std::vector<int> snapshots;
    bool no_dealias = false;
    sim->add_option("--config", config_path, "JSON config; flags override its keys")->check(CLI::ExistingFile);
    sim->add_option("--model", model, "ac | ch")->check(CLI::IsMember({"ac", "ch"}));
    sim->add_option("--alpha", alpha, "fractional order");
    sim->add_option("--nu", nu, "interface coefficient");
    sim->add_option("--dim", dim, "space dimension 1..3");
    sim->add_option("--n", n, "points per dimension (power of two)");
    sim->add_option("--mesh", mesh, "uniform | graded")->check(CLI::IsMember({"uniform", "graded"}));
    sim->add_option("--grading", grading, "graded mesh exponent (default (2-alpha)/alpha)");
    sim->add_option("--steps", steps, "time steps");
    sim->add_option("--T", T, "final time");
    sim->add_option("--scheme", scheme, "l1 | exp")->check(CLI::IsMember({"l1", "exp"}));
    sim->add_option("--init", init, "expression in x,y,z or an .fpf file");
    sim->add_option("--omega", omega, "caputo | none | expression in theta,alpha");
    sim->add_option("--out", outdir, "output directory");
    sim->add_option("--seed", seed, "seed for rand() in --init");
    sim->add_option("--snapshots", snapshots, "node indices to write as FPF1")->delimiter(',');
    sim->add_option("--picard-tol", picard_tol);
    sim->add_option("--picard-max", picard_max);
    sim->add_option("--stabilization", stab, "S shift for the exponential integrator");
    sim->add_flag("--no-dealias", no_dealias);

    // kernels check
    auto* kern = app.add_subcommand("kernels", "positivity toolkit");
    kern->require_subcommand(1);
    auto* kcheck = kern->add_subcommand("check", "Gram-matrix PSD checks for catalog kernels");
    cli::KernelsConfig kc;
    std::optional<double> kalpha;
    kcheck->add_option("--spec", kc.spec, "kernel name or 'all'");
    kcheck->add_option("--alpha", kalpha, "single alpha (default sweeps 0.25, 0.5, 0.75)");
    kcheck->add_option("--omega", kc.omega, "weight expression for the omega kernel");
    kcheck->add_option("--points-file", kc.points_file, "one point per line")->check(CLI::ExistingFile);
    kcheck->add_option("--eig-csv", kc.eig_csv, "write eigenvalues here");
    kcheck->add_option("--sets", kc.sets, "random point sets when no file is given");
    kcheck->add_option("--seed", kc.seed);
    kcheck->add_option("--tol", kc.tol);

    // ml eval
    auto* ml = app.add_subcommand("ml", "Mittag-Leffler function");
    ml->require_subcommand(1);
    auto* mleval = ml->add_subcommand("eval", "evaluate E_{alpha,beta}(z)");
    double ma = 0.5, mb = 1.0, mz = 0.0;
    mleval->add_option("--alpha", ma)->required();
    mleval->add_option("--beta", mb)->required();
    mleval->add_option("--z", mz)->required();

    // convergence
    auto* conv = app.add_subcommand("convergence", "L1 order study on D^alpha w = beta w");
    cli::ConvergenceConfig cc;
    conv->add_option("--alpha", cc.alpha);
    conv->add_option("--T", cc.T);
    conv->add_option("--beta", cc.beta);
    conv->add_option("--mesh", cc.mesh, "uniform | graded | both")->check(CLI::IsMember({"uniform", "graded", "both"}));
    conv->add_option("--Ns", cc.Ns, "step counts")->delimiter(',');
    conv->add_option("--out", cc.out, "CSV path (stdout if omitted)");

    auto* self = app.add_subcommand("self-check", "oracle agreement suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sim) {
            cli::ExperimentConfig cfg;
            if (!config_path.empty()) cfg = cli::load_config(config_path, cfg);
            override_if(model, cfg.model);
            override_if(alpha, cfg.alpha);
            override_if(nu, cfg.nu);
            override_if(dim, cfg.dim);
            override_if(n, cfg.n);
            override_if(mesh, cfg.mesh);
            override_if(grading, cfg.grading);
            override_if(steps, cfg.steps);
            override_if(T, cfg.T);
            override_if(scheme, cfg.scheme);
            override_if(init, cfg.init);
            override_if(omega, cfg.omega);
            override_if(outdir, cfg.out);
            override_if(seed, cfg.seed);
            override_if(picard_tol, cfg.picard_tol);
            override_if(picard_max, cfg.picard_max);
            override_if(stab, cfg.stabilization);
            if (!snapshots.empty()) cfg.snapshots = snapshots;
            if (no_dealias) cfg.dealias = false;
            return cli::cmd_simulate(cfg);
        }
        if (*kcheck) {
            if (kalpha) kc.alphas = {*kalpha};
            return cli::cmd_kernels(kc);
        }
        if (*mleval) return cli::cmd_ml(ma, mb, mz);
        if (*conv) return cli::cmd_convergence(cc);
        if (*self) return cli::cmd_selfcheck();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
