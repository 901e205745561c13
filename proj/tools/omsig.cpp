// omsig: evaluate signature cocycles and quasimorphisms, run reproduction targets.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "omsig/reproduce.hpp"

using namespace omsig;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kUnconverged = 3;

struct ContextFlags {
    bool meyer = false, omega = false;
    int g = 0, m = 0, d = 0, j = 0;
    long window = 4096;

    void add(CLI::App* app) {
        app->add_flag("--meyer", meyer, "Meyer cocycle on the genus-g hyperelliptic group");
        app->add_flag("--omega", omega, "omega-signature cocycle on the m-pointed sphere");
        app->add_option("-g,--genus", g, "genus");
        app->add_option("-m", m, "number of marked points (implies --omega)");
        app->add_option("-d", d, "cover degree, divides m (default m)");
        app->add_option("-j", j, "eigenspace index, 1 <= j <= d-1");
        app->add_option("--window", window, "largest window for the homogenization limit")->check(CLI::Range(32L, 1L << 20));
    }

    bool is_meyer() const {
        if (meyer && (omega || m)) throw CLI::ValidationError("--meyer excludes --omega/-m");
        if (meyer) {
            if (g < 1) throw CLI::ValidationError("--meyer needs -g >= 1");
            return true;
        }
        if (!omega && !m) throw CLI::ValidationError("give --meyer -g G or --omega -m M -j J");
        if (m < 3) throw CLI::ValidationError("--omega needs -m >= 3");
        if (j < 1) throw CLI::ValidationError("--omega needs -j");
        return false;
    }
    LimitOptions limits() const { return {32, window}; }
    OmegaRep omega_rep() const { return OmegaRep(m, d ? d : m, j); }
};

template <class Rep>
int do_tau(const Rep& rep, const std::string& xs, const std::string& ys, bool as_json) {
    const CocycleEvaluator<Rep> ev(rep);
    const Word x = parse_word(xs, rep.context()), y = parse_word(ys, rep.context());
    const CocycleValue v = ev.tau(x, y);
    if (as_json)
        std::cout << json{{"context", rep.label()}, {"x", xs}, {"y", ys}, {"tau", v.tau}, {"dimV", v.dim}}.dump() << '\n';
    else
        std::cout << v.tau << "  (dim V = " << v.dim << ")\n";
    return kOk;
}

template <class Rep>
int do_qm(const Rep& rep, const LimitOptions& lim, const std::string& ws, bool homogeneous, bool as_json) {
    const Quasimorphism<Rep> q(rep, lim);
    const Word w = parse_word(ws, q.context());
    QmValue v;
    if (homogeneous) v = q.homogenize(w);
    else v = {q.phi(w), QmMode::Exact, 0, 0, q.label()};
    if (as_json) {
        json out = to_json(v);
        out["word"] = ws;
        std::cout << out.dump() << '\n';
    } else {
        std::cout << v.value << "  " << v.mode_string() << '\n';
    }
    if (!v.certified()) {
        std::cerr << "homogenization did not certify; value is the best estimate\n";
        return kUnconverged;
    }
    return kOk;
}

int write_report(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "cannot open " << path << '\n';
        return kUsage;
    }
    f << j.dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"signature cocycles and omega-signature quasimorphisms"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    ContextFlags ctx;
    std::string wx, wy;

    auto* tau = app.add_subcommand("tau", "tau(x, y) and dim V_{A,B}");
    ctx.add(tau);
    tau->add_option("x", wx, "first word")->required();
    tau->add_option("y", wy, "second word")->required();

    auto* phi = app.add_subcommand("phi", "cobounding function phi(w)");
    ContextFlags ctx_phi;
    ctx_phi.add(phi);
    phi->add_option("word", wx, "word")->required();

    auto* barphi = app.add_subcommand("barphi", "homogenization barphi(w)");
    ContextFlags ctx_bar;
    ctx_bar.add(barphi);
    barphi->add_option("word", wx, "word")->required();

    ReproduceOptions ropt;
    std::string target = "all", out;
    auto* repro = app.add_subcommand("reproduce", "run reproduction targets");
    repro->add_option("target", target, "target id or 'all'");
    repro->add_option("--seed", ropt.seed, "sampling seed");
    repro->add_option("--out", out, "write the JSON report here (default stdout)");
    repro->add_option("--m-max", ropt.m_max, "largest m in the grids")->check(CLI::Range(4, 30));
    repro->add_option("--g-max", ropt.g_max, "largest genus")->check(CLI::Range(1, 8));
    repro->add_option("--samples", ropt.samples, "random pairs per sampled context");
    repro->add_option("--threads", ropt.threads, "worker threads (0: all cores)");

    int gm_lo = 4, gm_hi = 8;
    std::string csv, jsonl;
    auto* grid = app.add_subcommand("grid", "phi and barphi on s_1..s_{r-1} with expected closed forms");
    grid->add_option("--m-min", gm_lo)->check(CLI::Range(4, 30));
    grid->add_option("--m-max", gm_hi)->check(CLI::Range(4, 30));
    grid->add_option("--csv", csv, "CSV output path");
    grid->add_option("--jsonl", jsonl, "JSON-lines output path (default stdout)");
    unsigned grid_threads = 0;
    grid->add_option("--threads", grid_threads);

    app.add_subcommand("list", "list reproduction targets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*tau) {
            if (ctx.is_meyer()) return do_tau(MeyerRep(ctx.g), wx, wy, as_json);
            return do_tau(ctx.omega_rep(), wx, wy, as_json);
        }
        if (*phi || *barphi) {
            const ContextFlags& c = *phi ? ctx_phi : ctx_bar;
            const bool hom = static_cast<bool>(*barphi);
            if (c.is_meyer()) return do_qm(MeyerRep(c.g), c.limits(), wx, hom, as_json);
            return do_qm(c.omega_rep(), c.limits(), wx, hom, as_json);
        }
        if (*repro) {
            const ReproduceReport rep = reproduce(target, ropt);
            for (const auto& r : rep.results)
                std::cerr << r.id << ": " << status_string(r.status) << '\n';
            if (const int rc = write_report(to_json(rep, ropt), out); rc) return rc;
            return rep.exit_code();
        }
        if (*grid) {
            if (gm_hi < gm_lo) throw CLI::ValidationError("--m-max below --m-min");
            const auto cells = theorem11_grid(gm_lo, gm_hi, grid_threads);
            if (!csv.empty()) {
                std::ofstream f(csv);
                if (!f) {
                    std::cerr << "cannot open " << csv << '\n';
                    return kUsage;
                }
                write_csv(f, cells);
            }
            if (!jsonl.empty()) {
                std::ofstream f(jsonl);
                if (!f) {
                    std::cerr << "cannot open " << jsonl << '\n';
                    return kUsage;
                }
                write_jsonl(f, cells);
            } else if (csv.empty()) {
                write_jsonl(std::cout, cells);
            }
            bool ok = true;
            for (const auto& c : cells) ok = ok && c.phi_ok() && c.barphi_ok();
            return ok ? kOk : kFailure;
        }
        for (const auto& t : target_registry()) std::cout << t.id << "\t" << t.description << '\n';
        return kOk;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kFailure;
    }
}
