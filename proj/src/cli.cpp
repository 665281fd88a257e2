#include "zetalab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zetalab/arith.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/harness.hpp"
#include "zetalab/io.hpp"
#include "zetalab/rmt.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab::cli {

namespace {

struct MomentsParams {
    double k = 0.0;
    std::vector<double> t_grid;
    double x_fixed = 0.0;
    double x_rule = 0.0;
    std::string zeros_path;
    std::string out_path;
    bool deterministic = false;
    int threads = 1;
    long long prime_cutoff = 1000000;
};

// one subcommand per report family; `with_k` gates the exponent flag
CLI::App* add_moments_sub(CLI::App* moments, const std::string& name,
                          const std::string& blurb, MomentsParams* p,
                          bool with_k) {
    CLI::App* sub = moments->add_subcommand(name, blurb);
    if (with_k)
        sub->add_option("--k", p->k, "moment exponent")->required();
    sub->add_option("--t-grid", p->t_grid, "heights T, comma separated")
        ->required()
        ->delimiter(',');
    sub->add_option("--x", p->x_fixed, "fixed prime cutoff X");
    sub->add_option("--x-rule", p->x_rule,
                    "X = (log T)^E rule, E given here");
    sub->add_option("--zeros", p->zeros_path, "zero table file")->required();
    sub->add_option("--out", p->out_path, "report CSV destination")
        ->required();
    sub->add_flag("--deterministic", p->deterministic,
                  "record the fixed-order reduction mode");
    sub->add_option("--threads", p->threads, "worker threads");
    sub->add_option("--prime-cutoff", p->prime_cutoff,
                    "prime cutoff for the arithmetic factor");
    return sub;
}

void run_moments(const std::string& quantity, const MomentsParams& p,
                 std::ostream& out) {
    harness::ExperimentConfig cfg;
    cfg.t_grid = p.t_grid;
    cfg.k_list = {p.k};
    cfg.x_fixed = p.x_fixed;
    cfg.x_rule_exponent = p.x_rule;
    cfg.deterministic = p.deterministic;
    bool uses_x = quantity != "jk";
    if (!uses_x && p.x_fixed == 0.0 && p.x_rule == 0.0)
        cfg.x_fixed = 10.0;  // placeholder; this family never reads X

    auto table = io::ingest_zeros(p.zeros_path);
    cfg.validate(table.t_max);
    if (p.threads < 1) throw ValidationError("threads must be at least 1");

    harness::Workspace ws = harness::Workspace::build(std::move(table),
                                                      p.threads);
    ws.ak_prime_cutoff = p.prime_cutoff;

    std::vector<harness::MomentReport> rows;
    std::vector<double> flagged;
    for (double t : cfg.t_grid) {
        double x = cfg.x_for(t);
        if (quantity == "jk")
            rows.push_back(harness::moment_jk(p.k, t, ws, &flagged));
        else if (quantity == "px")
            rows.push_back(harness::moment_p_x(p.k, t, x, ws));
        else if (quantity == "ratio2")
            rows.push_back(harness::moment_ratio2(t, x, ws));
        else if (quantity == "ratio4")
            rows.push_back(harness::moment_ratio4(t, x, ws));
        else
            rows.push_back(harness::splitting_check(p.k, t, x, ws));
    }
    io::write_report_csv(rows, p.out_path);
    out << "wrote " << rows.size() << " rows -> " << p.out_path << "\n";
    for (double g : flagged)
        out << "flagged near-zero derivative at ordinate "
            << io::format_double(g) << "\n";
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"numerics for discrete moments of the zeta derivative"};
    app.set_config("--config", "", "key=value defaults, flags take precedence");
    app.require_subcommand(1);

    // zeros ------------------------------------------------------------
    CLI::App* zeros = app.add_subcommand("zeros", "compute or load zero tables");
    zeros->require_subcommand(1);
    double t_max = 0.0;
    std::string zeros_out, zeros_in;
    int zero_threads = 1;
    CLI::App* zcompute = zeros->add_subcommand("compute", "find zeros up to a height");
    zcompute->add_option("--t-max", t_max, "top of the search range")->required();
    zcompute->add_option("--out", zeros_out, "destination file")->required();
    zcompute->add_option("--threads", zero_threads, "worker threads");
    CLI::App* zingest = zeros->add_subcommand("ingest", "validate an external table");
    zingest->add_option("--in", zeros_in, "zero table file")->required();

    // moments ----------------------------------------------------------
    CLI::App* moments = app.add_subcommand("moments", "empirical moment reports");
    moments->require_subcommand(1);
    MomentsParams mp;
    CLI::App* m_jk = add_moments_sub(moments, "jk", "derivative moment", &mp, true);
    CLI::App* m_px = add_moments_sub(moments, "px", "prime-side moment", &mp, true);
    CLI::App* m_r2 = add_moments_sub(moments, "ratio2", "prime-normalized square", &mp, false);
    CLI::App* m_r4 = add_moments_sub(moments, "ratio4", "prime-normalized fourth power", &mp, false);
    CLI::App* m_sp = add_moments_sub(moments, "split", "moment splitting check", &mp, true);

    // predict ----------------------------------------------------------
    CLI::App* predict = app.add_subcommand("predict", "closed-form predictions");
    predict->require_subcommand(1);
    double pk = 0.0, pt = 0.0, px_cut = 0.0;
    long long pm = 1, pn = 1, p_cutoff = 1000000;
    CLI::App* p_hko = predict->add_subcommand("hko", "derivative moment prediction");
    p_hko->add_option("--k", pk)->required();
    p_hko->add_option("--t", pt)->required();
    p_hko->add_option("--prime-cutoff", p_cutoff);
    CLI::App* p_c3 = predict->add_subcommand("conj3", "prime-normalized prediction");
    p_c3->add_option("--k", pk)->required();
    p_c3->add_option("--t", pt)->required();
    p_c3->add_option("--x", px_cut)->required();
    CLI::App* p_i4 = predict->add_subcommand("i4", "twisted fourth-moment prediction");
    p_i4->add_option("--m", pm)->required();
    p_i4->add_option("--n", pn)->required();
    p_i4->add_option("--t", pt)->required();

    // rmt ----------------------------------------------------------------
    CLI::App* rmt_cmd = app.add_subcommand("rmt", "unitary-ensemble moments");
    rmt_cmd->require_subcommand(1);
    int rn = 0, rthreads = 1;
    double rk = 0.0;
    long long rsamples = 0;
    std::uint64_t rseed = 0;
    CLI::App* r_exact = rmt_cmd->add_subcommand("exact", "closed form");
    r_exact->add_option("--n", rn)->required();
    r_exact->add_option("--k", rk)->required();
    CLI::App* r_mc = rmt_cmd->add_subcommand("mc", "Monte Carlo estimate");
    r_mc->add_option("--n", rn)->required();
    r_mc->add_option("--k", rk)->required();
    r_mc->add_option("--samples", rsamples)->required();
    r_mc->add_option("--seed", rseed);
    r_mc->add_option("--threads", rthreads);

    // ak -------------------------------------------------------------
    CLI::App* ak_cmd = app.add_subcommand("ak", "arithmetic factor");
    double ak_k = 0.0;
    long long ak_cutoff = 1000000;
    ak_cmd->add_option("--k", ak_k)->required();
    ak_cmd->add_option("--prime-cutoff", ak_cutoff);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));

        if (zcompute->parsed()) {
            auto table = zeta_engine::find_zeros(t_max, zero_threads);
            io::write_zeros(table, zeros_out);
            out << "computed " << table.ordinates.size()
                << " zeros up to t_max=" << io::format_double(table.t_max)
                << " -> " << zeros_out << "\n";
        } else if (zingest->parsed()) {
            auto table = io::ingest_zeros(zeros_in);
            out << "ingested " << table.ordinates.size()
                << " zeros, t_max=" << io::format_double(table.t_max)
                << ", accuracy=" << io::format_double(table.claimed_accuracy)
                << "\n";
        } else if (m_jk->parsed()) {
            run_moments("jk", mp, out);
        } else if (m_px->parsed()) {
            run_moments("px", mp, out);
        } else if (m_r2->parsed()) {
            run_moments("ratio2", mp, out);
        } else if (m_r4->parsed()) {
            run_moments("ratio4", mp, out);
        } else if (m_sp->parsed()) {
            run_moments("split", mp, out);
        } else if (p_hko->parsed()) {
            double ak = arith::a_k(pk, p_cutoff).value;
            out << io::format_double(harness::predict_hko(pk, pt, ak)) << "\n";
        } else if (p_c3->parsed()) {
            out << io::format_double(harness::predict_conj3(pk, pt, px_cut))
                << "\n";
        } else if (p_i4->parsed()) {
            out << io::format_double(harness::predict_twisted_i4(pm, pn, pt))
                << "\n";
        } else if (r_exact->parsed()) {
            out << io::format_double(rmt::cue_moment_exact(rn, rk)) << "\n";
        } else if (r_mc->parsed()) {
            auto res = rmt::cue_moment_mc(rn, rk, rsamples, rseed, rthreads);
            out << io::format_double(res.mean) << " ± "
                << io::format_double(res.std_error) << "\n";
        } else if (ak_cmd->parsed()) {
            auto res = arith::a_k(ak_k, ak_cutoff);
            out << io::format_double(res.value) << " ± "
                << io::format_double(res.tail_bound) << "\n";
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 64;
    } catch (const AccuracyError& e) {
        err << "accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const NonconvergenceError& e) {
        err << "accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const MissedZeroError& e) {
        err << "accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace zetalab::cli
