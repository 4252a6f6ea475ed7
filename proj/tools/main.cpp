#include "config.hpp"

#include "mdiqkd/key_rate.hpp"
#include "mdiqkd/math_util.hpp"
#include "mdiqkd/network.hpp"
#include "mdiqkd/optimizer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

using json = nlohmann::json;
using namespace mdiqkd;
using namespace cli;

namespace {

// one output row; distances are the effective (possibly padded) channel
struct Row {
    double L_A = 0, L_B = 0;
    KeyRateResult result;
    ProtocolParams params;
    double runtime_ms = 0;
    bool skipped = false; // infeasible grid point (e.g. negative L_A)
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<Row>& rows)
{
    std::ofstream out(path, std::ios::binary);
    out << "L_A,L_B,R,"
           "s_A,mu_A,nu_A,nu2_A,P_s_A,P_mu_A,P_nu_A,P_nu2_A,"
           "s_B,mu_B,nu_B,nu2_B,P_s_B,P_mu_B,P_nu_B,P_nu2_B,"
           "Y11_lower,e11_upper,E_ss_Z,Q_ss_Z,runtime_ms\n";
    for (const Row& r : rows) {
        if (r.skipped)
            continue;
        const SideParams& a = r.params.A;
        const SideParams& b = r.params.B;
        char tbuf[32];
        std::snprintf(tbuf, sizeof(tbuf), "%.3f", r.runtime_ms);
        out << fmt(r.L_A) << ',' << fmt(r.L_B) << ',' << fmt(r.result.R)
            << ',' << fmt(a.s) << ',' << fmt(a.mu) << ',' << fmt(a.nu) << ','
            << fmt(a.nu2) << ',' << fmt(a.P_s) << ',' << fmt(a.P_mu) << ','
            << fmt(a.P_nu) << ',' << fmt(a.P_nu2) << ',' << fmt(b.s) << ','
            << fmt(b.mu) << ',' << fmt(b.nu) << ',' << fmt(b.nu2) << ','
            << fmt(b.P_s) << ',' << fmt(b.P_mu) << ',' << fmt(b.P_nu) << ','
            << fmt(b.P_nu2) << ',' << fmt(r.result.bounds.Y11_lower) << ','
            << fmt(r.result.bounds.e11_upper) << ',' << fmt(r.result.E_ss_Z)
            << ',' << fmt(r.result.Q_ss_Z) << ',' << tbuf << '\n';
    }
}

struct Runner {
    Config cfg;
    Analysis analysis;
    Strategy strategy;

    Strategy strategy_for(Variant v) const
    {
        Strategy s = default_strategy(v);
        if (cfg.starts > 0)
            s.starts = cfg.starts;
        s.seed = strategy.seed;
        return s;
    }

    Row solve_point(double L_A, double L_B, Variant variant, bool symmetric,
                    const std::vector<double>& warm) const
    {
        Row row;
        row.L_A = L_A;
        row.L_B = L_B;
        auto t0 = std::chrono::steady_clock::now();
        ChannelPair ch = make_channel(L_A, L_B, cfg.dev);
        OptimizationReport rep =
            warm.empty()
                ? optimize_chained(ch, cfg.dev, analysis, variant, symmetric,
                                   strategy_for(variant))
                : optimize_warm(ch, cfg.dev, analysis, variant, symmetric,
                                warm, strategy_for(variant));
        row.params = rep.best;
        row.result = rep.result;
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        return row;
    }
};

// sequential warm-chained line of points; used per sweep row and for curves
std::vector<Row> solve_line(const Runner& run,
                            const std::vector<std::pair<double, double>>& pts,
                            Variant variant, bool symmetric)
{
    std::vector<Row> rows;
    std::vector<double> warm;
    ParamSpace space{variant, symmetric};
    for (auto [la, lb] : pts) {
        if (la < 0 || lb < 0) {
            Row r;
            r.skipped = true;
            rows.push_back(r);
            continue;
        }
        Row row = run.solve_point(la, lb, variant, symmetric, warm);
        if (row.result.R > 0)
            warm = space.pack(row.params);
        rows.push_back(std::move(row));
    }
    return rows;
}

double arm_rate(const Runner& run, double L, ArmStrategy strat,
                Variant variant, std::vector<double>& warm)
{
    double la = L, lb = 0.0;
    bool symmetric = strat != ArmStrategy::free_params;
    if (strat == ArmStrategy::symmetric_add_fibre)
        lb = L;
    Row row = run.solve_point(la, lb, variant, symmetric, warm);
    if (row.result.R > 0) {
        ParamSpace space{variant, symmetric};
        warm = space.pack(row.params);
    }
    return row.result.R;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"asymmetric MDI-QKD key rates and parameter optimization"};
    std::string config_path, out_dir = ".";
    int threads = (int)std::thread::hardware_concurrency();
    if (threads < 1)
        threads = 1;
    unsigned long long seed = 1;
    bool verify = false;
    app.add_option("--config", config_path, "JSON config path")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker pool size");
    app.add_option("--seed", seed, "RNG seed for multi-start optimization");
    app.add_flag("--verify", verify,
                 "re-derive every CSV row's R from its own parameters");
    CLI11_PARSE(app, argc, argv);

    Config cfg;
    try {
        cfg = parse_config(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    }

    try {
        std::filesystem::create_directories(out_dir);

        Runner run;
        run.cfg = cfg;
        run.analysis = cfg.finite
                           ? Analysis::finite_size(
                                 cfg.N, gamma_from_epsilon(cfg.dev.eps))
                           : Analysis::asymptotic();
        run.strategy.seed = seed;

        auto t_start = std::chrono::steady_clock::now();
        std::vector<Row> rows;
        json extra = json::object();

        switch (cfg.scenario) {
        case ScenarioType::point: {
            rows.push_back(run.solve_point(cfg.L_A, cfg.L_B, cfg.variant,
                                           cfg.symmetric, {}));
            break;
        }
        case ScenarioType::sweep: {
            std::vector<double> las = cfg.range_A.values();
            std::vector<double> lbs = cfg.range_B.values();
            std::vector<std::vector<Row>> grid(las.size());
            std::atomic<size_t> next{0};
            auto worker = [&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= las.size())
                        return;
                    std::vector<std::pair<double, double>> pts;
                    for (double lb : lbs)
                        pts.emplace_back(las[i], lb);
                    grid[i] =
                        solve_line(run, pts, cfg.variant, cfg.symmetric);
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < std::max(threads, 1); t++)
                pool.emplace_back(worker);
            for (auto& th : pool)
                th.join();
            for (auto& line : grid)
                for (auto& r : line)
                    rows.push_back(std::move(r));
            break;
        }
        case ScenarioType::fixed_mismatch: {
            // eta_A/eta_B = x  =>  L_A = L_B - (10/alpha) log10 x
            const double dL = 10.0 / cfg.dev.alpha * std::log10(cfg.mismatch_x);
            std::vector<std::pair<double, double>> pts;
            for (double lb : cfg.range_B.values())
                pts.emplace_back(lb - dL, lb);
            rows = solve_line(run, pts, cfg.variant, cfg.symmetric);
            extra["mismatch_x"] = cfg.mismatch_x;
            break;
        }
        case ScenarioType::single_arm: {
            bool symmetric = cfg.strategy != ArmStrategy::free_params;
            std::vector<std::pair<double, double>> pts;
            for (double la : cfg.range_A.values())
                pts.emplace_back(
                    la, cfg.strategy == ArmStrategy::symmetric_add_fibre
                            ? la
                            : 0.0);
            rows = solve_line(run, pts, cfg.variant, symmetric);
            if (cfg.target_rate > 0) {
                // the optimizer needs continuation near the cutoff, so march
                // outward in 5 km warm-chained steps before bisecting the
                // final bracket (jumps stay small enough for warm starts)
                std::vector<double> warm;
                double lo = cfg.range_A.from;
                if (arm_rate(run, lo, cfg.strategy, cfg.variant, warm) <
                    cfg.target_rate) {
                    extra["max_distance_km"] = nullptr;
                    extra["unreachable"] = true;
                    break;
                }
                double hi = lo;
                bool exhausted = true;
                while (hi < cfg.range_A.to) {
                    double next_L = std::min(hi + 5.0, cfg.range_A.to);
                    if (arm_rate(run, next_L, cfg.strategy, cfg.variant,
                                 warm) < cfg.target_rate) {
                        lo = hi;
                        hi = next_L;
                        exhausted = false;
                        break;
                    }
                    hi = next_L;
                }
                if (exhausted) {
                    extra["max_distance_km"] = hi;
                    extra["range_exhausted"] = true;
                } else {
                    while (hi - lo > 0.5) {
                        double mid = 0.5 * (lo + hi);
                        if (arm_rate(run, mid, cfg.strategy, cfg.variant,
                                     warm) >= cfg.target_rate)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    extra["max_distance_km"] = 0.5 * (lo + hi);
                }
            }
            break;
        }
        case ScenarioType::network: {
            StarNetwork net =
                load_network(cfg.node_file, cfg.finite ? cfg.N : 0.0,
                             cfg.dev);
            bool add_fibre = cfg.strategy == ArmStrategy::symmetric_add_fibre;
            bool symmetric = cfg.strategy != ArmStrategy::free_params;
            double longest = 0.0;
            for (const auto& nd : net.nodes)
                longest = std::max(longest, nd.distance_km);
            std::vector<std::pair<size_t, size_t>> pair_idx;
            for (size_t i = 0; i < net.nodes.size(); i++)
                for (size_t j = i + 1; j < net.nodes.size(); j++)
                    pair_idx.emplace_back(i, j);
            rows.resize(pair_idx.size());
            std::atomic<size_t> next{0};
            auto worker = [&] {
                for (;;) {
                    size_t k = next.fetch_add(1);
                    if (k >= pair_idx.size())
                        return;
                    auto [i, j] = pair_idx[k];
                    double la = add_fibre ? longest
                                          : net.nodes[i].distance_km;
                    double lb = add_fibre ? longest
                                          : net.nodes[j].distance_km;
                    rows[k] = run.solve_point(la, lb,
                                              Variant::seven_intensity,
                                              symmetric, {});
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < std::max(threads, 1); t++)
                pool.emplace_back(worker);
            for (auto& th : pool)
                th.join();
            json pairs = json::array();
            for (size_t k = 0; k < pair_idx.size(); k++)
                pairs.push_back({{"a", net.nodes[pair_idx[k].first].id},
                                 {"b", net.nodes[pair_idx[k].second].id},
                                 {"R", rows[k].result.R}});
            extra["pairs"] = pairs;
            break;
        }
        case ScenarioType::compare: {
            json labels = json::array();
            for (const CompareCase& c : cfg.cases) {
                rows.push_back(run.solve_point(cfg.L_A, cfg.L_B, c.variant,
                                               c.symmetric, {}));
                labels.push_back({{"label", c.label},
                                  {"variant", variant_name(c.variant)},
                                  {"symmetric", c.symmetric},
                                  {"R", rows.back().result.R}});
            }
            extra["cases"] = labels;
            break;
        }
        }

        double total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t_start)
                              .count();

        std::string csv_path = out_dir + "/results.csv";
        write_csv(csv_path, rows);

        if (verify) {
            // every emitted row must reproduce its R from its own parameters
            size_t idx = 0;
            for (const Row& r : rows) {
                if (r.skipped)
                    continue;
                ChannelPair ch = make_channel(r.L_A, r.L_B, cfg.dev);
                KeyRateResult chk =
                    key_rate(r.params, ch, cfg.dev, run.analysis);
                double scale = std::max(std::fabs(chk.R),
                                        std::fabs(r.result.R));
                if (scale > 0 &&
                    std::fabs(chk.R - r.result.R) > 1e-9 * scale)
                    throw std::runtime_error(
                        "verify failed on row " + std::to_string(idx) +
                        ": " + fmt(r.result.R) + " vs " + fmt(chk.R));
                idx++;
            }
        }

        double best_R = 0;
        json best = nullptr;
        size_t n_points = 0;
        for (const Row& r : rows) {
            if (r.skipped)
                continue;
            n_points++;
            if (r.result.R > best_R) {
                best_R = r.result.R;
                best = {{"L_A", r.L_A}, {"L_B", r.L_B}, {"R", r.result.R}};
            }
        }

        const char* names[] = {"point",      "sweep",   "fixed_mismatch",
                               "single_arm", "network", "compare"};
        json summary = {
            {"schema_version", 1},
            {"scenario", names[(int)cfg.scenario]},
            {"variant", variant_name(cfg.variant)},
            {"symmetric", cfg.symmetric},
            {"analysis", cfg.finite ? "finite" : "asymptotic"},
            {"N", cfg.N},
            {"seed", seed},
            {"threads", threads},
            {"n_points", n_points},
            {"best", best},
            {"verified", verify},
            {"total_runtime_ms", total_ms},
        };
        for (auto& [k, v] : extra.items())
            summary[k] = v;
        std::ofstream(out_dir + "/summary.json")
            << summary.dump(2) << "\n";
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
    return 0;
}
