/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// simulate: run one ergodic-sum-capacity sweep and write CSV (and optionally SVG).
//
// Exit codes: 0 success, 2 configuration error, 1 runtime error.

#include "jtnoma/jtnoma.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

std::string read_text(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
    {
        throw jtnoma::ConfigError("", 0, "cannot read configuration file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_summary(const std::vector<jtnoma::ResultRow>& rows)
{
    std::printf("%-12s %-12s %14s %12s %14s\n", "sweep", "scheme", "esc_mc", "ci95", "esc_analytic");
    for (const auto& r : rows)
    {
        std::printf("%-12.6g %-12s %14.6f %12.6f ", r.sweep_value,
                    std::string(jtnoma::scheme_token(r.scheme)).c_str(), r.esc_mc, r.esc_ci95);
        if (r.esc_analytic)
        {
            std::printf("%14.6f\n", *r.esc_analytic);
        }
        else
        {
            std::printf("%14s\n", "-");
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ergodic sum capacity of JT-CoMP VP-NOMA and baseline schemes"};
    app.name("simulate");

    std::string config_path;
    std::optional<std::string> sweep, from, to, steps, schemes, trials, seed;
    std::string out_path;
    std::string plot_path;
    unsigned workers = 0;
    bool quiet = false;

    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--sweep", sweep, "rho | near-radius | alpha");
    app.add_option("--from", from, "first swept value");
    app.add_option("--to", to, "last swept value");
    app.add_option("--steps", steps, "number of sweep points (>= 2)");
    app.add_option("--schemes", schemes, "comma list of oma,noma,vpnoma,comp-vpnoma");
    app.add_option("--trials", trials, "Monte-Carlo trials per point");
    app.add_option("--seed", seed, "64-bit seed");
    app.add_option("--out", out_path, "CSV output path (default results.csv)");
    app.add_option("--plot", plot_path, "SVG plot output path");
    app.add_option("--workers", workers, "worker threads (0 = all cores)");
    app.add_flag("-q,--quiet", quiet, "do not print the summary table");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    jtnoma::SweepConfig cfg;
    try
    {
        jtnoma::ConfigBuilder builder;
        if (!config_path.empty())
        {
            builder.parse_document(read_text(config_path));
        }
        const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
            {"sweep", &sweep},   {"from", &from},     {"to", &to},    {"steps", &steps},
            {"schemes", &schemes}, {"trials", &trials}, {"seed", &seed},
        };
        for (const auto& [key, value] : overrides)
        {
            if (*value)
            {
                builder.set(key, **value, 0);
            }
        }
        cfg = builder.build();
        if (!out_path.empty())
        {
            cfg.output_path = out_path;
        }
    }
    catch (const jtnoma::ConfigError& e)
    {
        std::cerr << "simulate: " << e.what() << '\n';
        return 2;
    }

    try
    {
        const auto rows = jtnoma::run_sweep(cfg, workers);
        jtnoma::write_results(rows, cfg.output_path);
        if (!plot_path.empty())
        {
            jtnoma::emit_plot(rows, plot_path);
        }
        if (!quiet)
        {
            print_summary(rows);
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "simulate: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
