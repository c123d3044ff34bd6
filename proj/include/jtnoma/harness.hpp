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

#pragma once

#include "jtnoma/channel.hpp"
#include "jtnoma/errors.hpp"
#include "jtnoma/geometry.hpp"
#include "jtnoma/montecarlo.hpp"
#include "jtnoma/schemes.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace jtnoma {

enum class SweepKind
{
    rho_db,
    near_radius,
    alpha,
};

inline std::string_view sweep_token(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::rho_db:
        return "rho";
    case SweepKind::near_radius:
        return "near-radius";
    case SweepKind::alpha:
        return "alpha";
    }
    throw DomainError("unknown sweep kind");
}

inline std::optional<SweepKind> parse_sweep_kind(std::string_view token)
{
    for (SweepKind k : {SweepKind::rho_db, SweepKind::near_radius, SweepKind::alpha})
    {
        if (sweep_token(k) == token)
        {
            return k;
        }
    }
    return std::nullopt;
}

struct SweepRange
{
    double from;
    double to;
    int steps;
};

/// Range used when the configuration leaves from/to/steps unset.
inline SweepRange default_range(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::rho_db:
        return {0.0, 40.0, 9};
    case SweepKind::near_radius:
        return {0.1, 0.9, 9};
    case SweepKind::alpha:
        return {0.05, 0.24, 20};
    }
    throw DomainError("unknown sweep kind");
}

/// A fully resolved experiment: one swept knob, everything else fixed.
struct SweepConfig
{
    SweepKind sweep_kind{SweepKind::rho_db};
    double from{0.0};
    double to{40.0};
    int steps{9};

    double alpha{kDefaultAlpha};
    double rho_db{20.0};
    double upsilon{kDefaultUpsilon};
    double sigma_eps{kDefaultSigmaEps};
    double pathloss_exponent{kDefaultPathlossExponent};
    double cell_radius{1.0};
    double near_radius{0.5};
    double far_radius{0.95};

    std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    std::uint64_t trials{kDefaultSweepTrials};
    std::uint64_t seed{1};
    std::string output_path{"results.csv"};

    /// Swept value of point i (0-based).
    double point(int i) const
    {
        if (i == steps - 1)
        {
            return to;
        }
        return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

/**
 * @brief Accumulates key=value settings and resolves them into a SweepConfig.
 *
 * Settings may come from a configuration document and from command-line
 * flags; later settings override earlier ones. Validation happens in build(),
 * so cross-key constraints see the final values.
 */
class ConfigBuilder
{
  public:
    static constexpr std::array<std::string_view, 14> kKeys{
        "alpha",       "rho_db",     "upsilon", "sigma_eps", "pathloss_exponent",
        "near_radius", "far_radius", "trials",  "seed",      "sweep",
        "from",        "to",         "steps",   "schemes"};

    /// Set one key; `line` is the 1-based document line, or 0 for other sources.
    void set(std::string_view key, std::string_view value, int line)
    {
        const std::string k(key);
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
        {
            throw ConfigError(k, line, "unknown key");
        }
        const std::string v(trim(value));
        if (v.empty())
        {
            throw ConfigError(k, line, "empty value");
        }
        // Parse eagerly so malformed values are reported where they appear.
        if (key == "sweep")
        {
            if (!parse_sweep_kind(v))
            {
                throw ConfigError(k, line, "expected rho, near-radius or alpha, got '" + v + "'");
            }
        }
        else if (key == "schemes")
        {
            parse_scheme_list(v, line);
        }
        else if (key == "trials" || key == "seed" || key == "steps")
        {
            parse_unsigned(k, v, line);
        }
        else
        {
            parse_real(k, v, line);
        }
        m_values[k] = Setting{v, line};
    }

    /// Read a whole `key=value` document; '#' starts a comment.
    void parse_document(std::string_view text)
    {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const std::size_t eol = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, eol - pos);
            ++line_no;
            pos = eol + 1;

            if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty())
            {
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
            {
                throw ConfigError("", line_no, "expected key=value, got '" + std::string(line) + "'");
            }
            set(trim(line.substr(0, eq)), line.substr(eq + 1), line_no);
        }
    }

    SweepConfig build() const
    {
        SweepConfig cfg;
        if (auto s = get("sweep"))
        {
            cfg.sweep_kind = *parse_sweep_kind(s->value);
        }
        const SweepRange range = default_range(cfg.sweep_kind);
        cfg.from = real_or("from", range.from);
        cfg.to = real_or("to", range.to);
        cfg.steps = static_cast<int>(unsigned_or("steps", static_cast<std::uint64_t>(range.steps)));

        cfg.alpha = real_or("alpha", cfg.alpha);
        cfg.rho_db = real_or("rho_db", cfg.rho_db);
        cfg.upsilon = real_or("upsilon", cfg.upsilon);
        cfg.sigma_eps = real_or("sigma_eps", cfg.sigma_eps);
        cfg.pathloss_exponent = real_or("pathloss_exponent", cfg.pathloss_exponent);
        cfg.near_radius = real_or("near_radius", cfg.near_radius);
        cfg.far_radius = real_or("far_radius", cfg.far_radius);
        cfg.trials = unsigned_or("trials", cfg.trials);
        cfg.seed = unsigned_or("seed", cfg.seed);
        if (auto s = get("schemes"))
        {
            cfg.schemes = parse_scheme_list(s->value, s->line);
        }

        require(cfg.alpha > 0.0 && cfg.alpha < 0.25, "alpha", "alpha must lie in (0, 0.25)");
        require(cfg.upsilon >= 0.0, "upsilon", "upsilon must be nonnegative");
        require(cfg.sigma_eps >= 0.0, "sigma_eps", "sigma_eps must be nonnegative");
        require(cfg.pathloss_exponent > 0.0, "pathloss_exponent", "must be positive");
        require(cfg.near_radius > 0.0 && cfg.near_radius <= cfg.cell_radius, "near_radius",
                "must lie in (0, 1]");
        require(cfg.far_radius > 0.0 && cfg.far_radius <= cfg.cell_radius, "far_radius",
                "must lie in (0, 1]");
        require(cfg.trials >= 1, "trials", "must be at least 1");
        require(cfg.steps >= 2, "steps", "must be at least 2");
        require(cfg.from < cfg.to, get("to") ? "to" : "from", "sweep requires from < to");

        switch (cfg.sweep_kind)
        {
        case SweepKind::alpha:
            require(cfg.from > 0.0, "from", "swept alpha must be > 0");
            require(cfg.to < 0.25, "to", "swept alpha must be < 0.25");
            break;
        case SweepKind::near_radius:
            require(cfg.from > 0.0, "from", "swept radius must be > 0");
            require(cfg.to <= cfg.cell_radius, "to", "swept radius must be <= 1");
            break;
        case SweepKind::rho_db:
            break;
        }
        return cfg;
    }

  private:
    struct Setting
    {
        std::string value;
        int line;
    };

    static std::string_view trim(std::string_view s)
    {
        const auto ws = " \t\r\n";
        const std::size_t b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
        {
            return {};
        }
        const std::size_t e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    static double parse_real(const std::string& key, std::string_view v, int line)
    {
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
        {
            throw ConfigError(key, line, "not a real number: '" + std::string(v) + "'");
        }
        return out;
    }

    static std::uint64_t parse_unsigned(const std::string& key, std::string_view v, int line)
    {
        std::uint64_t out = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size())
        {
            throw ConfigError(key, line, "not a nonnegative integer: '" + std::string(v) + "'");
        }
        return out;
    }

    static std::vector<SchemeId> parse_scheme_list(std::string_view v, int line)
    {
        std::vector<SchemeId> out;
        std::size_t pos = 0;
        while (pos <= v.size())
        {
            const std::size_t comma = std::min(v.find(',', pos), v.size());
            const std::string_view token = trim(v.substr(pos, comma - pos));
            pos = comma + 1;
            const auto scheme = parse_scheme(token);
            if (!scheme)
            {
                throw ConfigError("schemes", line, "unknown scheme '" + std::string(token) + "'");
            }
            if (std::find(out.begin(), out.end(), *scheme) == out.end())
            {
                out.push_back(*scheme);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const Setting* get(const std::string& key) const
    {
        const auto it = m_values.find(key);
        return it == m_values.end() ? nullptr : &it->second;
    }

    double real_or(const std::string& key, double fallback) const
    {
        const Setting* s = get(key);
        return s ? parse_real(key, s->value, s->line) : fallback;
    }

    std::uint64_t unsigned_or(const std::string& key, std::uint64_t fallback) const
    {
        const Setting* s = get(key);
        return s ? parse_unsigned(key, s->value, s->line) : fallback;
    }

    void require(bool ok, const std::string& key, const std::string& what) const
    {
        if (!ok)
        {
            const Setting* s = get(key);
            throw ConfigError(key, s ? s->line : 0, what);
        }
    }

    std::map<std::string, Setting> m_values;
};

inline SweepConfig parse_config(std::string_view text)
{
    ConfigBuilder builder;
    builder.parse_document(text);
    return builder.build();
}

/// One CSV line: a scheme's estimate at one sweep point.
struct ResultRow
{
    SweepKind sweep_kind{SweepKind::rho_db};
    double sweep_value{0.0};
    SchemeId scheme{SchemeId::comp_vpnoma};
    double esc_mc{0.0};
    double esc_ci95{0.0};
    std::optional<double> esc_analytic;
    std::uint64_t trials{0};
    std::uint64_t seed{0};
};

/**
 * @brief Run every point of a sweep.
 *
 * The near-radius sweep moves all three near users together along their rays;
 * far users stay put. Rows come out ordered by sweep value, then scheme.
 */
inline std::vector<ResultRow> run_sweep(const SweepConfig& cfg, unsigned workers = 0)
{
    std::vector<SchemeId> schemes = cfg.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

    std::vector<ResultRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.steps) * schemes.size());
    for (int i = 0; i < cfg.steps; ++i)
    {
        const double x = cfg.point(i);
        double alpha = cfg.alpha;
        double rho_db = cfg.rho_db;
        double near_radius = cfg.near_radius;
        switch (cfg.sweep_kind)
        {
        case SweepKind::rho_db:
            rho_db = x;
            break;
        case SweepKind::near_radius:
            near_radius = x;
            break;
        case SweepKind::alpha:
            alpha = x;
            break;
        }

        LinkStatistics stats;
        try
        {
            const NetworkLayout layout =
                build_symmetric_layout(cfg.cell_radius, near_radius, cfg.far_radius);
            stats = derive_link_statistics(layout, cfg.pathloss_exponent, cfg.sigma_eps);
        }
        catch (const InfeasibleCsiError& e)
        {
            throw InfeasibleCsiError(std::string(sweep_token(cfg.sweep_kind)) + " = " +
                                     std::to_string(x) + ": " + e.what());
        }
        const SystemParams params(alpha, db_to_linear(rho_db), cfg.upsilon);

        for (const EscEstimate& est :
             estimate_schemes(stats, params, schemes, cfg.trials, cfg.seed, workers))
        {
            rows.push_back(ResultRow{cfg.sweep_kind, x, est.scheme, est.mean_total,
                                     est.ci95_halfwidth, est.analytic_total, est.trials, est.seed});
        }
    }
    return rows;
}

inline constexpr std::string_view kCsvHeader =
    "sweep_kind,sweep_value,scheme,esc_mc,esc_ci95,esc_analytic,trials,seed";

/// Real number with 12 significant digits, locale independent.
inline std::string format_real(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 12);
    return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

inline std::string results_csv(const std::vector<ResultRow>& rows)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const ResultRow& r : rows)
    {
        out += sweep_token(r.sweep_kind);
        out += ',' + format_real(r.sweep_value);
        out += ',';
        out += scheme_token(r.scheme);
        out += ',' + format_real(r.esc_mc);
        out += ',' + format_real(r.esc_ci95);
        out += ',';
        if (r.esc_analytic)
        {
            out += format_real(*r.esc_analytic);
        }
        out += ',' + std::to_string(r.trials);
        out += ',' + std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
    {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    f << content;
    f.close();
    if (!f)
    {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true)
    {
        const std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos)
        {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

} // namespace detail

inline void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path)
{
    detail::write_file(path, results_csv(rows));
}

/// Parse a file produced by write_results.
inline std::vector<ResultRow> read_results(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
    {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    std::string line;
    if (!std::getline(f, line) || line != kCsvHeader)
    {
        throw std::runtime_error("'" + path.string() + "' does not start with the results header");
    }

    const auto real = [&](std::string_view s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
        {
            throw std::runtime_error("bad real '" + std::string(s) + "' in " + path.string());
        }
        return v;
    };
    const auto integer = [&](std::string_view s) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
        {
            throw std::runtime_error("bad integer '" + std::string(s) + "' in " + path.string());
        }
        return v;
    };

    std::vector<ResultRow> rows;
    while (std::getline(f, line))
    {
        const auto fields = detail::split(line, ',');
        if (fields.size() != 8)
        {
            throw std::runtime_error("expected 8 fields in " + path.string() + ": " + line);
        }
        const auto kind = parse_sweep_kind(fields[0]);
        const auto scheme = parse_scheme(fields[2]);
        if (!kind || !scheme)
        {
            throw std::runtime_error("bad sweep kind or scheme in " + path.string() + ": " + line);
        }
        ResultRow r;
        r.sweep_kind = *kind;
        r.sweep_value = real(fields[1]);
        r.scheme = *scheme;
        r.esc_mc = real(fields[3]);
        r.esc_ci95 = real(fields[4]);
        if (!fields[5].empty())
        {
            r.esc_analytic = real(fields[5]);
        }
        r.trials = integer(fields[6]);
        r.seed = integer(fields[7]);
        rows.push_back(r);
    }
    return rows;
}

namespace detail {

inline std::string_view scheme_color(SchemeId s)
{
    switch (s)
    {
    case SchemeId::oma:
        return "#1f77b4";
    case SchemeId::noma:
        return "#2ca02c";
    case SchemeId::vpnoma:
        return "#ff7f0e";
    case SchemeId::comp_vpnoma:
        return "#d62728";
    }
    return "#000000";
}

inline std::string_view axis_title(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::rho_db:
        return "Transmit SNR (dB)";
    case SweepKind::near_radius:
        return "Near-user distance from serving BS (R)";
    case SweepKind::alpha:
        return "Near-user power fraction alpha";
    }
    return "";
}

} // namespace detail

/**
 * @brief Standalone SVG line chart: one polyline per scheme.
 *
 * Closed-form values, where present, are drawn as unfilled circles on top of
 * the Monte-Carlo curve.
 */
inline std::string results_svg(const std::vector<ResultRow>& rows)
{
    constexpr double width = 640.0;
    constexpr double height = 440.0;
    constexpr double left = 70.0;
    constexpr double right = 180.0;
    constexpr double top = 20.0;
    constexpr double bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = 0.0;
    double x_max = 1.0;
    double y_max = 1.0;
    if (!rows.empty())
    {
        x_min = x_max = rows.front().sweep_value;
        y_max = 0.0;
        for (const ResultRow& r : rows)
        {
            x_min = std::min(x_min, r.sweep_value);
            x_max = std::max(x_max, r.sweep_value);
            y_max = std::max(y_max, r.esc_mc + r.esc_ci95);
            if (r.esc_analytic)
            {
                y_max = std::max(y_max, *r.esc_analytic);
            }
        }
        if (x_max <= x_min)
        {
            x_max = x_min + 1.0;
        }
        y_max = y_max > 0.0 ? 1.05 * y_max : 1.0;
    }
    const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) { return top + plot_h - y / y_max * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" "
        << "font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\"/>\n"
        << "</g>\n";

    constexpr int ticks = 5;
    svg << "<g class=\"ticks\">\n";
    for (int t = 0; t < ticks; ++t)
    {
        const double fx = x_min + (x_max - x_min) * t / (ticks - 1);
        const double fy = y_max * t / (ticks - 1);
        svg << "<text x=\"" << px(fx) << "\" y=\"" << top + plot_h + 16
            << "\" text-anchor=\"middle\">" << format_real(std::round(fx * 1000.0) / 1000.0)
            << "</text>\n"
            << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">"
            << format_real(std::round(fy * 100.0) / 100.0) << "</text>\n";
    }
    svg << "</g>\n";

    const std::string_view x_title = rows.empty() ? "" : detail::axis_title(rows.front().sweep_kind);
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 20
        << "\" text-anchor=\"middle\">" << x_title << "</text>\n"
        << "<text transform=\"translate(18," << top + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\">Ergodic sum capacity (bits/s/Hz)</text>\n";

    int legend = 0;
    for (SchemeId s : kAllSchemes)
    {
        std::vector<const ResultRow*> series;
        for (const ResultRow& r : rows)
        {
            if (r.scheme == s)
            {
                series.push_back(&r);
            }
        }
        if (series.empty())
        {
            continue;
        }
        std::sort(series.begin(), series.end(), [](const ResultRow* a, const ResultRow* b) {
            return a->sweep_value < b->sweep_value;
        });
        const std::string_view color = detail::scheme_color(s);
        svg << "<polyline class=\"series\" data-scheme=\"" << scheme_token(s) << "\" fill=\"none\" "
            << "stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series.size(); ++i)
        {
            svg << (i ? " " : "") << px(series[i]->sweep_value) << ',' << py(series[i]->esc_mc);
        }
        svg << "\"/>\n";
        for (const ResultRow* r : series)
        {
            if (r->esc_analytic)
            {
                svg << "<circle class=\"analytic\" cx=\"" << px(r->sweep_value) << "\" cy=\""
                    << py(*r->esc_analytic) << "\" r=\"4\" fill=\"none\" stroke=\"" << color
                    << "\"/>\n";
            }
        }
        const double ly = top + 10 + 18 * legend++;
        svg << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\""
            << left + plot_w + 32 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly + 4 << "\">"
            << scheme_label(s) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

inline void emit_plot(const std::vector<ResultRow>& rows, const std::filesystem::path& path)
{
    detail::write_file(path, results_svg(rows));
}

} // namespace jtnoma
