// trendkit command-line front end: ingestion -> aggregation -> trend tests
// -> reports. Subcommands: trend, regions, seasonal, normality.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trendkit/trendkit.hpp"

namespace fs = std::filesystem;

namespace {

struct options {
    std::vector<std::string> inputs;
    std::string kind = "station";
    double alpha = 0.05;
    double confidence = 0.95;
    std::string aggregation = "daily-mean";
    int end_year = 0;  // 0: use the latest year in the data
    std::string out_dir = ".";
    std::string format = "json";
    std::string config_path;
    std::string cleaning_report_path;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw trendkit::validation_error("cannot open input file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw trendkit::validation_error("cannot open output file: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void validate_common(const options& opt) {
    if (opt.inputs.empty()) throw trendkit::validation_error("at least one --input is required");
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0))
        throw trendkit::validation_error("--alpha must lie in (0,1)");
    if (!(opt.confidence > 0.0 && opt.confidence < 1.0))
        throw trendkit::validation_error("--confidence must lie in (0,1)");
    if (opt.kind != "station" && opt.kind != "region-wide")
        throw trendkit::validation_error("--kind must be 'station' or 'region-wide'");
    if (opt.aggregation != "daily-mean" && opt.aggregation != "hourly-raw")
        throw trendkit::validation_error("--aggregation must be 'daily-mean' or 'hourly-raw'");
}

void log_config(const options& opt) {
    std::cout << "config: kind=" << opt.kind << " alpha=" << trendkit::detail::fmt6(opt.alpha)
              << " confidence=" << trendkit::detail::fmt6(opt.confidence)
              << " aggregation=" << opt.aggregation << "\n";
}

struct station_input {
    std::vector<trendkit::observation> records;
    std::string dataset;
    std::string input_hash;
    std::string cleaning_json;  // array of per-file reports (+ merge step)
};

station_input load_station(const options& opt) {
    station_input si;
    std::string all_bytes;
    std::string reports = "[";
    bool first = true;
    for (const std::string& input : opt.inputs) {
        const std::string bytes = read_file(input);
        all_bytes += bytes;
        const auto parsed =
            trendkit::parse_station_csv(bytes, {}, fs::path(input).stem().string());
        si.records.insert(si.records.end(), parsed.station.records.begin(),
                          parsed.station.records.end());
        if (!first) reports += ",";
        reports += "{\"file\":\"" + trendkit::detail::json_escape(input) +
                   "\",\"report\":" + parsed.report.to_json() + "}";
        first = false;
        si.dataset += si.dataset.empty() ? input : "," + input;
    }
    if (opt.inputs.size() > 1) {
        trendkit::cleaning_report merge;
        trendkit::normalize_observations(si.records, &merge);
        reports += ",{\"file\":\"<merge>\",\"report\":" + merge.to_json() + "}";
    }
    reports += "]";
    si.cleaning_json = reports;
    si.input_hash = trendkit::detail::fnv1a64_hex(all_bytes);
    return si;
}

// Collapse any exactly-equal timestamps (conflicting readings kept by the
// cleaner) into their mean so the analysis series has strictly increasing
// time coordinates.
std::vector<trendkit::observation> collapse_equal_timestamps(
    const std::vector<trendkit::observation>& obs) {
    std::vector<trendkit::observation> out;
    std::size_t i = 0;
    while (i < obs.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < obs.size() && obs[j].at == obs[i].at) sum += obs[j++].value;
        out.push_back({obs[i].at, sum / static_cast<double>(j - i)});
        i = j;
    }
    return out;
}

std::vector<trendkit::observation> analysis_series(const station_input& si,
                                                   const options& opt) {
    if (si.records.empty())
        throw trendkit::size_error("no observations survived parsing and cleaning");
    if (opt.aggregation == "daily-mean") return trendkit::daily_means(si.records);
    return collapse_equal_timestamps(si.records);
}

trendkit::sample to_sample(const std::vector<trendkit::observation>& series) {
    std::vector<double> times, values;
    times.reserve(series.size());
    values.reserve(series.size());
    const double t0 = trendkit::time_coordinate(series.front().at);
    for (const trendkit::observation& o : series) {
        times.push_back(trendkit::time_coordinate(o.at) - t0);
        values.push_back(o.value);
    }
    return trendkit::sample(std::move(times), std::move(values));
}

// Shapiro-Wilk is defined for n <= 5000; larger series are thinned with a
// deterministic stride for the normality check only.
std::vector<double> normality_values(std::span<const double> values) {
    constexpr std::size_t max_n = 5000;
    if (values.size() <= max_n) return {values.begin(), values.end()};
    std::vector<double> out;
    out.reserve(max_n);
    const double step = static_cast<double>(values.size()) / static_cast<double>(max_n);
    for (std::size_t i = 0; i < max_n; ++i)
        out.push_back(values[static_cast<std::size_t>(static_cast<double>(i) * step)]);
    return out;
}

std::string slugify(std::string_view name) {
    std::string s;
    bool dash = false;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            dash = false;
        } else if (!dash && !s.empty()) {
            s += '-';
            dash = true;
        }
    }
    while (!s.empty() && s.back() == '-') s.pop_back();
    return s.empty() ? "region" : s;
}

trendkit::run_params params_of(const options& opt) {
    trendkit::run_params p;
    p.alpha = opt.alpha;
    p.confidence = opt.confidence;
    p.aggregation = opt.aggregation;
    p.kind = opt.kind;
    return p;
}

// Normality first, then Mann-Kendall and the Sen slope.
trendkit::trend_report analyze(const trendkit::sample& s, const options& opt,
                               std::string dataset, std::string input_hash) {
    if (s.size() < 4)
        throw trendkit::size_error("need at least 4 points for trend analysis, have " +
                                   std::to_string(s.size()));
    trendkit::trend_report rep;
    rep.dataset = std::move(dataset);
    rep.input_hash = std::move(input_hash);
    rep.n = s.size();
    rep.params = params_of(opt);

    const std::vector<double> sw_input = normality_values(s.values());
    if (sw_input.size() < s.size())
        std::cerr << "note: normality check uses a strided subsample of " << sw_input.size()
                  << " of " << s.size() << " values\n";
    rep.sw = trendkit::shapiro_wilk(sw_input);
    if (rep.sw.normal_at(opt.alpha))
        std::cerr << "note: data look normal (Shapiro-Wilk p="
                  << trendkit::detail::fmt6(rep.sw.p_value)
                  << "); parametric tests may also apply\n";

    rep.mk = trendkit::mann_kendall(s, opt.alpha);
    rep.sen = trendkit::theil_sen(s, opt.confidence);
    return rep;
}

void maybe_write_cleaning_report(const options& opt, const station_input& si) {
    if (opt.cleaning_report_path.empty()) return;
    write_file(opt.cleaning_report_path, si.cleaning_json + "\n");
}

int run_trend(const options& opt) {
    const trendkit::report_format format = trendkit::parse_report_format(opt.format);
    const fs::path out_dir(opt.out_dir);
    log_config(opt);

    if (opt.kind == "region-wide") {
        if (opt.inputs.size() != 1)
            throw trendkit::validation_error("region-wide analysis takes exactly one --input");
        const std::string bytes = read_file(opt.inputs[0]);
        const auto parsed = trendkit::parse_region_wide_csv(bytes);
        const std::string hash = trendkit::detail::fnv1a64_hex(bytes);

        std::size_t written = 0;
        bool saw_degenerate = false;
        for (std::size_t r = 0; r < parsed.table.regions.size(); ++r) {
            const auto series = parsed.table.region_series(r);
            if (series.size() < 4) {
                std::cerr << "skipping region '" << parsed.table.regions[r]
                          << "': fewer than 4 yearly values\n";
                continue;
            }
            std::vector<double> times, values;
            for (const trendkit::year_mean& ym : series) {
                times.push_back(static_cast<double>(ym.year));
                values.push_back(ym.mean_c);
            }
            const trendkit::sample s(std::move(times), std::move(values));
            trendkit::trend_report rep;
            try {
                rep = analyze(s, opt, opt.inputs[0] + ":" + parsed.table.regions[r], hash);
            } catch (const trendkit::degenerate_error& e) {
                std::cerr << "skipping region '" << parsed.table.regions[r] << "': " << e.what()
                          << "\n";
                saw_degenerate = true;
                continue;
            }
            const fs::path file =
                out_dir / ("trend_" + slugify(parsed.table.regions[r]) + "." +
                           std::string(trendkit::report_format_extension(format)));
            write_file(file, trendkit::render_trend_report(rep, format));
            std::cout << "trend " << parsed.table.regions[r] << ": n=" << rep.n
                      << " z=" << trendkit::detail::fmt6(rep.mk.z)
                      << " p=" << trendkit::detail::fmt6(rep.mk.p_two_sided)
                      << " h=" << (rep.mk.h ? "true" : "false") << " -> " << file.string()
                      << "\n";
            ++written;
        }
        if (written == 0) {
            if (saw_degenerate)
                throw trendkit::degenerate_error("every region series was degenerate");
            throw trendkit::size_error("no region carried enough yearly values for a trend test");
        }
        return 0;
    }

    const station_input si = load_station(opt);
    const std::vector<trendkit::observation> series = analysis_series(si, opt);
    const trendkit::sample s = to_sample(series);
    const trendkit::trend_report rep = analyze(s, opt, si.dataset, si.input_hash);

    const fs::path file = out_dir / ("trend_report." +
                                     std::string(trendkit::report_format_extension(format)));
    write_file(file, trendkit::render_trend_report(rep, format));
    maybe_write_cleaning_report(opt, si);
    std::cout << "trend: n=" << rep.n << " S=" << rep.mk.s
              << " z=" << trendkit::detail::fmt6(rep.mk.z)
              << " p=" << trendkit::detail::fmt6(rep.mk.p_two_sided)
              << " h=" << (rep.mk.h ? "true" : "false")
              << " slope=" << trendkit::detail::fmt6(rep.sen.slope) << "/day -> "
              << file.string() << "\n";
    return 0;
}

int run_regions(const options& opt) {
    if (opt.inputs.size() != 1)
        throw trendkit::validation_error("regions analysis takes exactly one --input");
    log_config(opt);
    const std::string bytes = read_file(opt.inputs[0]);
    const auto parsed = trendkit::parse_region_wide_csv(bytes);
    if (parsed.table.years.empty() || parsed.table.regions.empty())
        throw trendkit::size_error("region table is empty");
    const int end_year = opt.end_year != 0 ? opt.end_year : parsed.table.years.back();

    std::vector<trendkit::region_change> changes;
    std::vector<std::string> gaps;
    for (std::size_t r = 0; r < parsed.table.regions.size(); ++r) {
        const auto series = parsed.table.region_series(r);
        try {
            changes.push_back(
                {parsed.table.regions[r], trendkit::decadal_change(series, end_year)});
        } catch (const trendkit::coverage_error& e) {
            gaps.push_back(parsed.table.regions[r] + ": " + e.what());
        }
    }
    if (!gaps.empty()) {
        std::cerr << "error: incomplete decade coverage for end year " << end_year << "\n";
        for (const std::string& g : gaps) std::cerr << "  " << g << "\n";
        return 2;
    }

    const auto ranked = trendkit::rank_regions(std::move(changes));
    const fs::path file = fs::path(opt.out_dir) / "region_changes.csv";
    write_file(file, trendkit::emit_region_changes_csv(ranked));
    std::cout << "regions: " << ranked.size() << " ranked, end_year=" << end_year << "; top "
              << ranked.front().region << " ("
              << trendkit::detail::fmt6(ranked.front().change_c) << "), bottom "
              << ranked.back().region << " (" << trendkit::detail::fmt6(ranked.back().change_c)
              << ") -> " << file.string() << "\n";
    return 0;
}

int run_seasonal(const options& opt) {
    log_config(opt);
    const station_input si = load_station(opt);
    const std::vector<trendkit::observation> series = analysis_series(si, opt);
    const auto seasonal = trendkit::aggregate_seasonal(series);

    const fs::path file = fs::path(opt.out_dir) / "seasonal.csv";
    write_file(file, trendkit::emit_plot_data(trendkit::plot_kind::seasonal, seasonal));
    maybe_write_cleaning_report(opt, si);
    std::cout << "seasonal: " << seasonal.size() << " season groups -> " << file.string()
              << "\n";
    return 0;
}

int run_normality(const options& opt) {
    log_config(opt);
    const station_input si = load_station(opt);
    const std::vector<trendkit::observation> series = analysis_series(si, opt);
    std::vector<double> values;
    values.reserve(series.size());
    for (const trendkit::observation& o : series) values.push_back(o.value);

    const std::vector<double> sw_input = normality_values(values);
    if (sw_input.size() < values.size())
        std::cerr << "note: normality check uses a strided subsample of " << sw_input.size()
                  << " of " << values.size() << " values\n";
    const trendkit::normality_result sw = trendkit::shapiro_wilk(sw_input);
    if (sw.normal_at(opt.alpha))
        std::cerr << "note: data look normal (Shapiro-Wilk p="
                  << trendkit::detail::fmt6(sw.p_value)
                  << "); parametric tests may also apply\n";
    const trendkit::qq_data qq = trendkit::qq_points(values);

    const fs::path dir(opt.out_dir);
    std::string json = "{\n";
    json += "  \"dataset\": \"" + trendkit::detail::json_escape(si.dataset) + "\",\n";
    json += "  \"input_hash\": \"" + si.input_hash + "\",\n";
    json += "  \"n\": " + std::to_string(values.size()) + ",\n";
    json += "  \"n_tested\": " + std::to_string(sw_input.size()) + ",\n";
    json += "  \"aggregation\": \"" + opt.aggregation + "\",\n";
    json += "  \"alpha\": " + trendkit::detail::fmt6(opt.alpha) + ",\n";
    json += "  \"sw_w\": " + trendkit::detail::fmt6(sw.w) + ",\n";
    json += "  \"sw_p\": " + trendkit::detail::fmt6(sw.p_value) + ",\n";
    json += std::string("  \"normal_at_alpha\": ") + (sw.normal_at(opt.alpha) ? "true" : "false") +
            "\n";
    json += "}\n";
    write_file(dir / "normality.json", json);
    write_file(dir / "qq.csv", trendkit::emit_plot_data(trendkit::plot_kind::qq, qq));
    maybe_write_cleaning_report(opt, si);
    std::cout << "normality: n=" << values.size() << " W=" << trendkit::detail::fmt6(sw.w)
              << " p=" << trendkit::detail::fmt6(sw.p_value) << " -> "
              << (dir / "normality.json").string() << ", " << (dir / "qq.csv").string() << "\n";
    return 0;
}

// Flat key=value run configuration; command-line flags win over file values.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw trendkit::validation_error("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view trimmed = trendkit::detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string_view::npos)
            throw trendkit::format_error("config line is not key=value", line_no);
        const std::string key{trendkit::detail::trim(trimmed.substr(0, eq))};
        const std::string value{trendkit::detail::trim(trimmed.substr(eq + 1))};
        kv[key] = value;
    }
    return kv;
}

// Rewrites argv so config-file values act as defaults for flags the user did
// not pass explicitly.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;

    static const std::set<std::string> known = {"input",     "kind",   "alpha",
                                                "confidence", "aggregation", "end-year",
                                                "out",       "format", "cleaning-report"};
    std::vector<std::string> out = args;
    for (const auto& [key, value] : load_config_file(config_path)) {
        if (!known.contains(key))
            throw trendkit::validation_error("unknown config key '" + key + "'");
        const std::string flag = "--" + key;
        bool given = false;
        for (const std::string& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        }
        if (given) continue;
        if (key == "input") {
            // comma-separated list
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) out.push_back(flag + "=" + item);
        } else {
            out.push_back(flag + "=" + value);
        }
    }
    return out;
}

void add_common_flags(CLI::App* cmd, options& opt) {
    cmd->add_option("--input", opt.inputs, "Input CSV file(s)");
    cmd->add_option("--kind", opt.kind, "Dataset kind: station | region-wide");
    cmd->add_option("--alpha", opt.alpha, "Significance level for the trend test");
    cmd->add_option("--confidence", opt.confidence, "Confidence level for the slope interval");
    cmd->add_option("--aggregation", opt.aggregation,
                    "Series derivation: daily-mean | hourly-raw");
    cmd->add_option("--end-year", opt.end_year, "Final year of the later decade window");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--format", opt.format, "Trend report format: json | csv | text");
    cmd->add_option("--config", opt.config_path, "key=value config file (flags win)");
    cmd->add_option("--cleaning-report", opt.cleaning_report_path,
                    "Write the cleaning report JSON to this path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonparametric trend analysis for climate-style time series"};
    app.require_subcommand(1);

    options opt;
    CLI::App* trend = app.add_subcommand("trend", "Mann-Kendall test plus Sen slope and report");
    CLI::App* regions =
        app.add_subcommand("regions", "Rank regions by decadal mean-temperature change");
    CLI::App* seasonal = app.add_subcommand("seasonal", "Season-by-season mean series");
    CLI::App* normality = app.add_subcommand("normality", "Shapiro-Wilk check plus Q-Q data");
    for (CLI::App* cmd : {trend, regions, seasonal, normality}) add_common_flags(cmd, opt);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config(args);
        // CLI11 consumes reversed argv
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const trendkit::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        validate_common(opt);
        if (trend->parsed()) return run_trend(opt);
        if (regions->parsed()) return run_regions(opt);
        if (seasonal->parsed()) return run_seasonal(opt);
        if (normality->parsed()) return run_normality(opt);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const trendkit::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const trendkit::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
