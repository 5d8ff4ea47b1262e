#include "cli_commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "relspace/analytics_report.hpp"
#include "relspace/csv.hpp"
#include "relspace/error.hpp"
#include "relspace/indicator_set.hpp"
#include "relspace/matrix_io.hpp"
#include "relspace/rca_engine.hpp"
#include "relspace/trade_panel.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace relspace::cli {

namespace {

void require_dir(const std::string& dir, const std::string& stage)
{
    if (!fs::is_directory(dir))
        throw Error(ErrorCode::MissingUpstream, dir + " not found; run '" + stage + "' first");
}

void require_file(const std::string& path, const std::string& stage)
{
    if (!fs::is_regular_file(path))
        throw Error(ErrorCode::MissingUpstream, path + " not found; run '" + stage + "' first");
}

void write_manifest(const std::string& dir, const json& manifest)
{
    fs::create_directories(dir);
    std::ofstream out(dir + "/manifest.json", std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + dir + "/manifest.json");
    out << manifest.dump(2) << '\n';
}

json base_manifest(const std::string& stage)
{
    json m;
    m["stage"] = stage;
    m["version"] = kVersion;
    return m;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

int parse_year(const std::string& text, const std::string& context)
{
    auto v = csv::parse_int(text);
    if (!v)
        throw Error(ErrorCode::BadFlag, "bad year '" + text + "' in " + context);
    return static_cast<int>(*v);
}

// Years with a file matching prefix_<year>.csv in dir.
std::vector<int> years_in(const std::string& dir, const std::string& prefix)
{
    const std::regex pattern(prefix + "_([0-9]+)\\.csv");
    std::vector<int> years;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::smatch match;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, match, pattern))
            years.push_back(std::stoi(match[1].str()));
    }
    std::sort(years.begin(), years.end());
    return years;
}

std::vector<int> baseline_years(const std::vector<int>& years)
{
    std::vector<int> out(years.begin(), years.end());
    if (!out.empty())
        out.pop_back();
    return out;
}

void write_lall(const std::string& path, const LallConcordance& lall)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path);
    csv::write_row(out, {"product", "group_id", "group_name"});
    for (const auto& [product, group] : lall.groups())
        csv::write_row(out, {product, std::to_string(group), lall.group_name(group)});
}

}  // namespace

std::vector<YearPair> select_periods(const std::string& spec, const std::vector<int>& years)
{
    const auto all = flatten(enumerate_year_pairs(years));
    if (spec == "all")
        return all;
    if (spec.rfind("length=", 0) == 0) {
        const int length = parse_year(spec.substr(7), "--periods");
        std::vector<YearPair> out;
        for (const auto& p : all)
            if (p.length() == length)
                out.push_back(p);
        if (out.empty())
            throw Error(ErrorCode::BadFlag, "no periods of length " + std::to_string(length));
        return out;
    }
    std::vector<YearPair> out;
    for (const auto& item : split_list(spec)) {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw Error(ErrorCode::BadFlag, "bad period '" + item + "', expected from-to");
        YearPair p{parse_year(item.substr(0, dash), "--periods"),
                   parse_year(item.substr(dash + 1), "--periods")};
        if (std::find(all.begin(), all.end(), p) == all.end())
            throw Error(ErrorCode::BadFlag, "period " + item + " is not available");
        out.push_back(p);
    }
    if (out.empty())
        throw Error(ErrorCode::BadFlag, "empty --periods");
    return out;
}

std::vector<ScopeKind> parse_scopes(const std::string& spec)
{
    std::vector<ScopeKind> out;
    for (const auto& item : split_list(spec)) {
        auto s = parse_scope(item);
        if (!s)
            throw Error(ErrorCode::BadFlag, "unknown scope '" + item + "'");
        out.push_back(*s);
    }
    if (out.empty())
        throw Error(ErrorCode::BadFlag, "empty --scope");
    return out;
}

std::vector<Direction> parse_directions(const std::string& spec)
{
    std::vector<Direction> out;
    for (const auto& item : split_list(spec)) {
        auto d = parse_direction(item);
        if (!d)
            throw Error(ErrorCode::BadFlag, "unknown direction '" + item + "'");
        out.push_back(*d);
    }
    if (out.empty())
        throw Error(ErrorCode::BadFlag, "empty --directions");
    return out;
}

void cmd_ingest(const IngestArgs& args, std::ostream& log)
{
    Workspace ws{args.out};
    IngestOptions options;
    options.sum_duplicates = args.sum_duplicates;
    options.exclude_empty = args.exclude_empty;
    const ExportPanel panel = ingest_exports_file(args.exports, options);
    write_panel(panel, ws.panel());

    json manifest = base_manifest("ingest");
    manifest["config"] = {{"exports", args.exports},
                          {"sum_duplicates", args.sum_duplicates},
                          {"exclude_empty", args.exclude_empty},
                          {"lall", args.lall}};
    manifest["years"] = panel.years();
    manifest["products"] = panel.products()->size();
    manifest["countries"] = panel.countries()->size();
    json exclusions = json::array();
    for (const auto& ex : panel.exclusions())
        exclusions.push_back({{"year", ex.year}, {"products", ex.products}, {"countries", ex.countries}});
    manifest["exclusions"] = exclusions;

    if (!args.lall.empty()) {
        const LallConcordance lall = ingest_lall_file(args.lall);
        write_lall(ws.panel() + "/lall.csv", lall);
        manifest["lall_unmapped_products"] = lall.unmapped(*panel.products());
    }
    write_manifest(ws.panel(), manifest);
    log << "ingest: " << panel.years().size() << " years, " << panel.products()->size()
        << " products, " << panel.countries()->size() << " countries\n";
}

void cmd_rca(const RcaArgs& args, std::ostream& log)
{
    Workspace ws{args.out};
    require_dir(ws.panel(), "ingest");
    const ExportPanel panel = read_panel(ws.panel());
    const std::vector<int> years = panel.years();
    fs::create_directories(ws.rca());

    std::map<int, BinaryRcaMatrix> binary;
    json counts = json::object();
    for (int year : years) {
        RcaYear rca = compute_rca(panel, year, args.threshold);
        write_binary_rca(ws.rca() + "/" + rca_file_name(year), rca.binary);
        write_continuous(ws.rca() + "/" + chi_file_name(year), rca.continuous, false);
        write_continuous(ws.rca() + "/" + rho_file_name(year), rca.continuous, true);
        counts[std::to_string(year)] = rca.binary.r();
        binary.emplace(year, std::move(rca.binary));
    }

    json changes = json::object();
    for (const auto& period : flatten(enumerate_year_pairs(years))) {
        const ChangeMatrix delta = compute_changes(binary.at(period.from), binary.at(period.to));
        write_changes(ws.rca() + "/" + delta_file_name(period.from, period.to), delta);
        changes[std::to_string(period.from) + "-" + std::to_string(period.to)] = {
            {"gains", delta.gains},
            {"losses", delta.losses},
            {"excluded_products", delta.excluded_products},
            {"excluded_countries", delta.excluded_countries}};
    }

    json manifest = base_manifest("rca");
    manifest["config"] = {{"rca_threshold", args.threshold}};
    manifest["rca_counts"] = counts;
    manifest["changes"] = changes;
    write_manifest(ws.rca(), manifest);
    log << "rca: " << years.size() << " years, " << changes.size() << " periods\n";
}

void cmd_indicators(const IndicatorsArgs& args, std::ostream& log)
{
    Workspace ws{args.out};
    require_dir(ws.rca(), "rca");
    const std::vector<IndicatorId> ids = parse_indicator_list(args.ids);
    const std::vector<int> available = years_in(ws.rca(), "rca");
    if (available.empty())
        throw Error(ErrorCode::MissingUpstream, "no RCA matrices in " + ws.rca());

    std::vector<int> years;
    if (args.years == "baseline")
        years = baseline_years(available);
    else if (args.years == "all")
        years = available;
    else
        for (const auto& item : split_list(args.years)) {
            const int y = parse_year(item, "--years");
            if (!std::binary_search(available.begin(), available.end(), y))
                throw Error(ErrorCode::BadFlag, "no RCA matrix for year " + item);
            years.push_back(y);
        }
    if (years.empty())
        throw Error(ErrorCode::BadFlag, "no years selected");

    fs::create_directories(ws.indicators());
    std::size_t written = 0;
    for (int year : years) {
        const BinaryRcaMatrix x = read_binary_rca(ws.rca() + "/" + rca_file_name(year), year);
        for (const auto& [id, matrix] : compute_indicators(x, ids)) {
            write_indicator(ws.indicators() + "/" + indicator_file_name(id, year), matrix);
            ++written;
        }
    }

    json manifest = base_manifest("indicators");
    std::vector<std::string> names;
    for (auto id : ids)
        names.emplace_back(to_string(id));
    manifest["config"] = {{"ids", names}, {"years", years}};
    manifest["matrices"] = written;
    write_manifest(ws.indicators(), manifest);
    log << "indicators: " << written << " matrices\n";
}

void cmd_test(const TestArgs& args, std::ostream& log)
{
    Workspace ws{args.out};
    if (!args.seed)
        throw Error(ErrorCode::BadFlag, "--seed is required");
    if (args.repetitions <= 0)
        throw Error(ErrorCode::BadFlag, "--reps must be positive");
    if (args.min_candidates < 0)
        throw Error(ErrorCode::BadFlag, "--min-candidates must be non-negative");
    const std::vector<IndicatorId> ids = parse_indicator_list(args.indicators);
    const std::vector<ScopeKind> scopes = parse_scopes(args.scopes);
    const std::vector<Direction> directions = parse_directions(args.directions);

    require_dir(ws.rca(), "rca");
    const std::vector<int> years = years_in(ws.rca(), "rca");
    const std::vector<YearPair> periods = select_periods(args.periods, years);

    SuiteInputs inputs;
    std::map<std::pair<IndicatorId, int>, IndicatorMatrix> indicators;
    for (const auto& period : periods) {
        if (!inputs.rca.count(period.from)) {
            const std::string path = ws.rca() + "/" + rca_file_name(period.from);
            require_file(path, "rca");
            inputs.rca.emplace(period.from, read_binary_rca(path, period.from));
            for (auto id : ids) {
                const std::string ipath = ws.indicators() + "/" + indicator_file_name(id, period.from);
                require_file(ipath, "indicators");
                indicators.emplace(std::make_pair(id, period.from), read_indicator(ipath, id, period.from));
            }
        }
        const std::string dpath = ws.rca() + "/" + delta_file_name(period.from, period.to);
        require_file(dpath, "rca");
        inputs.changes.emplace(period, read_changes(dpath, period.from, period.to));
    }
    inputs.indicator = [&indicators](IndicatorId id, int year) -> const IndicatorMatrix& {
        return indicators.at({id, year});
    };

    SuiteDefaults defaults;
    defaults.repetitions = args.repetitions;
    defaults.min_candidates = args.min_candidates;
    defaults.master_seed = *args.seed;
    defaults.threads = std::max(1u, args.threads);
    const auto results = run_suite(inputs, ids, periods, scopes, directions, defaults);
    write_results_file(ws.results_file(), results);

    long long skipped = 0;
    std::map<std::string, long long> reasons;
    for (const auto& r : results)
        if (r.skipped) {
            ++skipped;
            ++reasons[r.reason];
        }

    json manifest = base_manifest("test");
    std::vector<std::string> names, period_names;
    for (auto id : ids)
        names.emplace_back(to_string(id));
    for (const auto& p : periods)
        period_names.push_back(std::to_string(p.from) + "-" + std::to_string(p.to));
    manifest["config"] = {{"indicators", names},
                          {"scope", split_list(args.scopes)},
                          {"directions", split_list(args.directions)},
                          {"periods", period_names},
                          {"repetitions", args.repetitions},
                          {"min_candidates", args.min_candidates}};
    manifest["seed"] = *args.seed;
    manifest["results"] = results.size();
    manifest["skipped"] = skipped;
    manifest["skip_reasons"] = reasons;
    write_manifest(ws.tests(), manifest);
    log << "test: " << results.size() << " results, " << skipped << " skipped\n";
}

void cmd_report(const ReportArgs& args, std::ostream& log)
{
    Workspace ws{args.out};
    require_dir(ws.rca(), "rca");
    require_file(ws.results_file(), "test");
    const std::string dir = ws.report();
    fs::create_directories(dir);
    json manifest = base_manifest("report");

    int repetitions = 5000;
    if (args.repetitions) {
        repetitions = *args.repetitions;
    } else if (fs::is_regular_file(ws.tests() + "/manifest.json")) {
        std::ifstream in(ws.tests() + "/manifest.json");
        const json tm = json::parse(in, nullptr, false);
        if (!tm.is_discarded() && tm.contains("config") && tm["config"].contains("repetitions"))
            repetitions = tm["config"]["repetitions"].get<int>();
    }
    if (repetitions <= 0)
        throw Error(ErrorCode::BadFlag, "--reps must be positive");

    const std::vector<int> years = years_in(ws.rca(), "rca");
    std::map<int, BinaryRcaMatrix> binary;
    std::map<int, ContinuousRcaMatrix> continuous;
    for (int year : years) {
        binary.emplace(year, read_binary_rca(ws.rca() + "/" + rca_file_name(year), year));
        continuous.emplace(year, read_continuous(ws.rca() + "/" + chi_file_name(year),
                                                 ws.rca() + "/" + rho_file_name(year), year));
    }
    std::map<YearPair, ChangeMatrix> changes;
    for (const auto& period : flatten(enumerate_year_pairs(years))) {
        const std::string path = ws.rca() + "/" + delta_file_name(period.from, period.to);
        require_file(path, "rca");
        changes.emplace(period, read_changes(path, period.from, period.to));
    }

    write_rca_count_table(dir + "/rca_counts.csv", rca_count_table(binary));
    write_change_stats_table(dir + "/change_stats.csv", change_stats_table(changes));
    write_kde(dir + "/rho_change_kde.csv", rho_change_densities(continuous, changes));

    const auto results = read_results_file(ws.results_file());
    write_rendered_pvalues(dir + "/pvalues_pooled.csv", results, repetitions);
    write_cdf(dir + "/pvalue_cdf_pooled.csv", pvalue_cdf(results, PeriodGrouping::Pooled, repetitions));
    write_cdf(dir + "/pvalue_cdf_by_length.csv",
              pvalue_cdf(results, PeriodGrouping::ByLength, repetitions));
    write_summary(dir + "/summary_pooled.csv", threshold_summary(results, PeriodGrouping::Pooled));
    write_summary(dir + "/summary_by_length.csv", threshold_summary(results, PeriodGrouping::ByLength));

    std::string lall_path = args.lall;
    if (lall_path.empty() && fs::is_regular_file(ws.panel() + "/lall.csv"))
        lall_path = ws.panel() + "/lall.csv";
    if (!lall_path.empty()) {
        const LallBreakdown breakdown = lall_breakdown(results, ingest_lall_file(lall_path));
        write_summary(dir + "/summary_lall.csv", breakdown.table);
        manifest["lall_unmapped_products"] = breakdown.unmapped_products;
    }

    // Decomposition diagnostics for the first baseline year with all six E matrices.
    const std::vector<IndicatorId> e_family = {IndicatorId::E,     IndicatorId::E1,
                                               IndicatorId::E2,    IndicatorId::Estar,
                                               IndicatorId::E1star, IndicatorId::E2star};
    std::optional<int> diagnostics_year;
    for (int year : years) {
        const bool complete = std::all_of(e_family.begin(), e_family.end(), [&](IndicatorId id) {
            return fs::is_regular_file(ws.indicators() + "/" + indicator_file_name(id, year));
        });
        if (complete) {
            diagnostics_year = year;
            break;
        }
    }
    if (diagnostics_year) {
        std::vector<IndicatorMatrix> m;
        for (auto id : e_family)
            m.push_back(read_indicator(ws.indicators() + "/" + indicator_file_name(id, *diagnostics_year),
                                       id, *diagnostics_year));
        const auto diag = decomposition_diagnostics(m[0], m[1], m[2], m[3], m[4], m[5],
                                                    binary.at(*diagnostics_year));
        write_scatter(dir + "/autonomous_product.csv", diag.product);
        write_scatter(dir + "/autonomous_country.csv", diag.country);
        write_kde(dir + "/decomposition_kde.csv", {diag.e, diag.e2, diag.e_star, diag.e2_star});
        auto fit = [](const LinearFit& f) {
            return json{{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
        };
        manifest["decomposition"] = {{"year", *diagnostics_year},
                                     {"product_fit", fit(diag.product.fit)},
                                     {"country_fit", fit(diag.country.fit)}};
    }

    manifest["config"] = {{"lall", lall_path}, {"repetitions", repetitions}};
    manifest["results"] = results.size();
    write_manifest(dir, manifest);
    log << "report: written to " << dir << "\n";
}

namespace {

bool truthy(const std::string& v)
{
    return v == "1" || v == "true" || v == "yes" || v == "on";
}

// Config entries become flags unless the same flag was given explicitly.
std::vector<std::string> with_config(CLI::App& app, const std::vector<std::string>& args)
{
    if (args.empty())
        return args;
    CLI::App* sub = nullptr;
    for (auto* candidate : app.get_subcommands({}))
        if (candidate->get_name() == args.front())
            sub = candidate;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (!sub || path.empty())
        return args;

    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::MissingUpstream, "config file " + path + " not found");
    std::vector<std::string> out = args;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#' || line[first] == ';')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::BadFlag, path + ":" + std::to_string(line_no) + ": expected key=value");
        std::string key = line.substr(first, eq - first);
        std::string value = line.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        CLI::Option* opt = sub->get_option_no_throw(flag);
        if (!opt || flag == "--config")
            throw Error(ErrorCode::BadFlag, path + ": unknown key '" + key + "' for " + sub->get_name());
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given)
            continue;
        if (opt->get_expected_min() == 0) {
            if (truthy(value))
                out.push_back(flag);
        } else {
            out.push_back(flag);
            out.push_back(value);
        }
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Relatedness indicators and bootstrap tests of RCA gains and losses", "relspace"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::string config;

    IngestArgs ingest;
    auto* s_ingest = app.add_subcommand("ingest", "Validate export data and persist the panel");
    s_ingest->add_option("--exports", ingest.exports, "Long-format CSV: year,country,product,value")->required();
    s_ingest->add_option("--lall", ingest.lall, "Lall concordance CSV: product,group_id[,group_name]");
    s_ingest->add_flag("--sum-duplicates", ingest.sum_duplicates, "Sum duplicate keys instead of failing");
    s_ingest->add_flag("--exclude-empty", ingest.exclude_empty,
                       "Drop all-zero products and countries per year instead of failing");
    s_ingest->add_option("--out", ingest.out, "Workspace directory")->required();

    RcaArgs rca;
    auto* s_rca = app.add_subcommand("rca", "Compute binary and continuous RCA and year-pair changes");
    s_rca->add_option("--rca-threshold", rca.threshold, "RCA threshold on chi")->capture_default_str();
    s_rca->add_option("--out", rca.out, "Workspace directory")->required();

    IndicatorsArgs ind;
    auto* s_ind = app.add_subcommand("indicators", "Compute relatedness indicators per baseline year");
    s_ind->add_option("--ids", ind.ids, "all, headline or a comma list")->capture_default_str();
    s_ind->add_option("--years", ind.years, "baseline, all or a comma list")->capture_default_str();
    s_ind->add_option("--out", ind.out, "Workspace directory")->required();

    TestArgs test;
    std::uint64_t seed = 0;
    auto* s_test = app.add_subcommand("test", "Run bootstrap tests of predictive power");
    s_test->add_option("--indicators", test.indicators, "all, headline or a comma list")->capture_default_str();
    s_test->add_option("--scope", test.scopes, "pooled, product, country (comma list)")->capture_default_str();
    s_test->add_option("--directions", test.directions, "gain, loss (comma list)")->capture_default_str();
    s_test->add_option("--periods", test.periods, "all, length=k or from-to pairs")->capture_default_str();
    s_test->add_option("--reps", test.repetitions, "Resamples per test")->capture_default_str();
    auto* seed_opt = s_test->add_option("--seed", seed, "Master seed")->required();
    s_test->add_option("--min-candidates", test.min_candidates, "Skip tests with fewer candidates")
        ->capture_default_str();
    s_test->add_option("--threads", test.threads, "Worker threads")->capture_default_str();
    s_test->add_option("--out", test.out, "Workspace directory")->required();

    ReportArgs report;
    int report_reps = 0;
    auto* s_report = app.add_subcommand("report", "Tables and plot data from tests and RCA");
    s_report->add_option("--lall", report.lall, "Lall concordance CSV");
    auto* reps_opt = s_report->add_option("--reps", report_reps, "Resamples used by the tests");
    s_report->add_option("--out", report.out, "Workspace directory")->required();

    for (auto* sub : {s_ingest, s_rca, s_ind, s_test, s_report})
        sub->add_option("--config", config, "key=value file; explicit flags win");

    try {
        std::vector<std::string> argv = with_config(app, args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (s_ingest->parsed())
            cmd_ingest(ingest, out);
        else if (s_rca->parsed())
            cmd_rca(rca, out);
        else if (s_ind->parsed())
            cmd_indicators(ind, out);
        else if (s_test->parsed()) {
            if (seed_opt->count())
                test.seed = seed;
            cmd_test(test, out);
        } else if (s_report->parsed()) {
            if (reps_opt->count())
                report.repetitions = report_reps;
            cmd_report(report, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace relspace::cli
