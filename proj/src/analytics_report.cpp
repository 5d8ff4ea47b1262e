#include "relspace/analytics_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "relspace/csv.hpp"
#include "relspace/error.hpp"

namespace relspace {

RcaCountTable rca_count_table(const std::map<int, BinaryRcaMatrix>& rca)
{
    RcaCountTable table;
    for (const auto& [year, x] : rca) {
        const double cells = static_cast<double>(x.products_count()) *
                             static_cast<double>(x.countries_count());
        table.rows.push_back({year, x.r(), cells > 0.0 ? static_cast<double>(x.r()) / cells : 0.0});
    }
    if (!table.rows.empty()) {
        for (const auto& row : table.rows) {
            table.average_count += static_cast<double>(row.count);
            table.average_fraction += row.fraction;
        }
        table.average_count /= static_cast<double>(table.rows.size());
        table.average_fraction /= static_cast<double>(table.rows.size());
    }
    return table;
}

MeanSd mean_sd(std::span<const double> values)
{
    MeanSd out;
    if (values.empty())
        return out;
    for (double v : values)
        out.mean += v;
    out.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return out;
}

std::vector<ChangeStatsRow> change_stats_table(const std::map<YearPair, ChangeMatrix>& changes)
{
    std::vector<ChangeStatsRow> rows;
    for (const auto& [period, change] : changes) {
        const Eigen::MatrixXd& d = change.delta;
        const Eigen::ArrayXXd gained = (d.array() > 0.5).cast<double>();
        const Eigen::ArrayXXd lost = (d.array() < -0.5).cast<double>();
        const Eigen::VectorXd gains_c = gained.colwise().sum().transpose();
        const Eigen::VectorXd losses_c = lost.colwise().sum().transpose();
        const Eigen::VectorXd gains_p = gained.rowwise().sum();
        const Eigen::VectorXd losses_p = lost.rowwise().sum();

        ChangeStatsRow row;
        row.period = period;
        row.gains = change.gains;
        row.losses = change.losses;
        row.gains_per_country = mean_sd({gains_c.data(), static_cast<std::size_t>(gains_c.size())});
        row.losses_per_country = mean_sd({losses_c.data(), static_cast<std::size_t>(losses_c.size())});
        row.gains_per_product = mean_sd({gains_p.data(), static_cast<std::size_t>(gains_p.size())});
        row.losses_per_product = mean_sd({losses_p.data(), static_cast<std::size_t>(losses_p.size())});
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ChangeStatsRow& a, const ChangeStatsRow& b) {
        if (a.period.length() != b.period.length())
            return a.period.length() < b.period.length();
        return a.period.from < b.period.from;
    });
    return rows;
}

namespace {

ResultGroupKey key_of(const TestResult& r, PeriodGrouping grouping)
{
    ResultGroupKey key;
    key.indicator = r.spec.indicator;
    key.direction = r.spec.direction;
    key.scope = r.spec.scope.kind;
    key.period_length = grouping == PeriodGrouping::ByLength ? r.spec.period.length() : 0;
    return key;
}

using Groups = std::map<ResultGroupKey, std::vector<const TestResult*>>;

Groups group_results(const std::vector<TestResult>& results, PeriodGrouping grouping)
{
    Groups groups;
    for (const auto& r : results)
        groups[key_of(r, grouping)].push_back(&r);
    return groups;
}

// Display order: scope, direction, period length, Lall group, space family, indicator.
auto display_rank(const ResultGroupKey& k)
{
    return std::make_tuple(static_cast<int>(k.scope), static_cast<int>(k.direction), k.period_length,
                           k.lall_group, static_cast<int>(space_family(k.indicator)),
                           static_cast<int>(k.indicator));
}

SummaryTable summarize(const Groups& groups, std::span<const double> cutoffs)
{
    SummaryTable table;
    table.cutoffs.assign(cutoffs.begin(), cutoffs.end());
    for (const auto& [key, members] : groups) {
        SummaryRow row;
        row.key = key;
        row.units = static_cast<long long>(members.size());
        for (const TestResult* r : members)
            row.skipped += r->skipped ? 1 : 0;
        const long long tested = row.units - row.skipped;
        for (double cutoff : cutoffs) {
            long long hits = 0;
            for (const TestResult* r : members)
                if (!r->skipped && r->p_value <= cutoff)
                    ++hits;
            row.fraction_of_units.push_back(row.units ? static_cast<double>(hits) / static_cast<double>(row.units) : 0.0);
            row.fraction_of_tested.push_back(tested ? static_cast<double>(hits) / static_cast<double>(tested) : 0.0);
        }
        row.category_max.assign(cutoffs.size(), false);
        row.subcategory_max.assign(cutoffs.size(), false);
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
        return display_rank(a.key) < display_rank(b.key);
    });

    auto category = [](const ResultGroupKey& k) {
        return std::make_tuple(static_cast<int>(k.scope), static_cast<int>(k.direction),
                               k.period_length, k.lall_group);
    };
    for (std::size_t c = 0; c < cutoffs.size(); ++c) {
        std::map<decltype(category(ResultGroupKey{})), double> best;
        std::map<std::pair<decltype(category(ResultGroupKey{})), int>, double> best_sub;
        for (const auto& row : table.rows) {
            const auto cat = category(row.key);
            const auto sub = std::make_pair(cat, static_cast<int>(space_family(row.key.indicator)));
            const double v = row.fraction_of_tested[c];
            auto [it, fresh] = best.emplace(cat, v);
            if (!fresh)
                it->second = std::max(it->second, v);
            auto [sit, sfresh] = best_sub.emplace(sub, v);
            if (!sfresh)
                sit->second = std::max(sit->second, v);
        }
        for (auto& row : table.rows) {
            const auto cat = category(row.key);
            const auto sub = std::make_pair(cat, static_cast<int>(space_family(row.key.indicator)));
            row.category_max[c] = row.fraction_of_tested[c] == best[cat];
            row.subcategory_max[c] = row.fraction_of_tested[c] == best_sub[sub];
        }
    }
    return table;
}

}  // namespace

double CdfSeries::at(double cutoff, bool of_tested) const
{
    double value = 0.0;
    for (const auto& point : points) {
        if (point.p > cutoff)
            break;
        value = of_tested ? point.fraction_of_tested : point.fraction_of_units;
    }
    return value;
}

std::vector<CdfSeries> pvalue_cdf(const std::vector<TestResult>& results, PeriodGrouping grouping,
                                  int repetitions)
{
    std::vector<CdfSeries> out;
    const double zero_stand_in = 1.0 / (10.0 * std::max(1, repetitions));
    for (const auto& [key, members] : group_results(results, grouping)) {
        CdfSeries series;
        series.key = key;
        series.units = static_cast<long long>(members.size());
        std::vector<double> p;
        for (const TestResult* r : members) {
            if (r->skipped)
                ++series.skipped;
            else
                p.push_back(r->p_value);
        }
        std::sort(p.begin(), p.end());
        const auto tested = static_cast<double>(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i + 1 < p.size() && p[i + 1] == p[i])
                continue;
            CdfPoint point;
            point.p = p[i];
            point.zero_substituted = p[i] == 0.0;
            point.plot_p = point.zero_substituted ? zero_stand_in : p[i];
            point.fraction_of_units = static_cast<double>(i + 1) / static_cast<double>(series.units);
            point.fraction_of_tested = static_cast<double>(i + 1) / tested;
            series.points.push_back(point);
        }
        out.push_back(std::move(series));
    }
    std::sort(out.begin(), out.end(), [](const CdfSeries& a, const CdfSeries& b) {
        return display_rank(a.key) < display_rank(b.key);
    });
    return out;
}

SummaryTable threshold_summary(const std::vector<TestResult>& results, PeriodGrouping grouping,
                               std::span<const double> cutoffs)
{
    return summarize(group_results(results, grouping), cutoffs);
}

LallBreakdown lall_breakdown(const std::vector<TestResult>& results,
                             const LallConcordance& concordance, std::span<const double> cutoffs)
{
    LallBreakdown out;
    std::set<std::string> unmapped;
    Groups groups;
    for (const auto& r : results) {
        if (r.spec.scope.kind != ScopeKind::Product)
            continue;
        auto group = concordance.group(r.unit_code);
        if (!group) {
            unmapped.insert(r.unit_code);
            continue;
        }
        ResultGroupKey key = key_of(r, PeriodGrouping::Pooled);
        key.lall_group = *group;
        groups[key].push_back(&r);
    }
    out.table = summarize(groups, cutoffs);
    out.unmapped_products.assign(unmapped.begin(), unmapped.end());
    return out;
}

LinearFit ols(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorCode::ShapeMismatch, "regression needs two equal-length series of length >= 2");
    const auto count = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit fit;
    if (sxx == 0.0)
        return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

AutonomousScatter product_autonomous_scatter(const Eigen::MatrixXd& e1, const Eigen::VectorXi& s)
{
    if (e1.rows() != s.size() || e1.cols() < 1)
        throw Error(ErrorCode::ShapeMismatch, "E1 does not match the ubiquity vector");
    AutonomousScatter out;
    for (Eigen::Index i = 0; i < e1.rows(); ++i) {
        out.autonomous.push_back(e1(i, 0));
        out.ubiquity.push_back(static_cast<double>(s(i)));
    }
    if (out.autonomous.size() >= 2)
        out.fit = ols(out.autonomous, out.ubiquity);
    return out;
}

AutonomousScatter country_autonomous_scatter(const Eigen::MatrixXd& e1_star,
                                             const Eigen::VectorXi& s_star)
{
    if (e1_star.cols() != s_star.size() || e1_star.rows() < 1)
        throw Error(ErrorCode::ShapeMismatch, "E1* does not match the diversification vector");
    AutonomousScatter out;
    for (Eigen::Index j = 0; j < e1_star.cols(); ++j) {
        out.autonomous.push_back(e1_star(0, j));
        out.ubiquity.push_back(static_cast<double>(s_star(j)));
    }
    if (out.autonomous.size() >= 2)
        out.fit = ols(out.autonomous, out.ubiquity);
    return out;
}

namespace {

KernelDensity element_density(const IndicatorMatrix& m)
{
    return gaussian_kde_auto({m.values.data(), static_cast<std::size_t>(m.values.size())},
                             std::string(to_string(m.id)));
}

}  // namespace

DecompositionDiagnostics decomposition_diagnostics(const IndicatorMatrix& e,
                                                   const IndicatorMatrix& e1,
                                                   const IndicatorMatrix& e2,
                                                   const IndicatorMatrix& e_star,
                                                   const IndicatorMatrix& e1_star,
                                                   const IndicatorMatrix& e2_star,
                                                   const BinaryRcaMatrix& x)
{
    DecompositionDiagnostics out;
    out.product = product_autonomous_scatter(e1.values, x.s());
    out.country = country_autonomous_scatter(e1_star.values, x.s_star());
    out.e = element_density(e);
    out.e2 = element_density(e2);
    out.e_star = element_density(e_star);
    out.e2_star = element_density(e2_star);
    return out;
}

std::vector<double> rho_changes(const ContinuousRcaMatrix& t0, const ContinuousRcaMatrix& t1,
                                const ChangeMatrix& delta, Direction direction)
{
    const double wanted = direction == Direction::Gain ? 1.0 : -1.0;
    auto rows_in = [&](const ProductRegistryPtr& registry) {
        std::vector<Eigen::Index> idx;
        for (const auto& code : delta.products->codes()) {
            auto i = registry->find(code);
            if (!i)
                throw Error(ErrorCode::RegistryMismatch, "product " + code + " missing from rho");
            idx.push_back(static_cast<Eigen::Index>(*i));
        }
        return idx;
    };
    auto cols_in = [&](const CountryRegistryPtr& registry) {
        std::vector<Eigen::Index> idx;
        for (const auto& code : delta.countries->codes()) {
            auto j = registry->find(code);
            if (!j)
                throw Error(ErrorCode::RegistryMismatch, "country " + code + " missing from rho");
            idx.push_back(static_cast<Eigen::Index>(*j));
        }
        return idx;
    };
    const auto r0 = rows_in(t0.products);
    const auto c0 = cols_in(t0.countries);
    const auto r1 = rows_in(t1.products);
    const auto c1 = cols_in(t1.countries);

    std::vector<double> out;
    for (Eigen::Index j = 0; j < delta.delta.cols(); ++j)
        for (Eigen::Index i = 0; i < delta.delta.rows(); ++i)
            if (delta.delta(i, j) == wanted)
                out.push_back(t1.rho(r1[static_cast<std::size_t>(i)], c1[static_cast<std::size_t>(j)]) -
                              t0.rho(r0[static_cast<std::size_t>(i)], c0[static_cast<std::size_t>(j)]));
    return out;
}

KernelDensity rho_change_density(std::span<const double> changes, std::string label)
{
    KdeOptions options;
    options.lower = -2.0;
    options.upper = 2.0;
    options.points = 512;
    options.reflect = true;
    return gaussian_kde(changes, options, std::move(label));
}

std::vector<KernelDensity> rho_change_densities(
    const std::map<int, ContinuousRcaMatrix>& continuous,
    const std::map<YearPair, ChangeMatrix>& changes)
{
    std::map<std::pair<int, int>, std::vector<double>> pooled;
    for (const auto& [period, change] : changes) {
        auto t0 = continuous.find(period.from);
        auto t1 = continuous.find(period.to);
        if (t0 == continuous.end() || t1 == continuous.end())
            throw Error(ErrorCode::MissingUpstream, "continuous RCA missing for period " +
                                                        std::to_string(period.from) + "-" +
                                                        std::to_string(period.to));
        for (Direction direction : {Direction::Gain, Direction::Loss}) {
            auto samples = rho_changes(t0->second, t1->second, change, direction);
            auto& bucket = pooled[{static_cast<int>(direction), period.length()}];
            bucket.insert(bucket.end(), samples.begin(), samples.end());
        }
    }
    std::vector<KernelDensity> out;
    for (const auto& [key, samples] : pooled) {
        if (samples.empty())
            continue;
        const std::string label = std::string(to_string(static_cast<Direction>(key.first))) +
                                  "_length" + std::to_string(key.second);
        out.push_back(rho_change_density(samples, label));
    }
    return out;
}

std::string render_p_value(double p, int repetitions)
{
    if (p == 0.0)
        return "< 1/" + std::to_string(repetitions);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", p);
    return buffer;
}

namespace {

std::ofstream open_output(const std::string& path)
{
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path);
    return out;
}

std::vector<std::string> key_fields(const ResultGroupKey& key)
{
    return {std::string(to_string(key.indicator)), std::string(to_string(space_family(key.indicator))),
            std::string(to_string(key.direction)), std::string(to_string(key.scope)),
            key.period_length ? std::to_string(key.period_length) : "pooled"};
}

std::string cutoff_label(double cutoff)
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", cutoff);
    return buffer;
}

}  // namespace

void write_rca_count_table(const std::string& path, const RcaCountTable& table)
{
    auto out = open_output(path);
    csv::write_row(out, {"year", "count", "fraction"});
    for (const auto& row : table.rows)
        csv::write_row(out, {std::to_string(row.year), std::to_string(row.count),
                             csv::format_double(row.fraction)});
    csv::write_row(out, {"average", csv::format_double(table.average_count),
                         csv::format_double(table.average_fraction)});
}

void write_change_stats_table(const std::string& path, const std::vector<ChangeStatsRow>& rows)
{
    auto out = open_output(path);
    csv::write_row(out, {"from", "to", "length", "gains", "gains_per_country_mean",
                         "gains_per_country_sd", "losses_per_country_mean", "losses_per_country_sd",
                         "losses", "gains_per_product_mean", "gains_per_product_sd",
                         "losses_per_product_mean", "losses_per_product_sd"});
    for (const auto& r : rows)
        csv::write_row(out, {std::to_string(r.period.from), std::to_string(r.period.to),
                             std::to_string(r.period.length()), std::to_string(r.gains),
                             csv::format_double(r.gains_per_country.mean),
                             csv::format_double(r.gains_per_country.sd),
                             csv::format_double(r.losses_per_country.mean),
                             csv::format_double(r.losses_per_country.sd), std::to_string(r.losses),
                             csv::format_double(r.gains_per_product.mean),
                             csv::format_double(r.gains_per_product.sd),
                             csv::format_double(r.losses_per_product.mean),
                             csv::format_double(r.losses_per_product.sd)});
}

void write_cdf(const std::string& path, const std::vector<CdfSeries>& series)
{
    auto out = open_output(path);
    csv::write_row(out, {"indicator", "space", "direction", "scope", "period_length", "units",
                         "skipped", "p", "plot_p", "zero_substituted", "fraction_of_units",
                         "fraction_of_tested"});
    for (const auto& s : series)
        for (const auto& point : s.points) {
            auto fields = key_fields(s.key);
            fields.insert(fields.end(),
                          {std::to_string(s.units), std::to_string(s.skipped),
                           csv::format_double(point.p), csv::format_double(point.plot_p),
                           point.zero_substituted ? "1" : "0",
                           csv::format_double(point.fraction_of_units),
                           csv::format_double(point.fraction_of_tested)});
            csv::write_row(out, fields);
        }
}

void write_summary(const std::string& path, const SummaryTable& table)
{
    auto out = open_output(path);
    std::vector<std::string> header = {"indicator", "space", "direction", "scope", "period_length",
                                       "lall_group", "units", "skipped"};
    for (double c : table.cutoffs) {
        const std::string label = cutoff_label(c);
        header.push_back("units_p_le_" + label);
        header.push_back("tested_p_le_" + label);
        header.push_back("category_max_" + label);
        header.push_back("subcategory_max_" + label);
    }
    csv::write_row(out, header);
    for (const auto& row : table.rows) {
        auto fields = key_fields(row.key);
        fields.push_back(row.key.lall_group ? std::to_string(row.key.lall_group) : "");
        fields.push_back(std::to_string(row.units));
        fields.push_back(std::to_string(row.skipped));
        for (std::size_t c = 0; c < table.cutoffs.size(); ++c) {
            fields.push_back(csv::format_double(row.fraction_of_units[c]));
            fields.push_back(csv::format_double(row.fraction_of_tested[c]));
            fields.push_back(row.category_max[c] ? "1" : "0");
            fields.push_back(row.subcategory_max[c] ? "1" : "0");
        }
        csv::write_row(out, fields);
    }
}

void write_kde(const std::string& path, const std::vector<KernelDensity>& densities)
{
    auto out = open_output(path);
    csv::write_row(out, {"label", "bandwidth", "sample_size", "reflected", "x", "density"});
    for (const auto& kde : densities)
        for (std::size_t g = 0; g < kde.grid.size(); ++g)
            csv::write_row(out, {kde.label, csv::format_double(kde.bandwidth),
                                 std::to_string(kde.sample_size), kde.reflected ? "1" : "0",
                                 csv::format_double(kde.grid[g]), csv::format_double(kde.density[g])});
}

void write_scatter(const std::string& path, const AutonomousScatter& scatter)
{
    auto out = open_output(path);
    csv::write_row(out, {"autonomous", "ubiquity"});
    for (std::size_t i = 0; i < scatter.autonomous.size(); ++i)
        csv::write_row(out, {csv::format_double(scatter.autonomous[i]),
                             csv::format_double(scatter.ubiquity[i])});
}

void write_rendered_pvalues(const std::string& path, const std::vector<TestResult>& results,
                            int repetitions)
{
    auto out = open_output(path);
    csv::write_row(out, {"indicator", "direction", "from", "to", "N", "N1", "p"});
    for (const auto& r : results) {
        if (r.spec.scope.kind != ScopeKind::Pooled)
            continue;
        csv::write_row(out, {std::string(to_string(r.spec.indicator)),
                             std::string(to_string(r.spec.direction)),
                             std::to_string(r.spec.period.from), std::to_string(r.spec.period.to),
                             std::to_string(r.n), std::to_string(r.n1),
                             r.skipped ? "skipped" : render_p_value(r.p_value, repetitions)});
    }
}

}  // namespace relspace
