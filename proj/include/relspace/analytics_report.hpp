#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relspace/bootstrap_test.hpp"
#include "relspace/indicator.hpp"
#include "relspace/kernel_density.hpp"
#include "relspace/rca_engine.hpp"
#include "relspace/trade_panel.hpp"

namespace relspace {

// RCA counts per year.

struct RcaCountRow {
    int year = 0;
    long long count = 0;
    double fraction = 0.0;  // count / (m n)
};

struct RcaCountTable {
    std::vector<RcaCountRow> rows;
    double average_count = 0.0;
    double average_fraction = 0.0;
};

RcaCountTable rca_count_table(const std::map<int, BinaryRcaMatrix>& rca);

// Descriptive statistics of RCA changes.

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample (n - 1) convention
};

MeanSd mean_sd(std::span<const double> values);

struct ChangeStatsRow {
    YearPair period;
    long long gains = 0;
    long long losses = 0;
    MeanSd gains_per_country;
    MeanSd losses_per_country;
    MeanSd gains_per_product;
    MeanSd losses_per_product;
};

// Rows ordered by period length, then start year.
std::vector<ChangeStatsRow> change_stats_table(const std::map<YearPair, ChangeMatrix>& changes);

// p-value distributions and threshold summaries.

enum class PeriodGrouping { Pooled, ByLength };

struct ResultGroupKey {
    IndicatorId indicator = IndicatorId::D;
    Direction direction = Direction::Gain;
    ScopeKind scope = ScopeKind::Pooled;
    int period_length = 0;  // 0 when pooled over lengths
    int lall_group = 0;     // 0 when not split by Lall group

    auto operator<=>(const ResultGroupKey&) const = default;
};

struct CdfPoint {
    double p = 0.0;
    double plot_p = 0.0;  // p, or 1/(10 reps) when p == 0 (log axis)
    bool zero_substituted = false;
    double fraction_of_units = 0.0;   // denominator: all units incl. skipped
    double fraction_of_tested = 0.0;  // denominator: non-skipped units
};

struct CdfSeries {
    ResultGroupKey key;
    long long units = 0;
    long long skipped = 0;
    std::vector<CdfPoint> points;  // one per distinct p, ascending

    double at(double cutoff, bool of_tested) const;
};

std::vector<CdfSeries> pvalue_cdf(const std::vector<TestResult>& results, PeriodGrouping grouping,
                                  int repetitions);

inline constexpr std::array<double, 3> kDefaultCutoffs = {0.01, 0.05, 0.10};

struct SummaryRow {
    ResultGroupKey key;
    long long units = 0;
    long long skipped = 0;
    std::vector<double> fraction_of_units;
    std::vector<double> fraction_of_tested;
    // Maximum within (direction, scope) across all indicators, and within
    // (direction, scope, space family), judged on fraction_of_tested.
    std::vector<bool> category_max;
    std::vector<bool> subcategory_max;
};

struct SummaryTable {
    std::vector<double> cutoffs;
    std::vector<SummaryRow> rows;
};

SummaryTable threshold_summary(const std::vector<TestResult>& results, PeriodGrouping grouping,
                               std::span<const double> cutoffs = kDefaultCutoffs);

struct LallBreakdown {
    SummaryTable table;  // keys carry lall_group 1..11
    std::vector<std::string> unmapped_products;
};

// Product-scope results grouped by the Lall group of the tested product.
LallBreakdown lall_breakdown(const std::vector<TestResult>& results,
                             const LallConcordance& concordance,
                             std::span<const double> cutoffs = kDefaultCutoffs);

// Decomposition diagnostics.

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares of y on x with intercept.
LinearFit ols(std::span<const double> x, std::span<const double> y);

struct AutonomousScatter {
    std::vector<double> autonomous;  // E1 (product) or E1* (country) value
    std::vector<double> ubiquity;    // s (product) or s* (country)
    LinearFit fit;
};

struct DecompositionDiagnostics {
    AutonomousScatter product;
    AutonomousScatter country;
    KernelDensity e;
    KernelDensity e2;
    KernelDensity e_star;
    KernelDensity e2_star;
};

// E1 has identical columns (one autonomous value per product) and E1* has
// identical rows (one per country).
AutonomousScatter product_autonomous_scatter(const Eigen::MatrixXd& e1, const Eigen::VectorXi& s);
AutonomousScatter country_autonomous_scatter(const Eigen::MatrixXd& e1_star,
                                             const Eigen::VectorXi& s_star);

DecompositionDiagnostics decomposition_diagnostics(const IndicatorMatrix& e,
                                                   const IndicatorMatrix& e1,
                                                   const IndicatorMatrix& e2,
                                                   const IndicatorMatrix& e_star,
                                                   const IndicatorMatrix& e1_star,
                                                   const IndicatorMatrix& e2_star,
                                                   const BinaryRcaMatrix& x);

// RCA change magnitude.

// rho(t1) - rho(t0) over cells that gained (or lost) RCA.
std::vector<double> rho_changes(const ContinuousRcaMatrix& t0, const ContinuousRcaMatrix& t1,
                                const ChangeMatrix& delta, Direction direction);

// Gaussian KDE over [-2, 2], 512 points, Silverman bandwidth, reflected at the
// bounds. Throws EmptySample.
KernelDensity rho_change_density(std::span<const double> changes, std::string label);

// One density per (direction, period length), pooling all periods of a length.
std::vector<KernelDensity> rho_change_densities(
    const std::map<int, ContinuousRcaMatrix>& continuous,
    const std::map<YearPair, ChangeMatrix>& changes);

// Writers for the report stage.
void write_rca_count_table(const std::string& path, const RcaCountTable& table);
void write_change_stats_table(const std::string& path, const std::vector<ChangeStatsRow>& rows);
void write_cdf(const std::string& path, const std::vector<CdfSeries>& series);
void write_summary(const std::string& path, const SummaryTable& table);
void write_kde(const std::string& path, const std::vector<KernelDensity>& densities);
void write_scatter(const std::string& path, const AutonomousScatter& scatter);

// "< 1/reps" for p == 0, otherwise the value with four decimals.
std::string render_p_value(double p, int repetitions);

// Pooled-scope results with rendered p-values: one row per test.
void write_rendered_pvalues(const std::string& path, const std::vector<TestResult>& results,
                            int repetitions);

}  // namespace relspace
