#include "relspace/kernel_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relspace/error.hpp"

namespace relspace {

namespace {

// Linear interpolation between order statistics (the usual "type 7").
double quantile(const std::vector<double>& sorted, double q)
{
    const double position = q * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(position));
    const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
    const double weight = position - static_cast<double>(lower);
    return sorted[lower] + weight * (sorted[upper] - sorted[lower]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples)
{
    const std::size_t n = samples.size();
    if (n < 2)
        return 0.0;
    double mean = 0.0;
    for (double v : samples)
        mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples)
        ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

KernelDensity gaussian_kde(std::span<const double> samples, const KdeOptions& options,
                           std::string label)
{
    if (samples.empty())
        throw Error(ErrorCode::EmptySample, label.empty() ? "kernel density of no samples" : label);
    if (options.points < 2 || !(options.upper > options.lower))
        throw Error(ErrorCode::BadFlag, "kernel density grid needs two points and upper > lower");

    KernelDensity kde;
    kde.label = std::move(label);
    kde.sample_size = samples.size();
    kde.reflected = options.reflect;

    const double step =
        (options.upper - options.lower) / static_cast<double>(options.points - 1);
    double h = options.bandwidth > 0.0 ? options.bandwidth : silverman_bandwidth(samples);
    if (!(h > 0.0))
        h = 2.0 * step;
    kde.bandwidth = h;

    std::vector<double> points(samples.begin(), samples.end());
    if (options.reflect) {
        for (double v : samples) {
            points.push_back(2.0 * options.lower - v);
            points.push_back(2.0 * options.upper - v);
        }
    }
    std::sort(points.begin(), points.end());

    const double reach = 8.0 * h;
    const double norm = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    kde.grid.resize(options.points);
    kde.density.resize(options.points);
    for (std::size_t g = 0; g < options.points; ++g) {
        const double at = g + 1 == options.points ? options.upper
                                                  : options.lower + step * static_cast<double>(g);
        auto first = std::lower_bound(points.begin(), points.end(), at - reach);
        auto last = std::upper_bound(first, points.end(), at + reach);
        double sum = 0.0;
        for (auto it = first; it != last; ++it) {
            const double u = (at - *it) / h;
            sum += std::exp(-0.5 * u * u);
        }
        kde.grid[g] = at;
        kde.density[g] = sum * norm;
    }
    return kde;
}

KernelDensity gaussian_kde_auto(std::span<const double> samples, std::string label,
                                std::size_t points)
{
    if (samples.empty())
        throw Error(ErrorCode::EmptySample, label.empty() ? "kernel density of no samples" : label);
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    double h = silverman_bandwidth(samples);
    if (!(h > 0.0))
        h = std::max(1e-3, 1e-3 * std::abs(*lo));
    KdeOptions options;
    options.lower = *lo - 3.0 * h;
    options.upper = *hi + 3.0 * h;
    options.points = points;
    options.bandwidth = h;
    return gaussian_kde(samples, options, std::move(label));
}

double trapezoid_integral(const KernelDensity& kde)
{
    double area = 0.0;
    for (std::size_t g = 1; g < kde.grid.size(); ++g)
        area += 0.5 * (kde.density[g] + kde.density[g - 1]) * (kde.grid[g] - kde.grid[g - 1]);
    return area;
}

double mode(const KernelDensity& kde)
{
    if (kde.grid.empty())
        throw Error(ErrorCode::EmptySample, "mode of an empty density");
    auto peak = std::max_element(kde.density.begin(), kde.density.end());
    return kde.grid[static_cast<std::size_t>(peak - kde.density.begin())];
}

}  // namespace relspace
