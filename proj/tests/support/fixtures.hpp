#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "oracles.hpp"
#include "relspace/combined_space.hpp"
#include "relspace/country_space.hpp"
#include "relspace/product_space.hpp"
#include "relspace/rca_engine.hpp"

namespace fixtures {

inline oracle::Bits random_bits(std::mt19937_64& gen, int m, int n, double density)
{
    std::bernoulli_distribution coin(density);
    oracle::Bits x(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& row : x)
        for (int& v : row)
            v = coin(gen) ? 1 : 0;
    return x;
}

inline Eigen::MatrixXd to_matrix(const oracle::Bits& x)
{
    const auto m = static_cast<Eigen::Index>(x.size());
    const auto n = m ? static_cast<Eigen::Index>(x[0].size()) : 0;
    Eigen::MatrixXd out(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return out;
}

inline double max_diff(const Eigen::MatrixXd& a, const oracle::Grid& b)
{
    double worst = 0.0;
    if (a.rows() != static_cast<Eigen::Index>(b.size()))
        return INFINITY;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a.cols() != static_cast<Eigen::Index>(b[static_cast<std::size_t>(i)].size()))
            return INFINITY;
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
    return worst;
}

// Every object of the three spaces, computed through the library.
struct Pipeline {
    relspace::ConditionalProbMatrix c, b, k, cmin, bmin;
    relspace::ConditionalProbMatrix cs, bs, ks, csmin, bsmin;
    relspace::IndicatorMatrix d, dt;
    relspace::product_space::EIndicators e;
    relspace::country_space::StarIndicators star;
    relspace::IndicatorMatrix dtot, dttot;
    std::optional<relspace::combined_space::TotIndicators> tot;
};

inline Pipeline run_pipeline(const relspace::BinaryRcaMatrix& x)
{
    using namespace relspace;
    const AntiRcaMatrix z = compute_anti_rca(x);
    Pipeline p;
    p.c = product_space::cond_prob_C(x);
    p.b = product_space::cond_prob_B(x, z);
    p.cs = country_space::cond_prob_Cstar(x);
    p.bs = country_space::cond_prob_Bstar(x, z);
    p.k = product_space::marginal_K(p.c, p.b);
    p.cmin = product_space::symmetrized(p.c);
    p.bmin = product_space::symmetrized(p.b);
    p.ks = country_space::marginal_Kstar(p.cs, p.bs);
    p.csmin = product_space::symmetrized(p.cs);
    p.bsmin = product_space::symmetrized(p.bs);
    p.d = product_space::density_D(x, p.cmin);
    p.dt = product_space::density_Dtilde(x, z, p.cmin, p.bmin);
    p.e = product_space::indicator_E(x, z, p.c, p.b);
    p.star = country_space::indicators_star(x, z, p.cs, p.bs);
    p.dtot = combined_space::indicator_Dtot(x, z, p.cmin, p.csmin);
    p.dttot = combined_space::indicator_DtildeTot(x, z, p.cmin, p.bmin, p.csmin, p.bsmin);
    if (x.r() > 0)
        p.tot = combined_space::indicator_Etot(x, z, p.c, p.b, p.k, p.cs, p.bs, p.ks, x.r());
    return p;
}

// Long-format export CSV for a synthetic panel whose values drift by year.
inline std::string synthetic_exports(int products, int countries, int first_year, int years,
                                     std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::lognormal_distribution<double> level(0.0, 2.0);
    std::lognormal_distribution<double> drift(0.0, 0.4);
    std::vector<double> base(static_cast<std::size_t>(products * countries));
    for (double& v : base)
        v = level(gen);
    std::ostringstream out;
    out << "year,country,product,value\n";
    for (int y = 0; y < years; ++y)
        for (int i = 0; i < products; ++i)
            for (int j = 0; j < countries; ++j) {
                double& v = base[static_cast<std::size_t>(i * countries + j)];
                v *= drift(gen);
                char code[32];
                std::snprintf(code, sizeof(code), "%06d", i);
                char country[32];
                std::snprintf(country, sizeof(country), "C%03d", j);
                out << (first_year + y) << ',' << country << ',' << code << ',' << v << '\n';
            }
    return out.str();
}

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("relspace_" + name + "_" +
                                                         std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace fixtures
