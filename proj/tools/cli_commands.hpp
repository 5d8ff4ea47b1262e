#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relspace/bootstrap_test.hpp"
#include "relspace/indicator.hpp"

namespace relspace::cli {

inline constexpr const char* kVersion = "0.1.0";

// Workspace layout under --out.
struct Workspace {
    std::string root;

    std::string panel() const { return root + "/panel"; }
    std::string rca() const { return root + "/rca"; }
    std::string indicators() const { return root + "/indicators"; }
    std::string tests() const { return root + "/tests"; }
    std::string report() const { return root + "/report"; }
    std::string results_file() const { return tests() + "/results.csv"; }
};

struct IngestArgs {
    std::string exports;
    std::string lall;
    bool sum_duplicates = false;
    bool exclude_empty = false;
    std::string out;
};

struct RcaArgs {
    double threshold = 1.0;
    std::string out;
};

struct IndicatorsArgs {
    std::string ids = "all";
    std::string years = "baseline";  // "baseline", "all" or a comma list
    std::string out;
};

struct TestArgs {
    std::string indicators = "headline";
    std::string scopes = "pooled";
    std::string directions = "gain,loss";
    std::string periods = "all";
    int repetitions = 5000;
    std::optional<std::uint64_t> seed;
    int min_candidates = 16;
    unsigned threads = 1;
    std::string out;
};

struct ReportArgs {
    std::string lall;
    std::optional<int> repetitions;
    std::string out;
};

void cmd_ingest(const IngestArgs& args, std::ostream& log);
void cmd_rca(const RcaArgs& args, std::ostream& log);
void cmd_indicators(const IndicatorsArgs& args, std::ostream& log);
void cmd_test(const TestArgs& args, std::ostream& log);
void cmd_report(const ReportArgs& args, std::ostream& log);

// "all", "length=k", or comma-separated "from-to" pairs. Throws BadFlag.
std::vector<YearPair> select_periods(const std::string& spec, const std::vector<int>& years);
std::vector<ScopeKind> parse_scopes(const std::string& spec);
std::vector<Direction> parse_directions(const std::string& spec);

// Exit codes: 0 success, 1 validation error, 2 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relspace::cli
