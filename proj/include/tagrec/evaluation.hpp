#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tagrec/types.hpp"

namespace tagrec {

/// The metric set: precision, AP and NDCG (full and cut), recall,
/// reciprocal rank, bpref and R-precision, with cutoffs 5/10/20.
/// Names follow trec_eval conventions.
enum class Metric {
    P_5,
    P_10,
    P_20,
    map,
    map_cut_5,
    map_cut_10,
    map_cut_20,
    ndcg,
    ndcg_cut_5,
    ndcg_cut_10,
    ndcg_cut_20,
    recall_5,
    recall_10,
    recall_20,
    recip_rank,
    bpref,
    Rprec,
};

constexpr std::size_t kMetricCount = 17;

std::string_view metric_name(Metric metric);
Metric metric_from_string(std::string_view name);  // throws std::invalid_argument
std::span<const Metric> all_metrics();

using MetricValues = std::array<double, kMetricCount>;

inline double metric_value(const MetricValues& values, Metric metric) {
    return values[static_cast<std::size_t>(metric)];
}

/// Binary metrics treat grade >= threshold as relevant; NDCG always uses the
/// raw grade as gain with a 1/log2(rank+1) discount. Unjudged documents are
/// non-relevant with gain 0.
struct EvalReport {
    std::map<std::string, MetricValues> per_request;  // requests in both run and qrels
    MetricValues means{};                             // arithmetic mean over per_request
    std::vector<std::string> skipped;                 // run requests absent from qrels
    int binarization_threshold = 1;
};

/// Scores one ranking (poi ids in rank order) against its judgments.
MetricValues evaluate_ranking(const std::vector<std::string>& ranked_poi_ids,
                              const std::map<std::string, int>& judgments,
                              int binarization_threshold);

/// Groups the run by request (honoring rank fields), evaluates every request
/// present in the qrels, and averages. Throws std::invalid_argument when the
/// threshold is < 1 or a request's ranks are malformed.
EvalReport evaluate_run(const RunFile& run, const Qrels& qrels, int binarization_threshold = 1);

/// Mean of one metric over the evaluated requests. Throws on an empty report.
double mean_metric(const EvalReport& report, Metric metric);

/// Rows = requests (sorted), columns = metrics, plus a trailing "all" row.
std::string report_csv(const EvalReport& report);

struct TTestResult {
    double t = 0.0;
    bool significant_at_95 = false;
    bool computable = false;  // false when differences have zero variance
};

/// Two-sided paired t-test at the 95% level. Requires equal lengths >= 2.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace tagrec
