#include "tagrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tagrec/io.hpp"

namespace tagrec {

namespace {

constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::P_5,        Metric::P_10,       Metric::P_20,      Metric::map,
    Metric::map_cut_5,  Metric::map_cut_10, Metric::map_cut_20, Metric::ndcg,
    Metric::ndcg_cut_5, Metric::ndcg_cut_10, Metric::ndcg_cut_20, Metric::recall_5,
    Metric::recall_10,  Metric::recall_20,  Metric::recip_rank, Metric::bpref,
    Metric::Rprec,
};

constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "P_5",        "P_10",        "P_20",        "map",      "map_cut_5", "map_cut_10",
    "map_cut_20", "ndcg",        "ndcg_cut_5",  "ndcg_cut_10", "ndcg_cut_20", "recall_5",
    "recall_10",  "recall_20",   "recip_rank",  "bpref",    "Rprec",
};

void set_value(MetricValues& values, Metric metric, double value) {
    values[static_cast<std::size_t>(metric)] = value;
}

double log2_discount(std::size_t rank) { return std::log2(static_cast<double>(rank) + 1.0); }

}  // namespace

std::string_view metric_name(Metric metric) {
    return kMetricNames[static_cast<std::size_t>(metric)];
}

Metric metric_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kMetricCount; ++i)
        if (kMetricNames[i] == name) return kAllMetrics[i];
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::span<const Metric> all_metrics() { return kAllMetrics; }

MetricValues evaluate_ranking(const std::vector<std::string>& ranked_poi_ids,
                              const std::map<std::string, int>& judgments,
                              int binarization_threshold) {
    if (binarization_threshold < 1)
        throw std::invalid_argument("binarization threshold must be >= 1");

    // Collection-level counts come from the judgments, retrieved or not.
    std::size_t num_rel = 0;
    std::size_t num_nonrel = 0;
    for (const auto& [poi, grade] : judgments)
        (grade >= binarization_threshold ? num_rel : num_nonrel) += 1;

    const std::size_t n = ranked_poi_ids.size();
    const double R = static_cast<double>(num_rel);

    // Single pass over the ranking.
    std::size_t rel_so_far = 0;
    std::size_t nonrel_so_far = 0;
    std::size_t first_rel_rank = 0;
    double ap_sum = 0.0, ap_sum_5 = 0.0, ap_sum_10 = 0.0, ap_sum_20 = 0.0;
    double dcg = 0.0, dcg_5 = 0.0, dcg_10 = 0.0, dcg_20 = 0.0;
    double bpref_sum = 0.0;
    std::size_t rel_at_5 = 0, rel_at_10 = 0, rel_at_20 = 0, rel_at_R = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t rank = i + 1;
        auto it = judgments.find(ranked_poi_ids[i]);
        const bool judged = it != judgments.end();
        const int grade = judged ? it->second : 0;
        const bool relevant = judged && grade >= binarization_threshold;

        if (judged && grade > 0) {
            const double gain = static_cast<double>(grade) / log2_discount(rank);
            dcg += gain;
            if (rank <= 5) dcg_5 += gain;
            if (rank <= 10) dcg_10 += gain;
            if (rank <= 20) dcg_20 += gain;
        }

        if (relevant) {
            ++rel_so_far;
            if (first_rel_rank == 0) first_rel_rank = rank;
            const double prec_here = static_cast<double>(rel_so_far) / static_cast<double>(rank);
            ap_sum += prec_here;
            if (rank <= 5) ap_sum_5 += prec_here;
            if (rank <= 10) ap_sum_10 += prec_here;
            if (rank <= 20) ap_sum_20 += prec_here;
            if (rank <= 5) ++rel_at_5;
            if (rank <= 10) ++rel_at_10;
            if (rank <= 20) ++rel_at_20;
            if (rank <= num_rel) ++rel_at_R;
            if (nonrel_so_far == 0)
                bpref_sum += 1.0;
            else
                bpref_sum += 1.0 - static_cast<double>(std::min(nonrel_so_far, num_rel)) /
                                       static_cast<double>(std::min(num_rel, num_nonrel));
        } else if (judged) {
            ++nonrel_so_far;
        }
    }

    // Ideal DCG over all judged documents ordered by decreasing grade.
    std::vector<int> ideal_grades;
    ideal_grades.reserve(judgments.size());
    for (const auto& [poi, grade] : judgments)
        if (grade > 0) ideal_grades.push_back(grade);
    std::sort(ideal_grades.begin(), ideal_grades.end(), std::greater<int>());
    double idcg = 0.0, idcg_5 = 0.0, idcg_10 = 0.0, idcg_20 = 0.0;
    for (std::size_t i = 0; i < ideal_grades.size(); ++i) {
        const std::size_t rank = i + 1;
        const double gain = static_cast<double>(ideal_grades[i]) / log2_discount(rank);
        idcg += gain;
        if (rank <= 5) idcg_5 += gain;
        if (rank <= 10) idcg_10 += gain;
        if (rank <= 20) idcg_20 += gain;
    }

    auto safe_div = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };

    MetricValues values{};
    set_value(values, Metric::P_5, static_cast<double>(rel_at_5) / 5.0);
    set_value(values, Metric::P_10, static_cast<double>(rel_at_10) / 10.0);
    set_value(values, Metric::P_20, static_cast<double>(rel_at_20) / 20.0);
    set_value(values, Metric::map, safe_div(ap_sum, R));
    set_value(values, Metric::map_cut_5, safe_div(ap_sum_5, R));
    set_value(values, Metric::map_cut_10, safe_div(ap_sum_10, R));
    set_value(values, Metric::map_cut_20, safe_div(ap_sum_20, R));
    set_value(values, Metric::ndcg, safe_div(dcg, idcg));
    set_value(values, Metric::ndcg_cut_5, safe_div(dcg_5, idcg_5));
    set_value(values, Metric::ndcg_cut_10, safe_div(dcg_10, idcg_10));
    set_value(values, Metric::ndcg_cut_20, safe_div(dcg_20, idcg_20));
    set_value(values, Metric::recall_5, safe_div(static_cast<double>(rel_at_5), R));
    set_value(values, Metric::recall_10, safe_div(static_cast<double>(rel_at_10), R));
    set_value(values, Metric::recall_20, safe_div(static_cast<double>(rel_at_20), R));
    set_value(values, Metric::recip_rank,
              first_rel_rank == 0 ? 0.0 : 1.0 / static_cast<double>(first_rel_rank));
    set_value(values, Metric::bpref, safe_div(bpref_sum, R));
    set_value(values, Metric::Rprec, safe_div(static_cast<double>(rel_at_R), R));
    return values;
}

EvalReport evaluate_run(const RunFile& run, const Qrels& qrels, int binarization_threshold) {
    if (binarization_threshold < 1)
        throw std::invalid_argument("binarization threshold must be >= 1");

    // Group by request honoring the rank field.
    std::map<std::string, std::vector<std::pair<int, std::string>>> by_request;
    for (const RunEntry& entry : run)
        by_request[entry.request_id].emplace_back(entry.rank, entry.poi_id);

    EvalReport report;
    report.binarization_threshold = binarization_threshold;
    for (auto& [request_id, entries] : by_request) {
        const auto* judgments = qrels.for_request(request_id);
        if (judgments == nullptr) {
            report.skipped.push_back(request_id);
            continue;
        }
        std::sort(entries.begin(), entries.end());
        std::vector<std::string> ranked;
        ranked.reserve(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i > 0 && entries[i].first == entries[i - 1].first)
                throw std::invalid_argument("run request " + request_id + ": duplicate rank " +
                                            std::to_string(entries[i].first));
            ranked.push_back(entries[i].second);
        }
        report.per_request.emplace(request_id,
                                   evaluate_ranking(ranked, *judgments, binarization_threshold));
    }

    if (!report.per_request.empty()) {
        for (const auto& [request_id, values] : report.per_request)
            for (std::size_t i = 0; i < kMetricCount; ++i) report.means[i] += values[i];
        for (std::size_t i = 0; i < kMetricCount; ++i)
            report.means[i] /= static_cast<double>(report.per_request.size());
    }
    return report;
}

double mean_metric(const EvalReport& report, Metric metric) {
    if (report.per_request.empty())
        throw std::invalid_argument("mean_metric: no evaluated requests");
    return metric_value(report.means, metric);
}

std::string report_csv(const EvalReport& report) {
    std::string out = "request";
    for (Metric metric : kAllMetrics) {
        out += ',';
        out += metric_name(metric);
    }
    out += '\n';
    auto emit_row = [&](const std::string& label, const MetricValues& values) {
        out += label;
        for (std::size_t i = 0; i < kMetricCount; ++i) {
            out += ',';
            out += format_score(values[i]);
        }
        out += '\n';
    };
    for (const auto& [request_id, values] : report.per_request) emit_row(request_id, values);
    if (!report.per_request.empty()) emit_row("all", report.means);
    return out;
}

namespace {

// Continued-fraction part of the regularized incomplete beta (Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 3e-14;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("paired_t_test: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = (a[i] - b[i]) - mean;
        ss += dev * dev;
    }
    const double variance = ss / static_cast<double>(n - 1);

    TTestResult result;
    if (variance <= 0.0) return result;  // zero-variance differences: not computable

    result.computable = true;
    result.t = mean / std::sqrt(variance / static_cast<double>(n));
    const double df = static_cast<double>(n - 1);
    const double p_two_sided =
        regularized_incomplete_beta(df / 2.0, 0.5, df / (df + result.t * result.t));
    result.significant_at_95 = p_two_sided < 0.05;
    return result;
}

}  // namespace tagrec
