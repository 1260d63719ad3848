#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tagrec/embedding.hpp"
#include "tagrec/evaluation.hpp"
#include "tagrec/io.hpp"
#include "tagrec/optimizer.hpp"

namespace tagrec {

/// The eight method variants: {weighted, unweighted} profiles x {same
/// parameters for all users, unique parameters per user} x {dense, one-hot}
/// tag representation. The "01" suffix marks the one-hot twins.
enum class Variant {
    WUPSame,
    UnWUPSame,
    WUPUniq,
    UnWUPUniq,
    WUPSame01,
    UnWUPSame01,
    WUPUniq01,
    UnWUPUniq01,
};

struct VariantSpec {
    Variant name = Variant::WUPSame;
    Weighting weighting = Weighting::weighted;
    Strategy strategy = Strategy::same_for_all;
    ModelKind representation = ModelKind::dense;
};

std::string_view variant_name(Variant variant);
Variant variant_from_string(std::string_view name);
VariantSpec variant_spec(Variant variant);
std::span<const Variant> all_variants();

struct VariantResult {
    VariantSpec spec;
    EmbeddingModel model;
    SearchResult search;
    RunFile run;
    std::optional<EvalReport> report;  // absent when the dataset has no qrels
};

/// The full pipeline for one variant: build the representation, tune
/// (alpha, gamma) on the profiles, rank every request, and evaluate when
/// qrels are available. The variant's weighting/strategy/representation
/// override the corresponding OptConfig fields. `train_fraction` restricts
/// the dense training corpus to a prefix of the POI collection; the one-hot
/// encoding always covers the whole collection.
VariantResult run_variant(const VariantSpec& spec, const Dataset& dataset,
                          const TrainConfig& train_config, const OptConfig& opt_config,
                          double train_fraction = 1.0);

enum class SweepAxis { iterations, dataset_size, objective_metric };

std::string_view sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view name);

/// One sweep cell: a full run_variant at one axis value, summarized by the
/// mean, max and sample standard deviation of `metric` over requests.
struct SweepCell {
    SweepAxis axis = SweepAxis::iterations;
    std::string value;
    Variant variant = Variant::WUPSame;
    Metric metric = Metric::ndcg_cut_5;
    double mean = 0.0;
    double max = 0.0;
    double stddev = 0.0;
    int requests = 0;
};

/// Axis values: iterations = integer, dataset_size = fraction in (0,1],
/// objective_metric = metric name used to tune the parameters. Requires
/// qrels. Cells are (value, variant) pairs in the given order.
std::vector<SweepCell> sweep(SweepAxis axis, std::span<const std::string> values,
                             std::span<const Variant> variants, const Dataset& dataset,
                             const TrainConfig& train_config, const OptConfig& opt_config,
                             Metric report_metric);

std::string sweep_csv(std::span<const SweepCell> cells);

/// One row per vocabulary tag and one per POI, full-precision components.
std::string export_vectors(const EmbeddingModel& model, std::span<const Poi> pois);

/// Four rows per user (positive, neutral, negative, combined vectors) under
/// the given weighting and parameters, full-precision components.
std::string export_user_models(const EmbeddingModel& model,
                               std::span<const UserProfile> profiles, Weighting weighting,
                               const RocchioParams& params);

}  // namespace tagrec
