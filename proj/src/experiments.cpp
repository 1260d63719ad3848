#include "tagrec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tagrec/modeling.hpp"
#include "tagrec/ranking.hpp"
#include "tagrec/types.hpp"

namespace tagrec {

namespace {

constexpr std::array<Variant, 8> kAllVariants = {
    Variant::WUPSame,   Variant::UnWUPSame,   Variant::WUPUniq,   Variant::UnWUPUniq,
    Variant::WUPSame01, Variant::UnWUPSame01, Variant::WUPUniq01, Variant::UnWUPUniq01,
};

constexpr std::array<std::string_view, 8> kVariantNames = {
    "WUPSame",   "UnWUPSame",   "WUPUniq",   "UnWUPUniq",
    "WUPSame01", "UnWUPSame01", "WUPUniq01", "UnWUPUniq01",
};

}  // namespace

std::string_view variant_name(Variant variant) {
    return kVariantNames[static_cast<std::size_t>(variant)];
}

Variant variant_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kAllVariants.size(); ++i)
        if (kVariantNames[i] == name) return kAllVariants[i];
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

VariantSpec variant_spec(Variant variant) {
    VariantSpec spec;
    spec.name = variant;
    switch (variant) {
        case Variant::WUPSame:
        case Variant::WUPSame01:
            spec.weighting = Weighting::weighted;
            spec.strategy = Strategy::same_for_all;
            break;
        case Variant::UnWUPSame:
        case Variant::UnWUPSame01:
            spec.weighting = Weighting::unweighted;
            spec.strategy = Strategy::same_for_all;
            break;
        case Variant::WUPUniq:
        case Variant::WUPUniq01:
            spec.weighting = Weighting::weighted;
            spec.strategy = Strategy::per_user;
            break;
        case Variant::UnWUPUniq:
        case Variant::UnWUPUniq01:
            spec.weighting = Weighting::unweighted;
            spec.strategy = Strategy::per_user;
            break;
    }
    const bool one_hot = variant == Variant::WUPSame01 || variant == Variant::UnWUPSame01 ||
                         variant == Variant::WUPUniq01 || variant == Variant::UnWUPUniq01;
    spec.representation = one_hot ? ModelKind::one_hot : ModelKind::dense;
    return spec;
}

std::span<const Variant> all_variants() { return kAllVariants; }

VariantResult run_variant(const VariantSpec& spec, const Dataset& dataset,
                          const TrainConfig& train_config, const OptConfig& opt_config,
                          double train_fraction) {
    if (train_fraction <= 0.0 || train_fraction > 1.0)
        throw std::invalid_argument("run_variant: train_fraction outside (0,1]");
    if (dataset.profiles.empty()) throw std::invalid_argument("run_variant: no profiles");

    VariantResult result;
    result.spec = spec;

    if (spec.representation == ModelKind::dense) {
        std::vector<Poi> training_pois = dataset.pois;
        const auto keep = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::llround(train_fraction * static_cast<double>(training_pois.size()))));
        if (keep < training_pois.size()) training_pois.resize(keep);
        const auto sentences = build_tag_sentences(training_pois, 1, train_config.seed);
        result.model = train_cbow(sentences, train_config);
    } else {
        result.model = encode_one_hot(dataset.pois);
    }

    OptConfig opt = opt_config;
    opt.strategy = spec.strategy;
    const ParamBox box =
        opt.ga_range ? genetic_range_search(result.model, dataset.profiles, spec.weighting, opt)
                     : full_range_box(opt);
    result.search = grid_search(result.model, dataset.profiles, spec.weighting, box, opt);

    const std::vector<Request> requests = resolve_requests(dataset);
    std::vector<RankedList> ranked_lists;
    ranked_lists.reserve(requests.size());
    for (const Request& request : requests) {
        RocchioParams params;
        if (spec.strategy == Strategy::per_user) {
            auto it = result.search.user_params.find(request.profile.user_id);
            if (it == result.search.user_params.end())
                throw std::invalid_argument("run_variant: no tuned parameters for user '" +
                                            request.profile.user_id + "'");
            params = it->second;
        } else {
            params = *result.search.global_params;
        }
        const UserModel user = build_user_model(result.model, request.profile, spec.weighting,
                                                params);
        std::vector<PoiVector> candidates;
        candidates.reserve(request.candidates.size());
        for (const Poi& poi : request.candidates)
            candidates.push_back(poi_vector(result.model, poi));
        ranked_lists.push_back(rank_candidates(user, request.request_id, candidates));
    }
    result.run = emit_run(ranked_lists, std::string(variant_name(spec.name)));

    if (dataset.has_qrels) result.report = evaluate_run(result.run, dataset.qrels);
    return result;
}

std::string_view sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::iterations: return "iterations";
        case SweepAxis::dataset_size: return "dataset_size";
        case SweepAxis::objective_metric: return "objective_metric";
    }
    return "";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
    if (name == "iterations") return SweepAxis::iterations;
    if (name == "dataset_size") return SweepAxis::dataset_size;
    if (name == "objective_metric") return SweepAxis::objective_metric;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

std::vector<SweepCell> sweep(SweepAxis axis, std::span<const std::string> values,
                             std::span<const Variant> variants, const Dataset& dataset,
                             const TrainConfig& train_config, const OptConfig& opt_config,
                             Metric report_metric) {
    if (values.empty()) throw std::invalid_argument("sweep: no axis values");
    if (variants.empty()) throw std::invalid_argument("sweep: no variants");
    if (!dataset.has_qrels) throw std::invalid_argument("sweep: dataset has no qrels");

    std::vector<SweepCell> cells;
    for (const std::string& value : values) {
        TrainConfig train = train_config;
        OptConfig opt = opt_config;
        double fraction = 1.0;
        switch (axis) {
            case SweepAxis::iterations:
                train.iterations = std::stoi(value);
                break;
            case SweepAxis::dataset_size:
                fraction = std::stod(value);
                break;
            case SweepAxis::objective_metric:
                opt.objective = metric_from_string(value);
                break;
        }
        for (Variant variant : variants) {
            const VariantResult result =
                run_variant(variant_spec(variant), dataset, train, opt, fraction);

            SweepCell cell;
            cell.axis = axis;
            cell.value = value;
            cell.variant = variant;
            cell.metric = report_metric;
            cell.requests = static_cast<int>(result.report->per_request.size());

            double sum = 0.0, best = 0.0;
            for (const auto& [request_id, metrics] : result.report->per_request) {
                const double v = metric_value(metrics, report_metric);
                sum += v;
                best = std::max(best, v);
            }
            if (cell.requests > 0) {
                cell.mean = sum / cell.requests;
                cell.max = best;
                if (cell.requests > 1) {
                    double ss = 0.0;
                    for (const auto& [request_id, metrics] : result.report->per_request) {
                        const double dev = metric_value(metrics, report_metric) - cell.mean;
                        ss += dev * dev;
                    }
                    cell.stddev = std::sqrt(ss / (cell.requests - 1));
                }
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

std::string sweep_csv(std::span<const SweepCell> cells) {
    std::string out = "axis,value,variant,metric,requests,mean,max,stddev\n";
    for (const SweepCell& cell : cells) {
        out += sweep_axis_name(cell.axis);
        out += ',';
        out += cell.value;
        out += ',';
        out += variant_name(cell.variant);
        out += ',';
        out += metric_name(cell.metric);
        out += ',';
        out += std::to_string(cell.requests);
        out += ',';
        out += format_score(cell.mean);
        out += ',';
        out += format_score(cell.max);
        out += ',';
        out += format_score(cell.stddev);
        out += '\n';
    }
    return out;
}

std::string export_vectors(const EmbeddingModel& model, std::span<const Poi> pois) {
    std::string out = "kind,id";
    for (int i = 1; i <= model.dim; ++i) out += ",v" + std::to_string(i);
    out += '\n';
    auto emit = [&](const char* kind, const std::string& id, const Vec& vector) {
        out += kind;
        out += ',';
        out += id;
        for (double x : vector) {
            out += ',';
            out += format_full(x);
        }
        out += '\n';
    };
    for (const auto& [tag, vector] : model.vocab) emit("tag", tag, vector);
    for (const Poi& poi : pois) emit("poi", poi.id, poi_vector(model, poi).vector);
    return out;
}

std::string export_user_models(const EmbeddingModel& model,
                               std::span<const UserProfile> profiles, Weighting weighting,
                               const RocchioParams& params) {
    std::string out = "user,vector";
    for (int i = 1; i <= model.dim; ++i) out += ",v" + std::to_string(i);
    out += '\n';
    auto emit = [&](const std::string& user_id, const char* which, const Vec& vector) {
        out += user_id;
        out += ',';
        out += which;
        for (double x : vector) {
            out += ',';
            out += format_full(x);
        }
        out += '\n';
    };
    for (const UserProfile& profile : profiles) {
        const UserModel user = build_user_model(model, profile, weighting, params);
        emit(user.user_id, "positive", user.positive);
        emit(user.user_id, "neutral", user.neutral);
        emit(user.user_id, "negative", user.negative);
        emit(user.user_id, "combined", user.combined);
    }
    return out;
}

}  // namespace tagrec
