#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tagrec/types.hpp"
#include "tagrec/vec.hpp"

namespace tagrec {

struct TrainConfig {
    int dim = 9;
    int window = 5;
    int min_count = 3;
    int iterations = 1000;
    int negative_samples = 5;
    double learning_rate_start = 0.025;
    std::uint64_t seed = 1;
};

enum class ModelKind { dense, one_hot };

std::string_view model_kind_name(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// No tag survives the frequency cutoff.
class EmptyVocabularyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EmbeddingModel {
    ModelKind kind = ModelKind::dense;
    int dim = 0;
    std::map<std::string, Vec> vocab;  // normalized tag -> vector

    /// nullptr for out-of-vocabulary tags.
    const Vec* vector(const std::string& tag) const {
        auto it = vocab.find(tag);
        return it == vocab.end() ? nullptr : &it->second;
    }
};

/// CBOW with negative sampling, single-threaded and deterministic for a
/// fixed seed and sentence order. Tags below min_count are excluded from the
/// vocabulary and skipped during training. Throws EmptyVocabularyError when
/// nothing survives the cutoff.
EmbeddingModel train_cbow(const std::vector<Sentence>& sentences, const TrainConfig& config);

/// Orthonormal vectors over every distinct normalized tag in the collection
/// (no frequency cutoff); dimensions assigned in lexicographic tag order.
EmbeddingModel encode_one_hot(const std::vector<Poi>& pois);

/// Text format: header `kind dim vocab_size`, then one `tag v1 .. v_dim`
/// line per tag. Values round-trip bit-for-bit.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel load_model(const std::filesystem::path& path);

}  // namespace tagrec
