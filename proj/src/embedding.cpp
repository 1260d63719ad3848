#include "tagrec/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tagrec/io.hpp"

namespace tagrec {

std::string_view model_kind_name(ModelKind kind) {
    return kind == ModelKind::dense ? "dense" : "one_hot";
}

ModelKind model_kind_from_string(std::string_view name) {
    if (name == "dense") return ModelKind::dense;
    if (name == "one_hot") return ModelKind::one_hot;
    throw std::invalid_argument("unknown model kind '" + std::string(name) + "'");
}

namespace {

constexpr double kLearningRateFloor = 1e-4;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Vocabulary {
    std::vector<std::string> words;   // index -> tag, ordered by (freq desc, tag asc)
    std::vector<std::int64_t> counts;
    std::unordered_map<std::string, int> index;
};

Vocabulary build_vocabulary(const std::vector<Sentence>& sentences, int min_count) {
    std::map<std::string, std::int64_t> freq;
    for (const Sentence& sentence : sentences)
        for (const std::string& tag : sentence) ++freq[tag];

    std::vector<std::pair<std::string, std::int64_t>> kept;
    for (const auto& [tag, count] : freq)
        if (count >= min_count) kept.emplace_back(tag, count);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    for (const auto& [tag, count] : kept) {
        vocab.index.emplace(tag, static_cast<int>(vocab.words.size()));
        vocab.words.push_back(tag);
        vocab.counts.push_back(count);
    }
    return vocab;
}

// Negative samples follow the unigram^0.75 distribution.
class NegativeSampler {
  public:
    explicit NegativeSampler(const std::vector<std::int64_t>& counts) {
        cumulative_.reserve(counts.size());
        double total = 0.0;
        for (std::int64_t count : counts) {
            total += std::pow(static_cast<double>(count), 0.75);
            cumulative_.push_back(total);
        }
    }

    int draw(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> uniform(0.0, cumulative_.back());
        const double point = uniform(rng);
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), point);
        if (it == cumulative_.end()) --it;
        return static_cast<int>(it - cumulative_.begin());
    }

  private:
    std::vector<double> cumulative_;
};

}  // namespace

EmbeddingModel train_cbow(const std::vector<Sentence>& sentences, const TrainConfig& config) {
    if (config.dim < 1 || config.window < 1 || config.min_count < 1 || config.iterations < 1)
        throw std::invalid_argument("train_cbow: dim, window, min_count, iterations must be >= 1");
    if (config.negative_samples < 1)
        throw std::invalid_argument("train_cbow: negative_samples must be >= 1");

    const Vocabulary vocab = build_vocabulary(sentences, config.min_count);
    if (vocab.words.empty())
        throw EmptyVocabularyError("train_cbow: no tag reaches min_count=" +
                                   std::to_string(config.min_count));

    // Sentences as vocabulary indices, out-of-vocabulary tags dropped.
    std::vector<std::vector<int>> encoded;
    std::int64_t total_positions = 0;
    for (const Sentence& sentence : sentences) {
        std::vector<int> ids;
        ids.reserve(sentence.size());
        for (const std::string& tag : sentence) {
            auto it = vocab.index.find(tag);
            if (it != vocab.index.end()) ids.push_back(it->second);
        }
        if (!ids.empty()) {
            total_positions += static_cast<std::int64_t>(ids.size());
            encoded.push_back(std::move(ids));
        }
    }

    const std::size_t vocab_size = vocab.words.size();
    const std::size_t dim = static_cast<std::size_t>(config.dim);

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init_dist(-0.5 / config.dim, 0.5 / config.dim);
    std::vector<Vec> input(vocab_size, Vec(dim));
    std::vector<Vec> output(vocab_size, Vec(dim, 0.0));
    for (Vec& row : input)
        for (double& x : row) x = init_dist(rng);

    NegativeSampler sampler(vocab.counts);
    std::uniform_int_distribution<int> window_dist(0, config.window - 1);

    const double total_updates =
        static_cast<double>(config.iterations) * static_cast<double>(total_positions);
    std::int64_t processed = 0;
    double lr = config.learning_rate_start;

    Vec hidden(dim), hidden_grad(dim);
    for (int iteration = 0; iteration < config.iterations; ++iteration) {
        for (const std::vector<int>& ids : encoded) {
            const int len = static_cast<int>(ids.size());
            for (int pos = 0; pos < len; ++pos) {
                // Linear decay from the starting rate down to the floor,
                // stepped once per position.
                const double progress = static_cast<double>(processed) / total_updates;
                lr = config.learning_rate_start +
                     (kLearningRateFloor - config.learning_rate_start) * progress;
                ++processed;

                // Symmetric context of dynamically reduced width.
                const int width = config.window - window_dist(rng);
                const int lo = std::max(0, pos - width);
                const int hi = std::min(len - 1, pos + width);
                int cw = 0;
                std::fill(hidden.begin(), hidden.end(), 0.0);
                for (int c = lo; c <= hi; ++c) {
                    if (c == pos) continue;
                    add_inplace(hidden, input[ids[c]]);
                    ++cw;
                }
                if (cw == 0) continue;
                scale_inplace(hidden, 1.0 / cw);

                const int target = ids[pos];
                std::fill(hidden_grad.begin(), hidden_grad.end(), 0.0);
                for (int s = 0; s <= config.negative_samples; ++s) {
                    int word;
                    double label;
                    if (s == 0) {
                        word = target;
                        label = 1.0;
                    } else {
                        word = sampler.draw(rng);
                        if (word == target) continue;
                        label = 0.0;
                    }
                    const double g = (label - sigmoid(dot(hidden, output[word]))) * lr;
                    axpy(hidden_grad, g, output[word]);
                    axpy(output[word], g, hidden);
                }
                for (int c = lo; c <= hi; ++c) {
                    if (c == pos) continue;
                    add_inplace(input[ids[c]], hidden_grad);
                }
            }
        }
    }

    EmbeddingModel model;
    model.kind = ModelKind::dense;
    model.dim = config.dim;
    for (std::size_t i = 0; i < vocab_size; ++i) model.vocab.emplace(vocab.words[i], input[i]);
    return model;
}

EmbeddingModel encode_one_hot(const std::vector<Poi>& pois) {
    std::set<std::string> tags;
    for (const Poi& poi : pois)
        for (const Tag& tag : poi.tags) tags.insert(tag.normalized);
    if (tags.empty()) throw std::invalid_argument("encode_one_hot: no tags in collection");

    EmbeddingModel model;
    model.kind = ModelKind::one_hot;
    model.dim = static_cast<int>(tags.size());
    std::size_t dimension = 0;
    for (const std::string& tag : tags) {
        Vec v(tags.size(), 0.0);
        v[dimension++] = 1.0;
        model.vocab.emplace(tag, std::move(v));
    }
    return model;
}

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << model_kind_name(model.kind) << ' ' << model.dim << ' ' << model.vocab.size() << '\n';
    for (const auto& [tag, vector] : model.vocab) {
        out << tag;
        for (double x : vector) out << ' ' << format_full(x);
        out << '\n';
    }
}

EmbeddingModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw ParseError(path, 1, "missing header");
    std::istringstream header_stream(header);
    std::string kind_str;
    int dim = 0;
    std::size_t vocab_size = 0;
    if (!(header_stream >> kind_str >> dim >> vocab_size))
        throw ParseError(path, 1, "expected header 'kind dim vocab_size'");
    if (dim < 1) throw ParseError(path, 1, "invalid dimension");

    EmbeddingModel model;
    try {
        model.kind = model_kind_from_string(kind_str);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, 1, e.what());
    }
    model.dim = dim;

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tag;
        row >> tag;
        Vec vector(dim);
        for (int i = 0; i < dim; ++i)
            if (!(row >> vector[i]))
                throw ParseError(path, line_no, "expected " + std::to_string(dim) +
                                                    " components for tag '" + tag + "'");
        double extra;
        if (row >> extra) throw ParseError(path, line_no, "too many components");
        if (!model.vocab.emplace(tag, std::move(vector)).second)
            throw ParseError(path, line_no, "duplicate tag '" + tag + "'");
    }
    if (model.vocab.size() != vocab_size)
        throw ParseError(path, line_no,
                         "header promises " + std::to_string(vocab_size) + " tags, found " +
                             std::to_string(model.vocab.size()));
    return model;
}

}  // namespace tagrec
