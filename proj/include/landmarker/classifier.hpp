#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "landmarker/imaging.hpp"

namespace landmarker {

inline constexpr int kNegativeClass = 0;
inline constexpr int kPositiveClass = 1;
inline constexpr int kFeatureDim = 18;
inline constexpr int kHueBins = 15;
inline constexpr const char* kExtractorVersion = "edge-luma-hue/1";

/// Raw two-class scores, index 0 = normal tissue, index 1 = landmark.
using LogitVector = std::array<double, 2>;

/// Log probabilities; logsumexp(values) == 0 within 1e-9, entries <= 0.
using LogProbVector = std::array<double, 2>;

struct FeatureVector {
    std::vector<double> values;  // length kFeatureDim
};

struct LinearSoftmaxModel {
    int feature_dim = kFeatureDim;
    std::vector<double> weights;  // 2 x feature_dim, row-major
    std::array<double, 2> bias{0.0, 0.0};
    std::string extractor_version = kExtractorVersion;
};

struct TrainConfig {
    double learning_rate = 0.001;
    int batch_size = 32;
    int epochs = 200;
    std::uint64_t seed = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
};

void validate(const TrainConfig& cfg);

struct PredictionRecord {
    std::int64_t frame_index = 0;
    LogProbVector log_probs{0.0, 0.0};
    bool positive = false;  // argmax with ties resolving to negative
};

/// One training example: feature vector plus one-hot target.
struct TrainingExample {
    FeatureVector features;
    std::array<double, 2> target{0.0, 0.0};
};

/// value_i = x_i - logsumexp(x), computed with max subtraction so that
/// logits of any magnitude neither overflow nor lose normalization.
LogProbVector log_softmax(const LogitVector& logits);

/// Mean negative log probability of the true class over the batch.
double nll_loss(const std::vector<LogProbVector>& log_probs,
                const std::vector<std::array<double, 2>>& targets);

/// Deterministic 18-dim descriptor: normalized edge count, luminance mean and
/// standard deviation, and a 15-bin hue histogram. All entries are invariant
/// under image rotation.
FeatureVector extract_features(const GrayImage& gray, const RgbImage& rgb,
                               const EdgeMap& edges);

/// Minibatch Adam on mean NLL of log_softmax(W f + b). Deterministic under
/// cfg.seed. epochs == 0 returns the seeded initialization untouched.
/// epoch_losses, when non-null, receives the mean training loss per epoch.
LinearSoftmaxModel train_reference_classifier(const std::vector<TrainingExample>& data,
                                              const TrainConfig& cfg,
                                              std::vector<double>* epoch_losses = nullptr);

/// Log probabilities and label for one feature vector. An exact tie labels
/// the frame negative.
PredictionRecord predict_frame(const LinearSoftmaxModel& model, const FeatureVector& f,
                               std::int64_t frame_index = 0);

/// Reads a score CSV (frame_index,log_p_neg,log_p_pos). Rows whose logsumexp
/// deviates from 0 by more than 1e-6 are renormalized. Malformed rows and
/// non-increasing frame indices are format errors naming the line.
std::vector<PredictionRecord> load_scores(const std::string& path);

}  // namespace landmarker
