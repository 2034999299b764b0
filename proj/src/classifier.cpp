#include "landmarker/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "landmarker/errors.hpp"
#include "landmarker/rng.hpp"

namespace landmarker {

void validate(const TrainConfig& cfg) {
    if (!(cfg.learning_rate > 0.0)) {
        throw PreconditionError("training: learning_rate must be positive");
    }
    if (cfg.batch_size < 1) throw PreconditionError("training: batch_size must be >= 1");
    if (cfg.epochs < 0) throw PreconditionError("training: epochs must be >= 0");
    if (cfg.adam_beta1 < 0.0 || cfg.adam_beta1 >= 1.0 || cfg.adam_beta2 < 0.0 ||
        cfg.adam_beta2 >= 1.0 || !(cfg.adam_epsilon > 0.0)) {
        throw PreconditionError("training: invalid Adam constants");
    }
}

LogProbVector log_softmax(const LogitVector& logits) {
    for (double v : logits) {
        if (!std::isfinite(v)) throw PreconditionError("log_softmax: non-finite logit");
    }
    const double m = std::max(logits[0], logits[1]);
    const double lse = m + std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
    return {logits[0] - lse, logits[1] - lse};
}

double nll_loss(const std::vector<LogProbVector>& log_probs,
                const std::vector<std::array<double, 2>>& targets) {
    if (log_probs.empty()) throw PreconditionError("nll_loss: empty batch");
    if (log_probs.size() != targets.size()) {
        throw PreconditionError("nll_loss: batch length mismatch");
    }
    double total = 0.0;
    for (std::size_t n = 0; n < log_probs.size(); ++n) {
        total += -(log_probs[n][0] * targets[n][0] + log_probs[n][1] * targets[n][1]);
    }
    return total / static_cast<double>(log_probs.size());
}

FeatureVector extract_features(const GrayImage& gray, const RgbImage& rgb,
                               const EdgeMap& edges) {
    if (gray.width != rgb.width || gray.height != rgb.height ||
        gray.width != edges.width || gray.height != edges.height) {
        throw PreconditionError("extract_features: inconsistent dimensions");
    }
    const std::size_t n = gray.data.size();
    if (n == 0) throw PreconditionError("extract_features: empty image");

    FeatureVector f;
    f.values.assign(kFeatureDim, 0.0);
    f.values[0] = static_cast<double>(edges.edge_count) / static_cast<double>(n);

    double mean = 0.0;
    for (double v : gray.data) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : gray.data) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    f.values[1] = mean / 255.0;
    f.values[2] = std::sqrt(var) / 255.0;

    const std::uint8_t* p = rgb.data.data();
    for (std::size_t i = 0; i < n; ++i, p += 3) {
        const double r = p[0], g = p[1], b = p[2];
        const double mx = std::max({r, g, b});
        const double mn = std::min({r, g, b});
        const double c = mx - mn;
        double hue = 0.0;
        if (c > 0.0) {
            if (mx == r) {
                hue = 60.0 * std::fmod((g - b) / c, 6.0);
            } else if (mx == g) {
                hue = 60.0 * ((b - r) / c + 2.0);
            } else {
                hue = 60.0 * ((r - g) / c + 4.0);
            }
            if (hue < 0.0) hue += 360.0;
        }
        int bin = static_cast<int>(hue / (360.0 / kHueBins));
        bin = std::clamp(bin, 0, kHueBins - 1);
        f.values[3 + bin] += 1.0;
    }
    for (int b = 0; b < kHueBins; ++b) f.values[3 + b] /= static_cast<double>(n);
    return f;
}

namespace {

LogitVector model_logits(const LinearSoftmaxModel& model, const FeatureVector& f) {
    if (static_cast<int>(f.values.size()) != model.feature_dim) {
        throw PreconditionError("predict: feature dimension mismatch");
    }
    LogitVector logits{model.bias[0], model.bias[1]};
    for (int c = 0; c < 2; ++c) {
        const double* w = model.weights.data() + static_cast<std::size_t>(c) * model.feature_dim;
        double acc = 0.0;
        for (int d = 0; d < model.feature_dim; ++d) acc += w[d] * f.values[d];
        logits[c] += acc;
    }
    return logits;
}

}  // namespace

LinearSoftmaxModel train_reference_classifier(const std::vector<TrainingExample>& data,
                                              const TrainConfig& cfg,
                                              std::vector<double>* epoch_losses) {
    validate(cfg);
    if (data.empty()) throw PreconditionError("train: no data");
    const int dim = static_cast<int>(data.front().features.values.size());
    bool has_pos = false;
    bool has_neg = false;
    for (const TrainingExample& ex : data) {
        if (static_cast<int>(ex.features.values.size()) != dim) {
            throw PreconditionError("train: inconsistent feature dimensions");
        }
        if (ex.target[kPositiveClass] > 0.5) has_pos = true;
        if (ex.target[kNegativeClass] > 0.5) has_neg = true;
    }
    if (!has_pos || !has_neg) {
        throw PreconditionError("train: both classes must be present");
    }

    LinearSoftmaxModel model;
    model.feature_dim = dim;
    model.weights.resize(static_cast<std::size_t>(2) * dim);
    Rng rng(derive_seed(cfg.seed, 0x11));
    for (double& w : model.weights) w = rng.next_real(-0.01, 0.01);
    model.bias = {0.0, 0.0};

    const std::size_t n_params = model.weights.size() + 2;
    std::vector<double> m(n_params, 0.0);
    std::vector<double> v(n_params, 0.0);
    std::vector<double> grad(n_params, 0.0);
    std::int64_t step = 0;

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    if (epoch_losses) epoch_losses->clear();
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            const double batch_n = static_cast<double>(stop - start);
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t bi = start; bi < stop; ++bi) {
                const TrainingExample& ex = data[order[bi]];
                const LogitVector logits = model_logits(model, ex.features);
                const LogProbVector lp = log_softmax(logits);
                batch_loss += -(lp[0] * ex.target[0] + lp[1] * ex.target[1]);
                // dL/dlogit = softmax(logit) - target, scaled by 1/M for the mean.
                for (int c = 0; c < 2; ++c) {
                    const double delta = (std::exp(lp[c]) - ex.target[c]) / batch_n;
                    double* gw = grad.data() + static_cast<std::size_t>(c) * dim;
                    for (int d = 0; d < dim; ++d) gw[d] += delta * ex.features.values[d];
                    grad[model.weights.size() + c] += delta;
                }
            }
            ++step;
            const double bc1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
            for (std::size_t i = 0; i < n_params; ++i) {
                m[i] = cfg.adam_beta1 * m[i] + (1.0 - cfg.adam_beta1) * grad[i];
                v[i] = cfg.adam_beta2 * v[i] + (1.0 - cfg.adam_beta2) * grad[i] * grad[i];
                const double update =
                    cfg.learning_rate * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + cfg.adam_epsilon);
                if (i < model.weights.size()) {
                    model.weights[i] -= update;
                } else {
                    model.bias[i - model.weights.size()] -= update;
                }
            }
            epoch_loss += batch_loss / batch_n;
            ++batches;
        }
        if (epoch_losses) epoch_losses->push_back(epoch_loss / static_cast<double>(batches));
    }
    return model;
}

PredictionRecord predict_frame(const LinearSoftmaxModel& model, const FeatureVector& f,
                               std::int64_t frame_index) {
    PredictionRecord rec;
    rec.frame_index = frame_index;
    rec.log_probs = log_softmax(model_logits(model, f));
    rec.positive = rec.log_probs[kPositiveClass] > rec.log_probs[kNegativeClass];
    return rec;
}

std::vector<PredictionRecord> load_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("scores file not found: " + path);

    std::vector<PredictionRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fail = [&](const std::string& what) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": " + what);
        };

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                       : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            fail("expected frame_index,log_p_neg,log_p_pos");
        }

        PredictionRecord rec;
        const char* begin = line.data();
        auto r1 = std::from_chars(begin, begin + c1, rec.frame_index);
        if (r1.ec != std::errc{} || r1.ptr != begin + c1) fail("bad frame_index");
        auto r2 = std::from_chars(begin + c1 + 1, begin + c2, rec.log_probs[0]);
        if (r2.ec != std::errc{} || r2.ptr != begin + c2) fail("bad log_p_neg");
        auto r3 = std::from_chars(begin + c2 + 1, begin + line.size(), rec.log_probs[1]);
        if (r3.ec != std::errc{} || r3.ptr != begin + line.size()) fail("bad log_p_pos");
        if (!std::isfinite(rec.log_probs[0]) || !std::isfinite(rec.log_probs[1])) {
            fail("non-finite log probability");
        }
        if (!records.empty() && rec.frame_index <= records.back().frame_index) {
            fail("frame_index not strictly increasing");
        }

        const LogProbVector normalized = log_softmax(rec.log_probs);
        const double m = std::max(rec.log_probs[0], rec.log_probs[1]);
        const double lse =
            m + std::log(std::exp(rec.log_probs[0] - m) + std::exp(rec.log_probs[1] - m));
        if (std::abs(lse) > 1e-6) rec.log_probs = normalized;
        rec.positive = rec.log_probs[kPositiveClass] > rec.log_probs[kNegativeClass];
        records.push_back(rec);
    }
    return records;
}

}  // namespace landmarker
