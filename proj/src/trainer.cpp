#include "ontosearch/trainer.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "ontosearch/error.hpp"
#include "ontosearch/random.hpp"

namespace ontosearch {

namespace {

// Feature rows per distinct text, computed once per training run.
class FeatureCache {
 public:
  explicit FeatureCache(const SubwordEmbedder& model) : model_(model) {}

  const std::vector<std::size_t>& rows(const std::string& text) {
    auto it = cache_.find(text);
    if (it == cache_.end()) it = cache_.emplace(text, model_.feature_rows(text)).first;
    return it->second;
  }

 private:
  const SubwordEmbedder& model_;
  std::unordered_map<std::string, std::vector<std::size_t>> cache_;
};

class Adam {
 public:
  Adam(std::size_t size, const TrainConfig& cfg)
      : m_(size, 0.0), v_(size, 0.0), b1_(cfg.adam_beta1), b2_(cfg.adam_beta2), eps_(cfg.adam_eps) {}

  void step(std::span<double> params, std::span<const double> grad, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double g = grad[i];
      m_[i] = b1_ * m_[i] + (1.0 - b1_) * g;
      v_[i] = b2_ * v_[i] + (1.0 - b2_) * g * g;
      const double m_hat = m_[i] / c1;
      const double v_hat = v_[i] / c2;
      params[i] -= lr * m_hat / (std::sqrt(v_hat) + eps_);
    }
  }

 private:
  std::vector<double> m_, v_;
  double b1_, b2_, eps_;
  std::uint64_t t_ = 0;
};

// Adds grad / |rows| to every feature row of a text.
void scatter(std::span<double> grad_table, std::size_t dim, const std::vector<std::size_t>& rows,
             std::span<const double> pooled_grad, double scale, std::vector<std::size_t>& touched,
             std::vector<char>& is_touched) {
  if (rows.empty()) return;
  const double w = scale / static_cast<double>(rows.size());
  for (std::size_t r : rows) {
    double* dst = grad_table.data() + r * dim;
    for (std::size_t j = 0; j < dim; ++j) dst[j] += w * pooled_grad[j];
    if (!is_touched[r]) {
      is_touched[r] = 1;
      touched.push_back(r);
    }
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (!(margin > 0.0)) throw Error(ErrorCode::InvalidConfig, "margin must be > 0");
  if (epochs < 0) throw Error(ErrorCode::InvalidConfig, "epochs must be >= 0");
  if (batch_size == 0) throw Error(ErrorCode::InvalidConfig, "batch size must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "learning rate must be > 0");
  if (!(warmup_fraction >= 0.0 && warmup_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "warmup fraction must be in [0, 1]");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0) ||
      !(adam_eps > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "Adam betas must be in [0, 1) and eps > 0");
  }
}

std::optional<double> mean_triplet_loss(const SubwordEmbedder& model,
                                        std::span<const TripletExample> rows, double margin) {
  if (rows.empty()) return std::nullopt;
  FeatureCache cache(model);
  double total = 0.0;
  for (const auto& t : rows) {
    auto a = model.pool(cache.rows(t.anchor));
    auto p = model.pool(cache.rows(t.positive));
    auto n = model.pool(cache.rows(t.negative));
    total += triplet_loss(a, p, n, margin);
  }
  return total / static_cast<double>(rows.size());
}

TrainHistory train(SubwordEmbedder& model, std::span<const TripletExample> train_set,
                   std::span<const TripletExample> dev_set, const TrainConfig& cfg) {
  cfg.validate();
  if (train_set.empty()) throw Error(ErrorCode::EmptyDataset, "training set is empty");

  TrainHistory history;
  if (cfg.epochs == 0) return history;

  const std::size_t dim = model.dimension();
  const std::size_t n = train_set.size();
  const std::size_t batches_per_epoch = (n + cfg.batch_size - 1) / cfg.batch_size;
  const std::size_t total_steps = batches_per_epoch * static_cast<std::size_t>(cfg.epochs);
  const auto warmup_steps =
      static_cast<std::size_t>(std::floor(cfg.warmup_fraction * static_cast<double>(total_steps)));

  auto table = model.table();
  Adam adam(table.size(), cfg);
  std::vector<double> grad(table.size(), 0.0);
  std::vector<char> is_touched(model.params().bucket_count, 0);
  std::vector<std::size_t> touched;
  FeatureCache cache(model);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    double epoch_loss = 0.0;

    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t end = std::min(n, start + cfg.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);

      for (std::size_t i = start; i < end; ++i) {
        const auto& t = train_set[order[i]];
        const auto& ra = cache.rows(t.anchor);
        const auto& rp = cache.rows(t.positive);
        const auto& rn = cache.rows(t.negative);
        auto a = model.pool(ra);
        auto p = model.pool(rp);
        auto ng = model.pool(rn);
        const double loss = triplet_loss(a, p, ng, cfg.margin);
        epoch_loss += loss;
        if (loss <= 0.0) continue;
        auto g = triplet_loss_gradients(a, p, ng, cfg.margin);
        scatter(grad, dim, ra, g.anchor, scale, touched, is_touched);
        scatter(grad, dim, rp, g.positive, scale, touched, is_touched);
        scatter(grad, dim, rn, g.negative, scale, touched, is_touched);
      }

      const std::size_t step = history.steps;
      double lr = cfg.learning_rate;
      if (step < warmup_steps) {
        lr *= static_cast<double>(step) / static_cast<double>(warmup_steps);
      }
      adam.step(table, grad, lr);
      ++history.steps;

      for (std::size_t r : touched) {
        std::fill_n(grad.begin() + static_cast<std::ptrdiff_t>(r * dim), dim, 0.0);
        is_touched[r] = 0;
      }
      touched.clear();
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / static_cast<double>(n);
    stats.dev_loss = mean_triplet_loss(model, dev_set, cfg.margin);
    history.epochs.push_back(stats);
  }
  return history;
}

}  // namespace ontosearch
