#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ares/environment.hpp"
#include "ares/rng.hpp"

namespace ares {

// Dense Q-network: a ReLU trunk over the content features, with the decision
// history concatenated just before the final linear layer so the cheap
// categorical inputs skip the trunk entirely.
struct NetSpec {
    int input_dim = 16;
    std::vector<int> trunk_dims = {64, 32};
    int history_dim = 21;
    int num_actions = 4;

    int trunk_out() const { return trunk_dims.empty() ? input_dim : trunk_dims.back(); }
    int head_in() const { return trunk_out() + history_dim; }
    void validate() const; // throws std::invalid_argument

    bool operator==(const NetSpec&) const = default;
};

// One dense layer, weights row-major (rows x cols), y = W x + b.
struct Layer {
    int rows = 0;
    int cols = 0;
    std::vector<double> w;
    std::vector<double> b;

    void zero();
};

struct NetParams {
    NetSpec spec;
    std::vector<Layer> trunk;
    Layer head;

    std::size_t param_count() const;
};

// Gradient buffer with the same shape as NetParams. backward() accumulates,
// so callers zero it between batches and scale it for batch means.
struct NetGrads {
    std::vector<Layer> trunk;
    Layer head;

    void zero();
    void scale(double s);
};

// Xavier-uniform weights, zero biases, drawn layer by layer from rng.
NetParams init_params(const NetSpec& spec, Rng& rng);
NetGrads make_grads(const NetSpec& spec);

struct ForwardCache {
    std::vector<std::vector<double>> acts; // post-ReLU activation per trunk layer
    std::vector<double> head_in;
    std::vector<double> q;
};

// Q-values for one state; the cache holds everything backward() needs.
void forward(const NetParams& p, std::span<const double> input, std::span<const double> history,
             ForwardCache& cache);
std::vector<double> q_values(const NetParams& p, const FrameState& state);

// Accumulates the gradient of 0.5 * td_error^2 where td_error = q[action] - y,
// treating y as constant. Only the chosen action's head row carries signal.
void backward(const NetParams& p, const ForwardCache& cache, std::span<const double> input,
              std::span<const double> history, int action, double td_error, NetGrads& grads);

struct AdamConfig {
    double lr = 5e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    AdamConfig cfg;
    long long step = 0;
    std::vector<double> m; // first-moment estimate, flat over all parameters
    std::vector<double> v; // second-moment estimate

    static AdamState make(const NetSpec& spec, AdamConfig cfg);
};

void adam_step(NetParams& p, const NetGrads& grads, AdamState& opt);

// Checkpoint format: one JSON header line (shape, version, caller metadata)
// followed by the raw little-endian double blob in parameter order.
void save_params(const NetParams& p, const std::filesystem::path& path,
                 const nlohmann::json& meta = nlohmann::json::object());
NetParams load_params(const std::filesystem::path& path, nlohmann::json* meta_out = nullptr);

} // namespace ares
