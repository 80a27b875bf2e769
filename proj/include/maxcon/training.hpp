#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "maxcon/network.hpp"

namespace maxcon {

/// One experience tuple. The per-point feature matrix H is identical for
/// every transition of an episode, so it is shared.
struct Transition {
    std::shared_ptr<const Eigen::MatrixXd> h;
    Eigen::VectorXd b_vec, v_vec;
    std::vector<int> basis;
    int action = -1;  // global point index
    double reward = 0.0;
    bool terminal = false;
    // next state (unset when terminal)
    Eigen::VectorXd next_b_vec, next_v_vec;
    std::vector<int> next_basis;

    StateEncoding state() const { return {*h, b_vec, v_vec, basis}; }
    StateEncoding next_state() const { return {*h, next_b_vec, next_v_vec, next_basis}; }
};

/// FIFO ring buffer with uniform sampling.
class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {}

    void push(Transition t);
    std::size_t size() const { return buffer_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& at(std::size_t i) const { return buffer_[i]; }

    std::vector<const Transition*> sample(std::size_t batch, Rng& rng) const;

private:
    std::size_t capacity_;
    std::deque<Transition> buffer_;
};

struct TrainConfig {
    int episodes = 2000;
    int n_points = 30;
    double outlier_rate_lo = 0.01;
    double outlier_rate_hi = 0.40;
    double beta = 0.99;         // discount
    double learning_rate = 1e-3;
    int batch_size = 64;
    double eps_start = 0.9;
    double eps_end = 0.05;
    double eps_decay = 2000.0;  // time constant in environment steps
    std::size_t replay_capacity = 10000;
    int target_sync_period = 500;
    int warmup_transitions = 500;
    std::uint64_t seed = 0;
    ModelKind model_kind = ModelKind::Line2d;
    double epsilon = 0.1;       // inlier threshold

    void validate() const;
};

struct TrainStats {
    long env_steps = 0;
    long updates = 0;
    double mean_episode_length = 0.0;
    double last_loss = 0.0;
    int discarded_episodes = 0;
};

/// Adam state, carried in checkpoints so resumed runs are deterministic.
struct AdamState {
    NetworkParams m, v;
    long t = 0;
};

struct Checkpoint {
    int format_version = 1;
    NetworkParams params;
    NetworkParams target_params;
    TrainConfig config;
    int episode = 0;
    TrainStats stats;
    AdamState adam;
    std::uint64_t rng_state = 0;
};

/// Step reward: 0 exactly at goal states, -1 otherwise.
inline double reward(const SearchState& next_state, double epsilon) {
    return is_goal(next_state, epsilon) ? 0.0 : -1.0;
}

/// Huber with transition at 1.
double huber(double x);

struct TdLossResult {
    double loss = 0.0;
    NetworkParams gradients;
};

/// Bellman target y = r (terminal) or r + beta * max_{a in next basis}
/// Q(s', a | target). Gradients flow only through Q(s, a | params).
TdLossResult td_loss(const std::vector<const Transition*>& batch,
                     const NetworkParams& params, const NetworkParams& target_params,
                     double beta);

/// Progress callback: (episode, steps_in_episode, loss, eps).
using TrainLogger = std::function<void(int, int, double, double)>;

/// Q-learning loop over freshly sampled synthetic
/// instances. Deterministic in config.seed. Pass a checkpoint to resume.
Checkpoint train(const TrainConfig& config, const Checkpoint* resume_from = nullptr,
                 const TrainLogger& logger = nullptr);

struct PolicyRollout {
    SearchResult result;
    double discounted_return = 0.0;
};

/// Greedy (eps = 0) rollout to the goal state; the realized return is
/// sum_t beta^t r_t along the trajectory.
PolicyRollout evaluate_policy(const Dataset& dataset, const NetworkParams& params,
                              double beta = 0.99);

}  // namespace maxcon
