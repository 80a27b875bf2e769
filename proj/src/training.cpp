#include "maxcon/training.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "maxcon/datagen.hpp"

namespace maxcon {

void ReplayMemory::push(Transition t) {
    buffer_.push_back(std::move(t));
    if (buffer_.size() > capacity_) buffer_.pop_front();
}

std::vector<const Transition*> ReplayMemory::sample(std::size_t batch, Rng& rng) const {
    if (buffer_.empty()) throw ContractViolation("ReplayMemory::sample: empty memory");
    std::vector<const Transition*> out;
    out.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i)
        out.push_back(&buffer_[rng.uniform_int(static_cast<int>(buffer_.size()))]);
    return out;
}

void TrainConfig::validate() const {
    if (episodes <= 0) throw ContractViolation("TrainConfig: episodes must be positive");
    if (outlier_rate_lo <= 0.0 || outlier_rate_lo > outlier_rate_hi || outlier_rate_hi >= 1.0)
        throw ContractViolation("TrainConfig: need 0 < rate_lo <= rate_hi < 1");
    if (beta <= 0.0 || beta >= 1.0) throw ContractViolation("TrainConfig: beta must be in (0,1)");
    if (n_points <= model_dim(model_kind))
        throw ContractViolation("TrainConfig: n_points too small for model");
    if (epsilon <= 0.0) throw ContractViolation("TrainConfig: epsilon must be positive");
    if (batch_size <= 0 || replay_capacity == 0 || target_sync_period <= 0)
        throw ContractViolation("TrainConfig: invalid optimizer settings");
}

double huber(double x) {
    const double a = std::abs(x);
    return a <= 1.0 ? 0.5 * x * x : a - 0.5;
}

namespace {

double huber_grad(double x) {
    return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x);
}

void axpy(NetworkParams& acc, const NetworkParams& g, double scale) {
    acc.ec1.w += scale * g.ec1.w;     acc.ec1.bias += scale * g.ec1.bias;
    acc.ec2.w += scale * g.ec2.w;     acc.ec2.bias += scale * g.ec2.bias;
    acc.mlp1.w += scale * g.mlp1.w;   acc.mlp1.bias += scale * g.mlp1.bias;
    acc.mlp2.w += scale * g.mlp2.w;   acc.mlp2.bias += scale * g.mlp2.bias;
    acc.mlp3.w += scale * g.mlp3.w;   acc.mlp3.bias += scale * g.mlp3.bias;
}

template <typename Fn>
void for_each_layer(NetworkParams& p, Fn&& fn) {
    fn(p.ec1); fn(p.ec2); fn(p.mlp1); fn(p.mlp2); fn(p.mlp3);
}

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

void adam_step(NetworkParams& params, const NetworkParams& grad, AdamState& state, double lr) {
    ++state.t;
    const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(state.t));
    auto update = [&](Eigen::MatrixXd& w, const Eigen::MatrixXd& g, Eigen::MatrixXd& m,
                      Eigen::MatrixXd& v) {
        m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * g;
        v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * g.cwiseProduct(g);
        w.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + kAdamEps);
    };
    auto update_vec = [&](Eigen::VectorXd& w, const Eigen::VectorXd& g, Eigen::VectorXd& m,
                          Eigen::VectorXd& v) {
        m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * g;
        v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * g.cwiseProduct(g);
        w.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + kAdamEps);
    };
    update(params.ec1.w, grad.ec1.w, state.m.ec1.w, state.v.ec1.w);
    update_vec(params.ec1.bias, grad.ec1.bias, state.m.ec1.bias, state.v.ec1.bias);
    update(params.ec2.w, grad.ec2.w, state.m.ec2.w, state.v.ec2.w);
    update_vec(params.ec2.bias, grad.ec2.bias, state.m.ec2.bias, state.v.ec2.bias);
    update(params.mlp1.w, grad.mlp1.w, state.m.mlp1.w, state.v.mlp1.w);
    update_vec(params.mlp1.bias, grad.mlp1.bias, state.m.mlp1.bias, state.v.mlp1.bias);
    update(params.mlp2.w, grad.mlp2.w, state.m.mlp2.w, state.v.mlp2.w);
    update_vec(params.mlp2.bias, grad.mlp2.bias, state.m.mlp2.bias, state.v.mlp2.bias);
    update(params.mlp3.w, grad.mlp3.w, state.m.mlp3.w, state.v.mlp3.w);
    update_vec(params.mlp3.bias, grad.mlp3.bias, state.m.mlp3.bias, state.v.mlp3.bias);
}

double max_basis_q(const QOutput& out) {
    double best = -std::numeric_limits<double>::infinity();
    for (int j : out.basis) best = std::max(best, out.q(j));
    return best;
}

}  // namespace

TdLossResult td_loss(const std::vector<const Transition*>& batch,
                     const NetworkParams& params, const NetworkParams& target_params,
                     double beta) {
    if (batch.empty()) throw ContractViolation("td_loss: empty batch");
    TdLossResult result;
    result.gradients = NetworkParams::zeros_like(params);
    const double inv_b = 1.0 / static_cast<double>(batch.size());

    for (const Transition* t : batch) {
        double target = t->reward;
        if (!t->terminal) {
            const StateEncoding next = t->next_state();
            target += beta * max_basis_q(forward(next, target_params));
        }
        const StateEncoding s = t->state();
        ForwardCache cache;
        const QOutput out = forward(s, params, &cache);
        const double diff = target - out.q(t->action);
        result.loss += huber(diff) * inv_b;

        // d loss / d q(a) = -huber'(target - q) / B
        Eigen::VectorXd upstream = Eigen::VectorXd::Zero(out.q.size());
        upstream(t->action) = -huber_grad(diff) * inv_b;
        axpy(result.gradients, backward(s, params, cache, upstream), 1.0);
    }
    return result;
}

Checkpoint train(const TrainConfig& config, const Checkpoint* resume_from,
                 const TrainLogger& logger) {
    config.validate();

    const int input_dim = feature_dim(config.model_kind) + 2;
    Checkpoint ck;
    Rng rng(config.seed);
    if (resume_from) {
        ck = *resume_from;
        if (ck.params.input_dim != input_dim)
            throw ContractViolation("train: checkpoint architecture does not match model kind");
        rng.set_state(ck.rng_state);
    } else {
        ck.config = config;
        // k must stay below the point count.
        const int k = std::min(10, config.n_points - 1);
        ck.params = NetworkParams::init(input_dim, rng.next_u64(), k);
        ck.target_params = ck.params;
        ck.adam.m = NetworkParams::zeros_like(ck.params);
        ck.adam.v = NetworkParams::zeros_like(ck.params);
    }
    ck.config = config;

    ReplayMemory memory(config.replay_capacity);
    SimplexSolver ws;
    double episode_length_sum = ck.stats.mean_episode_length * ck.episode;

    for (int episode = ck.episode; episode < config.episodes; ++episode) {
        GenSpec spec;
        spec.model_kind = config.model_kind;
        spec.n = config.n_points;
        spec.outlier_rate = rng.uniform(config.outlier_rate_lo, config.outlier_rate_hi);
        spec.seed = rng.next_u64();

        try {
            const Dataset dataset = generate(spec);
            // H is shared by every transition of this episode.
            auto h = std::make_shared<Eigen::MatrixXd>();
            SearchState state = initial_state(dataset, &ws);
            int steps = 0;
            double episode_loss = 0.0;
            double eps = 0.0;

            while (!is_goal(state, config.epsilon)) {
                StateEncoding enc = encode_state(dataset, state);
                if (h->size() == 0) *h = enc.h;
                eps = config.eps_end +
                      (config.eps_start - config.eps_end) *
                          std::exp(-static_cast<double>(ck.stats.env_steps) / config.eps_decay);
                const QOutput qout = forward(enc, ck.params);
                const int action = select_action(qout, eps, rng);
                const SearchState next = apply_action(dataset, state, action, &ws);

                Transition t;
                t.h = h;
                t.b_vec = std::move(enc.b_vec);
                t.v_vec = std::move(enc.v_vec);
                t.basis = std::move(enc.basis);
                t.action = action;
                t.reward = reward(next, config.epsilon);
                t.terminal = is_goal(next, config.epsilon);
                if (!t.terminal) {
                    StateEncoding nenc = encode_state(dataset, next);
                    t.next_b_vec = std::move(nenc.b_vec);
                    t.next_v_vec = std::move(nenc.v_vec);
                    t.next_basis = std::move(nenc.basis);
                }
                memory.push(std::move(t));
                ++ck.stats.env_steps;
                ++steps;

                if (memory.size() >= static_cast<std::size_t>(config.warmup_transitions)) {
                    const auto batch = memory.sample(config.batch_size, rng);
                    const TdLossResult td = td_loss(batch, ck.params, ck.target_params, config.beta);
                    adam_step(ck.params, td.gradients, ck.adam, config.learning_rate);
                    ++ck.stats.updates;
                    ck.stats.last_loss = td.loss;
                    episode_loss = td.loss;
                    if (ck.stats.updates % config.target_sync_period == 0)
                        ck.target_params = ck.params;
                }

                state = next;
                if (steps > dataset.size()) throw SolverError("train: episode failed to terminate");
            }

            episode_length_sum += steps;
            if (logger) logger(episode, steps, episode_loss, eps);
        } catch (const SolverError& err) {
            ++ck.stats.discarded_episodes;
            std::cerr << "episode " << episode << " discarded: " << err.what() << "\n";
        }

        ck.episode = episode + 1;
        ck.stats.mean_episode_length = episode_length_sum / std::max(1, ck.episode);
    }

    ck.rng_state = rng.state();
    return ck;
}

PolicyRollout evaluate_policy(const Dataset& dataset, const NetworkParams& params,
                              double beta) {
    const auto t0 = std::chrono::steady_clock::now();
    SimplexSolver ws;
    Rng rng(0);  // unused at eps = 0
    SearchState state = initial_state(dataset, &ws);
    long solves = 1;
    PolicyRollout rollout;
    double discount = 1.0;
    const int max_steps = dataset.size() - dataset.d;
    int steps = 0;

    while (!is_goal(state, dataset.epsilon)) {
        const StateEncoding enc = encode_state(dataset, state);
        const QOutput qout = forward(enc, params);
        const int action = select_action(qout, 0.0, rng);
        state = apply_action(dataset, state, action, &ws);
        ++solves;
        rollout.discounted_return += discount * reward(state, dataset.epsilon);
        discount *= beta;
        if (++steps > max_steps)
            throw SolverError("evaluate_policy: exceeded the step bound");
    }

    rollout.result.consensus_indices = state.removed.surviving();
    rollout.result.removals = state.depth;
    rollout.result.theta = state.fit.theta;
    rollout.result.nodes_expanded = solves;
    rollout.result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rollout;
}

}  // namespace maxcon
