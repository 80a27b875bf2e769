#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "helpers.hpp"
#include "maxcon/training.hpp"

using namespace maxcon;
using namespace maxcon::testing;

namespace {

TrainConfig tiny_config(std::uint64_t seed, int episodes = 4) {
    TrainConfig cfg;
    cfg.episodes = episodes;
    cfg.n_points = 8;
    cfg.outlier_rate_lo = 0.1;
    cfg.outlier_rate_hi = 0.3;
    cfg.batch_size = 8;
    cfg.warmup_transitions = 8;
    cfg.replay_capacity = 64;
    cfg.target_sync_period = 10;
    cfg.seed = seed;
    return cfg;
}

bool params_equal(const NetworkParams& a, const NetworkParams& b) {
    return a.ec1.w == b.ec1.w && a.ec2.w == b.ec2.w && a.mlp1.w == b.mlp1.w &&
           a.mlp2.w == b.mlp2.w && a.mlp3.w == b.mlp3.w && a.ec1.bias == b.ec1.bias &&
           a.mlp3.bias == b.mlp3.bias;
}

/// Plays one greedy step on a fresh instance to get a real transition.
Transition make_transition(const Dataset& ds, const NetworkParams& params) {
    const SearchState s0 = initial_state(ds);
    const StateEncoding enc = encode_state(ds, s0);
    Rng rng(0);
    const int action = select_action(forward(enc, params), 0.0, rng);
    const SearchState s1 = apply_action(ds, s0, action);
    const StateEncoding next = encode_state(ds, s1);

    Transition t;
    t.h = std::make_shared<Eigen::MatrixXd>(enc.h);
    t.b_vec = enc.b_vec;
    t.v_vec = enc.v_vec;
    t.basis = enc.basis;
    t.action = action;
    t.reward = reward(s1, ds.epsilon);
    t.terminal = is_goal(s1, ds.epsilon);
    if (!t.terminal) {
        t.next_b_vec = next.b_vec;
        t.next_v_vec = next.v_vec;
        t.next_basis = next.basis;
    }
    return t;
}

}  // namespace

TEST_CASE("reward is 0 exactly at goal states") {
    const Dataset ds = planted_four_plus_one();
    const SearchState s0 = initial_state(ds);
    CHECK(reward(s0, ds.epsilon) == -1.0);
    const SearchState s1 = apply_action(ds, s0, 4);
    CHECK(reward(s1, ds.epsilon) == 0.0);
}

TEST_CASE("huber values") {
    CHECK(huber(0.0) == 0.0);
    CHECK(huber(0.5) == doctest::Approx(0.125));
    CHECK(huber(1.0) == doctest::Approx(0.5));
    CHECK(huber(-1.0) == doctest::Approx(0.5));
    CHECK(huber(3.0) == doctest::Approx(2.5));   // |x| - 0.5 beyond the knee
    CHECK(huber(-4.0) == doctest::Approx(3.5));
}

TEST_CASE("replay memory is FIFO-bounded and samples stored items") {
    ReplayMemory mem(3);
    const Dataset ds = gen(ModelKind::Line2d, 8, 0.25, 1);
    const NetworkParams p = NetworkParams::init(feature_dim(ds.model_kind) + 2, 2, 3, 4, 4, 6, 4);
    for (int i = 0; i < 5; ++i) {
        Transition t = make_transition(ds, p);
        t.reward = static_cast<double>(i);  // tag for identification
        mem.push(std::move(t));
    }
    CHECK(mem.size() == 3);
    CHECK(mem.at(0).reward == 2.0);  // two oldest evicted
    CHECK(mem.at(2).reward == 4.0);

    Rng rng(9);
    const auto batch = mem.sample(10, rng);
    CHECK(batch.size() == 10);
    for (const Transition* t : batch) CHECK((t->reward >= 2.0 && t->reward <= 4.0));
}

TEST_CASE("td_loss matches a hand evaluation of the Bellman target") {
    const Dataset ds = gen(ModelKind::Line2d, 8, 0.25, 55);
    const NetworkParams p = NetworkParams::init(feature_dim(ds.model_kind) + 2, 3, 3, 4, 4, 6, 4);
    const NetworkParams tgt = NetworkParams::init(feature_dim(ds.model_kind) + 2, 4, 3, 4, 4, 6, 4);
    const double beta = 0.99;

    Transition t = make_transition(ds, p);
    const TdLossResult res = td_loss({&t}, p, tgt, beta);

    const double q_sa = forward(t.state(), p).q(t.action);
    double y = t.reward;
    if (!t.terminal) {
        const QOutput nq = forward(t.next_state(), tgt);
        double best = -std::numeric_limits<double>::infinity();
        for (int i : nq.basis) best = std::max(best, nq.q(i));
        y += beta * best;
    }
    CHECK(res.loss == doctest::Approx(huber(q_sa - y)).epsilon(1e-12));
    CHECK(res.gradients.same_shape(p));
}

TEST_CASE("td_loss on a terminal transition ignores the next state") {
    const Dataset ds = planted_four_plus_one();
    const NetworkParams p = NetworkParams::init(feature_dim(ds.model_kind) + 2, 6, 3, 4, 4, 6, 4);
    Transition t = make_transition(ds, p);
    // Force terminal bookkeeping regardless of which action greedy took.
    t.terminal = true;
    t.reward = 0.0;
    t.next_basis.clear();
    const TdLossResult res = td_loss({&t}, p, p, 0.99);
    const double q_sa = forward(t.state(), p).q(t.action);
    CHECK(res.loss == doctest::Approx(huber(q_sa)).epsilon(1e-12));
}

TEST_CASE("train config validation") {
    TrainConfig bad = tiny_config(0);
    bad.outlier_rate_lo = 0.5;
    bad.outlier_rate_hi = 0.2;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = tiny_config(0);
    bad.batch_size = 0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    CHECK_NOTHROW(tiny_config(0).validate());
}

TEST_CASE("training is deterministic in the seed") {
    const Checkpoint a = train(tiny_config(42));
    const Checkpoint b = train(tiny_config(42));
    const Checkpoint c = train(tiny_config(43));
    CHECK(params_equal(a.params, b.params));
    CHECK(a.stats.env_steps == b.stats.env_steps);
    CHECK(a.stats.last_loss == b.stats.last_loss);
    CHECK(!params_equal(a.params, c.params));
    CHECK(a.episode == 4);
    CHECK(a.stats.env_steps > 0);
    CHECK(a.stats.updates > 0);
}

TEST_CASE("resume is deterministic and advances the episode counter") {
    const Checkpoint half = train(tiny_config(7, 2));
    TrainConfig full = tiny_config(7, 4);
    const Checkpoint resumed_a = train(full, &half);
    const Checkpoint resumed_b = train(full, &half);
    CHECK(resumed_a.episode == 4);
    CHECK(params_equal(resumed_a.params, resumed_b.params));
    CHECK(resumed_a.adam.t == resumed_b.adam.t);
}

TEST_CASE("logger fires once per episode") {
    int calls = 0;
    train(tiny_config(3), nullptr, [&](int, int steps, double, double eps) {
        ++calls;
        CHECK(steps >= 0);
        CHECK(eps <= 0.9);
        CHECK(eps >= 0.0);  // 0 on zero-step episodes
    });
    CHECK(calls == 4);
}

TEST_CASE("evaluate_policy reaches a feasible set with a bounded return") {
    const Dataset ds = gen(ModelKind::Line2d, 10, 0.2, 31);
    const NetworkParams p = NetworkParams::init(feature_dim(ds.model_kind) + 2, 77, 5);
    const PolicyRollout r = evaluate_policy(ds, p);
    CHECK(min_max_residual(ds, r.result.consensus_indices) <= ds.epsilon + 1e-9);
    CHECK(r.result.removals <= ds.size() - ds.d);
    CHECK(r.discounted_return <= 0.0);
    // Return equals -(sum of beta^t over non-final steps).
    double expected = 0.0;
    for (int t = 0; t + 1 < r.result.removals; ++t) expected -= std::pow(0.99, t);
    CHECK(r.discounted_return == doctest::Approx(expected).epsilon(1e-9));

    const PolicyRollout again = evaluate_policy(ds, p);
    CHECK(again.result.consensus_indices == r.result.consensus_indices);
}
