#pragma once

#include <Eigen/Dense>
#include <vector>

#include "maxcon/model.hpp"
#include "maxcon/search.hpp"

namespace maxcon {

/// Network input for one state: per-point feature rows H plus the +-1
/// basis and removed indicator vectors. Rows exist for ALL N original
/// points; removal status lives entirely in v.
struct StateEncoding {
    Eigen::MatrixXd h;      // N x m feature rows
    Eigen::VectorXd b_vec;  // +1 iff in basis
    Eigen::VectorXd v_vec;  // +1 iff removed
    std::vector<int> basis; // global point indices, ascending
};

StateEncoding encode_state(const Dataset& dataset, const SearchState& state);

/// Euclidean k-nearest neighbours in the given feature space, self
/// excluded, ties broken towards the lower index. Throws if k >= N.
Eigen::MatrixXi knn_graph(const Eigen::MatrixXd& features, int k);

struct DenseLayer {
    Eigen::MatrixXd w;     // out x in
    Eigen::VectorXd bias;  // out
};

/// All learnable parameters. Also reused as the gradient container
/// (same shapes). Layer sizes double as the architecture manifest.
struct NetworkParams {
    int input_dim = 0;  // m + 2
    int k = 10;         // neighbours per EdgeConv layer
    DenseLayer ec1;     // edge MLP 1: (2*input_dim) -> c1
    DenseLayer ec2;     // edge MLP 2: (2*c1) -> c2
    DenseLayer mlp1;    // (2*c2) -> h1   (per-point feature || global feature)
    DenseLayer mlp2;    // h1 -> h2
    DenseLayer mlp3;    // h2 -> 1

    /// Uniform(-s, s) init with s = 1/sqrt(fan_in), deterministic in seed.
    static NetworkParams init(int input_dim, std::uint64_t seed, int k = 10,
                              int c1 = 64, int c2 = 64, int h1 = 128, int h2 = 64);
    static NetworkParams zeros_like(const NetworkParams& ref);

    bool same_shape(const NetworkParams& o) const;
    void validate() const;
};

struct QOutput {
    Eigen::VectorXd q;        // length N
    std::vector<int> basis;   // candidate actions; argmax is restricted here
};

/// Everything backward() needs from the forward pass.
struct ForwardCache {
    Eigen::MatrixXd x;                 // N x input_dim
    Eigen::MatrixXi knn1, knn2;
    Eigen::MatrixXd edge1, edge2;      // (N*k) x 2c edge inputs
    Eigen::MatrixXd pre1, pre2;        // (N*k) x c edge pre-activations
    Eigen::MatrixXi arg1, arg2;        // N x c argmax neighbour slot
    Eigen::MatrixXd f1, f2;            // N x c layer outputs
    std::vector<int> garg;             // argmax row per global channel
    Eigen::MatrixXd p;                 // N x 2c2 concat input to the MLP
    Eigen::MatrixXd mpre1, mpre2;      // MLP pre-activations
    Eigen::MatrixXd mh1, mh2;
};

/// Full pipeline: [H b v] -> EdgeConv x2 -> max-pool global feature ->
/// concat -> shared per-point MLP -> scalar q per point, masked to the
/// basis. Pure and deterministic.
QOutput forward(const StateEncoding& encoding, const NetworkParams& params,
                ForwardCache* cache = nullptr);

/// Exact reverse-mode gradients of sum_i upstream(i) * q(i) w.r.t. every
/// parameter. Max operations route gradient to the (first) argmax; the
/// knn graphs are treated as constants.
NetworkParams backward(const StateEncoding& encoding, const NetworkParams& params,
                       const ForwardCache& cache, const Eigen::VectorXd& upstream_on_q);

/// Epsilon-greedy over the basis; greedy ties resolve to the lowest index.
int select_action(const QOutput& qout, double eps, Rng& rng);

}  // namespace maxcon
