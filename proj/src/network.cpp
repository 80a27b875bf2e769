#include "maxcon/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maxcon {

namespace {

constexpr double kLeakySlope = 0.2;

inline double lrelu(double z) { return z > 0.0 ? z : kLeakySlope * z; }
inline double lrelu_grad(double z) { return z > 0.0 ? 1.0 : kLeakySlope; }

void init_layer(DenseLayer& layer, int out, int in, Rng& rng) {
    const double s = 1.0 / std::sqrt(static_cast<double>(in));
    layer.w.resize(out, in);
    layer.bias.resize(out);
    for (int r = 0; r < out; ++r)
        for (int c = 0; c < in; ++c) layer.w(r, c) = rng.uniform(-s, s);
    for (int r = 0; r < out; ++r) layer.bias(r) = rng.uniform(-s, s);
}

void check_layer(const DenseLayer& layer, int out, int in, const char* name) {
    if (layer.w.rows() != out || layer.w.cols() != in || layer.bias.size() != out)
        throw ContractViolation(std::string("NetworkParams: bad shape in layer ") + name);
    if (!layer.w.allFinite() || !layer.bias.allFinite())
        throw ContractViolation(std::string("NetworkParams: non-finite entries in layer ") + name);
}

struct EdgeCache {
    Eigen::MatrixXd edges;  // (N*k) x 2cin
    Eigen::MatrixXd pre;    // (N*k) x cout
    Eigen::MatrixXi argmax; // N x cout, neighbour slot attaining the max
    Eigen::MatrixXd out;    // N x cout
};

EdgeCache edgeconv_forward(const Eigen::MatrixXd& x, const Eigen::MatrixXi& knn,
                           const DenseLayer& layer) {
    const int n = static_cast<int>(x.rows());
    const int cin = static_cast<int>(x.cols());
    const int k = static_cast<int>(knn.cols());
    const int cout = static_cast<int>(layer.w.rows());
    if (layer.w.cols() != 2 * cin)
        throw ContractViolation("edgeconv_forward: feature/weight shape mismatch");

    EdgeCache cache;
    cache.edges.resize(n * k, 2 * cin);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < k; ++s) {
            const int j = knn(i, s);
            cache.edges.row(i * k + s).head(cin) = x.row(i);
            cache.edges.row(i * k + s).tail(cin) = x.row(j) - x.row(i);
        }
    }
    cache.pre = cache.edges * layer.w.transpose();
    cache.pre.rowwise() += layer.bias.transpose();

    cache.out.resize(n, cout);
    cache.argmax.resize(n, cout);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cout; ++c) {
            double best = lrelu(cache.pre(i * k, c));
            int arg = 0;
            for (int s = 1; s < k; ++s) {
                const double v = lrelu(cache.pre(i * k + s, c));
                if (v > best) {
                    best = v;
                    arg = s;
                }
            }
            cache.out(i, c) = best;
            cache.argmax(i, c) = arg;
        }
    }
    return cache;
}

/// Returns dX and accumulates parameter gradients into `grad`.
Eigen::MatrixXd edgeconv_backward(const Eigen::MatrixXd& x, const Eigen::MatrixXi& knn,
                                  const DenseLayer& layer, const EdgeCache& cache,
                                  const Eigen::MatrixXd& d_out, DenseLayer& grad) {
    const int n = static_cast<int>(x.rows());
    const int cin = static_cast<int>(x.cols());
    const int k = static_cast<int>(knn.cols());
    const int cout = static_cast<int>(layer.w.rows());

    Eigen::MatrixXd d_pre = Eigen::MatrixXd::Zero(n * k, cout);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cout; ++c) {
            const int row = i * k + cache.argmax(i, c);
            d_pre(row, c) += d_out(i, c) * lrelu_grad(cache.pre(row, c));
        }
    }
    grad.w += d_pre.transpose() * cache.edges;
    grad.bias += d_pre.colwise().sum().transpose();

    const Eigen::MatrixXd d_edges = d_pre * layer.w;  // (N*k) x 2cin
    Eigen::MatrixXd d_x = Eigen::MatrixXd::Zero(n, cin);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < k; ++s) {
            const int r = i * k + s;
            const int j = knn(i, s);
            d_x.row(i) += d_edges.row(r).head(cin) - d_edges.row(r).tail(cin);
            d_x.row(j) += d_edges.row(r).tail(cin);
        }
    }
    return d_x;
}

}  // namespace

StateEncoding encode_state(const Dataset& dataset, const SearchState& state) {
    const int n = dataset.size();
    StateEncoding enc;
    enc.h.resize(n, feature_dim(dataset.model_kind));
    for (int i = 0; i < n; ++i)
        enc.h.row(i) = feature_map(dataset.points[i], dataset.model_kind);
    enc.b_vec = Eigen::VectorXd::Constant(n, -1.0);
    enc.v_vec = Eigen::VectorXd::Constant(n, -1.0);
    for (int i = 0; i < n; ++i)
        if (state.removed.test(i)) enc.v_vec(i) = 1.0;
    enc.basis = actions(state);
    for (int j : enc.basis) enc.b_vec(j) = 1.0;
    return enc;
}

Eigen::MatrixXi knn_graph(const Eigen::MatrixXd& features, int k) {
    const int n = static_cast<int>(features.rows());
    if (k >= n || k < 1) throw ContractViolation("knn_graph: need 1 <= k < N");
    Eigen::MatrixXi knn(n, k);
    std::vector<int> order(n);
    std::vector<double> dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            dist[j] = (features.row(j) - features.row(i)).squaredNorm();
        std::iota(order.begin(), order.end(), 0);
        order.erase(order.begin() + i);
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          [&](int a, int b) {
                              if (dist[a] != dist[b]) return dist[a] < dist[b];
                              return a < b;
                          });
        for (int s = 0; s < k; ++s) knn(i, s) = order[s];
        order.insert(order.begin() + i, i);  // restore for reuse
    }
    return knn;
}

NetworkParams NetworkParams::init(int input_dim, std::uint64_t seed, int k,
                                  int c1, int c2, int h1, int h2) {
    Rng rng(seed);
    NetworkParams p;
    p.input_dim = input_dim;
    p.k = k;
    init_layer(p.ec1, c1, 2 * input_dim, rng);
    init_layer(p.ec2, c2, 2 * c1, rng);
    init_layer(p.mlp1, h1, 2 * c2, rng);
    init_layer(p.mlp2, h2, h1, rng);
    init_layer(p.mlp3, 1, h2, rng);
    return p;
}

NetworkParams NetworkParams::zeros_like(const NetworkParams& ref) {
    NetworkParams g = ref;
    for (DenseLayer* l : {&g.ec1, &g.ec2, &g.mlp1, &g.mlp2, &g.mlp3}) {
        l->w.setZero();
        l->bias.setZero();
    }
    return g;
}

bool NetworkParams::same_shape(const NetworkParams& o) const {
    auto eq = [](const DenseLayer& a, const DenseLayer& b) {
        return a.w.rows() == b.w.rows() && a.w.cols() == b.w.cols();
    };
    return input_dim == o.input_dim && k == o.k && eq(ec1, o.ec1) && eq(ec2, o.ec2) &&
           eq(mlp1, o.mlp1) && eq(mlp2, o.mlp2) && eq(mlp3, o.mlp3);
}

void NetworkParams::validate() const {
    const int c1 = static_cast<int>(ec1.w.rows());
    const int c2 = static_cast<int>(ec2.w.rows());
    const int h1 = static_cast<int>(mlp1.w.rows());
    const int h2 = static_cast<int>(mlp2.w.rows());
    check_layer(ec1, c1, 2 * input_dim, "ec1");
    check_layer(ec2, c2, 2 * c1, "ec2");
    check_layer(mlp1, h1, 2 * c2, "mlp1");
    check_layer(mlp2, h2, h1, "mlp2");
    check_layer(mlp3, 1, h2, "mlp3");
}

QOutput forward(const StateEncoding& encoding, const NetworkParams& params,
                ForwardCache* cache) {
    const int n = static_cast<int>(encoding.h.rows());
    if (encoding.b_vec.size() != n || encoding.v_vec.size() != n)
        throw ContractViolation("forward: indicator vector size mismatch");
    if (params.input_dim != encoding.h.cols() + 2)
        throw ContractViolation("forward: encoding width does not match network input");

    Eigen::MatrixXd x(n, params.input_dim);
    x << encoding.h, encoding.b_vec, encoding.v_vec;

    const Eigen::MatrixXi knn1 = knn_graph(x, params.k);
    EdgeCache e1 = edgeconv_forward(x, knn1, params.ec1);
    const Eigen::MatrixXi knn2 = knn_graph(e1.out, params.k);
    EdgeCache e2 = edgeconv_forward(e1.out, knn2, params.ec2);

    const int c2 = static_cast<int>(e2.out.cols());
    Eigen::VectorXd global(c2);
    std::vector<int> garg(c2);
    for (int c = 0; c < c2; ++c) {
        double best = e2.out(0, c);
        int arg = 0;
        for (int i = 1; i < n; ++i) {
            if (e2.out(i, c) > best) {
                best = e2.out(i, c);
                arg = i;
            }
        }
        global(c) = best;
        garg[c] = arg;
    }

    Eigen::MatrixXd p(n, 2 * c2);
    p.leftCols(c2) = e2.out;
    p.rightCols(c2) = global.transpose().replicate(n, 1);

    Eigen::MatrixXd mpre1 = p * params.mlp1.w.transpose();
    mpre1.rowwise() += params.mlp1.bias.transpose();
    const Eigen::MatrixXd mh1 = mpre1.unaryExpr([](double z) { return lrelu(z); });

    Eigen::MatrixXd mpre2 = mh1 * params.mlp2.w.transpose();
    mpre2.rowwise() += params.mlp2.bias.transpose();
    const Eigen::MatrixXd mh2 = mpre2.unaryExpr([](double z) { return lrelu(z); });

    QOutput out;
    out.q = (mh2 * params.mlp3.w.transpose()).col(0);
    out.q.array() += params.mlp3.bias(0);
    out.basis = encoding.basis;

    if (cache) {
        cache->x = std::move(x);
        cache->knn1 = knn1;
        cache->knn2 = knn2;
        cache->edge1 = std::move(e1.edges);
        cache->pre1 = std::move(e1.pre);
        cache->arg1 = std::move(e1.argmax);
        cache->f1 = std::move(e1.out);
        cache->edge2 = std::move(e2.edges);
        cache->pre2 = std::move(e2.pre);
        cache->arg2 = std::move(e2.argmax);
        cache->f2 = std::move(e2.out);
        cache->garg = std::move(garg);
        cache->p = std::move(p);
        cache->mpre1 = std::move(mpre1);
        cache->mpre2 = std::move(mpre2);
        cache->mh1 = mh1;
        cache->mh2 = mh2;
    }
    return out;
}

NetworkParams backward(const StateEncoding& encoding, const NetworkParams& params,
                       const ForwardCache& cache, const Eigen::VectorXd& upstream_on_q) {
    (void)encoding;
    const int n = static_cast<int>(cache.x.rows());
    if (upstream_on_q.size() != n)
        throw ContractViolation("backward: upstream gradient size mismatch");
    const int c2 = static_cast<int>(cache.f2.cols());

    NetworkParams grad = NetworkParams::zeros_like(params);

    // mlp3: q = mh2 * W^T + b
    grad.mlp3.w = upstream_on_q.transpose() * cache.mh2;
    grad.mlp3.bias(0) = upstream_on_q.sum();
    Eigen::MatrixXd d_h2 = upstream_on_q * params.mlp3.w;  // N x h2

    Eigen::MatrixXd d_pre2 =
        d_h2.cwiseProduct(cache.mpre2.unaryExpr([](double z) { return lrelu_grad(z); }));
    grad.mlp2.w = d_pre2.transpose() * cache.mh1;
    grad.mlp2.bias = d_pre2.colwise().sum().transpose();
    Eigen::MatrixXd d_h1 = d_pre2 * params.mlp2.w;

    Eigen::MatrixXd d_pre1 =
        d_h1.cwiseProduct(cache.mpre1.unaryExpr([](double z) { return lrelu_grad(z); }));
    grad.mlp1.w = d_pre1.transpose() * cache.p;
    grad.mlp1.bias = d_pre1.colwise().sum().transpose();
    Eigen::MatrixXd d_p = d_pre1 * params.mlp1.w;  // N x 2c2

    Eigen::MatrixXd d_f2 = d_p.leftCols(c2);
    for (int c = 0; c < c2; ++c) {
        const double dg = d_p.col(c2 + c).sum();
        d_f2(cache.garg[c], c) += dg;
    }

    const Eigen::MatrixXd d_f1 =
        edgeconv_backward(cache.f1, cache.knn2, params.ec2, {cache.edge2, cache.pre2, cache.arg2, cache.f2},
                          d_f2, grad.ec2);
    edgeconv_backward(cache.x, cache.knn1, params.ec1, {cache.edge1, cache.pre1, cache.arg1, cache.f1},
                      d_f1, grad.ec1);
    return grad;
}

int select_action(const QOutput& qout, double eps, Rng& rng) {
    if (qout.basis.empty()) throw ContractViolation("select_action: empty basis");
    if (eps > 0.0 && rng.uniform() < eps)
        return qout.basis[rng.uniform_int(static_cast<int>(qout.basis.size()))];
    int best = qout.basis[0];
    for (int j : qout.basis)
        if (qout.q(j) > qout.q(best)) best = j;
    return best;
}

}  // namespace maxcon
