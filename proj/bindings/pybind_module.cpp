#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxcon/baselines.hpp"
#include "maxcon/cli.hpp"
#include "maxcon/datagen.hpp"
#include "maxcon/io.hpp"
#include "maxcon/refine.hpp"
#include "maxcon/training.hpp"

namespace py = pybind11;
using namespace maxcon;

namespace {

std::vector<int> all_indices(const Dataset& ds) {
    std::vector<int> idx(ds.size());
    for (int i = 0; i < ds.size(); ++i) idx[i] = i;
    return idx;
}

}  // namespace

PYBIND11_MODULE(_maxcon, m) {
    m.doc() = "Consensus maximization toolkit: exact L-infinity minimax core, "
              "outlier-removal tree search, learned agent and classical baselines";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("line2d", ModelKind::Line2d)
        .value("plane3d", ModelKind::Plane3d)
        .value("fundamental_linearized", ModelKind::FundamentalLin);

    py::class_<DataPoint>(m, "DataPoint")
        .def(py::init([](Eigen::VectorXd a, double b) {
                 DataPoint p;
                 p.a = std::move(a);
                 p.b = b;
                 return p;
             }),
             py::arg("a"), py::arg("b"))
        .def_readwrite("a", &DataPoint::a)
        .def_readwrite("b", &DataPoint::b)
        .def_readwrite("raw", &DataPoint::raw);

    py::class_<Planted>(m, "Planted")
        .def_readonly("theta_hat", &Planted::theta_hat)
        .def_readonly("outlier_indices", &Planted::outlier_indices);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("points", &Dataset::points)
        .def_readwrite("d", &Dataset::d)
        .def_readwrite("epsilon", &Dataset::epsilon)
        .def_readwrite("model_kind", &Dataset::model_kind)
        .def_readonly("planted", &Dataset::planted)
        .def("__len__", &Dataset::size)
        .def("validate", &Dataset::validate);

    py::class_<MinimaxFit>(m, "MinimaxFit")
        .def_property_readonly("theta", [](const MinimaxFit& f) { return f.theta.theta; })
        .def_readonly("gamma", &MinimaxFit::gamma)
        .def_readonly("basis", &MinimaxFit::basis)
        .def_readonly("residuals", &MinimaxFit::residuals);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("consensus_indices", &SearchResult::consensus_indices)
        .def_readonly("removals", &SearchResult::removals)
        .def_property_readonly("theta", [](const SearchResult& r) { return r.theta.theta; })
        .def_readonly("nodes_expanded", &SearchResult::nodes_expanded)
        .def_readonly("wall_time_s", &SearchResult::wall_time_s)
        .def_property_readonly("consensus",
                               [](const SearchResult& r) { return r.consensus_indices.size(); });

    m.def("residual",
          [](const DataPoint& p, const Eigen::VectorXd& theta) {
              return residual(p, ModelParams{theta});
          },
          py::arg("point"), py::arg("theta"));
    m.def("consensus",
          [](const Dataset& ds, const Eigen::VectorXd& theta) {
              const ConsensusResult c = consensus(ds, ModelParams{theta});
              return py::make_tuple(c.count, c.inlier_mask);
          },
          py::arg("dataset"), py::arg("theta"));
    m.def("linearize_correspondence", &linearize_correspondence, py::arg("u"), py::arg("v"));

    m.def("minimax_fit",
          [](const Dataset& ds, std::optional<std::vector<int>> subset) {
              return minimax_fit(ds, subset ? *subset : all_indices(ds));
          },
          py::arg("dataset"), py::arg("subset") = std::nullopt);
    m.def("min_max_residual",
          [](const Dataset& ds, std::optional<std::vector<int>> subset) {
              return min_max_residual(ds, subset ? *subset : all_indices(ds));
          },
          py::arg("dataset"), py::arg("subset") = std::nullopt);

    m.def("optimal_search", &optimal_search, py::arg("dataset"),
          py::arg("node_budget") = 2'000'000);
    m.def("random_rollout", &random_rollout, py::arg("dataset"), py::arg("seed"));
    m.def("local_tree_refinement",
          [](const Dataset& ds, const std::vector<int>& s0) {
              return local_tree_refinement(ds, s0);
          },
          py::arg("dataset"), py::arg("initial_set"));

    m.def("ransac",
          [](const Dataset& ds, long iterations, double seconds, std::uint64_t seed) {
              RansacConfig cfg;
              cfg.max_iterations = iterations;
              cfg.max_seconds = seconds;
              cfg.seed = seed;
              return ransac(ds, cfg);
          },
          py::arg("dataset"), py::arg("iterations") = 1000, py::arg("seconds") = 0.0,
          py::arg("seed") = 0);
    m.def("lo_ransac",
          [](const Dataset& ds, long iterations, double seconds, std::uint64_t seed,
             int lo_inner) {
              RansacConfig cfg;
              cfg.max_iterations = iterations;
              cfg.max_seconds = seconds;
              cfg.seed = seed;
              cfg.lo_enabled = true;
              cfg.lo_inner_iterations = lo_inner;
              return lo_ransac(ds, cfg);
          },
          py::arg("dataset"), py::arg("iterations") = 1000, py::arg("seconds") = 0.0,
          py::arg("seed") = 0, py::arg("lo_inner_iterations") = 10);

    m.def("generate",
          [](const std::string& model, int n, double rate, std::uint64_t seed) {
              GenSpec spec;
              spec.model_kind = model_kind_from_string(model);
              spec.n = n;
              spec.outlier_rate = rate;
              spec.seed = seed;
              return generate(spec);
          },
          py::arg("model"), py::arg("n"), py::arg("outlier_rate") = 0.0, py::arg("seed") = 0);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("episodes", &TrainConfig::episodes)
        .def_readwrite("n_points", &TrainConfig::n_points)
        .def_readwrite("outlier_rate_lo", &TrainConfig::outlier_rate_lo)
        .def_readwrite("outlier_rate_hi", &TrainConfig::outlier_rate_hi)
        .def_readwrite("beta", &TrainConfig::beta)
        .def_readwrite("learning_rate", &TrainConfig::learning_rate)
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("eps_start", &TrainConfig::eps_start)
        .def_readwrite("eps_end", &TrainConfig::eps_end)
        .def_readwrite("eps_decay", &TrainConfig::eps_decay)
        .def_readwrite("replay_capacity", &TrainConfig::replay_capacity)
        .def_readwrite("target_sync_period", &TrainConfig::target_sync_period)
        .def_readwrite("warmup_transitions", &TrainConfig::warmup_transitions)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("model_kind", &TrainConfig::model_kind)
        .def_readwrite("epsilon", &TrainConfig::epsilon);

    py::class_<Checkpoint>(m, "Checkpoint")
        .def_readonly("episode", &Checkpoint::episode)
        .def_property_readonly("mean_episode_length",
                               [](const Checkpoint& c) { return c.stats.mean_episode_length; })
        .def_property_readonly("last_loss",
                               [](const Checkpoint& c) { return c.stats.last_loss; });

    m.def("train",
          [](const TrainConfig& cfg) { return train(cfg); },
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("evaluate_policy",
          [](const Dataset& ds, const Checkpoint& ck) {
              const PolicyRollout r = evaluate_policy(ds, ck.params, ck.config.beta);
              return py::make_tuple(r.result, r.discounted_return);
          },
          py::arg("dataset"), py::arg("checkpoint"));

    m.def("save_dataset", &save_dataset, py::arg("dataset"), py::arg("path"));
    m.def("load_dataset", &load_dataset, py::arg("path"));
    m.def("load_correspondences", &load_correspondences, py::arg("path"),
          py::arg("epsilon") = 0.01);
    m.def("save_checkpoint", &save_checkpoint, py::arg("checkpoint"), py::arg("path"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

    m.def("run_cli", &run_cli, py::arg("args"),
          "Invoke the command line front end in-process; returns the exit code.");
}
