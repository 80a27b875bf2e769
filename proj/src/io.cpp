#include "maxcon/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace maxcon {

namespace {

using nlohmann::json;

constexpr int kDatasetVersion = 1;
constexpr int kCheckpointVersion = 1;
constexpr char kCheckpointMagic[8] = {'M', 'X', 'C', 'K', '0', '0', '0', '1'};

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<int>(i)) = arr[i].get<double>();
    return v;
}

json config_to_json(const TrainConfig& c) {
    return json{{"episodes", c.episodes},
                {"n_points", c.n_points},
                {"outlier_rate_lo", c.outlier_rate_lo},
                {"outlier_rate_hi", c.outlier_rate_hi},
                {"beta", c.beta},
                {"learning_rate", c.learning_rate},
                {"batch_size", c.batch_size},
                {"eps_start", c.eps_start},
                {"eps_end", c.eps_end},
                {"eps_decay", c.eps_decay},
                {"replay_capacity", c.replay_capacity},
                {"target_sync_period", c.target_sync_period},
                {"warmup_transitions", c.warmup_transitions},
                {"seed", c.seed},
                {"model_kind", to_string(c.model_kind)},
                {"epsilon", c.epsilon}};
}

TrainConfig config_from_json(const json& j) {
    TrainConfig c;
    c.episodes = j.at("episodes").get<int>();
    c.n_points = j.at("n_points").get<int>();
    c.outlier_rate_lo = j.at("outlier_rate_lo").get<double>();
    c.outlier_rate_hi = j.at("outlier_rate_hi").get<double>();
    c.beta = j.at("beta").get<double>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.batch_size = j.at("batch_size").get<int>();
    c.eps_start = j.at("eps_start").get<double>();
    c.eps_end = j.at("eps_end").get<double>();
    c.eps_decay = j.at("eps_decay").get<double>();
    c.replay_capacity = j.at("replay_capacity").get<std::size_t>();
    c.target_sync_period = j.at("target_sync_period").get<int>();
    c.warmup_transitions = j.at("warmup_transitions").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.model_kind = model_kind_from_string(j.at("model_kind").get<std::string>());
    c.epsilon = j.at("epsilon").get<double>();
    return c;
}

struct BlockRef {
    std::string name;
    Eigen::MatrixXd* matrix = nullptr;
    Eigen::VectorXd* vector = nullptr;
};

/// Weight blocks in their declared (serialized) order.
std::vector<BlockRef> weight_blocks(Checkpoint& ck) {
    std::vector<BlockRef> blocks;
    auto add_params = [&](NetworkParams& p, const std::string& prefix) {
        auto add_layer = [&](DenseLayer& l, const std::string& name) {
            blocks.push_back({prefix + name + ".w", &l.w, nullptr});
            blocks.push_back({prefix + name + ".bias", nullptr, &l.bias});
        };
        add_layer(p.ec1, "ec1");
        add_layer(p.ec2, "ec2");
        add_layer(p.mlp1, "mlp1");
        add_layer(p.mlp2, "mlp2");
        add_layer(p.mlp3, "mlp3");
    };
    add_params(ck.params, "params.");
    add_params(ck.target_params, "target.");
    add_params(ck.adam.m, "adam_m.");
    add_params(ck.adam.v, "adam_v.");
    return blocks;
}

json manifest_for(const NetworkParams& p) {
    auto layer = [](const DenseLayer& l) {
        return json{{"out", l.w.rows()}, {"in", l.w.cols()}};
    };
    return json{{"input_dim", p.input_dim}, {"k", p.k},
                {"ec1", layer(p.ec1)}, {"ec2", layer(p.ec2)},
                {"mlp1", layer(p.mlp1)}, {"mlp2", layer(p.mlp2)}, {"mlp3", layer(p.mlp3)}};
}

void shape_from_manifest(NetworkParams& p, const json& m) {
    p.input_dim = m.at("input_dim").get<int>();
    p.k = m.at("k").get<int>();
    auto resize = [&](DenseLayer& l, const char* name) {
        const json& lj = m.at(name);
        l.w.resize(lj.at("out").get<int>(), lj.at("in").get<int>());
        l.bias.resize(lj.at("out").get<int>());
    };
    resize(p.ec1, "ec1");
    resize(p.ec2, "ec2");
    resize(p.mlp1, "mlp1");
    resize(p.mlp2, "mlp2");
    resize(p.mlp3, "mlp3");
}

}  // namespace

void save_dataset(const Dataset& dataset, const std::string& path) {
    json points = json::array();
    for (const DataPoint& p : dataset.points) {
        json jp{{"a", vector_to_json(p.a)}, {"b", p.b}};
        if (p.raw) jp["raw"] = vector_to_json(*p.raw);
        points.push_back(std::move(jp));
    }
    json j{{"version", kDatasetVersion},
           {"model_kind", to_string(dataset.model_kind)},
           {"d", dataset.d},
           {"epsilon", dataset.epsilon},
           {"points", std::move(points)}};
    if (dataset.planted) {
        j["planted"] = json{{"theta_hat", vector_to_json(dataset.planted->theta_hat)},
                            {"outlier_indices", dataset.planted->outlier_indices}};
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_dataset: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("save_dataset: write failed for " + path);
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_dataset: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("load_dataset: " + path + ": " + e.what());
    }
    if (!j.contains("version") || j["version"].get<int>() != kDatasetVersion)
        throw IoError("load_dataset: unsupported dataset version in " + path);

    Dataset ds;
    ds.model_kind = model_kind_from_string(j.at("model_kind").get<std::string>());
    ds.d = j.at("d").get<int>();
    ds.epsilon = j.at("epsilon").get<double>();
    for (const json& jp : j.at("points")) {
        DataPoint p;
        p.a = vector_from_json(jp.at("a"));
        p.b = jp.at("b").get<double>();
        if (jp.contains("raw")) p.raw = vector_from_json(jp["raw"]);
        ds.points.push_back(std::move(p));
    }
    if (j.contains("planted")) {
        Planted planted;
        planted.theta_hat = vector_from_json(j["planted"].at("theta_hat"));
        planted.outlier_indices = j["planted"].at("outlier_indices").get<std::vector<int>>();
        ds.planted = std::move(planted);
    }
    ds.validate();
    return ds;
}

Dataset load_correspondences(const std::string& path, double epsilon) {
    std::ifstream in(path);
    if (!in) throw IoError("load_correspondences: cannot open " + path);

    Dataset ds;
    ds.model_kind = ModelKind::FundamentalLin;
    ds.d = 8;
    ds.epsilon = epsilon;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double value = 0.0;
            try {
                value = std::stod(cell, &pos);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
            if (cell.find_first_not_of(" \t\r", pos) != std::string::npos) {
                numeric = false;
                break;
            }
            fields.push_back(value);
        }
        if (!numeric) {
            if (line_no == 1) continue;  // header row
            throw IoError("load_correspondences: " + path + ": non-numeric field at line " +
                          std::to_string(line_no));
        }
        if (fields.size() != 4)
            throw IoError("load_correspondences: " + path + ": expected 4 fields at line " +
                          std::to_string(line_no));
        ds.points.push_back(linearize_correspondence({fields[0], fields[1]},
                                                     {fields[2], fields[3]}));
    }
    if (ds.size() < ds.d + 1)
        throw IoError("load_correspondences: " + path + ": need at least " +
                      std::to_string(ds.d + 1) + " correspondences, got " +
                      std::to_string(ds.size()));
    return ds;
}

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path) {
    json header{{"format_version", kCheckpointVersion},
                {"manifest", manifest_for(checkpoint.params)},
                {"train_config", config_to_json(checkpoint.config)},
                {"episode", checkpoint.episode},
                {"stats",
                 json{{"env_steps", checkpoint.stats.env_steps},
                      {"updates", checkpoint.stats.updates},
                      {"mean_episode_length", checkpoint.stats.mean_episode_length},
                      {"last_loss", checkpoint.stats.last_loss},
                      {"discarded_episodes", checkpoint.stats.discarded_episodes}}},
                {"adam_t", checkpoint.adam.t},
                {"rng_state", checkpoint.rng_state}};
    const std::string header_str = header.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_checkpoint: cannot open " + path);
    out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
    const std::uint64_t len = header_str.size();
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));

    Checkpoint& mutable_ck = const_cast<Checkpoint&>(checkpoint);
    for (const BlockRef& block : weight_blocks(mutable_ck)) {
        if (block.matrix) {
            // Row-major on disk regardless of Eigen's storage order.
            const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm =
                *block.matrix;
            out.write(reinterpret_cast<const char*>(rm.data()),
                      static_cast<std::streamsize>(sizeof(double) * rm.size()));
        } else {
            out.write(reinterpret_cast<const char*>(block.vector->data()),
                      static_cast<std::streamsize>(sizeof(double) * block.vector->size()));
        }
    }
    if (!out) throw IoError("save_checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_checkpoint: cannot open " + path);

    char magic[sizeof(kCheckpointMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
        throw IoError("load_checkpoint: " + path + " is not a checkpoint file");
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), sizeof(len));
    if (!in || len == 0 || len > (1ull << 30))
        throw IoError("load_checkpoint: corrupt header length in " + path);
    std::string header_str(len, '\0');
    in.read(header_str.data(), static_cast<std::streamsize>(len));
    if (!in) throw IoError("load_checkpoint: truncated header in " + path);

    json header;
    try {
        header = json::parse(header_str);
    } catch (const json::exception& e) {
        throw IoError("load_checkpoint: bad header in " + path + ": " + e.what());
    }
    if (header.at("format_version").get<int>() != kCheckpointVersion)
        throw IoError("load_checkpoint: unsupported format version in " + path);

    Checkpoint ck;
    const json& manifest = header.at("manifest");
    shape_from_manifest(ck.params, manifest);
    shape_from_manifest(ck.target_params, manifest);
    shape_from_manifest(ck.adam.m, manifest);
    shape_from_manifest(ck.adam.v, manifest);
    ck.config = config_from_json(header.at("train_config"));
    ck.episode = header.at("episode").get<int>();
    const json& stats = header.at("stats");
    ck.stats.env_steps = stats.at("env_steps").get<long>();
    ck.stats.updates = stats.at("updates").get<long>();
    ck.stats.mean_episode_length = stats.at("mean_episode_length").get<double>();
    ck.stats.last_loss = stats.at("last_loss").get<double>();
    ck.stats.discarded_episodes = stats.at("discarded_episodes").get<int>();
    ck.adam.t = header.at("adam_t").get<long>();
    ck.rng_state = header.at("rng_state").get<std::uint64_t>();

    for (const BlockRef& block : weight_blocks(ck)) {
        if (block.matrix) {
            Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(
                block.matrix->rows(), block.matrix->cols());
            in.read(reinterpret_cast<char*>(rm.data()),
                    static_cast<std::streamsize>(sizeof(double) * rm.size()));
            if (!in)
                throw IoError("load_checkpoint: truncated weight block " + block.name + " in " + path);
            *block.matrix = rm;
        } else {
            in.read(reinterpret_cast<char*>(block.vector->data()),
                    static_cast<std::streamsize>(sizeof(double) * block.vector->size()));
            if (!in)
                throw IoError("load_checkpoint: truncated weight block " + block.name + " in " + path);
        }
    }
    in.peek();
    if (!in.eof()) throw IoError("load_checkpoint: trailing bytes in " + path);
    try {
        ck.params.validate();
    } catch (const ContractViolation& e) {
        throw IoError(std::string("load_checkpoint: inconsistent manifest: ") + e.what());
    }
    return ck;
}

}  // namespace maxcon
