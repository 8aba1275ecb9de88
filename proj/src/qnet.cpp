#include "ares/qnet.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "ares/errors.hpp"

namespace ares {

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs store doubles little-endian");

namespace {

Layer zero_layer(int rows, int cols) {
    Layer l;
    l.rows = rows;
    l.cols = cols;
    l.w.assign(static_cast<std::size_t>(rows) * cols, 0.0);
    l.b.assign(rows, 0.0);
    return l;
}

Layer xavier_layer(int rows, int cols, Rng& rng) {
    Layer l = zero_layer(rows, cols);
    const double limit = std::sqrt(6.0 / (cols + rows));
    for (double& w : l.w) w = (2.0 * rng.uniform() - 1.0) * limit;
    return l;
}

// y = W x + b into out, row-major weights
void affine(const Layer& l, std::span<const double> in, std::vector<double>& out) {
    out.resize(l.rows);
    for (int r = 0; r < l.rows; ++r) {
        const double* wr = l.w.data() + static_cast<std::size_t>(r) * l.cols;
        double sum = l.b[r];
        for (int c = 0; c < l.cols; ++c) sum += wr[c] * in[c];
        out[r] = sum;
    }
}

} // namespace

void NetSpec::validate() const {
    if (input_dim < 1) throw std::invalid_argument("net input_dim must be at least 1");
    for (int d : trunk_dims) {
        if (d < 1) throw std::invalid_argument("net trunk layer widths must be at least 1");
    }
    if (history_dim < 0) throw std::invalid_argument("net history_dim must not be negative");
    if (num_actions < 2) throw std::invalid_argument("net num_actions must be at least 2");
}

void Layer::zero() {
    std::fill(w.begin(), w.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
}

std::size_t NetParams::param_count() const {
    std::size_t n = head.w.size() + head.b.size();
    for (const Layer& l : trunk) n += l.w.size() + l.b.size();
    return n;
}

void NetGrads::zero() {
    for (Layer& l : trunk) l.zero();
    head.zero();
}

void NetGrads::scale(double s) {
    for (Layer& l : trunk) {
        for (double& v : l.w) v *= s;
        for (double& v : l.b) v *= s;
    }
    for (double& v : head.w) v *= s;
    for (double& v : head.b) v *= s;
}

NetParams init_params(const NetSpec& spec, Rng& rng) {
    spec.validate();
    NetParams p;
    p.spec = spec;
    int in = spec.input_dim;
    for (int dim : spec.trunk_dims) {
        p.trunk.push_back(xavier_layer(dim, in, rng));
        in = dim;
    }
    p.head = xavier_layer(spec.num_actions, spec.head_in(), rng);
    return p;
}

NetGrads make_grads(const NetSpec& spec) {
    spec.validate();
    NetGrads g;
    int in = spec.input_dim;
    for (int dim : spec.trunk_dims) {
        g.trunk.push_back(zero_layer(dim, in));
        in = dim;
    }
    g.head = zero_layer(spec.num_actions, spec.head_in());
    return g;
}

void forward(const NetParams& p, std::span<const double> input, std::span<const double> history,
             ForwardCache& cache) {
    const NetSpec& spec = p.spec;
    if (static_cast<int>(input.size()) != spec.input_dim) {
        throw std::invalid_argument("net input has the wrong dimension");
    }
    if (static_cast<int>(history.size()) != spec.history_dim) {
        throw std::invalid_argument("net history input has the wrong dimension");
    }

    cache.acts.resize(p.trunk.size());
    std::span<const double> cur = input;
    for (std::size_t i = 0; i < p.trunk.size(); ++i) {
        affine(p.trunk[i], cur, cache.acts[i]);
        for (double& v : cache.acts[i]) v = v > 0.0 ? v : 0.0;
        cur = cache.acts[i];
    }

    cache.head_in.resize(spec.head_in());
    std::copy(cur.begin(), cur.end(), cache.head_in.begin());
    std::copy(history.begin(), history.end(), cache.head_in.begin() + cur.size());
    affine(p.head, cache.head_in, cache.q);
}

std::vector<double> q_values(const NetParams& p, const FrameState& state) {
    ForwardCache cache;
    forward(p, state.trunk_features(), state.history_features(), cache);
    return std::move(cache.q);
}

void backward(const NetParams& p, const ForwardCache& cache, std::span<const double> input,
              std::span<const double> history, int action, double td_error, NetGrads& grads) {
    const NetSpec& spec = p.spec;
    if (action < 0 || action >= spec.num_actions) {
        throw std::invalid_argument("backward action index out of range");
    }
    if (static_cast<int>(cache.q.size()) != spec.num_actions ||
        static_cast<int>(cache.head_in.size()) != spec.head_in() ||
        cache.acts.size() != p.trunk.size()) {
        throw std::invalid_argument("forward cache does not match this network");
    }
    if (static_cast<int>(input.size()) != spec.input_dim ||
        static_cast<int>(history.size()) != spec.history_dim) {
        throw std::invalid_argument("backward inputs do not match the network shape");
    }

    // head: only the chosen action's row sees the error
    const int hc = p.head.cols;
    grads.head.b[action] += td_error;
    double* ghw = grads.head.w.data() + static_cast<std::size_t>(action) * hc;
    for (int c = 0; c < hc; ++c) ghw[c] += td_error * cache.head_in[c];

    // the history block of head_in has nothing upstream, so only the trunk
    // slice of the head row propagates further back
    const int t_out = spec.trunk_out();
    std::vector<double> d_cur(t_out);
    const double* hw = p.head.w.data() + static_cast<std::size_t>(action) * hc;
    for (int c = 0; c < t_out; ++c) d_cur[c] = td_error * hw[c];

    for (int i = static_cast<int>(p.trunk.size()) - 1; i >= 0; --i) {
        const Layer& l = p.trunk[i];
        const std::vector<double>& act = cache.acts[i];
        const std::span<const double> in =
            i == 0 ? input : std::span<const double>(cache.acts[i - 1]);
        std::vector<double> d_prev(l.cols, 0.0);
        Layer& gl = grads.trunk[i];
        for (int r = 0; r < l.rows; ++r) {
            if (act[r] <= 0.0) continue; // ReLU gate
            const double dz = d_cur[r];
            gl.b[r] += dz;
            double* gw = gl.w.data() + static_cast<std::size_t>(r) * l.cols;
            const double* wr = l.w.data() + static_cast<std::size_t>(r) * l.cols;
            for (int c = 0; c < l.cols; ++c) {
                gw[c] += dz * in[c];
                d_prev[c] += dz * wr[c];
            }
        }
        d_cur = std::move(d_prev);
    }
}

AdamState AdamState::make(const NetSpec& spec, AdamConfig cfg) {
    spec.validate();
    std::size_t n = 0;
    int in = spec.input_dim;
    for (int dim : spec.trunk_dims) {
        n += static_cast<std::size_t>(dim) * in + dim;
        in = dim;
    }
    n += static_cast<std::size_t>(spec.num_actions) * spec.head_in() + spec.num_actions;

    AdamState s;
    s.cfg = cfg;
    s.m.assign(n, 0.0);
    s.v.assign(n, 0.0);
    return s;
}

void adam_step(NetParams& p, const NetGrads& grads, AdamState& opt) {
    ++opt.step;
    const AdamConfig& c = opt.cfg;
    const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(opt.step));
    const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(opt.step));

    std::size_t k = 0;
    auto update = [&](std::vector<double>& theta, const std::vector<double>& g) {
        for (std::size_t i = 0; i < theta.size(); ++i, ++k) {
            double& m = opt.m[k];
            double& v = opt.v[k];
            m = c.beta1 * m + (1.0 - c.beta1) * g[i];
            v = c.beta2 * v + (1.0 - c.beta2) * g[i] * g[i];
            theta[i] -= c.lr * (m / bc1) / (std::sqrt(v / bc2) + c.eps);
        }
    };
    for (std::size_t i = 0; i < p.trunk.size(); ++i) {
        update(p.trunk[i].w, grads.trunk[i].w);
        update(p.trunk[i].b, grads.trunk[i].b);
    }
    update(p.head.w, grads.head.w);
    update(p.head.b, grads.head.b);
    if (k != opt.m.size()) {
        throw std::invalid_argument("optimizer state does not match the network");
    }
}

void save_params(const NetParams& p, const std::filesystem::path& path,
                 const nlohmann::json& meta) {
    nlohmann::json header;
    header["format"] = "ares-qnet";
    header["version"] = 1;
    header["input_dim"] = p.spec.input_dim;
    header["trunk_dims"] = p.spec.trunk_dims;
    header["history_dim"] = p.spec.history_dim;
    header["num_actions"] = p.spec.num_actions;
    header["meta"] = meta;

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write checkpoint: " + path.string());
    os << header.dump() << '\n';

    auto write_layer = [&os](const Layer& l) {
        os.write(reinterpret_cast<const char*>(l.w.data()),
                 static_cast<std::streamsize>(l.w.size() * sizeof(double)));
        os.write(reinterpret_cast<const char*>(l.b.data()),
                 static_cast<std::streamsize>(l.b.size() * sizeof(double)));
    };
    for (const Layer& l : p.trunk) write_layer(l);
    write_layer(p.head);
    os.flush();
    if (!os) throw IoError("checkpoint write failed: " + path.string());
}

NetParams load_params(const std::filesystem::path& path, nlohmann::json* meta_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open checkpoint: " + path.string());

    std::string line;
    if (!std::getline(is, line)) {
        throw ConfigError("checkpoint has no header line: " + path.string());
    }
    const nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded()) {
        throw ConfigError("checkpoint header is not valid JSON: " + path.string());
    }

    NetSpec spec;
    try {
        if (header.at("format").get<std::string>() != "ares-qnet") {
            throw ConfigError("not a q-network checkpoint: " + path.string());
        }
        if (header.at("version").get<int>() != 1) {
            throw ConfigError("unsupported checkpoint version in " + path.string());
        }
        spec.input_dim = header.at("input_dim").get<int>();
        spec.trunk_dims = header.at("trunk_dims").get<std::vector<int>>();
        spec.history_dim = header.at("history_dim").get<int>();
        spec.num_actions = header.at("num_actions").get<int>();
        spec.validate();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed checkpoint header in " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("checkpoint declares an invalid network in " + path.string() + ": " +
                          e.what());
    }

    NetParams p;
    p.spec = spec;
    auto read_layer = [&](Layer& l, int rows, int cols) {
        l = zero_layer(rows, cols);
        is.read(reinterpret_cast<char*>(l.w.data()),
                static_cast<std::streamsize>(l.w.size() * sizeof(double)));
        is.read(reinterpret_cast<char*>(l.b.data()),
                static_cast<std::streamsize>(l.b.size() * sizeof(double)));
        if (!is) throw ConfigError("checkpoint blob is truncated: " + path.string());
    };
    int in = spec.input_dim;
    for (int dim : spec.trunk_dims) {
        p.trunk.emplace_back();
        read_layer(p.trunk.back(), dim, in);
        in = dim;
    }
    read_layer(p.head, spec.num_actions, spec.head_in());

    is.peek();
    if (!is.eof()) throw ConfigError("checkpoint has trailing bytes: " + path.string());

    if (meta_out) *meta_out = header.value("meta", nlohmann::json::object());
    return p;
}

} // namespace ares
