#include "polar/factor_graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace polar {

namespace {

constexpr int kMaxGraphExponent = 20;

void check_exponent(int m, int min_m) {
    if (m < min_m || m > kMaxGraphExponent) {
        throw std::invalid_argument("graph builder: exponent out of range");
    }
}

std::string kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::original_variable: return "original_variable";
        case NodeKind::intermediate: return "intermediate";
        case NodeKind::coordinate_check: return "coordinate_check";
        case NodeKind::internal_check: return "internal_check";
        case NodeKind::trivial_copy: return "trivial_copy";
    }
    return "unknown";
}

void finalize(LabeledFactorGraph& g) {
    std::sort(g.edges.begin(), g.edges.end());
    g.validate();
}

}  // namespace

std::string role_name(const NodeRole& role) {
    return kind_name(role.kind) + ":" + std::to_string(role.tag);
}

BitMatrix LabeledFactorGraph::biadjacency() const {
    BitMatrix b(static_cast<std::size_t>(n_var), static_cast<std::size_t>(n_chk));
    for (const auto& [v, c] : edges) {
        b.set(static_cast<std::size_t>(v), static_cast<std::size_t>(c), true);
    }
    return b;
}

std::vector<std::vector<int>> LabeledFactorGraph::var_neighbors() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_var));
    for (const auto& [v, c] : edges) {
        adj[static_cast<std::size_t>(v)].push_back(c);
    }
    return adj;
}

std::vector<std::vector<int>> LabeledFactorGraph::chk_neighbors() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_chk));
    for (const auto& [v, c] : edges) {
        adj[static_cast<std::size_t>(c)].push_back(v);
    }
    return adj;
}

void LabeledFactorGraph::validate() const {
    if (n_var <= 0 || n_chk <= 0) {
        throw std::invalid_argument("LabeledFactorGraph: empty side");
    }
    if (var_roles.size() != static_cast<std::size_t>(n_var) ||
        chk_roles.size() != static_cast<std::size_t>(n_chk)) {
        throw std::invalid_argument("LabeledFactorGraph: role list size mismatch");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& [v, c] = edges[i];
        if (v < 0 || v >= n_var || c < 0 || c >= n_chk) {
            throw std::invalid_argument("LabeledFactorGraph: edge index out of range");
        }
        if (i > 0 && edges[i] == edges[i - 1]) {
            throw std::invalid_argument("LabeledFactorGraph: duplicate edge");
        }
    }
}

std::string LabeledFactorGraph::to_alist() const {
    const auto vadj = var_neighbors();
    const auto cadj = chk_neighbors();
    std::size_t max_v = 0, max_c = 0;
    for (const auto& a : vadj) max_v = std::max(max_v, a.size());
    for (const auto& a : cadj) max_c = std::max(max_c, a.size());

    std::ostringstream out;
    out << n_var << ' ' << n_chk << '\n';
    out << max_v << ' ' << max_c << '\n';
    for (int i = 0; i < n_var; ++i) {
        out << vadj[static_cast<std::size_t>(i)].size() << (i + 1 < n_var ? ' ' : '\n');
    }
    for (int i = 0; i < n_chk; ++i) {
        out << cadj[static_cast<std::size_t>(i)].size() << (i + 1 < n_chk ? ' ' : '\n');
    }
    auto emit = [&out](const std::vector<std::vector<int>>& adj, std::size_t width) {
        for (const auto& a : adj) {
            for (std::size_t s = 0; s < width; ++s) {
                if (s) out << ' ';
                out << (s < a.size() ? a[s] + 1 : 0);  // alist is 1-based, 0 pads
            }
            out << '\n';
        }
    };
    emit(vadj, max_v);
    emit(cadj, max_c);
    return out.str();
}

std::string LabeledFactorGraph::to_json() const {
    nlohmann::json j;
    j["n_var"] = n_var;
    j["n_chk"] = n_chk;
    auto e = nlohmann::json::array();
    for (const auto& [v, c] : edges) {
        e.push_back({v, c});
    }
    j["edges"] = std::move(e);
    auto roles = [](const std::vector<NodeRole>& rs) {
        auto arr = nlohmann::json::array();
        for (const auto& r : rs) arr.push_back(role_name(r));
        return arr;
    };
    j["var_roles"] = roles(var_roles);
    j["chk_roles"] = roles(chk_roles);
    return j.dump();
}

LabeledFactorGraph graph_from_matrix(const BitMatrix& mat) {
    LabeledFactorGraph g;
    g.n_var = static_cast<int>(mat.rows());
    g.n_chk = static_cast<int>(mat.cols());
    for (int i = 0; i < g.n_var; ++i) {
        g.var_roles.push_back({NodeKind::original_variable, i});
    }
    for (int j = 0; j < g.n_chk; ++j) {
        g.chk_roles.push_back({NodeKind::coordinate_check, j});
    }
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        for (std::size_t j = 0; j < mat.cols(); ++j) {
            if (mat.get(i, j)) {
                g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    finalize(g);
    return g;
}

BitMatrix expand_pair(const BitMatrix& mat, std::size_t r1, std::size_t r2) {
    if (r1 >= mat.rows() || r2 >= mat.rows() || r1 == r2) {
        throw std::invalid_argument("expand_pair: bad row pair");
    }
    std::vector<std::size_t> shared;
    for (std::size_t j = 0; j < mat.cols() && shared.size() < 2; ++j) {
        if (mat.get(r1, j) && mat.get(r2, j)) {
            shared.push_back(j);
        }
    }
    if (shared.size() < 2) {
        throw no_four_cycle_error("expand_pair: rows share fewer than two columns");
    }
    const std::size_t c1 = shared[0], c2 = shared[1];

    BitMatrix out(mat.rows() + 1, mat.cols() + 1);
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        for (std::size_t j = 0; j < mat.cols(); ++j) {
            if (mat.get(i, j)) {
                out.set(i, j, true);
            }
        }
    }
    out.set(r1, c1, false);
    out.set(r1, c2, false);
    out.set(r2, c1, false);
    out.set(r2, c2, false);
    out.set(r1, mat.cols(), true);
    out.set(r2, mat.cols(), true);
    out.set(mat.rows(), c1, true);
    out.set(mat.rows(), c2, true);
    out.set(mat.rows(), mat.cols(), true);
    return out;
}

BitMatrix expand_step(int m) {
    check_exponent(m, 2);
    const std::size_t half = std::size_t{1} << (m - 1);
    const BitMatrix f = f_matrix(m - 1);
    BitMatrix out(3 * half, 3 * half);
    for (std::size_t i = 0; i < half; ++i) {
        out.set(i, 2 * half + i, true);             // [0 0 I]
        out.set(half + i, 2 * half + i, true);      // [0 F I]
        out.set(2 * half + i, 2 * half + i, true);  // [F 0 I]
        for (std::size_t j = 0; j < half; ++j) {
            if (f.get(i, j)) {
                out.set(half + i, half + j, true);
                out.set(2 * half + i, j, true);
            }
        }
    }
    return out;
}

long long staged_size(int m, int i) {
    check_exponent(m, 2);
    if (i < 1 || i > m - 1) {
        throw std::invalid_argument("staged_size: step out of range");
    }
    return static_cast<long long>(i) * (1LL << (m - 1)) + (1LL << m);
}

LabeledFactorGraph fe_full(int m) {
    check_exponent(m, 1);
    if (m == 1) {
        return graph_from_matrix(f_matrix(1));
    }
    const int half = 1 << (m - 1);
    const LabeledFactorGraph sub = fe_full(m - 1);
    const int t = sub.n_var;  // children are square

    LabeledFactorGraph g;
    g.n_var = half + 2 * t;
    g.n_chk = 2 * t + half;

    // Rows: [v_upper | child-2 (x_right = v_lower * F) | child-1 (x_left = w * F)]
    for (int i = 0; i < half; ++i) {
        g.var_roles.push_back({NodeKind::original_variable, i});
    }
    for (const NodeRole& r : sub.var_roles) {
        if (r.kind == NodeKind::original_variable) {
            g.var_roles.push_back({NodeKind::original_variable, half + r.tag});
        } else {
            g.var_roles.push_back(r);
        }
    }
    for (const NodeRole& r : sub.var_roles) {
        if (r.kind == NodeKind::original_variable) {
            g.var_roles.push_back({NodeKind::intermediate, m});  // the w nodes
        } else {
            g.var_roles.push_back(r);
        }
    }

    // Columns: [child-1 | child-2 | c_w]
    for (const NodeRole& r : sub.chk_roles) {
        g.chk_roles.push_back(r);
    }
    for (const NodeRole& r : sub.chk_roles) {
        if (r.kind == NodeKind::coordinate_check) {
            g.chk_roles.push_back({NodeKind::coordinate_check, half + r.tag});
        } else {
            g.chk_roles.push_back(r);
        }
    }
    for (int i = 0; i < half; ++i) {
        g.chk_roles.push_back({NodeKind::internal_check, m});
    }

    for (const auto& [v, c] : sub.edges) {
        g.edges.emplace_back(half + t + v, c);  // child-1 block
        g.edges.emplace_back(half + v, t + c);  // child-2 block
    }
    for (int i = 0; i < half; ++i) {
        const int cw = 2 * t + i;  // constraint w_i + v_upper_i + v_lower_i = 0
        g.edges.emplace_back(i, cw);
        g.edges.emplace_back(half + i, cw);
        g.edges.emplace_back(half + t + i, cw);
    }
    finalize(g);
    return g;
}

LabeledFactorGraph fe_sc_full(int m) {
    check_exponent(m, 1);
    if (m == 1) {
        return graph_from_matrix(f_matrix(1));
    }
    const int half = 1 << (m - 1);
    const LabeledFactorGraph sub = fe_sc_full(m - 1);
    const int t = sub.n_var;

    LabeledFactorGraph g;
    g.n_var = 2 * half + 2 * t;
    g.n_chk = 2 * t + 2 * half;

    // Rows: [v_upper | v_lower | child-2 | child-1]
    for (int i = 0; i < 2 * half; ++i) {
        g.var_roles.push_back({NodeKind::original_variable, i});
    }
    for (const NodeRole& r : sub.var_roles) {
        if (r.kind == NodeKind::original_variable) {
            g.var_roles.push_back({NodeKind::trivial_copy, m});  // copies of v_lower
        } else {
            g.var_roles.push_back(r);
        }
    }
    for (const NodeRole& r : sub.var_roles) {
        if (r.kind == NodeKind::original_variable) {
            g.var_roles.push_back({NodeKind::intermediate, m});  // the w nodes
        } else {
            g.var_roles.push_back(r);
        }
    }

    // Columns: [child-1 | child-2 | c_w | copy checks]
    for (const NodeRole& r : sub.chk_roles) {
        g.chk_roles.push_back(r);
    }
    for (const NodeRole& r : sub.chk_roles) {
        if (r.kind == NodeKind::coordinate_check) {
            g.chk_roles.push_back({NodeKind::coordinate_check, half + r.tag});
        } else {
            g.chk_roles.push_back(r);
        }
    }
    for (int i = 0; i < 2 * half; ++i) {
        g.chk_roles.push_back({NodeKind::internal_check, m});
    }

    for (const auto& [v, c] : sub.edges) {
        g.edges.emplace_back(2 * half + t + v, c);  // child-1 block
        g.edges.emplace_back(2 * half + v, t + c);  // child-2 block
    }
    for (int i = 0; i < half; ++i) {
        const int cw = 2 * t + i;            // w_i = v_upper_i + v_lower_i
        const int copy = 2 * t + half + i;   // child-2 input repeats v_lower_i
        g.edges.emplace_back(i, cw);
        g.edges.emplace_back(half + i, cw);
        g.edges.emplace_back(half + i, copy);
        g.edges.emplace_back(2 * half + i, copy);
        g.edges.emplace_back(2 * half + t + i, cw);
    }
    finalize(g);
    return g;
}

LabeledFactorGraph he_full(int m) {
    const LabeledFactorGraph fe = fe_full(m);
    LabeledFactorGraph g;
    g.n_var = fe.n_chk;
    g.n_chk = fe.n_var;
    g.var_roles = fe.chk_roles;
    g.chk_roles = fe.var_roles;
    g.edges.reserve(fe.edges.size());
    for (const auto& [v, c] : fe.edges) {
        g.edges.emplace_back(c, v);
    }
    finalize(g);
    return g;
}

std::optional<int> girth(const LabeledFactorGraph& g) {
    // One vertex set: variables first, then checks shifted by n_var.
    const int n = g.n_var + g.n_chk;
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int v = g.edges[e].first;
        const int c = g.n_var + g.edges[e].second;
        adj[static_cast<std::size_t>(v)].emplace_back(c, static_cast<int>(e));
        adj[static_cast<std::size_t>(c)].emplace_back(v, static_cast<int>(e));
    }

    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> via_edge(static_cast<std::size_t>(n));
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(via_edge.begin(), via_edge.end(), -1);
        std::deque<int> queue{root};
        dist[static_cast<std::size_t>(root)] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            if (best != std::numeric_limits<int>::max() &&
                2 * dist[static_cast<std::size_t>(u)] >= best) {
                break;
            }
            for (const auto& [w, e] : adj[static_cast<std::size_t>(u)]) {
                if (e == via_edge[static_cast<std::size_t>(u)]) continue;
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    via_edge[static_cast<std::size_t>(w)] = e;
                    queue.push_back(w);
                } else {
                    best = std::min(best, dist[static_cast<std::size_t>(u)] +
                                              dist[static_cast<std::size_t>(w)] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) {
        return std::nullopt;
    }
    return best;
}

}  // namespace polar
