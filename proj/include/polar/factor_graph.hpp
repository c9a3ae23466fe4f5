#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polar/bitmatrix.hpp"

namespace polar {

enum class NodeKind {
    original_variable,  // information bit v_j, tag = j
    intermediate,       // hidden sum introduced by expansion, tag = recursion level
    coordinate_check,   // terminal check tied to code coordinate x_j, tag = j
    internal_check,     // expansion-introduced check, tag = recursion level
    trivial_copy,       // SC-graph repetition node, tag = recursion level
};

struct NodeRole {
    NodeKind kind;
    int tag;

    bool operator==(const NodeRole&) const = default;
};

std::string role_name(const NodeRole& role);

/// Raised by expand_pair when the chosen rows share fewer than two columns.
struct no_four_cycle_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bipartite graph with role-labeled nodes. Immutable after construction;
/// edge list is sorted and duplicate-free.
struct LabeledFactorGraph {
    int n_var = 0;
    int n_chk = 0;
    std::vector<std::pair<int, int>> edges;  // (var index, chk index)
    std::vector<NodeRole> var_roles;
    std::vector<NodeRole> chk_roles;

    BitMatrix biadjacency() const;  // rows = variable side, cols = check side

    std::vector<std::vector<int>> var_neighbors() const;
    std::vector<std::vector<int>> chk_neighbors() const;

    /// Throws if an edge index is out of range or an edge repeats.
    void validate() const;

    /// alist text: "n_var n_chk", max degrees, degree lists, then 1-indexed
    /// zero-padded neighbor lists (variables first).
    std::string to_alist() const;

    std::string to_json() const;
};

/// Graph of a plain matrix: rows become original variables, columns
/// coordinate checks.
LabeledFactorGraph graph_from_matrix(const BitMatrix& mat);

/// One 4-cycle elimination step: clears the four crossing entries of the
/// first two columns shared by rows r1 and r2, then appends one hidden
/// variable column and one constraint row tying the pair together.
BitMatrix expand_pair(const BitMatrix& mat, std::size_t r1, std::size_t r2);

/// The one-level expansion block matrix [[0,0,I],[0,F(m-1),I],[F(m-1),0,I]]
/// of side 3 * 2^(m-1); requires m >= 2.
BitMatrix expand_step(int m);

/// Size after step i of the staged expansion: i * 2^(m-1) + 2^m.
long long staged_size(int m, int i);

/// Fully expanded 4-cycle-free graph, side (m+1) * 2^(m-1).
/// Rows 0..N-1 are the original variables, columns 0..N-1 hold the
/// coordinate checks (indices carried in the roles).
LabeledFactorGraph fe_full(int m);

/// Conventional SC graph, side m * 2^m, built from the four-block recursion
/// with both child blocks expanded recursively.
LabeledFactorGraph fe_sc_full(int m);

/// H-space expansion: the transpose view of fe_full(m). Variable side comes
/// from fe_full's check columns (N coordinate variables plus hidden sums),
/// check side from fe_full's variable rows (terminal checks labeled by the
/// original row index plus internal checks). Which terminal checks are
/// active for a given code is decided by the decoder, not here.
LabeledFactorGraph he_full(int m);

/// Exact girth by BFS from every node; nullopt for forests.
std::optional<int> girth(const LabeledFactorGraph& g);

}  // namespace polar
