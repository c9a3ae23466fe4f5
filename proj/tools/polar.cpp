// polar: construction, inspection, coding and simulation of polar codes on
// their expanded factor graphs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polar/channel.hpp"
#include "polar/codec.hpp"
#include "polar/factor_graph.hpp"

namespace {

using namespace polar;

std::vector<std::uint8_t> parse_bits(const std::string& s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0') {
            bits.push_back(0);
        } else if (c == '1') {
            bits.push_back(1);
        } else {
            throw std::invalid_argument("bit string may contain only '0' and '1'");
        }
    }
    return bits;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

/// Frozen-set syntax: explicit:<comma list> | bec:<k>:<eps> | rm:<k> | @file
PolarCodeSpec parse_code(int m, std::string spec) {
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw std::invalid_argument("cannot open frozen-set file " + spec.substr(1));
        std::ostringstream buf;
        buf << in.rdbuf();
        spec = buf.str();
        while (!spec.empty() && (spec.back() == '\n' || spec.back() == '\r' || spec.back() == ' ')) {
            spec.pop_back();
        }
    }
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "explicit") {
        std::vector<int> labels;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) labels.push_back(std::stoi(tok));
        }
        return new_code(m, std::move(labels));
    }
    if (head == "bec") {
        const auto sep = rest.find(':');
        if (sep == std::string::npos) throw std::invalid_argument("expected bec:<k>:<eps>");
        const int k = std::stoi(rest.substr(0, sep));
        const double eps = std::stod(rest.substr(sep + 1));
        return new_code(m, frozen_bec(m, k, eps), "bec:" + rest.substr(sep + 1));
    }
    if (head == "rm") {
        const int k = std::stoi(rest);
        return new_code(m, frozen_rm(m, k), "rm");
    }
    throw std::invalid_argument("unknown frozen-set syntax: " + spec);
}

ChannelModel parse_channel(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected <channel>:<param>");
    const std::string head = s.substr(0, colon);
    const double param = std::stod(s.substr(colon + 1));
    ChannelModel ch;
    if (head == "bec") {
        ch = Bec{param};
    } else if (head == "bsc") {
        ch = Bsc{param};
    } else if (head == "awgn") {
        ch = BiAwgn{param};
    } else {
        throw std::invalid_argument("unknown channel: " + head);
    }
    validate_channel(ch);
    return ch;
}

Schedule parse_schedule(const std::string& s) {
    if (s == "flooding") return Schedule::flooding;
    if (s == "stagesweep") return Schedule::stage_sweep;
    throw std::invalid_argument("unknown schedule: " + s);
}

DecoderKind parse_decoder(const std::string& s) {
    if (s == "sc") return DecoderKind::sc;
    if (s == "bp-g") return DecoderKind::bp_g;
    if (s == "bp-h") return DecoderKind::bp_h;
    throw std::invalid_argument("unknown decoder: " + s);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

std::string matrix_lines(const BitMatrix& mat) {
    // One '0'/'1' line per row; diff-friendly.
    std::string text;
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        for (std::size_t j = 0; j < mat.cols(); ++j) {
            text.push_back(mat.get(i, j) ? '1' : '0');
        }
        text.push_back('\n');
    }
    return text;
}

void print_graph_summary(const LabeledFactorGraph& g) {
    int counts[5] = {0, 0, 0, 0, 0};
    for (const auto& r : g.var_roles) counts[static_cast<int>(r.kind)]++;
    for (const auto& r : g.chk_roles) counts[static_cast<int>(r.kind)]++;
    std::cerr << "variables: " << g.n_var << ", checks: " << g.n_chk
              << ", edges: " << g.edges.size() << '\n'
              << "roles: original_variable=" << counts[0] << " intermediate=" << counts[1]
              << " coordinate_check=" << counts[2] << " internal_check=" << counts[3]
              << " trivial_copy=" << counts[4] << '\n';
}

LabeledFactorGraph build_graph(const std::string& which, int m) {
    if (which == "fe") return fe_full(m);
    if (which == "sc") return fe_sc_full(m);
    if (which == "he") return he_full(m);
    if (which == "base") return graph_from_matrix(f_matrix(m));
    throw std::invalid_argument("unknown graph: " + which);
}

int cmd_construct(int m, const std::string& graph, const std::string& format,
                  const std::string& out) {
    const LabeledFactorGraph g = build_graph(graph, m);
    if (format == "matrix") {
        write_output(out, matrix_lines(g.biadjacency()));
    } else if (format == "alist") {
        write_output(out, g.to_alist());
    } else if (format == "json") {
        write_output(out, g.to_json() + "\n");
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    print_graph_summary(g);
    return 0;
}

int cmd_girth(int m, const std::string& graph) {
    const auto g = girth(build_graph(graph, m));
    if (g) {
        std::cout << *g << '\n';
    } else {
        std::cout << "infinite\n";
    }
    return 0;
}

int cmd_code(int m, const std::string& frozen, const std::string& show) {
    const PolarCodeSpec code = parse_code(m, frozen);
    if (show == "gen") {
        std::cout << matrix_lines(generator(code));
    } else if (show == "pc") {
        std::cout << matrix_lines(parity_check(code));
    } else if (show == "dual") {
        const DualCode d = dual(code);
        std::cout << "frozen {";
        for (std::size_t i = 0; i < d.code.frozen.size(); ++i) {
            std::cout << (i ? "," : "") << d.code.frozen[i];
        }
        std::cout << "} coordinate_reversal=" << (d.coordinate_reversal ? "true" : "false")
                  << '\n';
    } else if (show == "json") {
        std::cout << to_json(code) << '\n';
    } else {
        throw std::invalid_argument("unknown --show value: " + show);
    }
    return 0;
}

int cmd_encode(int m, const std::string& frozen, const std::string& info, bool systematic) {
    const PolarCodeSpec code = parse_code(m, frozen);
    const auto bits = parse_bits(info);
    const auto x = systematic ? systematic_encode(code, bits) : encode(code, bits);
    std::cout << bits_to_string(x) << '\n';
    return 0;
}

int cmd_decode(int m, const std::string& frozen, const std::string& decoder,
               const std::string& schedule, int iters, const std::string& llrs_arg,
               const std::string& bits_arg) {
    const PolarCodeSpec code = parse_code(m, frozen);
    std::vector<double> llrs;
    if (!bits_arg.empty()) {
        for (auto b : parse_bits(bits_arg)) llrs.push_back(b ? -kLlrClip : kLlrClip);
    } else if (!llrs_arg.empty()) {
        std::stringstream ss(llrs_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) llrs.push_back(std::stod(tok));
    } else {
        throw std::invalid_argument("decode needs --llrs or --bits");
    }

    DecodeResult res;
    const DecoderKind kind = parse_decoder(decoder);
    switch (kind) {
        case DecoderKind::sc:
            res = sc_decode(code, llrs);
            break;
        case DecoderKind::bp_g:
            res = bp_decode_g(code, llrs, parse_schedule(schedule), iters);
            break;
        case DecoderKind::bp_h:
            res = bp_decode_h(code, llrs, parse_schedule(schedule), iters);
            break;
    }
    std::cout << bits_to_string(res.bits) << '\n'
              << bits_to_string(res.info_bits) << '\n'
              << "converged=" << (res.converged ? "true" : "false")
              << " iterations=" << res.iterations << '\n';
    return 0;
}

int cmd_simulate(int m, const std::string& frozen, const std::vector<std::string>& channels,
                 std::uint64_t trials, std::uint64_t seed, const std::string& decoder,
                 const std::string& schedule, int iters, bool systematic, bool all_zero,
                 const std::string& out, const std::string& format) {
    const PolarCodeSpec code = parse_code(m, frozen);
    DecoderParams params;
    params.kind = parse_decoder(decoder);
    params.schedule = parse_schedule(schedule);
    params.max_iters = iters;
    params.systematic = systematic;
    params.all_zero = all_zero;

    std::ostringstream doc;
    if (format == "csv") {
        doc << sim_csv_header() << '\n';
    } else if (format != "json") {
        throw std::invalid_argument("unknown format: " + format);
    }
    for (const auto& spec : channels) {
        const SimResult r = run_monte_carlo(code, parse_channel(spec), params, trials, seed);
        doc << (format == "csv" ? r.csv_row() : r.to_json()) << '\n';
    }
    write_output(out, doc.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polar code factor-graph toolkit: 4-cycle-free expanded graphs, the "
                 "conventional SC graph, dual-code machinery in H-space, systematic "
                 "encoding, and SC/BP decoding with a channel simulation harness."};
    app.require_subcommand(1);

    int m = 2;
    std::string graph = "fe", format = "matrix", out, frozen = "explicit:", show = "gen";
    std::string info, decoder = "sc", schedule = "flooding", llrs_arg, bits_arg;
    std::vector<std::string> channels;
    int iters = polar::kDefaultBpIters;
    bool systematic = false, all_zero = false;
    std::uint64_t trials = 1000, seed = 1;

    auto* construct = app.add_subcommand(
        "construct", "Build an expanded factor graph or its matrix: fe (4-cycle-free, "
                     "girth 8), sc (conventional SC graph), he (H-space transpose).");
    construct->add_option("--m", m, "Kernel exponent, N = 2^m")->required()->check(CLI::Range(1, 20));
    construct->add_option("--graph", graph, "fe | sc | he | base");
    construct->add_option("--format", format, "matrix | alist | json");
    construct->add_option("--out", out, "Output path (default stdout)");

    auto* girth_cmd = app.add_subcommand(
        "girth", "Exact shortest-cycle length of a graph (BFS from every node).");
    girth_cmd->add_option("--m", m, "Kernel exponent")->required()->check(CLI::Range(1, 20));
    girth_cmd->add_option("--graph", graph, "fe | sc | he | base");

    auto* code_cmd = app.add_subcommand(
        "code", "Show generator, parity-check (rows of F(m)^T in S_F) or the dual code.");
    code_cmd->add_option("--m", m, "Kernel exponent")->required()->check(CLI::Range(1, 20));
    code_cmd->add_option("--frozen", frozen, "explicit:<list> | bec:<k>:<eps> | rm:<k> | @file")
        ->required();
    code_cmd->add_option("--show", show, "gen | pc | dual | json");

    auto* encode_cmd = app.add_subcommand(
        "encode", "Encode information bits, optionally systematically (info verbatim at "
                  "unfrozen coordinates, frozen coordinates solved from the parity checks).");
    encode_cmd->add_option("--m", m, "Kernel exponent")->required()->check(CLI::Range(1, 20));
    encode_cmd->add_option("--frozen", frozen, "Frozen-set spec")->required();
    encode_cmd->add_option("--info", info, "Information bit string")->required();
    encode_cmd->add_flag("--systematic", systematic, "Systematic encoding");

    auto* decode_cmd = app.add_subcommand(
        "decode", "Decode channel LLRs with sc, bp-g (expanded generator graph) or bp-h "
                  "(parity graph with frozen/active checks swapped).");
    decode_cmd->add_option("--m", m, "Kernel exponent")->required()->check(CLI::Range(1, 20));
    decode_cmd->add_option("--frozen", frozen, "Frozen-set spec")->required();
    decode_cmd->add_option("--decoder", decoder, "sc | bp-g | bp-h");
    decode_cmd->add_option("--schedule", schedule, "flooding | stagesweep");
    decode_cmd->add_option("--iters", iters, "BP iteration cap")->check(CLI::PositiveNumber);
    decode_cmd->add_option("--llrs", llrs_arg, "Comma-separated channel LLRs");
    decode_cmd->add_option("--bits", bits_arg, "Noiseless received word (maps to +/-clip)");

    auto* sim_cmd = app.add_subcommand(
        "simulate", "Seeded Monte-Carlo BER/FER estimation over bec/bsc/awgn channels.");
    sim_cmd->add_option("--m", m, "Kernel exponent")->required()->check(CLI::Range(1, 20));
    sim_cmd->add_option("--frozen", frozen, "Frozen-set spec")->required();
    sim_cmd->add_option("--channel", channels, "bec:<eps> | bsc:<p> | awgn:<sigma> (repeatable)")
        ->required();
    sim_cmd->add_option("--trials", trials, "Trials per channel point")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "Master seed");
    sim_cmd->add_option("--decoder", decoder, "sc | bp-g | bp-h");
    sim_cmd->add_option("--schedule", schedule, "flooding | stagesweep");
    sim_cmd->add_option("--iters", iters, "BP iteration cap")->check(CLI::PositiveNumber);
    sim_cmd->add_flag("--systematic", systematic, "Transmit systematic encodings");
    sim_cmd->add_flag("--all-zero", all_zero, "Transmit the all-zero frame (faster)");
    sim_cmd->add_option("--out", out, "Output path (default stdout)");
    sim_cmd->add_option("--format", format, "csv | json")->default_val("csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_construct(m, graph, format, out);
        if (girth_cmd->parsed()) return cmd_girth(m, graph);
        if (code_cmd->parsed()) return cmd_code(m, frozen, show);
        if (encode_cmd->parsed()) return cmd_encode(m, frozen, info, systematic);
        if (decode_cmd->parsed())
            return cmd_decode(m, frozen, decoder, schedule, iters, llrs_arg, bits_arg);
        if (sim_cmd->parsed())
            return cmd_simulate(m, frozen, channels, trials, seed, decoder, schedule, iters,
                                systematic, all_zero, out, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
