#include "polar/codec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "polar/factor_graph.hpp"

namespace polar {

double clip_llr(double v) {
    return std::clamp(v, -kLlrClip, kLlrClip);
}

double boxplus(double a, double b) {
    const double t = std::tanh(a / 2.0) * std::tanh(b / 2.0);
    return clip_llr(2.0 * std::atanh(t));
}

std::vector<std::uint8_t> hard_decision(const std::vector<double>& llrs) {
    std::vector<std::uint8_t> bits(llrs.size());
    for (std::size_t i = 0; i < llrs.size(); ++i) {
        bits[i] = llrs[i] < 0.0 ? 1 : 0;  // exact zero maps to bit 0
    }
    return bits;
}

void polar_transform(std::vector<std::uint8_t>& x) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("polar_transform: length must be a power of two");
    }
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                x[j] ^= x[j + h];
            }
        }
    }
}

std::vector<std::uint8_t> encode(const PolarCodeSpec& code,
                                 const std::vector<std::uint8_t>& info) {
    if (info.size() != static_cast<std::size_t>(code.k)) {
        throw std::invalid_argument("encode: info length mismatch");
    }
    std::vector<std::uint8_t> u(static_cast<std::size_t>(code.n), 0);
    std::size_t next = 0;
    for (int label : code.unfrozen()) {
        u[static_cast<std::size_t>(label)] = info[next++] & 1;
    }
    polar_transform(u);
    return u;
}

std::vector<std::uint8_t> systematic_encode(const PolarCodeSpec& code,
                                            const std::vector<std::uint8_t>& info) {
    if (info.size() != static_cast<std::size_t>(code.k)) {
        throw std::invalid_argument("systematic_encode: info length mismatch");
    }
    std::vector<std::uint8_t> x(static_cast<std::size_t>(code.n), 0);
    std::size_t next = 0;
    for (int label : code.unfrozen()) {
        x[static_cast<std::size_t>(label)] = info[next++] & 1;
    }
    if (code.frozen.empty()) {
        return x;
    }

    // The S_F x S_F submatrix of F(m)^T is lower-unitriangular once labels
    // are taken in descending order; forward substitution then fills the
    // frozen coordinates from parity_check(code) * x = 0.
    const BitMatrix ft = f_matrix(code.m).transposed();
    const std::size_t f = code.frozen.size();
    std::vector<int> desc(code.frozen.rbegin(), code.frozen.rend());
    BitMatrix l(f, f);
    std::vector<std::uint8_t> rhs(f, 0);
    for (std::size_t a = 0; a < f; ++a) {
        const auto row = static_cast<std::size_t>(desc[a]);
        for (std::size_t b = 0; b < f; ++b) {
            if (ft.get(row, static_cast<std::size_t>(desc[b]))) {
                l.set(a, b, true);
            }
        }
        std::uint8_t acc = 0;
        for (int label : code.unfrozen()) {
            acc ^= (ft.get(row, static_cast<std::size_t>(label)) &&
                    x[static_cast<std::size_t>(label)])
                       ? 1
                       : 0;
        }
        rhs[a] = acc;
    }
    const auto solved = solve_lower_unitriangular(l, rhs);
    for (std::size_t a = 0; a < f; ++a) {
        x[static_cast<std::size_t>(desc[a])] = solved[a];
    }
    return x;
}

std::vector<std::uint8_t> extract_info(const PolarCodeSpec& code,
                                       const std::vector<std::uint8_t>& codeword) {
    if (codeword.size() != static_cast<std::size_t>(code.n)) {
        throw std::invalid_argument("extract_info: length mismatch");
    }
    std::vector<std::uint8_t> u = codeword;
    polar_transform(u);  // F(m) is self-inverse
    std::vector<std::uint8_t> info;
    info.reserve(static_cast<std::size_t>(code.k));
    for (int label : code.unfrozen()) {
        info.push_back(u[static_cast<std::size_t>(label)]);
    }
    return info;
}

namespace {

void sc_recurse(const PolarCodeSpec& code, const std::vector<double>& llr, int base,
                std::vector<std::uint8_t>& u_hat) {
    const std::size_t n = llr.size();
    if (n == 1) {
        if (code.is_frozen(base)) {
            u_hat[static_cast<std::size_t>(base)] = 0;
        } else {
            u_hat[static_cast<std::size_t>(base)] = llr[0] < 0.0 ? 1 : 0;
        }
        return;
    }
    const std::size_t half = n / 2;
    std::vector<double> upper(half);
    for (std::size_t i = 0; i < half; ++i) {
        upper[i] = boxplus(llr[i], llr[i + half]);
    }
    sc_recurse(code, upper, base, u_hat);

    std::vector<std::uint8_t> partial(u_hat.begin() + base,
                                      u_hat.begin() + base + static_cast<long>(half));
    polar_transform(partial);
    std::vector<double> lower(half);
    for (std::size_t i = 0; i < half; ++i) {
        const double sign = partial[i] ? -1.0 : 1.0;
        lower[i] = clip_llr(llr[i + half] + sign * llr[i]);
    }
    sc_recurse(code, lower, base + static_cast<int>(half), u_hat);
}

}  // namespace

DecodeResult sc_decode(const PolarCodeSpec& code, const std::vector<double>& llrs) {
    if (llrs.size() != static_cast<std::size_t>(code.n)) {
        throw std::invalid_argument("sc_decode: llr length mismatch");
    }
    std::vector<std::uint8_t> u_hat(static_cast<std::size_t>(code.n), 0);
    sc_recurse(code, llrs, 0, u_hat);

    DecodeResult res;
    res.info_bits.reserve(static_cast<std::size_t>(code.k));
    for (int label : code.unfrozen()) {
        res.info_bits.push_back(u_hat[static_cast<std::size_t>(label)]);
    }
    res.bits = encode(code, res.info_bits);
    res.converged = true;
    res.iterations = 1;
    return res;
}

namespace {

struct Factor {
    std::vector<int> vars;
    int level = 0;  // 0 = terminal checks, otherwise expansion level
};

struct BpProblem {
    std::vector<double> prior;
    std::vector<Factor> factors;
    std::vector<int> coord_vars;  // variable id carrying coordinate x_j
};

struct BpOutcome {
    std::vector<double> beliefs;
    bool converged = false;
    int iterations = 0;
};

/// Sum-product with either flooding or level-ordered serial sweeps.
/// `certified` is evaluated on the coordinate beliefs after each iteration;
/// it must only accept fully decided (nonzero) coordinates.
BpOutcome run_sum_product(const BpProblem& p, Schedule schedule, int max_iters,
                          const std::function<bool(const std::vector<double>&)>& certified) {
    if (max_iters < 1) {
        throw std::invalid_argument("bp: max_iters must be at least 1");
    }
    const std::size_t n_factors = p.factors.size();
    std::vector<std::vector<double>> c2v(n_factors);
    for (std::size_t f = 0; f < n_factors; ++f) {
        c2v[f].assign(p.factors[f].vars.size(), 0.0);
    }
    std::vector<double> belief = p.prior;

    // Sweep order: terminal checks first (deepest in the recursion), then
    // internal levels upward; one forward plus one backward pass per iteration.
    std::vector<std::size_t> forward(n_factors);
    for (std::size_t f = 0; f < n_factors; ++f) forward[f] = f;
    std::stable_sort(forward.begin(), forward.end(), [&p](std::size_t a, std::size_t b) {
        return p.factors[a].level < p.factors[b].level;
    });

    auto factor_messages = [&p, &belief, &c2v](std::size_t f, std::vector<double>& out) {
        const Factor& fac = p.factors[f];
        const std::size_t deg = fac.vars.size();
        out.resize(deg);
        for (std::size_t s = 0; s < deg; ++s) {
            double combined = kLlrClip;  // empty XOR forces the lone neighbor to 0
            bool first = true;
            for (std::size_t t = 0; t < deg; ++t) {
                if (t == s) continue;
                const double v2c = clip_llr(
                    belief[static_cast<std::size_t>(fac.vars[t])] - c2v[f][t]);
                combined = first ? v2c : boxplus(combined, v2c);
                first = false;
            }
            out[s] = combined;
        }
    };

    BpOutcome result;
    std::vector<double> fresh;
    std::vector<std::vector<double>> next(n_factors);
    for (int iter = 1; iter <= max_iters; ++iter) {
        double max_delta = 0.0;
        if (schedule == Schedule::flooding) {
            for (std::size_t f = 0; f < n_factors; ++f) {
                factor_messages(f, fresh);
                next[f] = fresh;
            }
            belief = p.prior;
            for (std::size_t f = 0; f < n_factors; ++f) {
                for (std::size_t s = 0; s < next[f].size(); ++s) {
                    max_delta = std::max(max_delta, std::abs(next[f][s] - c2v[f][s]));
                    belief[static_cast<std::size_t>(p.factors[f].vars[s])] += next[f][s];
                }
            }
            c2v.swap(next);
        } else {
            auto sweep = [&](auto begin, auto end) {
                for (auto it = begin; it != end; ++it) {
                    const std::size_t f = *it;
                    factor_messages(f, fresh);
                    for (std::size_t s = 0; s < fresh.size(); ++s) {
                        const double delta = fresh[s] - c2v[f][s];
                        max_delta = std::max(max_delta, std::abs(delta));
                        belief[static_cast<std::size_t>(p.factors[f].vars[s])] += delta;
                        c2v[f][s] = fresh[s];
                    }
                }
            };
            sweep(forward.begin(), forward.end());
            sweep(forward.rbegin(), forward.rend());
        }

        result.iterations = iter;
        std::vector<double> coord_beliefs(p.coord_vars.size());
        for (std::size_t j = 0; j < p.coord_vars.size(); ++j) {
            coord_beliefs[j] = belief[static_cast<std::size_t>(p.coord_vars[j])];
        }
        if (certified(coord_beliefs)) {
            result.converged = true;
            break;
        }
        if (max_delta == 0.0) {
            break;  // fixed point, nothing further can change
        }
    }
    result.beliefs = std::move(belief);
    return result;
}

std::vector<int> coordinate_check_columns(const LabeledFactorGraph& fe, int n) {
    std::vector<int> cols(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < fe.n_chk; ++c) {
        const NodeRole& r = fe.chk_roles[static_cast<std::size_t>(c)];
        if (r.kind == NodeKind::coordinate_check) {
            cols[static_cast<std::size_t>(r.tag)] = c;
        }
    }
    return cols;
}

std::vector<int> original_variable_rows(const LabeledFactorGraph& fe, int n) {
    std::vector<int> rows(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < fe.n_var; ++v) {
        const NodeRole& r = fe.var_roles[static_cast<std::size_t>(v)];
        if (r.kind == NodeKind::original_variable) {
            rows[static_cast<std::size_t>(r.tag)] = v;
        }
    }
    return rows;
}

/// Shared certificate: all coordinates decided (nonzero belief) and the
/// hard decisions satisfy the code's parity checks.
std::function<bool(const std::vector<double>&)> codeword_certificate(
    const PolarCodeSpec& code, const BitMatrix& h) {
    return [&code, &h](const std::vector<double>& coord_beliefs) {
        for (double b : coord_beliefs) {
            if (b == 0.0) return false;
        }
        if (code.frozen.empty()) return true;
        const auto bits = hard_decision(coord_beliefs);
        const auto syndrome = mul_mat_vec(h, bits);
        return std::all_of(syndrome.begin(), syndrome.end(),
                           [](std::uint8_t s) { return s == 0; });
    };
}

DecodeResult finish_bp(const PolarCodeSpec& code, const BpProblem& p, const BpOutcome& run,
                       const std::vector<int>& info_belief_vars) {
    DecodeResult res;
    res.converged = run.converged;
    res.iterations = run.iterations;
    std::vector<double> coord_beliefs(p.coord_vars.size());
    for (std::size_t j = 0; j < p.coord_vars.size(); ++j) {
        coord_beliefs[j] = run.beliefs[static_cast<std::size_t>(p.coord_vars[j])];
    }
    res.bits = hard_decision(coord_beliefs);
    if (run.converged) {
        res.info_bits = extract_info(code, res.bits);  // consistent with bits
    } else if (!info_belief_vars.empty()) {
        for (int v : info_belief_vars) {
            res.info_bits.push_back(run.beliefs[static_cast<std::size_t>(v)] < 0.0 ? 1 : 0);
        }
    } else {
        res.info_bits = extract_info(code, res.bits);
    }
    return res;
}

}  // namespace

DecodeResult bp_decode_g(const PolarCodeSpec& code, const std::vector<double>& llrs,
                         Schedule schedule, int max_iters) {
    if (llrs.size() != static_cast<std::size_t>(code.n)) {
        throw std::invalid_argument("bp_decode_g: llr length mismatch");
    }
    const LabeledFactorGraph fe = fe_full(code.m);
    const auto chk_vars = fe.chk_neighbors();

    BpProblem p;
    // Graph variables first, then one attached coordinate variable per
    // coordinate check carrying the channel value.
    p.prior.assign(static_cast<std::size_t>(fe.n_var + code.n), 0.0);
    for (int v = 0; v < fe.n_var; ++v) {
        const NodeRole& r = fe.var_roles[static_cast<std::size_t>(v)];
        if (r.kind == NodeKind::original_variable && code.is_frozen(r.tag)) {
            p.prior[static_cast<std::size_t>(v)] = kLlrClip;
        }
    }
    p.coord_vars.resize(static_cast<std::size_t>(code.n));
    for (int j = 0; j < code.n; ++j) {
        p.coord_vars[static_cast<std::size_t>(j)] = fe.n_var + j;
        p.prior[static_cast<std::size_t>(fe.n_var + j)] =
            clip_llr(llrs[static_cast<std::size_t>(j)]);
    }
    for (int c = 0; c < fe.n_chk; ++c) {
        const NodeRole& r = fe.chk_roles[static_cast<std::size_t>(c)];
        Factor f;
        f.vars = chk_vars[static_cast<std::size_t>(c)];
        if (r.kind == NodeKind::coordinate_check) {
            f.vars.push_back(fe.n_var + r.tag);
            f.level = 0;
        } else {
            f.level = r.tag;
        }
        p.factors.push_back(std::move(f));
    }

    const BitMatrix h = parity_check(code);
    const auto run = run_sum_product(p, schedule, max_iters, codeword_certificate(code, h));

    std::vector<int> info_vars;
    const auto orig_rows = original_variable_rows(fe, code.n);
    for (int label : code.unfrozen()) {
        info_vars.push_back(orig_rows[static_cast<std::size_t>(label)]);
    }
    return finish_bp(code, p, run, info_vars);
}

DecodeResult bp_decode_h(const PolarCodeSpec& code, const std::vector<double>& llrs,
                         Schedule schedule, int max_iters) {
    if (llrs.size() != static_cast<std::size_t>(code.n)) {
        throw std::invalid_argument("bp_decode_h: llr length mismatch");
    }
    // Same expanded topology as the G-space graph, read in H-space: rows
    // become the coordinate and hidden-sum variables, columns become checks.
    // Terminal checks stay only for labels in S_F; internal checks always.
    const LabeledFactorGraph fe = fe_full(code.m);
    const auto chk_vars = fe.chk_neighbors();

    BpProblem p;
    p.prior.assign(static_cast<std::size_t>(fe.n_var), 0.0);
    p.coord_vars.assign(static_cast<std::size_t>(code.n), -1);
    for (int v = 0; v < fe.n_var; ++v) {
        const NodeRole& r = fe.var_roles[static_cast<std::size_t>(v)];
        if (r.kind == NodeKind::original_variable) {
            p.prior[static_cast<std::size_t>(v)] = clip_llr(llrs[static_cast<std::size_t>(r.tag)]);
            p.coord_vars[static_cast<std::size_t>(r.tag)] = v;
        }
    }
    for (int c = 0; c < fe.n_chk; ++c) {
        const NodeRole& r = fe.chk_roles[static_cast<std::size_t>(c)];
        if (r.kind == NodeKind::coordinate_check && !code.is_frozen(r.tag)) {
            continue;  // inactive terminal check
        }
        Factor f;
        f.vars = chk_vars[static_cast<std::size_t>(c)];
        f.level = r.kind == NodeKind::coordinate_check ? 0 : r.tag;
        p.factors.push_back(std::move(f));
    }

    const BitMatrix h = parity_check(code);
    const auto run = run_sum_product(p, schedule, max_iters, codeword_certificate(code, h));
    return finish_bp(code, p, run, {});
}

}  // namespace polar
