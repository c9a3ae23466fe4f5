#include "polar/code.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace polar {

bool PolarCodeSpec::is_frozen(int label) const {
    return std::binary_search(frozen.begin(), frozen.end(), label);
}

std::vector<int> PolarCodeSpec::unfrozen() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) {
        if (!is_frozen(i)) out.push_back(i);
    }
    return out;
}

PolarCodeSpec new_code(int m, std::vector<int> frozen_set, std::string construction) {
    if (m < 1 || m > 20) {
        throw std::invalid_argument("new_code: exponent out of range");
    }
    const int n = 1 << m;
    std::sort(frozen_set.begin(), frozen_set.end());
    for (std::size_t i = 0; i < frozen_set.size(); ++i) {
        if (frozen_set[i] < 0 || frozen_set[i] >= n) {
            throw std::invalid_argument("new_code: frozen label out of range");
        }
        if (i > 0 && frozen_set[i] == frozen_set[i - 1]) {
            throw std::invalid_argument("new_code: duplicate frozen label");
        }
    }
    PolarCodeSpec code;
    code.m = m;
    code.n = n;
    code.k = n - static_cast<int>(frozen_set.size());
    code.frozen = std::move(frozen_set);
    code.construction = std::move(construction);
    return code;
}

std::vector<double> bec_bhattacharyya(int m, double eps) {
    if (m < 1 || m > 20) {
        throw std::invalid_argument("bec_bhattacharyya: exponent out of range");
    }
    if (eps < 0.0 || eps > 1.0) {
        throw std::invalid_argument("bec_bhattacharyya: erasure probability outside [0,1]");
    }
    const int n = 1 << m;
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double zi = eps;
        for (int b = m - 1; b >= 0; --b) {  // MSB-first
            if ((i >> b) & 1) {
                zi = zi * zi;
            } else {
                zi = 2.0 * zi - zi * zi;
            }
        }
        z[static_cast<std::size_t>(i)] = zi;
    }
    return z;
}

namespace {

std::vector<int> freeze_worst(int m, int k, const std::vector<double>& badness) {
    const int n = 1 << m;
    if (k < 0 || k > n) {
        throw std::invalid_argument("frozen-set construction: dimension out of range");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double za = badness[static_cast<std::size_t>(a)];
        const double zb = badness[static_cast<std::size_t>(b)];
        if (za != zb) return za > zb;
        return a < b;  // ties freeze the smaller index
    });
    std::vector<int> frozen(order.begin(), order.begin() + (n - k));
    std::sort(frozen.begin(), frozen.end());
    return frozen;
}

}  // namespace

std::vector<int> frozen_bec(int m, int k, double eps) {
    return freeze_worst(m, k, bec_bhattacharyya(m, eps));
}

std::vector<int> frozen_rm(int m, int k) {
    const int n = 1 << m;
    // Row weight of index i is 2^popcount(i); smaller weight = worse row.
    std::vector<double> badness(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        badness[static_cast<std::size_t>(i)] =
            -static_cast<double>(std::popcount(static_cast<unsigned>(i)));
    }
    return freeze_worst(m, k, badness);
}

BitMatrix generator(const PolarCodeSpec& code) {
    const BitMatrix f = f_matrix(code.m);
    BitMatrix g(static_cast<std::size_t>(code.k), static_cast<std::size_t>(code.n));
    std::size_t row = 0;
    for (int label : code.unfrozen()) {
        g.xor_row_from(row++, f, static_cast<std::size_t>(label));
    }
    return g;
}

BitMatrix parity_check(const PolarCodeSpec& code) {
    const BitMatrix ft = f_matrix(code.m).transposed();
    BitMatrix h(code.frozen.size(), static_cast<std::size_t>(code.n));
    std::size_t row = 0;
    for (int label : code.frozen) {
        h.xor_row_from(row++, ft, static_cast<std::size_t>(label));
    }
    return h;
}

DualCode dual(const PolarCodeSpec& code) {
    std::vector<int> dual_frozen;
    dual_frozen.reserve(static_cast<std::size_t>(code.k));
    for (int j : code.unfrozen()) {
        dual_frozen.push_back(code.n - 1 - j);
    }
    return DualCode{new_code(code.m, std::move(dual_frozen)), true};
}

bool is_codeword(const std::vector<std::uint8_t>& x, const PolarCodeSpec& code) {
    if (x.size() != static_cast<std::size_t>(code.n)) {
        throw std::invalid_argument("is_codeword: length mismatch");
    }
    if (code.frozen.empty()) {
        return true;  // rate-1 code has no checks
    }
    const auto syndrome = mul_mat_vec(parity_check(code), x);
    return std::all_of(syndrome.begin(), syndrome.end(),
                       [](std::uint8_t b) { return b == 0; });
}

SystematicPartition systematic_partition(const PolarCodeSpec& code) {
    const BitMatrix f = f_matrix(code.m);
    const BitMatrix ft = f.transposed();
    const auto unfrozen = code.unfrozen();

    SystematicPartition p{
        {},
        BitMatrix(code.frozen.size(), static_cast<std::size_t>(code.n)),
        BitMatrix(static_cast<std::size_t>(code.k), static_cast<std::size_t>(code.n)),
        BitMatrix(code.frozen.size(), static_cast<std::size_t>(code.n)),
        BitMatrix(static_cast<std::size_t>(code.k), static_cast<std::size_t>(code.n)),
    };
    p.pi.reserve(static_cast<std::size_t>(code.n));
    std::size_t row = 0;
    for (int label : code.frozen) {
        p.pi.push_back(label);
        p.g_f.xor_row_from(row, f, static_cast<std::size_t>(label));
        p.h_u.xor_row_from(row, ft, static_cast<std::size_t>(label));
        ++row;
    }
    row = 0;
    for (int label : unfrozen) {
        p.pi.push_back(label);
        p.g_u.xor_row_from(row, f, static_cast<std::size_t>(label));
        p.h_f.xor_row_from(row, ft, static_cast<std::size_t>(label));
        ++row;
    }
    return p;
}

std::string to_json(const PolarCodeSpec& code) {
    nlohmann::json j;
    j["m"] = code.m;
    j["n"] = code.n;
    j["k"] = code.k;
    j["frozen"] = code.frozen;
    j["construction"] = code.construction;
    return j.dump();
}

PolarCodeSpec code_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return new_code(j.at("m").get<int>(), j.at("frozen").get<std::vector<int>>(),
                    j.value("construction", std::string("explicit")));
}

}  // namespace polar
