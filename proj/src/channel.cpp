#include "polar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace polar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("POLAR_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    // Counter-based split of the master seed: one independent stream per trial.
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ (trial + 1)));
}

void validate_channel(const ChannelModel& ch) {
    if (const auto* bec = std::get_if<Bec>(&ch)) {
        if (!(bec->eps >= 0.0 && bec->eps <= 1.0)) {
            throw std::invalid_argument("BEC erasure probability must be in [0,1]");
        }
    } else if (const auto* bsc = std::get_if<Bsc>(&ch)) {
        if (!(bsc->p >= 0.0 && bsc->p <= 0.5)) {
            throw std::invalid_argument("BSC crossover probability must be in [0,0.5]");
        }
    } else if (const auto* awgn = std::get_if<BiAwgn>(&ch)) {
        if (!(awgn->sigma > 0.0)) {
            throw std::invalid_argument("AWGN sigma must be positive");
        }
    }
}

std::string channel_name(const ChannelModel& ch) {
    if (std::holds_alternative<Bec>(ch)) return "bec";
    if (std::holds_alternative<Bsc>(ch)) return "bsc";
    return "awgn";
}

double channel_param(const ChannelModel& ch) {
    if (const auto* bec = std::get_if<Bec>(&ch)) return bec->eps;
    if (const auto* bsc = std::get_if<Bsc>(&ch)) return bsc->p;
    return std::get<BiAwgn>(ch).sigma;
}

std::vector<double> channel_llrs(const ChannelModel& ch,
                                 const std::vector<std::uint8_t>& codeword,
                                 std::mt19937_64& rng) {
    validate_channel(ch);
    std::vector<double> llrs(codeword.size(), 0.0);
    if (const auto* bec = std::get_if<Bec>(&ch)) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < codeword.size(); ++i) {
            const bool erased = u(rng) < bec->eps;
            llrs[i] = erased ? 0.0 : (codeword[i] ? -kLlrClip : kLlrClip);
        }
    } else if (const auto* bsc = std::get_if<Bsc>(&ch)) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double mag =
            bsc->p == 0.0 ? kLlrClip : clip_llr(std::log((1.0 - bsc->p) / bsc->p));
        for (std::size_t i = 0; i < codeword.size(); ++i) {
            const std::uint8_t received = codeword[i] ^ (u(rng) < bsc->p ? 1 : 0);
            llrs[i] = received ? -mag : mag;
        }
    } else {
        const double sigma = std::get<BiAwgn>(ch).sigma;
        std::normal_distribution<double> noise(0.0, sigma);
        for (std::size_t i = 0; i < codeword.size(); ++i) {
            const double y = (codeword[i] ? -1.0 : 1.0) + noise(rng);
            llrs[i] = clip_llr(2.0 * y / (sigma * sigma));
        }
    }
    return llrs;
}

std::string decoder_name(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::sc: return "sc";
        case DecoderKind::bp_g: return "bp-g";
        case DecoderKind::bp_h: return "bp-h";
    }
    return "unknown";
}

namespace {

struct TrialCounts {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t undetected = 0;
};

TrialCounts run_range(const PolarCodeSpec& code, const ChannelModel& ch,
                      const DecoderParams& params, std::uint64_t lo, std::uint64_t hi,
                      std::uint64_t seed) {
    TrialCounts counts;
    const auto unfrozen = code.unfrozen();
    for (std::uint64_t t = lo; t < hi; ++t) {
        auto rng = trial_rng(seed, t);
        std::vector<std::uint8_t> info(static_cast<std::size_t>(code.k), 0);
        if (!params.all_zero) {
            std::uniform_int_distribution<int> bit(0, 1);
            for (auto& b : info) b = static_cast<std::uint8_t>(bit(rng));
        }
        const auto codeword =
            params.systematic ? systematic_encode(code, info) : encode(code, info);
        const auto llrs = channel_llrs(ch, codeword, rng);

        DecodeResult res;
        switch (params.kind) {
            case DecoderKind::sc:
                res = sc_decode(code, llrs);
                break;
            case DecoderKind::bp_g:
                res = bp_decode_g(code, llrs, params.schedule, params.max_iters);
                break;
            case DecoderKind::bp_h:
                res = bp_decode_h(code, llrs, params.schedule, params.max_iters);
                break;
        }

        // Information bits are judged under the transmitted encoding map.
        std::vector<std::uint8_t> decoded_info;
        if (params.systematic) {
            decoded_info.reserve(unfrozen.size());
            for (int label : unfrozen) {
                decoded_info.push_back(res.bits[static_cast<std::size_t>(label)]);
            }
        } else {
            decoded_info = res.info_bits;
        }
        std::uint64_t wrong = 0;
        for (std::size_t i = 0; i < info.size(); ++i) {
            if (info[i] != decoded_info[i]) ++wrong;
        }
        counts.bit_errors += wrong;
        if (wrong > 0) {
            ++counts.frame_errors;
            if (res.converged && params.kind != DecoderKind::sc) {
                ++counts.undetected;
            }
        }
    }
    return counts;
}

}  // namespace

SimResult run_monte_carlo(const PolarCodeSpec& code, const ChannelModel& ch,
                          const DecoderParams& params, std::uint64_t trials,
                          std::uint64_t seed, int threads) {
    if (trials == 0) {
        throw std::invalid_argument("run_monte_carlo: trials must be at least 1");
    }
    validate_channel(ch);

    const int n_threads =
        static_cast<int>(std::min<std::uint64_t>(trials, resolve_threads(threads)));
    std::vector<TrialCounts> partial(static_cast<std::size_t>(n_threads));
    if (n_threads == 1) {
        partial[0] = run_range(code, ch, params, 0, trials, seed);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t hi = std::min(trials, lo + chunk);
            pool.emplace_back([&, lo, hi, w] {
                partial[static_cast<std::size_t>(w)] =
                    run_range(code, ch, params, lo, hi, seed);
            });
        }
        for (auto& th : pool) th.join();
    }

    SimResult r;
    r.trials = trials;
    for (const auto& c : partial) {
        r.bit_errors += c.bit_errors;
        r.frame_errors += c.frame_errors;
        r.undetected_frame_errors += c.undetected;
    }
    r.ber = code.k > 0
                ? static_cast<double>(r.bit_errors) /
                      (static_cast<double>(trials) * static_cast<double>(code.k))
                : 0.0;
    r.fer = static_cast<double>(r.frame_errors) / static_cast<double>(trials);
    r.seed = seed;
    r.decoder = decoder_name(params.kind);
    r.channel = ch;
    r.n = code.n;
    r.k = code.k;
    if (const auto* bsc = std::get_if<Bsc>(&ch)) {
        r.degenerate_channel = bsc->p == 0.5;  // LLRs carry no information
    } else if (const auto* bec = std::get_if<Bec>(&ch)) {
        r.degenerate_channel = bec->eps == 1.0;
    }
    return r;
}

std::string sim_csv_header() {
    return "channel,param,decoder,n,k,trials,bit_errors,frame_errors,ber,fer,seed";
}

std::string SimResult::csv_row() const {
    std::ostringstream out;
    out.precision(10);
    out << channel_name(channel) << ',' << channel_param(channel) << ',' << decoder << ','
        << n << ',' << k << ',' << trials << ',' << bit_errors << ',' << frame_errors
        << ',' << ber << ',' << fer << ',' << seed;
    return out.str();
}

std::string SimResult::to_json() const {
    nlohmann::json j;
    j["channel"] = channel_name(channel);
    j["param"] = channel_param(channel);
    j["decoder"] = decoder;
    j["n"] = n;
    j["k"] = k;
    j["trials"] = trials;
    j["bit_errors"] = bit_errors;
    j["frame_errors"] = frame_errors;
    j["ber"] = ber;
    j["fer"] = fer;
    j["seed"] = seed;
    j["undetected_frame_errors"] = undetected_frame_errors;
    j["degenerate_channel"] = degenerate_channel;
    return j.dump();
}

}  // namespace polar
