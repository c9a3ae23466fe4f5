#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "polar/codec.hpp"

namespace polar {

struct Bec {
    double eps;  // erasure probability in [0, 1]
};

struct Bsc {
    double p;  // crossover probability in [0, 0.5]
};

struct BiAwgn {
    double sigma;  // noise std deviation, antipodal mapping 0 -> +1, 1 -> -1
};

using ChannelModel = std::variant<Bec, Bsc, BiAwgn>;

void validate_channel(const ChannelModel& ch);
std::string channel_name(const ChannelModel& ch);
double channel_param(const ChannelModel& ch);

/// Channel LLRs for one transmitted codeword, consuming `rng`.
/// BEC: erased -> 0, else +/-clip. BSC: +/-ln((1-p)/p) after flips.
/// BiAWGN: 2y/sigma^2, clipped.
std::vector<double> channel_llrs(const ChannelModel& ch,
                                 const std::vector<std::uint8_t>& codeword,
                                 std::mt19937_64& rng);

enum class DecoderKind { sc, bp_g, bp_h };

std::string decoder_name(DecoderKind kind);

struct DecoderParams {
    DecoderKind kind = DecoderKind::sc;
    Schedule schedule = Schedule::flooding;
    int max_iters = kDefaultBpIters;
    bool systematic = false;  // systematic encoding of the transmitted frames
    bool all_zero = false;    // send the all-zero frame instead of random info
};

struct SimResult {
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    std::uint64_t seed = 0;
    std::string decoder;
    ChannelModel channel = Bec{0.0};
    int n = 0;
    int k = 0;
    // Extra bookkeeping beyond the CSV row:
    std::uint64_t undetected_frame_errors = 0;  // converged but wrong
    bool degenerate_channel = false;            // zero-information parameters

    std::string csv_row() const;
    std::string to_json() const;
};

/// Header: channel,param,decoder,n,k,trials,bit_errors,frame_errors,ber,fer,seed
std::string sim_csv_header();

/// Seeded Monte-Carlo run. Each trial draws from an independent substream of
/// (seed, trial), so the outcome depends only on the inputs and seed, never
/// on `threads` (0 means: use POLAR_THREADS or 1).
SimResult run_monte_carlo(const PolarCodeSpec& code, const ChannelModel& ch,
                          const DecoderParams& params, std::uint64_t trials,
                          std::uint64_t seed, int threads = 0);

/// Substream generator for trial t of a master seed (exposed for tests).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

}  // namespace polar
