#pragma once

#include <cstdint>
#include <vector>

#include "polar/code.hpp"

namespace polar {

/// LLR sign convention: positive means bit 0 is more likely.
inline constexpr double kLlrClip = 40.0;

double clip_llr(double v);

/// Exact sum-product check-node combination 2*atanh(tanh(a/2)*tanh(b/2)).
double boxplus(double a, double b);

enum class Schedule {
    flooding,
    stage_sweep,  // forward through expansion levels, then backward
};

struct DecodeResult {
    std::vector<std::uint8_t> bits;       // codeword estimate, length n
    std::vector<std::uint8_t> info_bits;  // unfrozen values, length k
    bool converged = false;
    int iterations = 0;
};

inline constexpr int kDefaultBpIters = 200;

/// Non-systematic encoding: u has 0 at frozen labels and info elsewhere,
/// returns u * F(m).
std::vector<std::uint8_t> encode(const PolarCodeSpec& code,
                                 const std::vector<std::uint8_t>& info);

/// Systematic encoding: info placed verbatim at unfrozen coordinates, frozen
/// coordinates solved from parity_check(code) * x = 0.
std::vector<std::uint8_t> systematic_encode(const PolarCodeSpec& code,
                                            const std::vector<std::uint8_t>& info);

/// Unfrozen entries of u = x * F(m) (F is self-inverse).
std::vector<std::uint8_t> extract_info(const PolarCodeSpec& code,
                                       const std::vector<std::uint8_t>& codeword);

/// In-place polar transform x -> x * F(m) for length-2^m vectors.
void polar_transform(std::vector<std::uint8_t>& x);

/// Successive cancellation on the f/g butterfly recursion; one pass,
/// always converged.
DecodeResult sc_decode(const PolarCodeSpec& code, const std::vector<double>& llrs);

/// Sum-product on the expanded G-space graph fe_full(m): frozen originals
/// pinned to +clip, coordinate checks carry the channel values.
DecodeResult bp_decode_g(const PolarCodeSpec& code, const std::vector<double>& llrs,
                         Schedule schedule = Schedule::flooding,
                         int max_iters = kDefaultBpIters);

/// Sum-product in H-space: same expanded topology with variable and check
/// roles reversed; only the S_F-labeled terminal checks are active.
DecodeResult bp_decode_h(const PolarCodeSpec& code, const std::vector<double>& llrs,
                         Schedule schedule = Schedule::flooding,
                         int max_iters = kDefaultBpIters);

/// Sign rule: bit 0 for positive, bit 1 for negative, bit 0 on exact zero.
std::vector<std::uint8_t> hard_decision(const std::vector<double>& llrs);

}  // namespace polar
