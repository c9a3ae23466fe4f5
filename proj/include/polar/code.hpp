#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polar/bitmatrix.hpp"

namespace polar {

/// A polar code identity: block length n = 2^m, dimension k and the frozen
/// label set S_F (frozen bits take value 0).
struct PolarCodeSpec {
    int m = 0;
    int n = 0;
    int k = 0;
    std::vector<int> frozen;  // sorted, distinct, in [0, n)
    std::string construction = "explicit";

    bool is_frozen(int label) const;
    std::vector<int> unfrozen() const;  // ascending complement of the frozen set
};

PolarCodeSpec new_code(int m, std::vector<int> frozen_set,
                       std::string construction = "explicit");

/// BEC Bhattacharyya construction: runs Z- = 2Z - Z^2, Z+ = Z^2 from Z = eps,
/// consuming index bits MSB-first (0 -> minus, 1 -> plus), and freezes the
/// n - k largest-Z indices; ties freeze the smaller index.
std::vector<int> frozen_bec(int m, int k, double eps);

/// Reed-Muller-style construction: freezes the n - k indices of smallest
/// row weight 2^popcount(i); ties freeze the smaller index.
std::vector<int> frozen_rm(int m, int k);

/// Per-index Bhattacharyya parameters of the BEC recursion (test hook).
std::vector<double> bec_bhattacharyya(int m, double eps);

/// k x n matrix of the unfrozen rows of F(m), ascending label order.
BitMatrix generator(const PolarCodeSpec& code);

/// (n-k) x n matrix of the S_F-labeled rows of F(m)^T, ascending label order.
BitMatrix parity_check(const PolarCodeSpec& code);

/// The dual expressed as a polar code on reversed coordinates:
/// frozen set { n-1-j : j unfrozen in C } plus the reversal flag.
struct DualCode {
    PolarCodeSpec code;
    bool coordinate_reversal = true;
};

DualCode dual(const PolarCodeSpec& code);

bool is_codeword(const std::vector<std::uint8_t>& x, const PolarCodeSpec& code);

/// Row partition of F(m) and F(m)^T used by systematic encoding:
/// pi lists frozen labels then unfrozen labels, G = pi(F(m)) = [G_F; G_U],
/// pi(F(m)^T) = [H_U; H_F], with G_U * H_U^T = 0.
struct SystematicPartition {
    std::vector<int> pi;
    BitMatrix g_f;
    BitMatrix g_u;
    BitMatrix h_u;
    BitMatrix h_f;
};

SystematicPartition systematic_partition(const PolarCodeSpec& code);

std::string to_json(const PolarCodeSpec& code);
PolarCodeSpec code_from_json(const std::string& text);

}  // namespace polar
