#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpexp/bigint.hpp"
#include "gpexp/pmf.hpp"
#include "gpexp/rng.hpp"

namespace gpexp {

// Empirical composition of a length-n sequence over a finite alphabet.
struct TypeVector {
    int alphabet = 0;
    int n = 0;
    std::vector<int> counts;

    TypeVector() = default;
    TypeVector(int alphabet_size, std::vector<int> symbol_counts);
    static TypeVector of_sequence(std::span<const int> seq, int alphabet_size);
    JointPmf empirical() const;
};

// Per-given-symbol compositions; row g refines given_type.counts[g].
struct CondTypeVector {
    TypeVector given_type;
    int out_alphabet = 0;
    std::vector<int> counts; // row-major [given][out]

    CondTypeVector() = default;
    CondTypeVector(TypeVector given, int out_alphabet_size, std::vector<int> cell_counts);
    int at(int g, int o) const { return counts[static_cast<std::size_t>(g) *
                                               static_cast<std::size_t>(out_alphabet) +
                                               static_cast<std::size_t>(o)]; }
};

// Exact class cardinality with a log-domain fallback for huge blocklengths.
struct ClassSize {
    BigUint exact;
    bool exact_ok = false;
    double log2_value = 0.0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

std::vector<TypeVector> enumerate_types(int alphabet_size, int n,
                                        std::uint64_t budget = kDefaultEnumerationBudget);
ClassSize type_class_size(const TypeVector& t);
ClassSize cond_type_class_size(const CondTypeVector& ct);
std::vector<CondTypeVector> enumerate_conditional_types(
    const TypeVector& given, int out_alphabet,
    std::uint64_t budget = kDefaultEnumerationBudget);

JointPmf empirical_joint(const std::vector<std::vector<int>>& seqs,
                         const std::vector<int>& alphabet_sizes,
                         std::vector<Role> roles = {});
double empirical_mi(const std::vector<int>& u, int u_alphabet,
                    const std::vector<std::vector<int>>& side,
                    const std::vector<int>& side_alphabets);

std::vector<int> sample_uniform_from_type(const TypeVector& t, RngStream& rng);
std::vector<int> sample_uniform_from_cond_type(const CondTypeVector& ct,
                                               std::span<const int> given_seq,
                                               RngStream& rng);

} // namespace gpexp
