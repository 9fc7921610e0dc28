#include "gpexp/types_method.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "gpexp/errors.hpp"

namespace gpexp {

namespace {

constexpr int kExactSizeLimit = 100'000; // beyond this, report log-domain only

// C(n+k-1, k-1) as a double with saturation, for budget checks.
double composition_count(int n, int k) {
    double c = 1.0;
    for (int i = 1; i < k; ++i) c *= static_cast<double>(n + i) / static_cast<double>(i);
    return c;
}

double log2_factorial(int n) {
    double s = 0.0;
    for (int i = 2; i <= n; ++i) s += std::log2(static_cast<double>(i));
    return s;
}

void append_compositions(int remaining, int parts, std::vector<int>& scratch,
                         const std::function<void(const std::vector<int>&)>& sink) {
    if (parts == 1) {
        scratch.push_back(remaining);
        sink(scratch);
        scratch.pop_back();
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        scratch.push_back(c);
        append_compositions(remaining - c, parts - 1, scratch, sink);
        scratch.pop_back();
    }
}

} // namespace

TypeVector::TypeVector(int alphabet_size, std::vector<int> symbol_counts) {
    if (alphabet_size < 1) throw ConfigError("type alphabet must be nonempty");
    if (symbol_counts.size() != static_cast<std::size_t>(alphabet_size))
        throw ConfigError("type count vector length must match alphabet size");
    long long total = 0;
    for (const int c : symbol_counts) {
        if (c < 0) throw ConfigError("type counts must be nonnegative");
        total += c;
    }
    if (total < 1) throw ConfigError("blocklength must be at least 1");
    alphabet = alphabet_size;
    n = static_cast<int>(total);
    counts = std::move(symbol_counts);
}

TypeVector TypeVector::of_sequence(std::span<const int> seq, int alphabet_size) {
    if (seq.empty()) throw ConfigError("cannot take the type of an empty sequence");
    std::vector<int> counts(static_cast<std::size_t>(alphabet_size), 0);
    for (const int s : seq) {
        if (s < 0 || s >= alphabet_size) throw ConfigError("sequence symbol out of range");
        ++counts[static_cast<std::size_t>(s)];
    }
    return TypeVector(alphabet_size, std::move(counts));
}

JointPmf TypeVector::empirical() const {
    std::vector<double> values(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        values[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    return JointPmf::normalized({alphabet}, std::move(values));
}

CondTypeVector::CondTypeVector(TypeVector given, int out_alphabet_size,
                               std::vector<int> cell_counts) {
    if (out_alphabet_size < 1) throw ConfigError("conditional type out alphabet must be nonempty");
    const std::size_t expected = static_cast<std::size_t>(given.alphabet) *
                                 static_cast<std::size_t>(out_alphabet_size);
    if (cell_counts.size() != expected)
        throw ConfigError("conditional type cell count length mismatch");
    for (int g = 0; g < given.alphabet; ++g) {
        long long row = 0;
        for (int o = 0; o < out_alphabet_size; ++o) {
            const int c = cell_counts[static_cast<std::size_t>(g) *
                                      static_cast<std::size_t>(out_alphabet_size) +
                                      static_cast<std::size_t>(o)];
            if (c < 0) throw ConfigError("conditional type counts must be nonnegative");
            row += c;
        }
        if (row != given.counts[static_cast<std::size_t>(g)])
            throw ConfigError("conditional type row sums must match the given type");
    }
    given_type = std::move(given);
    out_alphabet = out_alphabet_size;
    counts = std::move(cell_counts);
}

std::vector<TypeVector> enumerate_types(int alphabet_size, int n, std::uint64_t budget) {
    if (alphabet_size < 1) throw ConfigError("type alphabet must be nonempty");
    if (n < 1) throw ConfigError("blocklength must be at least 1");
    const double expected = composition_count(n, alphabet_size);
    if (expected > static_cast<double>(budget))
        throw BudgetError("type enumeration would exceed the item budget");
    std::vector<TypeVector> out;
    out.reserve(static_cast<std::size_t>(expected));
    std::vector<int> scratch;
    append_compositions(n, alphabet_size, scratch, [&](const std::vector<int>& counts) {
        out.emplace_back(alphabet_size, counts);
    });
    return out;
}

ClassSize type_class_size(const TypeVector& t) {
    ClassSize result;
    result.log2_value = log2_factorial(t.n);
    for (const int c : t.counts) result.log2_value -= log2_factorial(c);
    if (t.n <= kExactSizeLimit) {
        result.exact = BigUint::multinomial(t.counts);
        result.exact_ok = true;
        result.log2_value = result.exact.log2();
    }
    return result;
}

ClassSize cond_type_class_size(const CondTypeVector& ct) {
    ClassSize result;
    result.exact = BigUint(1);
    result.exact_ok = ct.given_type.n <= kExactSizeLimit;
    for (int g = 0; g < ct.given_type.alphabet; ++g) {
        std::vector<int> row(static_cast<std::size_t>(ct.out_alphabet));
        for (int o = 0; o < ct.out_alphabet; ++o) row[static_cast<std::size_t>(o)] = ct.at(g, o);
        result.log2_value += log2_factorial(ct.given_type.counts[static_cast<std::size_t>(g)]);
        for (const int c : row) result.log2_value -= log2_factorial(c);
        if (result.exact_ok) result.exact.mul_big(BigUint::multinomial(row));
    }
    if (result.exact_ok) result.log2_value = result.exact.log2();
    return result;
}

std::vector<CondTypeVector> enumerate_conditional_types(const TypeVector& given,
                                                        int out_alphabet,
                                                        std::uint64_t budget) {
    if (out_alphabet < 1) throw ConfigError("conditional type out alphabet must be nonempty");
    double expected = 1.0;
    for (const int c : given.counts) {
        expected *= composition_count(c, out_alphabet);
        if (expected > static_cast<double>(budget))
            throw BudgetError("conditional type enumeration would exceed the item budget");
    }
    // Per-row composition lists, then a cartesian product across rows.
    std::vector<std::vector<std::vector<int>>> row_choices(
        static_cast<std::size_t>(given.alphabet));
    for (int g = 0; g < given.alphabet; ++g) {
        std::vector<int> scratch;
        append_compositions(given.counts[static_cast<std::size_t>(g)], out_alphabet, scratch,
                            [&](const std::vector<int>& row) {
                                row_choices[static_cast<std::size_t>(g)].push_back(row);
                            });
    }
    std::vector<CondTypeVector> out;
    out.reserve(static_cast<std::size_t>(expected));
    std::vector<std::size_t> pick(static_cast<std::size_t>(given.alphabet), 0);
    while (true) {
        std::vector<int> cells;
        cells.reserve(static_cast<std::size_t>(given.alphabet) *
                      static_cast<std::size_t>(out_alphabet));
        for (int g = 0; g < given.alphabet; ++g) {
            const auto& row = row_choices[static_cast<std::size_t>(g)][pick[static_cast<std::size_t>(g)]];
            cells.insert(cells.end(), row.begin(), row.end());
        }
        out.emplace_back(given, out_alphabet, std::move(cells));
        int ax = given.alphabet - 1;
        for (; ax >= 0; --ax) {
            if (++pick[static_cast<std::size_t>(ax)] < row_choices[static_cast<std::size_t>(ax)].size())
                break;
            pick[static_cast<std::size_t>(ax)] = 0;
        }
        if (ax < 0) break;
    }
    return out;
}

JointPmf empirical_joint(const std::vector<std::vector<int>>& seqs,
                         const std::vector<int>& alphabet_sizes, std::vector<Role> roles) {
    if (seqs.empty() || seqs.size() != alphabet_sizes.size())
        throw ConfigError("empirical joint needs one alphabet size per sequence");
    const std::size_t n = seqs.front().size();
    if (n == 0) throw ConfigError("empirical joint needs nonempty sequences");
    for (const auto& s : seqs)
        if (s.size() != n) throw ConfigError("empirical joint needs equal-length sequences");
    std::size_t total = 1;
    for (const int a : alphabet_sizes) {
        if (a < 1) throw ConfigError("alphabet size must be at least 1");
        total *= static_cast<std::size_t>(a);
    }
    std::vector<double> values(total, 0.0);
    const double weight = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t flat = 0;
        for (std::size_t ax = 0; ax < seqs.size(); ++ax) {
            const int sym = seqs[ax][i];
            if (sym < 0 || sym >= alphabet_sizes[ax])
                throw ConfigError("sequence symbol out of range");
            flat = flat * static_cast<std::size_t>(alphabet_sizes[ax]) +
                   static_cast<std::size_t>(sym);
        }
        values[flat] += weight;
    }
    return JointPmf::normalized(alphabet_sizes, std::move(values), std::move(roles));
}

double empirical_mi(const std::vector<int>& u, int u_alphabet,
                    const std::vector<std::vector<int>>& side,
                    const std::vector<int>& side_alphabets) {
    std::vector<std::vector<int>> seqs;
    seqs.reserve(side.size() + 1);
    seqs.push_back(u);
    for (const auto& s : side) seqs.push_back(s);
    std::vector<int> sizes;
    sizes.reserve(side_alphabets.size() + 1);
    sizes.push_back(u_alphabet);
    sizes.insert(sizes.end(), side_alphabets.begin(), side_alphabets.end());
    const JointPmf joint = empirical_joint(seqs, sizes);
    std::vector<int> axes_b(side.size());
    std::iota(axes_b.begin(), axes_b.end(), 1);
    return mutual_information(joint, {0}, axes_b);
}

std::vector<int> sample_uniform_from_type(const TypeVector& t, RngStream& rng) {
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(t.n));
    for (int sym = 0; sym < t.alphabet; ++sym)
        seq.insert(seq.end(), static_cast<std::size_t>(t.counts[static_cast<std::size_t>(sym)]),
                   sym);
    rng.shuffle(seq);
    return seq;
}

std::vector<int> sample_uniform_from_cond_type(const CondTypeVector& ct,
                                               std::span<const int> given_seq, RngStream& rng) {
    const TypeVector observed = TypeVector::of_sequence(given_seq, ct.given_type.alphabet);
    if (observed.counts != ct.given_type.counts)
        throw ConfigError("given sequence type does not match the conditional type");
    // One shuffled multiset per given symbol, consumed in sequence order.
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(ct.given_type.alphabet));
    for (int g = 0; g < ct.given_type.alphabet; ++g) {
        auto& row = rows[static_cast<std::size_t>(g)];
        for (int o = 0; o < ct.out_alphabet; ++o)
            row.insert(row.end(), static_cast<std::size_t>(ct.at(g, o)), o);
        rng.shuffle(row);
    }
    std::vector<std::size_t> cursor(rows.size(), 0);
    std::vector<int> out;
    out.reserve(given_seq.size());
    for (const int g : given_seq)
        out.push_back(rows[static_cast<std::size_t>(g)][cursor[static_cast<std::size_t>(g)]++]);
    return out;
}

} // namespace gpexp
