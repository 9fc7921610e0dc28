#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gpexp {

// Semantic tag for a tensor axis. Degenerate (absent) variables are size-1
// axes with the same role, so every scenario shares one code path.
enum class Role : std::uint8_t {
    None,
    EncoderState,   // side information available to the encoder
    AdversaryState, // side information available to the adversary
    DecoderState,   // side information available to the decoder
    Auxiliary,      // binning-code auxiliary variable
    Input,          // channel input
    Output,         // channel output
};

// Dense joint pmf over a tuple of finite alphabets.
class JointPmf {
public:
    // Scalar pmf: one size-1 axis carrying probability one.
    JointPmf() : sizes_{1}, roles_{Role::None}, values_{1.0}, strides_{1} {}
    JointPmf(std::vector<int> sizes, std::vector<double> values, std::vector<Role> roles = {});

    // Rescales the given nonnegative values to sum to one.
    static JointPmf normalized(std::vector<int> sizes, std::vector<double> values,
                               std::vector<Role> roles = {});
    static JointPmf uniform(std::vector<int> sizes, std::vector<Role> roles = {});

    int rank() const { return static_cast<int>(sizes_.size()); }
    int size(int axis) const { return sizes_[static_cast<std::size_t>(axis)]; }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<Role>& roles() const { return roles_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t total_size() const { return values_.size(); }

    double operator[](std::size_t flat) const { return values_[flat]; }
    double at(std::span<const int> index) const { return values_[flat_index(index)]; }
    std::size_t flat_index(std::span<const int> index) const;

    // Axes of the first axis with the given role, or -1.
    int role_axis(Role role) const;

    // Marginal over the kept axes (in their original order).
    JointPmf marginal(const std::vector<int>& keep_axes) const;

private:
    std::vector<int> sizes_;
    std::vector<Role> roles_;
    std::vector<double> values_;
    std::vector<std::size_t> strides_;
};

// Dense conditional pmf: for every fixed given-tuple the slice over
// out-tuples sums to one.
class CondPmf {
public:
    CondPmf(std::vector<int> given_sizes, std::vector<int> out_sizes, std::vector<double> values);

    static CondPmf normalized(std::vector<int> given_sizes, std::vector<int> out_sizes,
                              std::vector<double> values);

    const std::vector<int>& given_sizes() const { return given_sizes_; }
    const std::vector<int>& out_sizes() const { return out_sizes_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& values() const { return values_; }
    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * cols_, cols_};
    }

    // Product with a weight pmf over the given axes; output axes are the
    // given axes followed by the out axes.
    JointPmf join(const JointPmf& weights, std::vector<Role> out_roles = {}) const;

private:
    std::vector<int> given_sizes_;
    std::vector<int> out_sizes_;
    std::vector<double> values_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
};

// Information measures, all in bits. 0*log 0 reads as 0 and divergence may
// return +infinity; that is a legal value, not an error.
double entropy(const JointPmf& p);
double kl_divergence(const JointPmf& p, const JointPmf& q);
double conditional_kl(const CondPmf& p, const CondPmf& q, const JointPmf& weights);
double mutual_information(const JointPmf& p, const std::vector<int>& axes_a,
                          const std::vector<int>& axes_b);

// I(U; Y, S_dec) - I(U; S_enc) evaluated on a joint pmf whose axes carry the
// Auxiliary, Output, DecoderState and EncoderState roles. May be negative.
double j_functional(const JointPmf& p);

double binary_entropy(double t);
double star(double p, double q);
double pos_part(double t);

// Shared low-level kernels used by the solvers as well.
double entropy_bits(std::span<const double> p);
double kl_bits(std::span<const double> p, std::span<const double> q);

} // namespace gpexp
