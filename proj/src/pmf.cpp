#include "gpexp/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpexp/errors.hpp"

namespace gpexp {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::size_t checked_total(const std::vector<int>& sizes) {
    if (sizes.empty()) throw ConfigError("pmf needs at least one axis");
    std::size_t total = 1;
    for (const int s : sizes) {
        if (s < 1) throw ConfigError("alphabet size must be at least 1");
        total *= static_cast<std::size_t>(s);
    }
    return total;
}

void check_entries(const std::vector<double>& values, std::size_t expected) {
    if (values.size() != expected) throw ConfigError("pmf value count does not match axes");
    for (const double v : values) {
        if (!(v >= 0.0)) throw ConfigError("pmf entries must be nonnegative");
    }
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

} // namespace

JointPmf::JointPmf(std::vector<int> sizes, std::vector<double> values, std::vector<Role> roles) {
    const std::size_t total = checked_total(sizes);
    check_entries(values, total);
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw ConfigError("pmf entries must sum to 1 within 1e-12");
    if (!roles.empty() && roles.size() != sizes.size())
        throw ConfigError("role list must match axis count");
    if (roles.empty()) roles.assign(sizes.size(), Role::None);
    sizes_ = std::move(sizes);
    roles_ = std::move(roles);
    values_ = std::move(values);
    strides_.assign(sizes_.size(), 1);
    for (std::size_t i = sizes_.size() - 1; i-- > 0;)
        strides_[i] = strides_[i + 1] * static_cast<std::size_t>(sizes_[i + 1]);
}

JointPmf JointPmf::normalized(std::vector<int> sizes, std::vector<double> values,
                              std::vector<Role> roles) {
    const std::size_t total = checked_total(sizes);
    check_entries(values, total);
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (!(sum > 0.0)) throw ConfigError("cannot normalize an all-zero table");
    for (double& v : values) v /= sum;
    // Nudge the largest entry so the total is exactly representable near 1.
    return JointPmf(std::move(sizes), std::move(values), std::move(roles));
}

JointPmf JointPmf::uniform(std::vector<int> sizes, std::vector<Role> roles) {
    const std::size_t total = checked_total(sizes);
    std::vector<double> values(total, 1.0 / static_cast<double>(total));
    return JointPmf(std::move(sizes), std::move(values), std::move(roles));
}

std::size_t JointPmf::flat_index(std::span<const int> index) const {
    if (index.size() != sizes_.size()) throw ConfigError("index rank mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (index[i] < 0 || index[i] >= sizes_[i]) throw ConfigError("index out of range");
        flat += static_cast<std::size_t>(index[i]) * strides_[i];
    }
    return flat;
}

int JointPmf::role_axis(Role role) const {
    for (std::size_t i = 0; i < roles_.size(); ++i)
        if (roles_[i] == role) return static_cast<int>(i);
    return -1;
}

JointPmf JointPmf::marginal(const std::vector<int>& keep_axes) const {
    if (keep_axes.empty()) throw ConfigError("marginal needs at least one axis");
    std::vector<int> out_sizes;
    std::vector<Role> out_roles;
    std::vector<std::size_t> out_strides;
    std::vector<char> kept(sizes_.size(), 0);
    for (const int a : keep_axes) {
        if (a < 0 || a >= rank()) throw ConfigError("marginal axis out of range");
        if (kept[static_cast<std::size_t>(a)]) throw ConfigError("duplicate marginal axis");
        kept[static_cast<std::size_t>(a)] = 1;
        out_sizes.push_back(sizes_[static_cast<std::size_t>(a)]);
        out_roles.push_back(roles_[static_cast<std::size_t>(a)]);
    }
    std::size_t out_total = 1;
    out_strides.assign(keep_axes.size(), 1);
    for (std::size_t i = keep_axes.size(); i-- > 0;) {
        out_strides[i] = out_total;
        out_total *= static_cast<std::size_t>(out_sizes[i]);
    }
    // Reversed stride layout: walk the full tensor once, accumulating each
    // entry into the slot addressed by its kept coordinates.
    std::vector<double> out(out_total, 0.0);
    std::vector<int> index(sizes_.size(), 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        std::size_t out_flat = 0;
        for (std::size_t k = 0; k < keep_axes.size(); ++k)
            out_flat += static_cast<std::size_t>(index[static_cast<std::size_t>(keep_axes[k])]) *
                        out_strides[k];
        out[out_flat] += values_[flat];
        for (std::size_t ax = sizes_.size(); ax-- > 0;) {
            if (++index[ax] < sizes_[ax]) break;
            index[ax] = 0;
        }
    }
    JointPmf result;
    result.sizes_ = std::move(out_sizes);
    result.roles_ = std::move(out_roles);
    result.values_ = std::move(out);
    result.strides_.assign(result.sizes_.size(), 1);
    for (std::size_t i = result.sizes_.size(); i-- > 1;)
        result.strides_[i - 1] =
            result.strides_[i] * static_cast<std::size_t>(result.sizes_[i]);
    return result;
}

CondPmf::CondPmf(std::vector<int> given_sizes, std::vector<int> out_sizes,
                 std::vector<double> values) {
    rows_ = checked_total(given_sizes);
    cols_ = checked_total(out_sizes);
    check_entries(values, rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) sum += values[r * cols_ + c];
        if (std::abs(sum - 1.0) > kSumTolerance)
            throw ConfigError("conditional pmf rows must sum to 1 within 1e-12");
    }
    given_sizes_ = std::move(given_sizes);
    out_sizes_ = std::move(out_sizes);
    values_ = std::move(values);
}

CondPmf CondPmf::normalized(std::vector<int> given_sizes, std::vector<int> out_sizes,
                            std::vector<double> values) {
    const std::size_t rows = checked_total(given_sizes);
    const std::size_t cols = checked_total(out_sizes);
    check_entries(values, rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < cols; ++c) sum += values[r * cols + c];
        if (!(sum > 0.0)) throw ConfigError("cannot normalize an all-zero conditional row");
        for (std::size_t c = 0; c < cols; ++c) values[r * cols + c] /= sum;
    }
    return CondPmf(std::move(given_sizes), std::move(out_sizes), std::move(values));
}

JointPmf CondPmf::join(const JointPmf& weights, std::vector<Role> out_roles) const {
    if (weights.sizes() != given_sizes_)
        throw ConfigError("weight axes do not match the conditional given axes");
    if (!out_roles.empty() && out_roles.size() != out_sizes_.size())
        throw ConfigError("out role list must match out axis count");
    std::vector<int> sizes = given_sizes_;
    sizes.insert(sizes.end(), out_sizes_.begin(), out_sizes_.end());
    std::vector<Role> roles = weights.roles();
    if (out_roles.empty()) out_roles.assign(out_sizes_.size(), Role::None);
    roles.insert(roles.end(), out_roles.begin(), out_roles.end());
    std::vector<double> values(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            values[r * cols_ + c] = weights[r] * values_[r * cols_ + c];
    // Weighted rows can drift a hair off unit total; rescale exactly.
    double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (!(sum > 0.0)) throw ConfigError("degenerate weight pmf");
    for (double& v : values) v /= sum;
    return JointPmf(std::move(sizes), std::move(values), std::move(roles));
}

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (const double v : p) h -= xlog2x(v);
    return h;
}

double kl_bits(std::span<const double> p, std::span<const double> q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            if (q[i] <= 0.0) return kInfinity;
            d += p[i] * std::log2(p[i] / q[i]);
        }
    }
    return d;
}

double entropy(const JointPmf& p) { return entropy_bits(p.values()); }

double kl_divergence(const JointPmf& p, const JointPmf& q) {
    if (p.sizes() != q.sizes()) throw ConfigError("divergence needs matching axes");
    return kl_bits(p.values(), q.values());
}

double conditional_kl(const CondPmf& p, const CondPmf& q, const JointPmf& weights) {
    if (p.given_sizes() != q.given_sizes() || p.out_sizes() != q.out_sizes())
        throw ConfigError("conditional divergence needs matching axes");
    if (weights.sizes() != p.given_sizes())
        throw ConfigError("weight axes do not match the conditional given axes");
    double d = 0.0;
    for (std::size_t r = 0; r < p.rows(); ++r) {
        const double w = weights[r];
        if (w <= 0.0) continue;
        const double slice = kl_bits(p.row(r), q.row(r));
        if (slice == kInfinity) return kInfinity;
        d += w * slice;
    }
    return d;
}

double mutual_information(const JointPmf& p, const std::vector<int>& axes_a,
                          const std::vector<int>& axes_b) {
    std::vector<char> seen(static_cast<std::size_t>(p.rank()), 0);
    for (const int a : axes_a) {
        if (a < 0 || a >= p.rank() || seen[static_cast<std::size_t>(a)])
            throw ConfigError("axis partition invalid");
        seen[static_cast<std::size_t>(a)] = 1;
    }
    for (const int b : axes_b) {
        if (b < 0 || b >= p.rank() || seen[static_cast<std::size_t>(b)])
            throw ConfigError("axis partition invalid");
        seen[static_cast<std::size_t>(b)] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw ConfigError("axis partition must cover all axes");
    const JointPmf pa = p.marginal(axes_a);
    const JointPmf pb = p.marginal(axes_b);
    const double i = entropy(pa) + entropy(pb) - entropy(p);
    return i < 0.0 ? 0.0 : i;
}

double j_functional(const JointPmf& p) {
    const int u = p.role_axis(Role::Auxiliary);
    const int se = p.role_axis(Role::EncoderState);
    const int sd = p.role_axis(Role::DecoderState);
    const int y = p.role_axis(Role::Output);
    if (u < 0 || se < 0 || sd < 0 || y < 0)
        throw ConfigError("j_functional needs axes tagged auxiliary, encoder state, "
                          "decoder state and output");
    const JointPmf p_u_ysd = p.marginal({u, y, sd});
    const JointPmf p_u_se = p.marginal({u, se});
    const double gain = mutual_information(p_u_ysd, {0}, {1, 2});
    const double leak = mutual_information(p_u_se, {0}, {1});
    return gain - leak;
}

double binary_entropy(double t) {
    if (t < 0.0 || t > 1.0) throw ConfigError("binary entropy argument outside [0,1]");
    return -xlog2x(t) - xlog2x(1.0 - t);
}

double star(double p, double q) {
    if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
        throw ConfigError("binary convolution arguments outside [0,1]");
    return p * (1.0 - q) + (1.0 - p) * q;
}

double pos_part(double t) { return t > 0.0 ? t : 0.0; }

} // namespace gpexp
