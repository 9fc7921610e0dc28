#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "gpexp/checks.hpp"
#include "gpexp/errors.hpp"
#include "gpexp/rng.hpp"
#include "gpexp/types_method.hpp"

using namespace gpexp;

TEST_CASE("type vectors record sequence compositions") {
    const std::vector<int> seq{0, 1, 1, 2, 1, 0};
    const TypeVector t = TypeVector::of_sequence(seq, 3);
    CHECK(t.n == 6);
    CHECK(t.counts == std::vector<int>{2, 3, 1});
    const JointPmf emp = t.empirical();
    CHECK(emp[0] == doctest::Approx(2.0 / 6).epsilon(1e-15));
    CHECK(emp[1] == doctest::Approx(3.0 / 6).epsilon(1e-15));
}

TEST_CASE("type enumeration counts follow stars and bars") {
    CHECK(enumerate_types(2, 5).size() == 6);   // C(6,1)
    CHECK(enumerate_types(3, 4).size() == 15);  // C(6,2)
    CHECK(enumerate_types(4, 3).size() == 20);  // C(6,3)
}

TEST_CASE("exact class sizes are multinomial coefficients") {
    const TypeVector t(3, {2, 3, 5});
    const auto s = type_class_size(t);
    CHECK(s.exact_ok);
    CHECK(s.exact.to_string() == "2520");  // 10! / (2! 3! 5!)
    CHECK(s.log2_value == doctest::Approx(std::log2(2520.0)).epsilon(1e-12));

    // Conditional class size factorises over the given symbols.
    const CondTypeVector ct(TypeVector(2, {3, 2}), 2, {1, 2, 2, 0});
    const auto cs = cond_type_class_size(ct);
    CHECK(cs.exact.to_string() == "3");  // C(3,1) * C(2,2)
}

TEST_CASE("sandwich bounds and partition identities at small blocklengths") {
    // The heavyweight exhaustive run (n <= 10) is an acceptance criterion;
    // this keeps a quick regression at n <= 6.
    const auto rep = checks::check_type_counts(6, 3);
    for (const auto& line : rep.lines) {
        INFO(line.label, ": ", line.detail);
        CHECK(line.passed);
    }
}

TEST_CASE("uniform sampling from a type class") {
    const TypeVector t(2, {2, 2});
    RngStream rng(123);
    // |T| = C(4,2) = 6; each member should appear with frequency 1/6.
    std::map<std::vector<int>, int> freq;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) {
        auto s = sample_uniform_from_type(t, rng);
        CHECK(TypeVector::of_sequence(s, 2).counts == t.counts);
        ++freq[s];
    }
    CHECK(freq.size() == 6);
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(p * (1 - p) / draws);
    for (const auto& [seq, count] : freq) {
        const double f = static_cast<double>(count) / draws;
        CHECK(std::abs(f - p) <= 5 * sigma);
    }
}

TEST_CASE("uniform sampling from a conditional type class") {
    const std::vector<int> given{0, 0, 0, 1, 1};
    const CondTypeVector ct(TypeVector(2, {3, 2}), 2, {1, 2, 2, 0});
    RngStream rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto out = sample_uniform_from_cond_type(ct, given, rng);
        int c00 = 0, c01 = 0, c10 = 0, c11 = 0;
        for (std::size_t j = 0; j < given.size(); ++j) {
            if (given[j] == 0) (out[j] == 0 ? c00 : c01)++;
            else (out[j] == 0 ? c10 : c11)++;
        }
        CHECK(c00 == 1);
        CHECK(c01 == 2);
        CHECK(c10 == 2);
        CHECK(c11 == 0);
    }
}

TEST_CASE("empirical mutual information agrees with the dense computation") {
    RngStream rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 12;
        std::vector<int> u(n), a(n), b(n);
        for (int i = 0; i < n; ++i) {
            u[i] = static_cast<int>(rng.below(2));
            a[i] = static_cast<int>(rng.below(3));
            b[i] = static_cast<int>(rng.below(2));
        }
        const double direct = empirical_mi(u, 2, {a, b}, {3, 2});
        const JointPmf joint = empirical_joint({u, a, b}, {2, 3, 2});
        const double dense = mutual_information(joint, {0}, {1, 2});
        CHECK(direct == doctest::Approx(dense).epsilon(1e-10));
    }
}

TEST_CASE("enumeration respects its budget") {
    const TypeVector big(4, {6, 6, 6, 6});
    CHECK_THROWS_AS(enumerate_conditional_types(big, 4, 10), BudgetError);
}
