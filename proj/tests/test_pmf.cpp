#include <doctest.h>

#include <cmath>
#include <vector>

#include "gpexp/pmf.hpp"

using namespace gpexp;

TEST_CASE("binary entropy and related scalar kernels") {
    CHECK(binary_entropy(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(binary_entropy(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.2) == doctest::Approx(0.721928094887362).epsilon(1e-12));
    // Symmetry.
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));

    // Binary convolution: p*q = p(1-q) + (1-p)q.
    CHECK(star(0.4, 0.2) == doctest::Approx(0.44).epsilon(1e-15));
    CHECK(star(0.5, 0.3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(star(0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));

    CHECK(pos_part(-2.0) == 0.0);
    CHECK(pos_part(0.25) == 0.25);
}

TEST_CASE("entropy and divergence on dense pmfs") {
    const JointPmf u4 = JointPmf::uniform({2, 2});
    CHECK(entropy(u4) == doctest::Approx(2.0).epsilon(1e-12));

    const JointPmf p({2}, {0.5, 0.5});
    const JointPmf q({2}, {0.25, 0.75});
    CHECK(kl_divergence(p, q) == doctest::Approx(0.207518749639422).epsilon(1e-12));
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-15));
    // Divergence against a non-dominating pmf is +infinity, a legal value.
    const JointPmf r({2}, {1.0, 0.0});
    CHECK(std::isinf(kl_divergence(p, r)));

    std::vector<double> a{0.5, 0.5}, b{0.25, 0.75};
    CHECK(entropy_bits(a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kl_bits(a, b) == doctest::Approx(0.207518749639422).epsilon(1e-12));
}

TEST_CASE("mutual information on independent and coupled pairs") {
    // Independent uniform bits.
    const JointPmf indep({2, 2}, {0.25, 0.25, 0.25, 0.25});
    CHECK(mutual_information(indep, {0}, {1}) == doctest::Approx(0.0).epsilon(1e-12));

    // Perfectly coupled bits carry one bit.
    const JointPmf coupled({2, 2}, {0.5, 0.0, 0.0, 0.5});
    CHECK(mutual_information(coupled, {0}, {1}) == doctest::Approx(1.0).epsilon(1e-12));

    // Correlated pair against an analytic value: I = 1 - h(0.3).
    const JointPmf corr({2, 2}, {0.35, 0.15, 0.15, 0.35});
    CHECK(mutual_information(corr, {0}, {1}) ==
          doctest::Approx(1.0 - binary_entropy(0.3)).epsilon(1e-12));
}

TEST_CASE("difference-of-informations functional on a role-tagged joint") {
    // U identical to Y, with Sd and Se independent of everything:
    // I(U; Y, Sd) - I(U; Se) = 1 - 0 = 1.
    std::vector<double> vals(16, 0.0);
    auto at = [&](int u, int y, int sd, int se) -> double& {
        return vals[static_cast<std::size_t>(((u * 2 + y) * 2 + sd) * 2 + se)];
    };
    for (int u = 0; u < 2; ++u)
        for (int sd = 0; sd < 2; ++sd)
            for (int se = 0; se < 2; ++se) at(u, u, sd, se) = 0.125;
    const JointPmf joint({2, 2, 2, 2}, vals,
                         {Role::Auxiliary, Role::Output, Role::DecoderState,
                          Role::EncoderState});
    CHECK(j_functional(joint) == doctest::Approx(1.0).epsilon(1e-12));

    // Making U = Se instead gives I(U; Y, Sd) = 0 and I(U; Se) = 1.
    std::vector<double> vals2(16, 0.0);
    auto at2 = [&](int u, int y, int sd, int se) -> double& {
        return vals2[static_cast<std::size_t>(((u * 2 + y) * 2 + sd) * 2 + se)];
    };
    for (int u = 0; u < 2; ++u)
        for (int y = 0; y < 2; ++y)
            for (int sd = 0; sd < 2; ++sd) at2(u, y, sd, u) = 0.125;
    const JointPmf joint2({2, 2, 2, 2}, vals2,
                          {Role::Auxiliary, Role::Output, Role::DecoderState,
                           Role::EncoderState});
    CHECK(j_functional(joint2) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("marginals and conditional joins") {
    const JointPmf p({2, 3}, {0.1, 0.2, 0.1, 0.15, 0.25, 0.2});
    const JointPmf m = p.marginal({0});
    CHECK(m.total_size() == 2);
    CHECK(m[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(m[1] == doctest::Approx(0.6).epsilon(1e-15));

    const CondPmf chan({2}, {2}, {0.9, 0.1, 0.2, 0.8});
    const JointPmf joined = chan.join(m, {Role::Output});
    CHECK(joined.rank() == 2);
    CHECK(joined.at(std::vector<int>{0, 1}) == doctest::Approx(0.4 * 0.1).epsilon(1e-15));
    CHECK(joined.at(std::vector<int>{1, 1}) == doctest::Approx(0.6 * 0.8).epsilon(1e-15));

    // Normalisation helper rescales.
    const JointPmf n = JointPmf::normalized({2}, {2.0, 6.0});
    CHECK(n[0] == doctest::Approx(0.25).epsilon(1e-15));
}
