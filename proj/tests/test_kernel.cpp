#include <doctest.h>

#include <cmath>
#include <random>

#include "tvmg/errors.hpp"
#include "tvmg/kernel.hpp"

using namespace tvmg;

TEST_CASE("kernel shapes") {
    CHECK(kernel_eval(KernelKind::epanechnikov, 0.0) == doctest::Approx(0.75));
    CHECK(kernel_eval(KernelKind::epanechnikov, 1.0) == 0.0);
    CHECK(kernel_eval(KernelKind::gaussian, 0.0) == 1.0);
    CHECK(kernel_eval(KernelKind::uniform, 0.99) == 1.0);
    CHECK(kernel_eval(KernelKind::uniform, 1.01) == 0.0);
    CHECK_THROWS_AS(kernel_eval(KernelKind::gaussian, -0.1), data_error);
}

TEST_CASE("kernels decay monotonically; support matches kind") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (auto kind : {KernelKind::gaussian, KernelKind::epanechnikov, KernelKind::uniform}) {
        for (int i = 0; i < 500; ++i) {
            double u1 = unif(rng), u2 = unif(rng);
            if (u1 > u2) std::swap(u1, u2);
            CHECK(kernel_eval(kind, u1) >= kernel_eval(kind, u2));
        }
    }
    for (double u : {1.0001, 1.5, 10.0}) {
        CHECK(kernel_eval(KernelKind::epanechnikov, u) == 0.0);
        CHECK(kernel_eval(KernelKind::uniform, u) == 0.0);
        CHECK(kernel_eval(KernelKind::gaussian, u) > 0.0);
    }
}

TEST_CASE("bandwidth rule H = T^alpha") {
    CHECK(bandwidth_from_alpha(31, 0.5) == doctest::Approx(5.5678).epsilon(1e-4));
    CHECK(bandwidth_from_alpha(31, 0.85) == doctest::Approx(18.52).epsilon(0.01 / 18.52));
    CHECK(bandwidth_from_alpha(31, 0.45) == doctest::Approx(4.69).epsilon(0.01 / 4.69));
    CHECK_THROWS_AS(bandwidth_from_alpha(31, 1.5), data_error);
    CHECK_THROWS_AS(bandwidth_from_alpha(1, 0.5), data_error);
}

TEST_CASE("weights_for_time indicator arithmetic") {
    const KernelSpec uniform(KernelKind::uniform, 1.0);
    const Eigen::VectorXd w = weights_for_time(5, 2, uniform);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == 1.0);
    CHECK(w[2] == 1.0);
    CHECK(w[3] == 1.0);
    CHECK(w[4] == 0.0);
}

TEST_CASE("weights_for_time gaussian at the boundary") {
    const KernelSpec gauss(KernelKind::gaussian, 1.0);
    const Eigen::VectorXd w = weights_for_time(3, 0, gauss);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(std::exp(-0.5)));
    CHECK(w[2] == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("weights are symmetric in distance") {
    const KernelSpec spec(KernelKind::gaussian, 2.5);
    const int t_count = 9, t = 4;
    const Eigen::VectorXd w = weights_for_time(t_count, t, spec);
    for (int d = 1; d <= 4; ++d) CHECK(w[t - d] == doctest::Approx(w[t + d]));
    CHECK(w[t] > 0.0);
}

TEST_CASE("larger gaussian bandwidth gives flatter windows") {
    const KernelSpec narrow(KernelKind::gaussian, 2.0);
    const KernelSpec wide(KernelKind::gaussian, 5.0);
    const int t_count = 15, t = 7;
    const Eigen::VectorXd w_narrow = weights_for_time(t_count, t, narrow);
    const Eigen::VectorXd w_wide = weights_for_time(t_count, t, wide);
    for (int j = 0; j < t_count; ++j) {
        if (j == t) continue;
        CHECK(w_wide[j] >= w_narrow[j]);
    }
}

TEST_CASE("kernel spec rejects nonpositive bandwidths") {
    CHECK_THROWS_AS(KernelSpec(KernelKind::gaussian, 0.0), data_error);
    CHECK_THROWS_AS(KernelSpec(KernelKind::gaussian, -1.0), data_error);
    CHECK_THROWS_AS(kernel_kind_from_string("triangle"), data_error);
    CHECK(kernel_kind_from_string("epanechnikov") == KernelKind::epanechnikov);
}
