#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "rkhs/error.hpp"
#include "rkhs/spaces.hpp"
#include "rkhs/symbol.hpp"

using namespace rkhs;

namespace {

cplx inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return b.dot(a); }  // <a, b>

}  // namespace

TEST_SUITE("spaces") {
  TEST_CASE("index enumeration") {
    const auto one = enumerate_indices(1, 2);
    REQUIRE(one.size() == 3);
    CHECK(one[0] == MultiIndex{0});
    CHECK(one[1] == MultiIndex{1});
    CHECK(one[2] == MultiIndex{2});

    const auto two = enumerate_indices(2, 1);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == MultiIndex{0, 0});
    CHECK(two[1] == MultiIndex{0, 1});
    CHECK(two[2] == MultiIndex{1, 0});

    const auto three = enumerate_indices(3, 4);
    CHECK(three.size() == 35);
    CHECK(count_indices(3, 4) == 35);
    CHECK(std::is_sorted(three.begin(), three.end(), GradedLess{}));
    CHECK(std::adjacent_find(three.begin(), three.end()) == three.end());
    for (const auto& a : three) CHECK(a.total() <= 4);
  }

  TEST_CASE("monomial norms") {
    auto hardy = TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 4);
    CHECK(hardy->monomial_norm({2, 1}) == doctest::Approx(1.0));

    auto bergman = TruncatedBasis::polydisc(1, KernelSpec1D::bergman(), 4);
    CHECK(bergman->monomial_norm({3}) == doctest::Approx(0.5));

    auto da = TruncatedBasis::ball(BallKernelSpec::drury_arveson(2), 4);
    CHECK(da->monomial_norm({1, 1}) == doctest::Approx(1.0 / std::sqrt(2.0)));

    auto h2 = TruncatedBasis::ball(BallKernelSpec::hm(2, 2), 4);
    // alpha!/(|alpha|! a_|alpha|) with a_3 = 4 for alpha = (2, 1): 2 / (6 * 4).
    CHECK(h2->monomial_norm({2, 1}) == doctest::Approx(std::sqrt(2.0 / 24.0)));

    CHECK_THROWS_AS(hardy->monomial_norm({4, 1}), RangeError);
  }

  TEST_CASE("polydisc norms are products of one-variable norms") {
    const std::vector<KernelSpec1D> f{KernelSpec1D::bergman(), KernelSpec1D::dirichlet(), KernelSpec1D::hardy()};
    auto b = TruncatedBasis::polydisc(f, 6);
    std::vector<TruncatedBasis::Ptr> one;
    for (const auto& s : f) one.push_back(TruncatedBasis::polydisc(1, s, 6));
    for (const auto& a : b->indices()) {
      double prod = 1.0;
      for (std::size_t i = 0; i < 3; ++i) prod *= one[i]->monomial_norm(MultiIndex{a[i]});
      CHECK(std::abs(b->monomial_norm(a) - prod) <= 1e-14);
    }
  }

  TEST_CASE("basis dimension and layout") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 3, 3);
    CHECK(b->dim() == 3 * 10);
    CHECK(b->block_size(0) == 3);
    CHECK(b->block_size(1) == 9);
    CHECK(b->degree_of_coord(b->coord(5, 2)) == b->indices()[5].total());
    CHECK_THROWS_AS(TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 3, 9), InvalidInput);
    CHECK_THROWS_AS(TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 65), RangeError);
    CHECK(b->with_degree_cap(1)->dim() == 9);
    CHECK(b->with_coeff_dim(1)->dim() == 10);
  }

  TEST_CASE("kernel vectors") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::bergman(), 3, 2);
    Eigen::VectorXcd xi(2);
    xi << cplx(1, 2), cplx(-1, 0.5);
    const auto k0 = kernel_vector(b, {0.0, 0.0}, xi);
    CHECK((k0.coords.head(2) - xi).norm() == doctest::Approx(0.0));
    CHECK(k0.coords.tail(b->dim() - 2).norm() == 0.0);

    Eigen::VectorXcd one(1);
    one << 1.0;
    const auto kh = kernel_vector(TruncatedBasis::polydisc(1, KernelSpec1D::hardy(), 2), {0.5}, one);
    CHECK(std::abs(kh.coords(0) - 1.0) < 1e-15);
    CHECK(std::abs(kh.coords(1) - 0.5) < 1e-15);
    CHECK(std::abs(kh.coords(2) - 0.25) < 1e-15);

    const auto kb = kernel_vector(TruncatedBasis::polydisc(1, KernelSpec1D::bergman(), 1), {0.5}, one);
    CHECK(std::abs(kb.coords(1) - 0.5 * std::sqrt(2.0)) < 1e-15);

    CHECK_THROWS_AS(kernel_vector(b, {1.0, 0.0}, xi), InvalidInput);
    auto ball = TruncatedBasis::ball(BallKernelSpec::drury_arveson(2), 3);
    CHECK_THROWS_AS(kernel_vector(ball, {0.8, 0.7}, one), InvalidInput);
  }

  TEST_CASE("reproducing property on every geometry") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> g;
    const std::vector<TruncatedBasis::Ptr> bases{
        TruncatedBasis::polydisc(2, KernelSpec1D::dirichlet(), 4, 2),
        TruncatedBasis::polydisc(3, KernelSpec1D::weighted_bergman(-0.5), 3, 1),
        TruncatedBasis::ball(BallKernelSpec::hm(3, 2), 4, 2),
    };
    for (const auto& b : bases) {
      // f given by monomial coefficients; its coordinates divide out nothing:
      // f = sum c_{alpha, j} z^alpha xi_j has coordinate c * ||z^alpha||.
      Eigen::VectorXcd mono(b->dim());
      for (Eigen::Index k = 0; k < b->dim(); ++k) mono(k) = cplx(g(gen), g(gen));
      SpaceVector f{b, Eigen::VectorXcd(b->dim())};
      for (std::size_t p = 0; p < b->num_monomials(); ++p)
        for (int j = 0; j < b->coeff_dim(); ++j) f.coords(b->coord(p, j)) = mono(b->coord(p, j)) * b->norm_at(p);

      const std::vector<cplx> lambda(static_cast<std::size_t>(b->num_vars()), cplx(0.3, -0.2));
      Eigen::VectorXcd value = Eigen::VectorXcd::Zero(b->coeff_dim());
      for (std::size_t p = 0; p < b->num_monomials(); ++p) {
        cplx pw = 1.0;
        for (std::size_t i = 0; i < b->indices()[p].size(); ++i) pw *= std::pow(lambda[i], b->indices()[p][i]);
        for (int j = 0; j < b->coeff_dim(); ++j) value(j) += mono(b->coord(p, j)) * pw;
      }
      CHECK((f.evaluate(lambda) - value).norm() <= 1e-12);

      Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(b->coeff_dim());
      xi(0) = cplx(0.5, 1.0);
      const auto k = kernel_vector(b, lambda, xi);
      CHECK(std::abs(inner(f.coords, k.coords) - inner(value, xi)) <= 1e-12);
    }
  }

  TEST_CASE("slice_symbol") {
    MultiplierSymbol phi(2, 1);
    phi.add_term({1, 1}, 1.0).add_term({0, 1}, 1.0);
    const MultiplierSymbol s = slice_symbol(phi, 0);
    CHECK(s.num_vars() == 1);
    CHECK(s.degree() == 1);
    CHECK(std::abs(s.coefficient({1})(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(s.coefficient({0})(0, 0)) < 1e-15);

    Eigen::MatrixXcd a(2, 2);
    a << 1, 2, 3, 4;
    CHECK(max_coeff_diff(slice_symbol(MultiplierSymbol::constant(3, a), 1), MultiplierSymbol::constant(2, a)) == 0.0);

    Eigen::MatrixXcd nil = Eigen::MatrixXcd::Zero(2, 2);
    nil(0, 1) = 1.0;
    MultiplierSymbol m(2, 2);
    m.add_term({0, 0}, 0.5 * Eigen::MatrixXcd::Identity(2, 2));
    m.add_term({1, 0}, 0.5 * Eigen::MatrixXcd::Identity(2, 2));
    m.add_term({0, 1}, nil);
    MultiplierSymbol expected(1, 2);
    expected.add_term({0}, 0.5 * Eigen::MatrixXcd::Identity(2, 2));
    expected.add_term({1}, 0.5 * Eigen::MatrixXcd::Identity(2, 2));
    CHECK(max_coeff_diff(slice_symbol(m, 1), expected) == 0.0);

    CHECK_THROWS_AS(slice_symbol(phi, 2), InvalidInput);
  }

  TEST_CASE("symbol arithmetic") {
    MultiplierSymbol a(1, 1), b(1, 1);
    a.add_term({0}, 1.0).add_term({1}, 2.0);
    b.add_term({1}, 3.0);
    const auto p = a * b;
    CHECK(p.degree() == 2);
    CHECK(std::abs(p.coefficient({2})(0, 0) - 6.0) < 1e-15);
    CHECK(std::abs(a.evaluate({0.5})(0, 0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(a.add_term({1, 0}, 1.0), InvalidInput);
  }
}
