#include <cmath>

#include "doctest.h"
#include "rkhs/error.hpp"
#include "rkhs/linalg.hpp"
#include "rkhs/operators.hpp"

using namespace rkhs;

namespace {

double weight(const OperatorMatrix& s, int m) { return std::abs(s.data(m + 1, m)); }

}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("one-variable shift weights") {
    const int d = 6;
    const auto hardy = shift_matrix(TruncatedBasis::polydisc(1, KernelSpec1D::hardy(), d), 0);
    const auto bergman = shift_matrix(TruncatedBasis::polydisc(1, KernelSpec1D::bergman(), d), 0);
    const auto dirichlet = shift_matrix(TruncatedBasis::polydisc(1, KernelSpec1D::dirichlet(), d), 0);
    for (int m = 0; m < d; ++m) {
      CHECK(std::abs(weight(hardy, m) - 1.0) <= 1e-15);
      CHECK(std::abs(weight(bergman, m) - std::sqrt((m + 1.0) / (m + 2.0))) <= 1e-15);
      CHECK(std::abs(weight(dirichlet, m) - std::sqrt((m + 2.0) / (m + 1.0))) <= 1e-15);
    }
    CHECK(hardy.data.col(d).norm() == 0.0);
    CHECK(hardy.exactness_degree == d - 1);
    CHECK(hardy.lift == 1);
  }

  TEST_CASE("multiplier by a coordinate is the shift") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::dirichlet(), 4, 2);
    MultiplierSymbol z2(2, 2);
    z2.add_term({0, 1}, Eigen::MatrixXcd::Identity(2, 2));
    CHECK((multiplier_matrix(b, z2).data - shift_matrix(b, 1).data).norm() <= 1e-15);
    CHECK_THROWS_AS(shift_matrix(b, 2), InvalidInput);
  }

  TEST_CASE("product of multipliers is the multiplier of the product") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::bergman(), 6);
    MultiplierSymbol f(2, 1), g(2, 1);
    f.add_term({0, 0}, 0.5).add_term({1, 0}, cplx(0.2, 0.1));
    g.add_term({0, 1}, -0.3).add_term({1, 1}, 0.4);
    const auto prod = multiplier_matrix(b, f) * multiplier_matrix(b, g);
    const auto direct = multiplier_matrix(b, f * g);
    REQUIRE(prod.exactness_degree >= 0);
    const Eigen::Index cols = b->block_size(prod.exactness_degree);
    CHECK((prod.data - direct.data).leftCols(cols).norm() <= 1e-14);
  }

  TEST_CASE("Cauchy dual weights") {
    const int d = 6;
    const auto bergman = cauchy_dual(shift_matrix(TruncatedBasis::polydisc(1, KernelSpec1D::bergman(), d), 0).exact_block());
    const auto dirichlet =
        cauchy_dual(shift_matrix(TruncatedBasis::polydisc(1, KernelSpec1D::dirichlet(), d), 0).exact_block());
    const auto hardy = cauchy_dual(shift_matrix(TruncatedBasis::polydisc(1, KernelSpec1D::hardy(), d), 0).exact_block());
    for (int m = 0; m < d; ++m) {
      CHECK(std::abs(weight(bergman, m) - std::sqrt((m + 2.0) / (m + 1.0))) <= 1e-14);
      CHECK(std::abs(weight(dirichlet, m) - std::sqrt((m + 1.0) / (m + 2.0))) <= 1e-14);
      CHECK(std::abs(weight(hardy, m) - 1.0) <= 1e-14);
    }
  }

  TEST_CASE("Cauchy dual is an involution") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::weighted_bergman(-0.5), 5, 2);
    for (int axis = 0; axis < 2; ++axis) {
      const auto t = shift_matrix(b, axis).exact_block();
      CHECK((cauchy_dual(cauchy_dual(t)).data - t.data).norm() <= 1e-12);
    }
    auto ball = TruncatedBasis::ball(BallKernelSpec::hm(2, 2), 5);
    const auto t = shift_matrix(ball, 0).exact_block();
    CHECK((cauchy_dual(cauchy_dual(t)).data - t.data).norm() <= 1e-12);
  }

  TEST_CASE("Cauchy dual refuses operators that are not bounded below") {
    auto b = TruncatedBasis::polydisc(1, KernelSpec1D::hardy(), 4);
    CHECK_THROWS_AS(cauchy_dual(shift_matrix(b, 0)), NotBoundedBelow);
    CHECK_THROWS_AS(range_projection(shift_matrix(b, 0)), NotBoundedBelow);
    CHECK_NOTHROW(truncated_cauchy_dual(shift_matrix(b, 0)));
  }

  TEST_CASE("range projection of the Hardy shift") {
    auto b = TruncatedBasis::polydisc(1, KernelSpec1D::hardy(), 3);
    const auto p = range_projection(shift_matrix(b, 0).exact_block());
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(4, 4);
    expected(0, 0) = 0.0;
    CHECK((p.data - expected).norm() <= 1e-15);

    // Bergman on the bidisc: range of M_{z_1} is everything divisible by z_1.
    auto bb = TruncatedBasis::polydisc(2, KernelSpec1D::bergman(), 4);
    const auto q = range_projection(shift_matrix(bb, 0).exact_block());
    for (std::size_t k = 0; k < bb->num_monomials(); ++k) {
      const double want = bb->indices()[k][0] > 0 ? 1.0 : 0.0;
      CHECK(std::abs(q.data(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) - want) <= 1e-13);
    }
  }

  TEST_CASE("union of commuting projections") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 3);
    const auto p1 = range_projection(shift_matrix(b, 0).exact_block()).data;
    const auto p2 = range_projection(shift_matrix(b, 1).exact_block()).data;
    const auto u = union_projection({p1, p2});
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(b->dim(), b->dim());
    expected(0, 0) = 0.0;
    CHECK((u.projection - expected).norm() <= 1e-13);
    CHECK(u.block_form_residual <= 1e-13);

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2), c(2, 2);
    a(0, 0) = 1.0;
    c << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(union_projection({a, c}), PreconditionViolation);
    CHECK_THROWS_AS(union_projection({2.0 * a}), PreconditionViolation);
  }

  TEST_CASE("doubly commuting check") {
    auto hardy = TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 5);
    CHECK(doubly_commuting_check(shift_tuple(hardy)).pass);
    auto bergman = TruncatedBasis::polydisc(3, KernelSpec1D::bergman(), 4);
    CHECK(doubly_commuting_check(shift_tuple(bergman)).pass);
    const auto same = shift_matrix(hardy, 0);
    CHECK_FALSE(doubly_commuting_check({same, same}).pass);
    auto da = TruncatedBasis::ball(BallKernelSpec::drury_arveson(2), 5);
    const auto rep = doubly_commuting_check(shift_tuple(da));
    CHECK(rep.max_commutator <= 1e-14);
    CHECK_FALSE(rep.pass);
  }

  TEST_CASE("wandering subspace of the shift tuple is the constants") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::bergman(), 4, 2);
    const auto w = wandering_subspace(shift_tuple(b));
    REQUIRE(w.dim() == 2);
    CHECK(w.columns.bottomRows(b->dim() - 2).norm() <= 1e-14);
    const auto g = generated_subspace(shift_tuple(b), w.columns, 4);
    CHECK(g.dim() == b->dim());
  }

  TEST_CASE("monomial ideals are invariant") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::dirichlet(), 5);
    const auto m = monomial_ideal(b, {{2, 0}, {1, 1}});
    const Eigen::MatrixXcd p = m.projector();
    for (const auto& s : shift_tuple(b)) CHECK((s.data * p - p * s.data * p).norm() <= 1e-14);
    CHECK_THROWS_AS(monomial_ideal(b, {{1, 0, 0}}), InvalidInput);
  }

  TEST_CASE("polynomially generated subspaces") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::bergman(), 4);
    MultiplierSymbol f(2, 1);
    f.add_term({1, 0}, 1.0).add_term({0, 1}, -1.0);
    const auto m = generated_by_polynomial(b, f);
    CHECK(m.orthonormality_residual() <= 1e-12);
    CHECK(m.columns.row(0).norm() <= 1e-14);
    const Eigen::MatrixXcd p = m.projector();
    for (const auto& s : shift_tuple(b)) CHECK((s.data * p - p * s.data * p).norm() <= 1e-12);
    MultiplierSymbol g(2, 1);
    g.add_term({0, 0}, 1.0);
    CHECK_THROWS_AS(generated_by_polynomial(b, g), InvalidInput);
  }

  TEST_CASE("wandering witness on the Hardy bidisc") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 5);
    const auto x = shift_tuple(b);

    const auto w1 = wandering_witness(x, monomial_ideal(b, {{1, 0}}), 5);
    REQUIRE(w1.found);
    CHECK(w1.m_tilde == MultiIndex{1, 0});
    CHECK(w1.max_residual <= 1e-12);
    CHECK(std::abs(std::abs(w1.eta.coords(static_cast<Eigen::Index>(*b->position({1, 0})))) - 1.0) <= 1e-14);

    const auto w2 = wandering_witness(x, monomial_ideal(b, {{0, 2}, {1, 1}}), 5);
    REQUIRE(w2.found);
    CHECK(w2.m_tilde == MultiIndex{0, 2});

    const auto w3 = wandering_witness(x, monomial_ideal(b, {{0, 3}}), 2);
    CHECK_FALSE(w3.found);
  }

  TEST_CASE("wandering witness preconditions") {
    auto b = TruncatedBasis::polydisc(2, KernelSpec1D::hardy(), 3);
    const auto x = shift_tuple(b);
    Eigen::MatrixXcd one = Eigen::MatrixXcd::Zero(b->dim(), 1);
    one(static_cast<Eigen::Index>(*b->position({0, 1})), 0) = 1.0;
    CHECK_THROWS_AS(wandering_witness(x, SubspaceFrame{one}, 3), PreconditionViolation);
    CHECK_THROWS_AS(wandering_witness(x, SubspaceFrame{Eigen::MatrixXcd::Identity(b->dim(), b->dim())}, 3),
                    PreconditionViolation);
    CHECK_THROWS_AS(wandering_witness(x, SubspaceFrame{Eigen::MatrixXcd::Zero(b->dim(), 0)}, 3), PreconditionViolation);
  }

  TEST_CASE("linear algebra helpers") {
    Eigen::MatrixXcd m(3, 2);
    m << 1, 0, 0, 1, 0, 0;
    CHECK(linalg::numerical_rank(m) == 2);
    CHECK(linalg::null_space(m.adjoint()).cols() == 1);
    CHECK(linalg::isometry_residual(m) <= 1e-15);
    CHECK(linalg::max_principal_angle(m, m) <= 1e-15);
    CHECK(linalg::max_principal_angle(m, m.leftCols(1)) == doctest::Approx(M_PI / 2));
    Eigen::MatrixXcd h(2, 2);
    h << 4, 0, 0, 9;
    CHECK((linalg::psd_sqrt(h) - Eigen::Vector2cd(2, 3).asDiagonal().toDenseMatrix()).norm() <= 1e-14);
  }
}
