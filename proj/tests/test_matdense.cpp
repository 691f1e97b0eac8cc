#include <doctest.h>

#include <algorithm>
#include <random>

#include "cassini/matdense.hpp"
#include "support.hpp"

using namespace cassini;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) {
      m(i, j++) = v;
    }
    ++i;
  }
  return m;
}

SymMatrix random_sym(std::mt19937_64& rng, Index n) {
  const Matrix a = normal_matrix(rng, n, n);
  return SymMatrix(Matrix(a + a.transpose()));
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
  const Matrix l = cholesky(SymMatrix::identity(3));
  CHECK(max_relative_difference(l, Matrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("cholesky of [[4,2],[2,5]]") {
  const Matrix l = cholesky(SymMatrix(mat({{4, 2}, {2, 5}})));
  CHECK(max_relative_difference(l, mat({{2, 0}, {1, 2}})) < 1e-15);
  CHECK(max_relative_difference(l * l.transpose(), mat({{4, 2}, {2, 5}})) < 1e-15);
}

TEST_CASE("cholesky reports the failing pivot") {
  try {
    cholesky(SymMatrix(mat({{1, 2}, {2, 1}})));
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
  }
}

TEST_CASE("cholesky reproduces random SPD matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const Index n = 1 + t % 7;
    const Matrix a = testing::random_psd(rng, n) + Matrix::Identity(n, n);
    const Matrix l = cholesky(SymMatrix(a));
    CHECK(l.isLowerTriangular());
    CHECK((l * l.transpose() - a).cwiseAbs().maxCoeff() <= 1e-10 * a.norm());
  }
}

TEST_CASE("symmetric matrices reject asymmetry and junk") {
  CHECK_THROWS_AS(SymMatrix(mat({{1, 2}, {0, 1}})), Error);
  CHECK_THROWS_AS(SymMatrix(Matrix(2, 3)), Error);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 1) = nan(1, 0) = std::nan("");
  CHECK_THROWS_AS(SymMatrix{nan}, Error);
  // tiny asymmetry is averaged away
  const SymMatrix s(mat({{1, 2}, {2 + 1e-12, 1}}));
  CHECK(s(0, 1) == s(1, 0));
}

TEST_CASE("sym_eig small cases") {
  const SymEig e = sym_eig(SymMatrix::diagonal(Vector::LinSpaced(3, 3, 1)));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(2.0));
  CHECK(e.values(2) == doctest::Approx(3.0));
  // permutation eigenvectors
  CHECK(e.vectors.cwiseAbs().colwise().maxCoeff().minCoeff() == doctest::Approx(1.0));
  const Vector v = sym_eigenvalues(SymMatrix(mat({{0, 1}, {1, 0}})));
  CHECK(v(0) == doctest::Approx(-1.0));
  CHECK(v(1) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig residual, orthogonality and reconstruction") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const Index n = 1 + t % 8;
    const SymMatrix s = random_sym(rng, n);
    const SymEig e = sym_eig(s);
    const double norm = spectral_norm(s.matrix());
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    CHECK((s.matrix() * e.vectors - e.vectors * e.values.asDiagonal()).norm() <= 1e-10 * norm);
    CHECK((e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)).norm() <= 1e-10);
    CHECK((s.matrix() - e.vectors * e.values.asDiagonal() * e.vectors.transpose()).norm() <=
          10 * 1e-10 * norm);
    CHECK(spectral_norm(s.matrix()) ==
          doctest::Approx(e.values.cwiseAbs().maxCoeff()).epsilon(1e-12));
  }
}

TEST_CASE("generalized eigenproblem") {
  SUBCASE("M = I, K = diag(4, 9)") {
    const GenEig g = gen_sym_def_eig(SymMatrix::diagonal(Vector::LinSpaced(2, 4, 9)),
                                     SymMatrix::identity(2));
    CHECK(std::sqrt(g.omega_sq(0)) == doctest::Approx(2.0));
    CHECK(std::sqrt(g.omega_sq(1)) == doctest::Approx(3.0));
    CHECK(g.phi.cwiseAbs().isApprox(Matrix::Identity(2, 2)));
  }
  SUBCASE("M = K = diag(4, 1)") {
    const SymMatrix mk = SymMatrix::diagonal(Vector::LinSpaced(2, 4, 1));
    const GenEig g = gen_sym_def_eig(mk, mk);
    CHECK(g.omega_sq(0) == doctest::Approx(1.0));
    CHECK(g.omega_sq(1) == doctest::Approx(1.0));
    CHECK((g.phi.transpose() * mk.matrix() * g.phi - Matrix::Identity(2, 2)).norm() < 1e-14);
  }
  SUBCASE("random pairs satisfy both identities and match the Cholesky reduction") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
      const Index n = 1 + t % 6;
      const SymMatrix m(Matrix(testing::random_psd(rng, n) + Matrix::Identity(n, n)));
      const SymMatrix k(Matrix(testing::random_psd(rng, n) + Matrix::Identity(n, n)));
      const GenEig g = gen_sym_def_eig(k, m);
      const Matrix& p = g.phi;
      CHECK((p.transpose() * m.matrix() * p - Matrix::Identity(n, n)).norm() <= 1e-10 * n);
      CHECK((p.transpose() * k.matrix() * p - Matrix(g.omega_sq.asDiagonal())).norm() <=
            1e-10 * spectral_norm(k.matrix()) * spectral_norm(p) * spectral_norm(p));
      const Matrix linv = cholesky(m).inverse();
      const Vector direct =
          sym_eigenvalues(SymMatrix(Matrix(linv * k.matrix() * linv.transpose())));
      CHECK((direct - g.omega_sq).cwiseAbs().maxCoeff() <= 1e-10 * direct.maxCoeff());
    }
  }
  SUBCASE("indefinite stiffness") {
    try {
      gen_sym_def_eig(SymMatrix(mat({{1, 0}, {0, -1}})), SymMatrix::identity(2));
      FAIL("expected NonPositiveFrequency");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonPositiveFrequency);
    }
  }
}

TEST_CASE("complex eigenvalues") {
  auto sorted = [](std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
  };
  const auto skew = sorted(complex_eig(mat({{0, 2}, {-2, 0}})));
  CHECK(std::abs(skew[0] - Complex(0, -2)) < 1e-14);
  CHECK(std::abs(skew[1] - Complex(0, 2)) < 1e-14);
  const auto tri = sorted(complex_eig(mat({{1, 5, 6}, {0, 2, 7}, {0, 0, 3}})));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(tri[static_cast<std::size_t>(i)] - double(i + 1)) < 1e-12);
  }
  // companion of λ² + 3λ + 2
  const auto comp = sorted(complex_eig(mat({{0, 1}, {-2, -3}})));
  CHECK(std::abs(comp[0] + 2.0) < 1e-14);
  CHECK(std::abs(comp[1] + 1.0) < 1e-14);
}

TEST_CASE("complex eigenvalues: residual and conjugate closure on random matrices") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const Index n = 2 + t % 8;
    const Matrix a = normal_matrix(rng, n, n);
    const auto values = complex_eig(a);
    REQUIRE(values.size() == static_cast<std::size_t>(n));
    const double norm = spectral_norm(a);
    std::vector<Complex> folded;
    for (Complex z : values) {
      ComplexMatrix s = a.cast<Complex>();
      s.diagonal().array() -= z;
      CHECK(smallest_singular_value(s) <= 1e-10 * norm);
      folded.push_back(z.imag() < 0 ? std::conj(z) : z);
    }
    std::sort(folded.begin(), folded.end(), [](Complex x, Complex y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    // every non-real value appears twice once conjugated into the upper half
    for (std::size_t i = 0; i < folded.size();) {
      if (std::abs(folded[i].imag()) < 1e-12) {
        ++i;
        continue;
      }
      REQUIRE(i + 1 < folded.size());
      CHECK(std::abs(folded[i] - folded[i + 1]) < 1e-9);
      i += 2;
    }
  }
}

TEST_CASE("spectral norm") {
  CHECK(spectral_norm(mat({{1, 0}, {0, -3}})) == doctest::Approx(3.0));
  CHECK(spectral_norm(Matrix(Matrix::Zero(3, 3))) == 0.0);
  CHECK(spectral_norm(mat({{0, 1}, {0, 0}})) == doctest::Approx(1.0));
}

TEST_CASE("damped system validation names the matrix") {
  const SymMatrix i2 = SymMatrix::identity(2);
  const SymMatrix bad(mat({{1, 2}, {2, 1}}));
  try {
    DampedSystem(bad, i2, i2);
    FAIL("M accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    CHECK(std::string(e.what()).find('M') != std::string::npos);
  }
  try {
    DampedSystem(i2, i2, bad);
    FAIL("K accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    CHECK(std::string(e.what()).find('K') != std::string::npos);
  }
  try {
    DampedSystem(i2, SymMatrix(mat({{1, 0}, {0, -0.1}})), i2);
    FAIL("indefinite C accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
    CHECK(std::string(e.what()).find('C') != std::string::npos);
  }
  // noise-level negativity in C is accepted and kept
  const DampedSystem ok(i2, SymMatrix(mat({{1, 0}, {0, -1e-10}})), i2);
  CHECK(ok.damping()(1, 1) == -1e-10);
  CHECK_THROWS_AS(DampedSystem(i2, SymMatrix::identity(3), i2), Error);
}
