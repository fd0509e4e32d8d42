#include <doctest.h>

#include <hypomix/pauli.hpp>

#include "test_helpers.hpp"

using namespace hypomix;
using testing::diff;
using testing::random_string;

namespace {

const Complex kI(0, 1);

Matrix kron2(const Matrix& a, const Matrix& b) { return kron(a, b); }

}  // namespace

TEST_SUITE("pauli") {

TEST_CASE("single qubit products") {
  const auto x = PauliString::from_label("X");
  const auto y = PauliString::from_label("Y");
  const auto z = PauliString::from_label("Z");

  auto xy = multiply(x, y);
  CHECK(xy.phase == kI);
  CHECK(xy.string == z);

  // identity absorbs
  const auto id = PauliString::identity(1);
  for (const auto& p : {x, y, z, id}) {
    auto r = multiply(id, p);
    CHECK(r.phase == Complex(1.0));
    CHECK(r.string == p);
  }

  auto zz = PauliString::from_label("ZZ");
  auto sq = multiply(zz, zz);
  CHECK(sq.phase == Complex(1.0));
  CHECK(sq.string.is_identity());
}

TEST_CASE("product matches dense matrices") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto p = random_string(n, rng);
      const auto q = random_string(n, rng);
      const auto r = multiply(p, q);
      CHECK(diff(r.phase * r.string.to_dense(), p.to_dense() * q.to_dense()) <
            1e-14);
    }
  }
}

TEST_CASE("associativity including phases") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + int(trial % 4);
    const auto p = random_string(n, rng);
    const auto q = random_string(n, rng);
    const auto r = random_string(n, rng);

    const auto pq = multiply(p, q);
    const auto left = multiply(pq.string, r);
    const auto qr = multiply(q, r);
    const auto right = multiply(p, qr.string);
    CHECK(left.string == right.string);
    CHECK(pq.phase * left.phase == qr.phase * right.phase);
  }
}

TEST_CASE("commutator identities") {
  const auto x = PauliString::from_label("X");
  const auto z = PauliString::from_label("Z");
  const auto c = commutator(x, z);
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].string == PauliString::from_label("Y"));
  CHECK(c.terms()[0].coeff == Complex(0, -2));

  // Z-strings commute
  CHECK(commutator(PauliString::from_label("ZZ"), PauliString::from_label("ZI"))
            .empty());

  const auto c2 = commutator(PauliString::from_label("XI"),
                             PauliString::from_label("ZI"));
  REQUIRE(c2.terms().size() == 1);
  CHECK(c2.terms()[0].string == PauliString::from_label("YI"));
  CHECK(c2.terms()[0].coeff == Complex(0, -2));
}

TEST_CASE("commutator antisymmetry") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + int(trial % 3);
    const auto p = random_string(n, rng);
    const auto q = random_string(n, rng);
    const auto a = commutator(p, q);
    const auto b = commutator(q, p);
    REQUIRE(a.terms().size() == b.terms().size());
    for (std::size_t k = 0; k < a.terms().size(); ++k) {
      CHECK(a.terms()[k].string == b.terms()[k].string);
      CHECK(a.terms()[k].coeff == -b.terms()[k].coeff);
    }
  }
}

TEST_CASE("commutator matches dense") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto p = random_string(n, rng);
      const auto q = random_string(n, rng);
      const Matrix pd = p.to_dense(), qd = q.to_dense();
      CHECK(diff(commutator(p, q).to_dense(), pd * qd - qd * pd) < 1e-13);
    }
  }
}

TEST_CASE("dense conversion") {
  CHECK(diff(PauliString::from_label("Z").to_dense(),
             (Matrix(2, 2) << 1, 0, 0, -1).finished()) == 0.0);
  CHECK(diff(PauliString::from_label("Y").to_dense(),
             (Matrix(2, 2) << 0, -kI, kI, 0).finished()) == 0.0);

  // transverse-field Ising on two sites against a direct Kronecker build
  PauliSum h(2);
  h.add(1.0, PauliString::from_label("ZZ"));
  h.add(1.0, PauliString::from_label("XI"));
  h.add(1.0, PauliString::from_label("IX"));
  const Matrix z1 = PauliString::from_label("Z").to_dense();
  const Matrix x1 = PauliString::from_label("X").to_dense();
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix expected =
      kron2(z1, z1) + kron2(x1, id) + kron2(id, x1);
  CHECK(diff(h.to_dense(), expected) < 1e-14);

  CHECK(max_abs(PauliSum(2).to_dense()) == 0.0);
}

TEST_CASE("canonicalization merges and prunes") {
  PauliSum s(1);
  s.add(0.5, PauliString::from_label("X"));
  s.add(0.5, PauliString::from_label("X"));
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].coeff == Complex(1.0));

  s.add(-1.0, PauliString::from_label("X"));
  CHECK(s.empty());

  PauliSum t(1);
  t.add(1e-15, PauliString::from_label("Z"));
  CHECK(t.empty());

  PauliSum herm(1);
  herm.add(Complex(1.0, 0.0), PauliString::from_label("X"));
  CHECK(herm.is_hermitian());
  herm.add(Complex(0.0, 0.5), PauliString::from_label("Z"));
  CHECK_FALSE(herm.is_hermitian());
}

TEST_CASE("z-strings are invisible to commutators in the z-basis trace") {
  // For Z-strings q and q', tr(q [P, q']) vanishes for every Pauli term P:
  // the commutator is either zero or carries an X/Y component.
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t zq = 1; zq < (1ull << n); ++zq) {
      for (std::uint64_t zq2 = 1; zq2 < (1ull << n); ++zq2) {
        const PauliString q(n, 0, zq), q2(n, 0, zq2);
        for (int trial = 0; trial < 8; ++trial) {
          const auto p = random_string(n, rng);
          const Matrix c = commutator(p, q2).to_dense();
          CHECK(std::abs((q.to_dense() * c).trace()) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("dephasing eigenvalues") {
  CHECK(dephasing_eigenvalue(PauliString::from_label("ZIZ"), 3.7) == 0.0);
  CHECK(dephasing_eigenvalue(PauliString::from_label("XY"), 1.0) == -4.0);
  CHECK(dephasing_eigenvalue(PauliString::from_label("X"), 0.5) == -1.0);
  CHECK_THROWS_AS(dephasing_eigenvalue(PauliString::from_label("X"), -1.0),
                  DomainError);
}

TEST_CASE("dephasing eigenvalues match the dense dissipator") {
  // D A = gamma sum_i (Z_i A Z_i - A) applied to each Pauli string.
  const double gamma = 0.8;
  for (int n = 1; n <= 3; ++n) {
    std::vector<Matrix> zs;
    for (int i = 0; i < n; ++i) {
      zs.push_back(PauliString::single(n, i, 'Z').to_dense());
    }
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      for (std::uint64_t z = 0; z < (1ull << n); ++z) {
        const PauliString p(n, x, z);
        const Matrix pd = p.to_dense();
        Matrix applied = Matrix::Zero(pd.rows(), pd.cols());
        for (const Matrix& zi : zs) applied += gamma * (zi * pd * zi - pd);
        CHECK(diff(applied, dephasing_eigenvalue(p, gamma) * pd) < 1e-12);
      }
    }
  }
}

TEST_CASE("serialization") {
  PauliSum s(2);
  s.add(Complex(0.5, -1.0), PauliString::from_label("XZ"));
  s.add(2.0, PauliString::from_label("IY"));
  const auto round = PauliSum::from_json(s.to_json());
  REQUIRE(round.terms().size() == s.terms().size());
  for (std::size_t k = 0; k < s.terms().size(); ++k) {
    CHECK(round.terms()[k].string == s.terms()[k].string);
    CHECK(round.terms()[k].coeff == s.terms()[k].coeff);
  }

  const auto parsed =
      PauliSum::from_json(R"([{"coeff":[1,0],"string":"XZ"}])");
  REQUIRE(parsed.terms().size() == 1);
  CHECK(parsed.terms()[0].string == PauliString::from_label("XZ"));

  CHECK_THROWS_AS(PauliSum::from_json("not json"), InputError);
  CHECK_THROWS_AS(PauliSum::from_json(R"([{"coeff":[1,0],"string":"XQ"}])"),
                  InputError);
}

TEST_CASE("errors") {
  const auto a = PauliString::identity(2);
  const auto b = PauliString::identity(3);
  CHECK_THROWS_AS(multiply(a, b), DimensionError);
  CHECK_THROWS_AS(commutator(a, b), DimensionError);
  CHECK_THROWS_AS(PauliString::identity(7).to_dense(), SizeError);
  CHECK_THROWS_AS(PauliString(2, 0b100, 0), DimensionError);
  PauliSum s(2);
  CHECK_THROWS_AS(s.add(1.0, PauliString::identity(3)), DimensionError);
}

}  // TEST_SUITE
