#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "uccvqe/chem/basis.hpp"
#include "uccvqe/chem/fcidump.hpp"
#include "uccvqe/chem/gaussian.hpp"
#include "uccvqe/chem/geometry.hpp"
#include "uccvqe/chem/integrals.hpp"
#include "uccvqe/chem/mo.hpp"
#include "uccvqe/chem/scf.hpp"
#include "uccvqe/errors.hpp"

using namespace uccvqe;
using namespace uccvqe::chem;

namespace {

Geometry h2(double r_bohr) {
  return make_geometry({{1, {0, 0, 0}}, {1, {0, 0, r_bohr}}}, "H2");
}

// Composite Simpson rule on [lo, hi].
template <class F>
double simpson(F f, double lo, double hi, int n = 4000) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int k = 1; k < n; ++k) s += f(lo + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST(Gaussian, BoysMatchesQuadrature) {
  for (double x : {0.0, 1e-8, 1e-3, 0.5, 2.0, 10.0, 40.0}) {
    const double ref = simpson([x](double t) { return std::exp(-x * t * t); }, 0.0, 1.0);
    EXPECT_NEAR(boys_f0(x), ref, 1e-12) << "x=" << x;
  }
  EXPECT_THROW(boys_f0(-1.0), std::domain_error);
}

TEST(Gaussian, OverlapAndKineticMatchSeparableQuadrature) {
  const double a = 0.8, b = 1.7;
  const Vec3<double> A(0.1, -0.2, 0.3), B(-0.4, 0.5, 1.1);
  // 1D factors of exp(-a|r-A|^2) exp(-b|r-B|^2) and of the second derivative of the b factor.
  double s[3], d2[3];
  for (int k = 0; k < 3; ++k) {
    const double ak = A(k), bk = B(k);
    auto fa = [&](double x) { return std::exp(-a * (x - ak) * (x - ak)); };
    auto fb = [&](double x) { return std::exp(-b * (x - bk) * (x - bk)); };
    s[k] = simpson([&](double x) { return fa(x) * fb(x); }, -12, 12);
    d2[k] = simpson(
        [&](double x) { return fa(x) * (4 * b * b * (x - bk) * (x - bk) - 2 * b) * fb(x); }, -12,
        12);
  }
  const double norm = primitive_norm(a) * primitive_norm(b);
  const double s_ref = norm * s[0] * s[1] * s[2];
  const double t_ref = -0.5 * norm * (d2[0] * s[1] * s[2] + s[0] * d2[1] * s[2] + s[0] * s[1] * d2[2]);
  EXPECT_NEAR(overlap_primitive(a, A, b, B), s_ref, 1e-12);
  EXPECT_NEAR(kinetic_primitive(a, A, b, B), t_ref, 1e-11);
}

TEST(Gaussian, ExtendedPrecisionAgrees) {
  const Vec3<double> A(0, 0, 0), B(0, 0, 1.4);
  const Vec3<long double> Al(0, 0, 0), Bl(0, 0, 1.4L);
  const double d = eri_primitive(0.5, A, 0.9, B, 1.3, A, 0.7, B);
  const long double l = eri_primitive(0.5L, Al, 0.9L, Bl, 1.3L, Al, 0.7L, Bl);
  EXPECT_NEAR(d, static_cast<double>(l), 1e-14);
}

TEST(Basis, ContractionsAreNormalized) {
  for (auto name : {BasisName::sto3g, BasisName::sto6g}) {
    const auto basis = make_basis(h2(1.4), name);
    ASSERT_EQ(basis.size(), 2u);
    const auto t = build_integrals(h2(1.4), basis);
    EXPECT_NEAR(t.overlap(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(t.overlap(1, 1), 1.0, 1e-12);
  }
  EXPECT_EQ(parse_basis_name("sto-6g"), BasisName::sto6g);
  EXPECT_EQ(parse_basis_name(to_string(BasisName::sto3g)), BasisName::sto3g);
  EXPECT_THROW(parse_basis_name("cc-pvdz"), std::invalid_argument);
}

TEST(Basis, NonSShellRejected) {
  auto basis = make_basis(h2(1.4), BasisName::sto3g);
  basis[0].angular_momentum = 1;
  EXPECT_THROW(build_integrals(h2(1.4), basis), UnsupportedError);
}

// Textbook H2/STO-3G integrals at R = 1.4 bohr (4 decimals).
TEST(Integrals, H2Sto3gTextbookValues) {
  const auto t = build_integrals(h2(1.4), make_basis(h2(1.4), BasisName::sto3g));
  EXPECT_NEAR(t.overlap(0, 1), 0.6593, 1e-4);
  EXPECT_NEAR(t.kinetic(0, 0), 0.7600, 1e-4);
  EXPECT_NEAR(t.kinetic(0, 1), 0.2365, 1e-4);
  EXPECT_NEAR(t.core_hamiltonian()(0, 0), -1.1204, 1e-4);
  EXPECT_NEAR(t.core_hamiltonian()(0, 1), -0.9584, 1e-4);
  EXPECT_NEAR(t.eri(0, 0, 0, 0), 0.7746, 1e-4);
  EXPECT_NEAR(t.eri(0, 0, 1, 1), 0.5697, 1e-4);
  EXPECT_NEAR(t.eri(1, 0, 1, 0), 0.2970, 1e-4);
  EXPECT_NEAR(t.eri(1, 0, 0, 0), 0.4441, 1e-4);
  EXPECT_NEAR(t.nuclear_repulsion, 1.0 / 1.4, 1e-14);
}

TEST(Integrals, EriHasEightfoldSymmetry) {
  const auto g = h4_geometry(H4Path::trapezoidal, 120.0);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  const auto n = static_cast<std::size_t>(t.n_basis());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const double v = t.eri(p, q, r, s);
          EXPECT_NEAR(v, t.eri(q, p, r, s), 1e-14);
          EXPECT_NEAR(v, t.eri(r, s, p, q), 1e-14);
          EXPECT_NEAR(v, t.eri(p, q, s, r), 1e-14);
        }
}

TEST(Scf, H2Sto3gTextbookEnergy) {
  const auto t = build_integrals(h2(1.4), make_basis(h2(1.4), BasisName::sto3g));
  const auto r = run_rhf(t, 2);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.hf_energy, -1.1167, 1e-4);
  EXPECT_NEAR(r.orbital_energies(0), -0.5782, 1e-4);
  EXPECT_NEAR(r.orbital_energies(1), 0.6703, 1e-4);
}

TEST(Scf, H4LinearConvergesWithAscendingEnergies) {
  const auto g = h4_geometry(H4Path::linear, 1.2);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  const auto r = run_rhf(t, 4);
  ASSERT_TRUE(r.converged);
  EXPECT_TRUE(r.stable);
  for (Eigen::Index k = 1; k < r.orbital_energies.size(); ++k)
    EXPECT_LE(r.orbital_energies(k - 1), r.orbital_energies(k));
  // C^T S C = 1
  const Eigen::MatrixXd m = r.mo_coefficients.transpose() * t.overlap * r.mo_coefficients;
  EXPECT_LT((m - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Scf, DampedIterationReachesSameSolution) {
  const auto g = h4_geometry(H4Path::rectangular, 3.0);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  ScfOptions damped;
  damped.diis_size = 0;
  damped.max_iterations = 2000;
  const auto a = run_rhf(t, 4), b = run_rhf(t, 4, damped);
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged);
  EXPECT_NEAR(a.hf_energy, b.hf_energy, 1e-9);
}

TEST(Scf, SquareSaddleIsFollowedDownhill) {
  const auto g = h4_geometry(H4Path::trapezoidal, 90.0);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  ScfOptions plain;
  plain.stability_rounds = 0;
  const auto saddle = run_rhf(t, 4, plain);
  const auto followed = run_rhf(t, 4);
  ASSERT_TRUE(saddle.converged);
  ASSERT_TRUE(followed.converged);
  EXPECT_TRUE(followed.stable);
  EXPECT_LT(followed.hf_energy, saddle.hf_energy - 1e-3);
}

TEST(Scf, RejectsOddElectronCount) {
  const auto t = build_integrals(h2(1.4), make_basis(h2(1.4), BasisName::sto3g));
  EXPECT_THROW(run_rhf(t, 3), std::invalid_argument);
  EXPECT_THROW(run_rhf(t, 6), std::invalid_argument);
}

TEST(Mo, ReferenceEnergyAndFockDiagonalMatchScf) {
  const auto g = h4_geometry(H4Path::rectangular, 1.5);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  const auto scf = run_rhf(t, 4);
  const auto mo = transform_to_mo(t, scf);
  EXPECT_NEAR(mo.reference_energy(), scf.hf_energy, 1e-10);
  EXPECT_LT((mo.fock_diagonal() - scf.orbital_energies).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Mo, TransformMatchesBruteForce) {
  const auto g = h4_geometry(H4Path::linear, 2.0);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  const auto scf = run_rhf(t, 4);
  const auto mo = transform_to_mo(t, scf);
  const auto& c = scf.mo_coefficients;
  const int n = 4;
  for (auto [p, q, r, s] : {std::array{0, 1, 2, 3}, std::array{3, 3, 0, 1}, std::array{2, 0, 2, 0}}) {
    double ref = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e)
          for (int f = 0; f < n; ++f)
            ref += c(a, p) * c(b, q) * c(e, r) * c(f, s) * t.eri(a, b, e, f);
    EXPECT_NEAR(mo.eri(p, q, r, s), ref, 1e-12);
  }
  const Eigen::MatrixXd h = c.transpose() * t.core_hamiltonian() * c;
  EXPECT_LT((mo.h - h).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Mo, UnconvergedScfRejected) {
  const auto t = build_integrals(h2(1.4), make_basis(h2(1.4), BasisName::sto3g));
  auto scf = run_rhf(t, 2);
  scf.converged = false;
  EXPECT_THROW(transform_to_mo(t, scf), std::invalid_argument);
}

TEST(Fcidump, RoundTripIsLossless) {
  const auto g = h4_geometry(H4Path::trapezoidal, 135.0);
  const auto t = build_integrals(g, make_basis(g, BasisName::sto6g));
  const auto mo = transform_to_mo(t, run_rhf(t, 4));
  std::stringstream ss;
  write_fcidump(mo, ss);
  const auto back = parse_fcidump(ss.str());
  EXPECT_EQ(back.n_orbitals, 4);
  EXPECT_EQ(back.n_electrons, 4);
  EXPECT_NEAR(back.nuclear_repulsion, mo.nuclear_repulsion, 1e-12);
  EXPECT_LT((back.h - mo.h).cwiseAbs().maxCoeff(), 1e-12);
  for (std::size_t k = 0; k < mo.eri.size(); ++k)
    EXPECT_NEAR(back.eri.data()[k], mo.eri.data()[k], 1e-12);
  ASSERT_TRUE(back.orbital_energies.has_value());
  EXPECT_LT((*back.orbital_energies - *mo.orbital_energies).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fcidump, ParsesHandWrittenFile) {
  const char* text =
      " &FCI NORB=  2,NELEC=2,MS2=0,\n"
      "  ORBSYM=1,1,\n"
      "  ISYM=1,\n"
      " &END\n"
      "  0.6746D+00   1   1   1   1\n"
      "  0.1813  2 1 2 1\n"
      "  0.6636  1 1 2 2\n"
      "  0.6975  2 2 2 2\n"
      " -1.2528   1   1   0   0\n"
      "  0.01     2   1   0   0\n"
      " -0.4756   2   2   0   0\n"
      "  0.7137   0   0   0   0\n";
  const auto mo = parse_fcidump(std::string_view(text));
  EXPECT_EQ(mo.n_orbitals, 2);
  EXPECT_EQ(mo.n_electrons, 2);
  EXPECT_DOUBLE_EQ(mo.eri(0, 0, 0, 0), 0.6746);
  EXPECT_DOUBLE_EQ(mo.eri(0, 1, 0, 1), 0.1813);
  EXPECT_DOUBLE_EQ(mo.eri(1, 0, 0, 1), 0.1813);
  EXPECT_DOUBLE_EQ(mo.eri(1, 1, 0, 0), 0.6636);
  EXPECT_DOUBLE_EQ(mo.h(1, 0), 0.01);
  EXPECT_DOUBLE_EQ(mo.h(0, 1), 0.01);
  EXPECT_DOUBLE_EQ(mo.nuclear_repulsion, 0.7137);
}

TEST(Fcidump, ErrorsCarryLineNumbers) {
  const char* bad_index = "&FCI NORB=2, NELEC=2 &END\n0.5 1 1 1 1\n0.3 3 1 1 1\n";
  try {
    parse_fcidump(std::string_view(bad_index));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_fcidump(std::string_view("0.5 1 1 1 1\n")), ParseError);
  EXPECT_THROW(parse_fcidump(std::string_view("&FCI NORB=2, NELEC=2 &END\nabc 1 1 1 1\n")),
               ParseError);
}

TEST(Geometry, H4PathsHaveTheStatedShape) {
  const double d = kH4FixedSideAngstrom * kBohrPerAngstrom;
  auto dist = [](const Geometry& g, int i, int j) {
    return (g.atoms[static_cast<std::size_t>(i)].position - g.atoms[static_cast<std::size_t>(j)].position).norm();
  };
  const auto lin = h4_geometry(H4Path::linear, 1.2);
  EXPECT_TRUE(is_collinear(lin));
  EXPECT_NEAR(dist(lin, 0, 1), d, 1e-12);
  EXPECT_NEAR(dist(lin, 1, 2), 1.2 * kBohrPerAngstrom, 1e-12);
  EXPECT_NEAR(dist(lin, 2, 3), d, 1e-12);

  const auto rect = h4_geometry(H4Path::rectangular, 1.5);
  EXPECT_NEAR(dist(rect, 0, 1), d, 1e-12);
  EXPECT_NEAR(dist(rect, 0, 2), 1.5 * kBohrPerAngstrom, 1e-12);
  EXPECT_NEAR(dist(rect, 0, 3), std::hypot(d, 1.5 * kBohrPerAngstrom), 1e-12);

  for (double th : {90.0, 120.0, 150.0, 180.0}) {
    const auto trap = h4_geometry(H4Path::trapezoidal, th);
    EXPECT_NEAR(dist(trap, 0, 1), d, 1e-12);
    EXPECT_NEAR(dist(trap, 1, 2), d, 1e-12);
    EXPECT_NEAR(dist(trap, 2, 3), d, 1e-12);
  }
  EXPECT_NEAR(dist(h4_geometry(H4Path::trapezoidal, 90.0), 0, 3), d, 1e-12);
  EXPECT_TRUE(is_collinear(h4_geometry(H4Path::trapezoidal, 180.0)));
  EXPECT_FALSE(is_collinear(h4_geometry(H4Path::trapezoidal, 135.0)));

  EXPECT_THROW(h4_geometry(H4Path::linear, 0.5), std::domain_error);
  EXPECT_THROW(h4_geometry(H4Path::trapezoidal, 181.0), std::domain_error);
}

TEST(Geometry, ParsesUnitsAndRejectsCoincidentAtoms) {
  const auto g = parse_geometry("angstrom\n# H2\n1 0 0 0\n1 0 0 0.74\n");
  ASSERT_EQ(g.atoms.size(), 2u);
  EXPECT_NEAR(g.atoms[1].position.z(), 0.74 * kBohrPerAngstrom, 1e-12);
  EXPECT_NEAR(nuclear_repulsion(g), 1.0 / (0.74 * kBohrPerAngstrom), 1e-12);
  const auto b = parse_geometry("bohr\n1 0 0 0\n1 0 0 1.4\n");
  EXPECT_NEAR(nuclear_repulsion(b), 1.0 / 1.4, 1e-14);
  EXPECT_THROW(parse_geometry("bohr\n1 0 0 0\n1 0 0 0\n"), std::invalid_argument);
  EXPECT_ANY_THROW(parse_geometry("furlong\n1 0 0 0\n"));
}
