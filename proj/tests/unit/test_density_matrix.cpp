#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mqc/density_matrix.hpp"
#include "mqc/errors.hpp"

using namespace mqc;

TEST(DensityMatrix, MaximallyMixed) {
  const auto rho = DensityMatrix::maximally_mixed(3);
  EXPECT_EQ(rho.dim(), 8);
  EXPECT_NEAR(rho.purity(), 1.0 / 8.0, 1e-15);
  EXPECT_NEAR(rho.min_eigenvalue(), 1.0 / 8.0, 1e-14);
}

TEST(DensityMatrix, BasisStateIsPure) {
  const auto rho = DensityMatrix::basis_state(2, 3);
  EXPECT_EQ(rho(3, 3), Complex(1.0));
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
}

TEST(DensityMatrix, RejectsInvalid) {
  CMatrix m = CMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 0.1;  // not Hermitian
  EXPECT_THROW(DensityMatrix(2, m), PreconditionError);
  EXPECT_THROW(DensityMatrix(2, CMatrix::Identity(4, 4)), PreconditionError);  // trace 4
  EXPECT_THROW(DensityMatrix(3, CMatrix::Identity(4, 4) / 4.0), DimensionError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(1, neg), PreconditionError);
  EXPECT_NO_THROW(DensityMatrix(1, neg, Physicality::unchecked));
}

TEST(DensityMatrix, JsonRoundTrip) {
  CMatrix m = CMatrix::Identity(4, 4) / 4.0;
  m(0, 3) = Complex(0.05, 0.02);
  m(3, 0) = std::conj(m(0, 3));
  const DensityMatrix rho(2, m);
  const auto back = density_matrix_from_json(to_json(rho));
  EXPECT_EQ(back.matrix(), rho.matrix());

  const auto path = std::filesystem::temp_directory_path() / "mqc_dm_roundtrip.json";
  write_density_matrix(path, rho);
  EXPECT_EQ(read_density_matrix(path).matrix(), rho.matrix());
  std::filesystem::remove(path);
}

TEST(DensityMatrix, ParseErrorCarriesLine) {
  const auto path = std::filesystem::temp_directory_path() / "mqc_dm_bad.json";
  {
    std::ofstream out(path);
    out << "{\n  \"n_qubits\": 1,\n  \"entries\": [[1, 0], [0, 0]\n";
  }
  try {
    read_density_matrix(path);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":4"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
  EXPECT_THROW(read_density_matrix(path), IoError);
}

TEST(DensityMatrix, SchemaErrors) {
  nlohmann::json doc = {{"n_qubits", 1}, {"entries", {{1, 0}, {0, 0}, {0, 0}}}};
  EXPECT_THROW(density_matrix_from_json(doc), ParseError);
  doc = {{"entries", {{1, 0}}}};
  EXPECT_THROW(density_matrix_from_json(doc), ParseError);
}
