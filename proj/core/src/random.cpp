#include "jacobi/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "jacobi/errors.hpp"

namespace jacobi {
namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = g(rng);
  }
  return a;
}

double spectral_norm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

// Random positive weights summing to one.
std::vector<double> shares(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) sum += (x = u(rng));
  for (auto& x : w) x /= sum;
  return w;
}

struct TrigCoefficients {
  Matrix c0;
  std::vector<Matrix> cosines;
  std::vector<Matrix> sines;
  double frequency = 1.0;

  Matrix operator()(double t) const {
    Matrix r = c0;
    for (std::size_t j = 0; j < cosines.size(); ++j) {
      const double x = (j + 1.0) * frequency * t;
      r += std::cos(x) * cosines[j] + std::sin(x) * sines[j];
    }
    return r;
  }
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t trial) {
  std::uint64_t z = root ^ (trial + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix random_symmetric(int m, Rng& rng) { return symmetrized(gaussian(m, m, rng)); }

SystemPtr random_trig_system(int m, Rng& rng, double norm_bound, int harmonics, double frequency) {
  if (m < 1 || harmonics < 0 || !(frequency > 0.0)) {
    throw ContractError("random_trig_system: bad parameters");
  }
  const auto w = shares(1 + 2 * harmonics, rng);
  TrigCoefficients c;
  c.frequency = frequency;
  // The constant term is positive semidefinite so that typical draws
  // oscillate rather than grow exponentially.
  Matrix g = random_symmetric(m, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  g -= es.eigenvalues()(0) * Matrix::Identity(m, m);
  const double gn = spectral_norm(g);
  c.c0 = gn > 0.0 ? Matrix(g * (w[0] * norm_bound / gn)) : Matrix(w[0] * norm_bound * Matrix::Identity(m, m));
  for (int j = 0; j < harmonics; ++j) {
    Matrix a = random_symmetric(m, rng);
    Matrix b = random_symmetric(m, rng);
    c.cosines.push_back(a * (w[1 + 2 * j] * norm_bound / spectral_norm(a)));
    c.sines.push_back(b * (w[2 + 2 * j] * norm_bound / spectral_norm(b)));
  }
  return JacobiSystem::periodic(m, c, 2.0 * std::numbers::pi / frequency);
}

SystemPtr random_positive_system(int m, double delta, Rng& rng, double bump_bound, int harmonics,
                                 double frequency) {
  if (m < 1 || harmonics < 0 || !(frequency > 0.0) || bump_bound < 0.0) {
    throw ContractError("random_positive_system: bad parameters");
  }
  const auto w = shares(1 + 2 * harmonics, rng);
  const double budget = std::sqrt(bump_bound);
  TrigCoefficients b;
  b.frequency = frequency;
  const auto scaled = [&](double share) {
    Matrix a = gaussian(m, m, rng);
    return Matrix(a * (share * budget / spectral_norm(a)));
  };
  b.c0 = scaled(w[0]);
  for (int j = 0; j < harmonics; ++j) {
    b.cosines.push_back(scaled(w[1 + 2 * j]));
    b.sines.push_back(scaled(w[2 + 2 * j]));
  }
  return JacobiSystem::periodic(
      m,
      [b, delta, m](double t) -> Matrix {
        const Matrix x = b(t);
        return delta * Matrix::Identity(m, m) + x * x.transpose();
      },
      2.0 * std::numbers::pi / frequency);
}

Matrix random_isotropic_frame(int m, int d, Rng& rng, const Matrix& seed) {
  if (d < 0 || d > m) throw ContractError("random_isotropic_frame: need 0 <= d <= m");
  const Matrix omega = canonical_form(m);
  Matrix frame(2 * m, d);
  int have = 0;
  if (seed.size() > 0) {
    if (seed.rows() != 2 * m || seed.cols() > d) {
      throw ContractError("random_isotropic_frame: seed has the wrong shape");
    }
    have = static_cast<int>(seed.cols());
    frame.leftCols(have) = seed;
  }
  while (have < d) {
    // New vector orthogonal to the frame and to Omega times the frame.
    Matrix constraints(2 * m, 2 * have);
    constraints << frame.leftCols(have), omega * frame.leftCols(have);
    Vector x = gaussian(2 * m, 1, rng);
    if (have > 0) {
      const Matrix q = orthonormal_columns(constraints);
      x -= q * (q.transpose() * x);
      x -= q * (q.transpose() * x);
    }
    const double n = x.norm();
    if (n < 1e-6) continue;
    frame.col(have++) = x / n;
  }
  return frame;
}

FieldSubspace random_lagrangian(const SystemPtr& system, double anchor, Rng& rng) {
  const int m = system->dim();
  return FieldSubspace::from_matrix(system, anchor, random_isotropic_frame(m, m, rng));
}

FieldSubspace random_lagrangian_sharing(const FieldSubspace& l, int shared, Rng& rng) {
  const int m = l.ambient_dim();
  if (shared < 0 || shared > l.dim()) throw ContractError("random_lagrangian_sharing: bad dimension");
  Matrix seed;
  if (shared > 0) seed = l.basis() * orthonormal_columns(gaussian(l.dim(), shared, rng));
  return FieldSubspace::from_matrix(l.system(), l.anchor(), random_isotropic_frame(m, m, rng, seed));
}

FieldSubspace random_subspace_of(const FieldSubspace& l, int d, Rng& rng) {
  if (d < 1 || d > l.dim()) throw ContractError("random_subspace_of: bad dimension");
  return FieldSubspace::from_matrix(l.system(), l.anchor(),
                                    l.basis() * orthonormal_columns(gaussian(l.dim(), d, rng)));
}

}  // namespace jacobi
