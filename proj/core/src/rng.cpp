#include "idemgeo/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace idemgeo {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  // Expand the single word through splitmix64 so that nearby seeds do
  // not produce correlated mt19937_64 states.
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  const std::uint64_t b = splitmix64(s);
  const std::uint64_t c = splitmix64(s);
  const std::uint64_t d = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
  eng_.seed(seq);
}

Rng Rng::substream(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  const std::uint64_t mixed_master = splitmix64(s);
  s = mixed_master ^ (0xd1b54a32d192ed03ull + stream);
  return Rng(splitmix64(s));
}

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // 1 - u keeps the argument of log strictly positive.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(t);
  has_cached_ = true;
  return r * std::cos(t);
}

Complex Rng::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

std::uint64_t Rng::raw() { return eng_(); }

Matrix ginibre(int d, Rng& rng) {
  if (d <= 0) throw std::invalid_argument("ginibre: dimension must be positive");
  Matrix g(d, d);
  // Row-major fill order is part of the reproducibility contract.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.cgaussian();
  return g;
}

Matrix gaussian_hermitian(int d, Rng& rng) {
  const Matrix g = ginibre(d, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix haar_unitary(int d, Rng& rng) {
  const Matrix g = ginibre(d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    // A zero diagonal has probability zero; any unit phase is fine then.
    const Complex phase = (a == 0.0) ? Complex(1.0, 0.0) : rjj / a;
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace idemgeo
