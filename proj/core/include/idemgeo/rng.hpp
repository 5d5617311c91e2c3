#pragma once

#include <cstdint>
#include <random>

#include "idemgeo/linalg.hpp"

namespace idemgeo {

/// Deterministic random source.
///
/// mt19937_64 driven uniforms with an explicit Box-Muller transform for
/// gaussians. std::normal_distribution is implementation-defined, so the
/// transform is done by hand to keep streams bit-identical across
/// standard libraries. Substreams are derived from (master seed, stream
/// id) with a splitmix64 chain, so parallel experiments never share
/// state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent substream `stream` of master seed `master`.
  static Rng substream(std::uint64_t master, std::uint64_t stream);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard real gaussian (Box-Muller, second value cached).
  double gaussian();

  /// Standard complex gaussian, E|z|^2 = 1.
  Complex cgaussian();

  /// Raw 64-bit draw.
  std::uint64_t raw();

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// splitmix64 mixing step; used for substream derivation and hashing.
std::uint64_t splitmix64(std::uint64_t& state);

/// d x d matrix of iid standard complex gaussians.
Matrix ginibre(int d, Rng& rng);

/// Random Hermitian matrix (H + H*)/2 with H Ginibre.
Matrix gaussian_hermitian(int d, Rng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with the phase
/// correction Q <- Q diag(r_jj / |r_jj|); without the correction the QR
/// convention bias breaks Haar invariance.
Matrix haar_unitary(int d, Rng& rng);

}  // namespace idemgeo
