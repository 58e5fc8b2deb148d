#pragma once

// Style fingerprints: the separation vector u between two code sets, the
// unit fingerprint w+, the separation indices theta and eta, plus PCA and
// single-linkage clustering of profiles.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylo/code_model.hpp"

namespace stylo {

using Vector = std::vector<double>;

class CodeSetProfiles {
 public:
  /// Profiles must be non-empty and share dimension and measure names.
  /// Duplicates are kept.
  CodeSetProfiles(std::string label, std::vector<Profile> profiles);

  const std::string& label() const noexcept { return label_; }
  const std::vector<Profile>& profiles() const noexcept { return profiles_; }
  std::size_t size() const noexcept { return profiles_.size(); }
  std::size_t dimension() const noexcept { return profiles_.front().size(); }
  const std::vector<std::string>& names() const noexcept { return profiles_.front().names(); }

 private:
  std::string label_;
  std::vector<Profile> profiles_;
};

/// sum over all pairs (a, b) of mu(a) - mu(b).
Vector u_vector_pairwise(const CodeSetProfiles& a, const CodeSetProfiles& b);
/// #B * sum_A mu - #A * sum_B mu.
Vector u_vector_from_sums(const CodeSetProfiles& a, const CodeSetProfiles& b);
/// Pairwise sum, cross-checked against the sum form (throws std::logic_error
/// if they disagree beyond 1e-12 relative).
Vector u_vector(const CodeSetProfiles& a, const CodeSetProfiles& b);

/// u / ||u||_p. Throws DegenerateError("identical-profiles") for u = 0.
Vector fingerprint(std::span<const double> u, NormSpec norm = {});

/// w . mu
double nu(std::span<const double> w, const Profile& profile);
double nu(std::span<const double> w, std::span<const double> values);

/// Moments of X = nu(a) - nu(b), a uniform on A, b uniform on B.
struct SeparationStats {
  double mean = 0.0;           // E(X)
  double second_moment = 0.0;  // E(X^2)
  double variance = 0.0;       // E((X - E(X))^2)
};

SeparationStats separation_stats(const CodeSetProfiles& a, const CodeSetProfiles& b,
                                 std::span<const double> w);

/// E(Y^2) for Y = nu(c_i) - nu(c_j), c_i, c_j drawn with replacement from
/// the multiset union of A and B.
double union_spread(const CodeSetProfiles& a, const CodeSetProfiles& b, std::span<const double> w);

struct EtaResult {
  std::optional<double> eta;
  double sigma_a2 = 0.0;
  double sigma_ab2 = 0.0;
  std::string reason;  // set when eta is undefined
};

EtaResult eta(const CodeSetProfiles& a, const CodeSetProfiles& b, std::span<const double> w_plus);

struct StyleFingerprint {
  std::vector<std::string> measure_names;
  Vector u;
  Vector w_plus;
  double u_norm = 0.0;
  double m = 0.0;  // u_norm / M
  double theta = 0.0;
  std::optional<double> eta;
  std::string eta_reason;
  double sigma_a2 = 0.0;
  double sigma_ab2 = 0.0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t pair_count = 0;  // M = #A * #B
  NormSpec norm;
  std::optional<std::string> degenerate;  // "identical-profiles" when u = 0

  bool is_degenerate() const noexcept { return degenerate.has_value(); }
};

/// Full fingerprint of A relative to B. A zero separation vector does not
/// throw; the result carries the degenerate reason, theta 0 and no eta.
StyleFingerprint style_fingerprint(const CodeSetProfiles& a, const CodeSetProfiles& b,
                                   NormSpec norm = {});

/// m / sqrt(n).
double theta(const StyleFingerprint& fp);

struct SymmetricEigen {
  Vector values;               // descending
  std::vector<Vector> vectors;  // vectors[i] pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization. Each eigenvector is signed so that its
/// largest-magnitude component is positive.
SymmetricEigen jacobi_eigen(std::vector<Vector> matrix, double tolerance = 1e-10);

/// Sample covariance with divisor N - 1.
std::vector<Vector> covariance(std::span<const Vector> points);

struct PcaResult {
  std::vector<Vector> covariance;
  Vector eigenvalues;                            // all, descending
  std::vector<Vector> components;                // leading one or two eigenvectors
  std::vector<std::array<double, 2>> projections;  // centered points on the components
};

/// Throws DegenerateError("zero-covariance") when all points coincide.
PcaResult pca(std::span<const Vector> points);
PcaResult pca(std::span<const Profile> profiles);

/// Single-linkage agglomeration on |nu_w(x) - nu_w(y)| down to target_k
/// clusters. Returns one label per profile; labels run 0..k-1 in order of
/// each cluster's lowest member index.
std::vector<std::size_t> cluster(std::span<const Profile> profiles, std::span<const double> w,
                                 std::size_t target_k);

}  // namespace stylo
