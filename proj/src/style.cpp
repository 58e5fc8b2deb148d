#include "stylo/style.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stylo/errors.hpp"

namespace stylo {

namespace {

void require_same_shape(const CodeSetProfiles& a, const CodeSetProfiles& b) {
  if (a.dimension() != b.dimension() || a.names() != b.names())
    throw std::invalid_argument("code sets use different measure profiles");
}

void require_dimension(std::span<const double> w, std::size_t n) {
  if (w.size() != n) throw std::invalid_argument("weight vector dimension mismatch");
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> nu_values(const CodeSetProfiles& set, std::span<const double> w) {
  std::vector<double> out;
  out.reserve(set.size());
  for (const auto& p : set.profiles()) out.push_back(nu(w, p));
  return out;
}

}  // namespace

CodeSetProfiles::CodeSetProfiles(std::string label, std::vector<Profile> profiles)
    : label_(std::move(label)), profiles_(std::move(profiles)) {
  if (profiles_.empty()) throw std::invalid_argument("code set '" + label_ + "' is empty");
  for (const auto& p : profiles_)
    if (p.names() != profiles_.front().names())
      throw std::invalid_argument("code set '" + label_ + "' mixes measure profiles");
}

Vector u_vector_pairwise(const CodeSetProfiles& a, const CodeSetProfiles& b) {
  require_same_shape(a, b);
  Vector u(a.dimension(), 0.0);
  for (const auto& pa : a.profiles())
    for (const auto& pb : b.profiles())
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += pa[i] - pb[i];
  return u;
}

Vector u_vector_from_sums(const CodeSetProfiles& a, const CodeSetProfiles& b) {
  require_same_shape(a, b);
  Vector sum_a(a.dimension(), 0.0), sum_b(a.dimension(), 0.0);
  for (const auto& p : a.profiles())
    for (std::size_t i = 0; i < p.size(); ++i) sum_a[i] += p[i];
  for (const auto& p : b.profiles())
    for (std::size_t i = 0; i < p.size(); ++i) sum_b[i] += p[i];
  Vector u(a.dimension());
  const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = nb * sum_a[i] - na * sum_b[i];
  return u;
}

Vector u_vector(const CodeSetProfiles& a, const CodeSetProfiles& b) {
  Vector u = u_vector_pairwise(a, b);
  Vector check = u_vector_from_sums(a, b);
  const double scale = std::max(1.0, static_cast<double>(a.size() * b.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::abs(u[i] - check[i]) > 1e-12 * scale)
      throw std::logic_error("pairwise and summed separation vectors disagree");
  return u;
}

Vector fingerprint(std::span<const double> u, NormSpec norm) {
  const double len = p_norm(u, norm);
  if (len == 0.0)
    throw DegenerateError("identical-profiles", "separation vector is zero; the sets are indistinguishable");
  Vector w(u.begin(), u.end());
  for (auto& x : w) x /= len;
  return w;
}

double nu(std::span<const double> w, std::span<const double> values) {
  require_dimension(w, values.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * values[i];
  return s;
}

double nu(std::span<const double> w, const Profile& profile) { return nu(w, profile.values()); }

SeparationStats separation_stats(const CodeSetProfiles& a, const CodeSetProfiles& b,
                                 std::span<const double> w) {
  require_same_shape(a, b);
  require_dimension(w, a.dimension());
  const auto va = nu_values(a, w), vb = nu_values(b, w);
  const auto pairs = static_cast<double>(va.size() * vb.size());
  SeparationStats s;
  for (double x : va)
    for (double y : vb) {
      s.mean += x - y;
      s.second_moment += (x - y) * (x - y);
    }
  s.mean /= pairs;
  s.second_moment /= pairs;
  for (double x : va)
    for (double y : vb) s.variance += (x - y - s.mean) * (x - y - s.mean);
  s.variance /= pairs;

  // E(X) = w.u / M
  const Vector u = u_vector_pairwise(a, b);
  const double expected = nu(w, u) / pairs;
  if (std::abs(expected - s.mean) > 1e-9 * std::max(1.0, std::abs(expected)))
    throw std::logic_error("E(X) disagrees with w.u/M");
  return s;
}

double union_spread(const CodeSetProfiles& a, const CodeSetProfiles& b, std::span<const double> w) {
  require_same_shape(a, b);
  auto values = nu_values(a, w);
  auto vb = nu_values(b, w);
  values.insert(values.end(), vb.begin(), vb.end());
  const auto pairs = static_cast<double>(values.size() * values.size());
  double mean = 0.0, second = 0.0;
  for (double x : values)
    for (double y : values) {
      mean += x - y;
      second += (x - y) * (x - y);
    }
  mean /= pairs;
  if (std::abs(mean) > 1e-12 * std::max(1.0, max_abs(values)))
    throw std::logic_error("E(Y) is not zero");
  return second / pairs;
}

EtaResult eta(const CodeSetProfiles& a, const CodeSetProfiles& b, std::span<const double> w_plus) {
  EtaResult r;
  if (a.size() + b.size() < 2) throw std::invalid_argument("eta needs at least two codes");
  r.sigma_a2 = separation_stats(a, b, w_plus).variance;
  r.sigma_ab2 = union_spread(a, b, w_plus);
  if (r.sigma_a2 == 0.0) {
    r.reason = "zero-variance";
  } else {
    r.eta = r.sigma_ab2 / r.sigma_a2;
  }
  return r;
}

double theta(const StyleFingerprint& fp) {
  return fp.m / std::sqrt(static_cast<double>(fp.u.size()));
}

StyleFingerprint style_fingerprint(const CodeSetProfiles& a, const CodeSetProfiles& b, NormSpec norm) {
  StyleFingerprint fp;
  fp.measure_names = a.names();
  fp.norm = norm;
  fp.size_a = a.size();
  fp.size_b = b.size();
  fp.pair_count = a.size() * b.size();
  fp.u = u_vector(a, b);
  fp.u_norm = p_norm(fp.u, norm);
  if (fp.u_norm == 0.0) {
    fp.degenerate = "identical-profiles";
    fp.w_plus.assign(fp.u.size(), 0.0);
    fp.eta_reason = "identical-profiles";
    return fp;
  }
  fp.w_plus = fingerprint(fp.u, norm);
  fp.m = fp.u_norm / static_cast<double>(fp.pair_count);
  fp.theta = theta(fp);
  auto e = eta(a, b, fp.w_plus);
  fp.eta = e.eta;
  fp.eta_reason = e.reason;
  fp.sigma_a2 = e.sigma_a2;
  fp.sigma_ab2 = e.sigma_ab2;
  return fp;
}

SymmetricEigen jacobi_eigen(std::vector<Vector> a, double tolerance) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a[i][j] - a[j][i]) > 1e-12 * std::max(1.0, std::abs(a[i][j])))
        throw std::invalid_argument("matrix must be symmetric");

  std::vector<Vector> v(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  double frobenius = 0.0;
  for (const auto& row : a)
    for (double x : row) frobenius += x * x;
  frobenius = std::sqrt(frobenius);
  const double threshold = tolerance * std::max(frobenius, std::numeric_limits<double>::min());

  SymmetricEigen out;
  constexpr int kMaxSweeps = 100;
  for (; out.sweeps < kMaxSweeps; ++out.sweeps) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off <= threshold) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double t_angle = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (t_angle >= 0 ? 1.0 : -1.0) /
                         (std::abs(t_angle) + std::sqrt(t_angle * t_angle + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
  for (auto col : order) {
    out.values.push_back(a[col][col]);
    Vector vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v[k][col];
    std::size_t lead = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(vec[k]) > std::abs(vec[lead])) lead = k;
    if (vec[lead] < 0)
      for (auto& x : vec) x = -x;
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

std::vector<Vector> covariance(std::span<const Vector> points) {
  if (points.size() < 2) throw std::invalid_argument("covariance needs at least two points");
  const std::size_t n = points.front().size();
  Vector mean(n, 0.0);
  for (const auto& p : points) {
    if (p.size() != n) throw std::invalid_argument("points differ in dimension");
    for (std::size_t i = 0; i < n; ++i) mean[i] += p[i];
  }
  for (auto& x : mean) x /= static_cast<double>(points.size());
  std::vector<Vector> cov(n, Vector(n, 0.0));
  for (const auto& p : points)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cov[i][j] += (p[i] - mean[i]) * (p[j] - mean[j]);
  for (auto& row : cov)
    for (auto& x : row) x /= static_cast<double>(points.size() - 1);
  return cov;
}

PcaResult pca(std::span<const Vector> points) {
  PcaResult r;
  r.covariance = covariance(points);
  bool any = false;
  for (const auto& row : r.covariance)
    for (double x : row) any = any || x != 0.0;
  if (!any) throw DegenerateError("zero-covariance", "all profiles coincide; covariance is zero");

  auto eig = jacobi_eigen(r.covariance);
  r.eigenvalues = eig.values;
  const std::size_t k = std::min<std::size_t>(2, eig.vectors.size());
  r.components.assign(eig.vectors.begin(), eig.vectors.begin() + static_cast<long>(k));

  const std::size_t n = points.front().size();
  Vector mean(n, 0.0);
  for (const auto& p : points)
    for (std::size_t i = 0; i < n; ++i) mean[i] += p[i];
  for (auto& x : mean) x /= static_cast<double>(points.size());
  for (const auto& p : points) {
    std::array<double, 2> proj{0.0, 0.0};
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < n; ++i) proj[c] += (p[i] - mean[i]) * r.components[c][i];
    r.projections.push_back(proj);
  }
  return r;
}

PcaResult pca(std::span<const Profile> profiles) {
  std::vector<Vector> points;
  for (const auto& p : profiles) points.push_back(p.values());
  return pca(std::span<const Vector>(points));
}

std::vector<std::size_t> cluster(std::span<const Profile> profiles, std::span<const double> w,
                                 std::size_t target_k) {
  if (target_k < 1 || target_k > profiles.size())
    throw std::invalid_argument("target cluster count must be in [1, profile count]");
  std::vector<double> values;
  for (const auto& p : profiles) values.push_back(nu(w, p));

  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < values.size(); ++i) clusters.push_back({i});

  while (clusters.size() > target_k) {
    std::size_t best_a = 0, best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < clusters.size(); ++x)
      for (std::size_t y = x + 1; y < clusters.size(); ++y) {
        double link = std::numeric_limits<double>::infinity();
        for (auto i : clusters[x])
          for (auto j : clusters[y]) link = std::min(link, std::abs(values[i] - values[j]));
        if (link < best) {
          best = link;
          best_a = x;
          best_b = y;
        }
      }
    auto& into = clusters[best_a];
    into.insert(into.end(), clusters[best_b].begin(), clusters[best_b].end());
    std::sort(into.begin(), into.end());
    clusters.erase(clusters.begin() + static_cast<long>(best_b));
  }

  std::vector<std::size_t> labels(values.size());
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (auto i : clusters[c]) labels[i] = c;
  return labels;
}

}  // namespace stylo
