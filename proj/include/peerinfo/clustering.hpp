#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "peerinfo/errors.hpp"
#include "peerinfo/rng.hpp"

namespace peerinfo {

/// Row-major n x d feature matrix with worker ids aligned to rows.
struct EmbeddingMatrix {
  std::vector<std::string> ids;
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t rows() const { return ids.size(); }
  const double* row(std::size_t i) const { return data.data() + i * dim; }
};

inline void validate(const EmbeddingMatrix& X) {
  if (X.rows() < 2) throw ValidationError("EmbeddingMatrix: need at least 2 rows");
  if (X.dim < 1) throw ValidationError("EmbeddingMatrix: need at least 1 feature");
  if (X.data.size() != X.rows() * X.dim)
    throw ValidationError("EmbeddingMatrix: data size does not match rows x dim");
  for (double v : X.data)
    if (!std::isfinite(v)) throw ValidationError("EmbeddingMatrix: entries must be finite");
}

/// Scales each row to unit L2 norm (zero rows are left unchanged).
inline EmbeddingMatrix l2_normalize(EmbeddingMatrix X) {
  validate(X);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    double norm2 = 0.0;
    double* r = X.data.data() + i * X.dim;
    for (std::size_t j = 0; j < X.dim; ++j) norm2 += r[j] * r[j];
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t j = 0; j < X.dim; ++j) r[j] *= inv;
    }
  }
  return X;
}

namespace detail {

inline double sq_dist(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

}  // namespace detail

struct ClusterResult {
  std::vector<int> labels;        // n entries in [0, k)
  std::vector<double> centroids;  // row-major k x d
  std::size_t k = 0;
  std::size_t dim = 0;
  double inertia = 0.0;
  double silhouette = 0.0;
  int iterations = 0;
  std::vector<double> inertia_trace;  // inertia after each assignment step
};

/// Mean silhouette over points: (b - a) / max(a, b) with a the mean
/// intra-cluster distance and b the smallest mean distance to another
/// cluster. Singleton points and all-zero distances score 0.
inline double silhouette(const EmbeddingMatrix& X, const std::vector<int>& labels) {
  validate(X);
  const std::size_t n = X.rows();
  if (labels.size() != n) throw ValidationError("silhouette: labels size mismatch");
  int k = 0;
  for (int l : labels) {
    if (l < 0) throw ValidationError("silhouette: negative label");
    k = std::max(k, l + 1);
  }
  std::vector<std::size_t> counts(k, 0);
  for (int l : labels) ++counts[l];
  std::size_t nonempty = 0;
  for (std::size_t c : counts) nonempty += c > 0 ? 1 : 0;
  if (nonempty < 2) throw ValidationError("silhouette: need at least 2 nonempty clusters");

  double total = 0.0;
  std::vector<double> mean_dist(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      mean_dist[labels[j]] += std::sqrt(detail::sq_dist(X.row(i), X.row(j), X.dim));
    }
    const int own = labels[i];
    if (counts[own] <= 1) continue;  // singleton scores 0
    const double a = mean_dist[own] / static_cast<double>(counts[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c)
      if (c != own && counts[c] > 0)
        b = std::min(b, mean_dist[c] / static_cast<double>(counts[c]));
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

/// Lloyd's algorithm with k-means++ seeding. Deterministic given
/// (X, k, seed); empty clusters are repaired by stealing the farthest point.
inline ClusterResult kmeans(const EmbeddingMatrix& X, int k, std::uint64_t seed,
                            int max_iter = 100, double tol = 1e-9) {
  validate(X);
  const std::size_t n = X.rows();
  const std::size_t d = X.dim;
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw ValidationError("kmeans: k must satisfy 2 <= k <= n");
  if (max_iter < 1) throw ValidationError("kmeans: max_iter must be >= 1");
  if (tol < 0.0) throw ValidationError("kmeans: tol must be >= 0");

  RandomStream rng(seed, "kmeans");
  ClusterResult res;
  res.k = static_cast<std::size_t>(k);
  res.dim = d;
  res.centroids.assign(res.k * d, 0.0);
  res.labels.assign(n, 0);

  // k-means++ seeding: first center uniform, the rest proportional to the
  // squared distance from the nearest chosen center.
  std::vector<std::size_t> centers;
  std::vector<char> chosen(n, 0);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::size_t first = static_cast<std::size_t>(rng.uniform_int(n));
  centers.push_back(first);
  chosen[first] = 1;
  while (centers.size() < res.k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], detail::sq_dist(X.row(i), X.row(centers.back()), d));
      total += d2[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    }
    if (pick == n || chosen[pick]) {
      // duplicates or numeric tail: fall back to the first unchosen point
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen[i]) {
          pick = i;
          break;
        }
    }
    centers.push_back(pick);
    chosen[pick] = 1;
  }
  for (std::size_t c = 0; c < res.k; ++c)
    std::copy_n(X.row(centers[c]), d, res.centroids.data() + c * d);

  std::vector<double> new_centroids(res.k * d);
  std::vector<std::size_t> counts(res.k);
  std::vector<double> point_d2(n);
  for (int iter = 1; iter <= max_iter; ++iter) {
    res.iterations = iter;

    // assignment step (ties to the smaller centroid index)
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = detail::sq_dist(X.row(i), res.centroids.data(), d);
      for (std::size_t c = 1; c < res.k; ++c) {
        const double dd = detail::sq_dist(X.row(i), res.centroids.data() + c * d, d);
        if (dd < best_d2) {
          best_d2 = dd;
          best = static_cast<int>(c);
        }
      }
      res.labels[i] = best;
      point_d2[i] = best_d2;
      inertia += best_d2;
    }
    res.inertia = inertia;
    res.inertia_trace.push_back(inertia);

    // update step: accumulate raw sums, repair empties on the sums, then
    // normalize once
    std::fill(new_centroids.begin(), new_centroids.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[res.labels[i]];
      const double* r = X.row(i);
      double* cent = new_centroids.data() + res.labels[i] * d;
      for (std::size_t j = 0; j < d; ++j) cent[j] += r[j];
    }
    for (std::size_t c = 0; c < res.k; ++c) {
      if (counts[c] > 0) continue;
      // repair: move the farthest point (from a cluster that keeps at
      // least one member) into the empty cluster
      std::size_t far = n;
      double far_d2 = -1.0;
      for (std::size_t i = 0; i < n; ++i)
        if (counts[res.labels[i]] > 1 && point_d2[i] > far_d2) {
          far_d2 = point_d2[i];
          far = i;
        }
      if (far == n) throw NumericError("kmeans: cannot repair empty cluster");
      const std::size_t donor = res.labels[far];
      --counts[donor];
      double* donor_cent = new_centroids.data() + donor * d;
      double* cent = new_centroids.data() + c * d;
      for (std::size_t j = 0; j < d; ++j) {
        donor_cent[j] -= X.row(far)[j];
        cent[j] = X.row(far)[j];
      }
      res.labels[far] = static_cast<int>(c);
      counts[c] = 1;
      point_d2[far] = 0.0;
    }
    for (std::size_t c = 0; c < res.k; ++c) {
      double* cent = new_centroids.data() + c * d;
      for (std::size_t j = 0; j < d; ++j) cent[j] /= static_cast<double>(counts[c]);
    }

    double max_shift = 0.0;
    for (std::size_t c = 0; c < res.k; ++c)
      max_shift = std::max(
          max_shift, detail::sq_dist(new_centroids.data() + c * d, res.centroids.data() + c * d, d));
    res.centroids = new_centroids;
    if (std::sqrt(max_shift) < tol) break;
  }

  // final assignment against the converged centroids
  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d2 = detail::sq_dist(X.row(i), res.centroids.data(), d);
    for (std::size_t c = 1; c < res.k; ++c) {
      const double dd = detail::sq_dist(X.row(i), res.centroids.data() + c * d, d);
      if (dd < best_d2) {
        best_d2 = dd;
        best = static_cast<int>(c);
      }
    }
    res.labels[i] = best;
    point_d2[i] = best_d2;
    inertia += best_d2;
  }
  res.inertia = inertia;

  // duplicate points can tie every assignment away from a centroid; keep the
  // nonemptiness invariant by stealing the farthest point outright
  std::fill(counts.begin(), counts.end(), 0);
  for (int l : res.labels) ++counts[l];
  for (std::size_t c = 0; c < res.k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t far = n;
    double far_d2 = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (counts[res.labels[i]] > 1 && point_d2[i] > far_d2) {
        far_d2 = point_d2[i];
        far = i;
      }
    if (far == n) throw NumericError("kmeans: cannot repair empty cluster");
    --counts[res.labels[far]];
    res.labels[far] = static_cast<int>(c);
    counts[c] = 1;
    std::copy_n(X.row(far), d, res.centroids.data() + c * d);
    res.inertia -= point_d2[far];
    point_d2[far] = 0.0;
  }
  res.inertia_trace.push_back(res.inertia);
  res.silhouette = silhouette(X, res.labels);
  return res;
}

/// Picks k in [k_min, k_max] by the silhouette of the best-of-`restarts`
/// run (by inertia) at each k; ties go to the smallest k.
inline int select_k(const EmbeddingMatrix& X, int k_min, int k_max, std::uint64_t seed,
                    int restarts = 8) {
  validate(X);
  if (!(2 <= k_min && k_min <= k_max && static_cast<std::size_t>(k_max) <= X.rows() - 1))
    throw ValidationError("select_k: need 2 <= k_min <= k_max <= n-1");
  if (restarts < 1) throw ValidationError("select_k: restarts must be >= 1");
  int best_k = k_min;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= k_max; ++k) {
    ClusterResult best_run;
    double best_inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
      ClusterResult run = kmeans(X, k, seed + static_cast<std::uint64_t>(r));
      if (run.inertia < best_inertia) {
        best_inertia = run.inertia;
        best_run = std::move(run);
      }
    }
    if (best_run.silhouette > best_score) {
      best_score = best_run.silhouette;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace peerinfo
