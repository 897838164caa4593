#include "stiefel/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stiefel {

EquilibriumCertificate equilibrium_check(const Configuration& c,
                                         const WeightedGraph& g, double tol) {
  check_sizes(c, g);
  EquilibriumCertificate cert;
  double sq = 0.0;
  for (const auto& t : gradient(c, g)) sq += t.data().squaredNorm();
  cert.residual = std::sqrt(sq);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Matrix sigma = Matrix::Zero(c.n(), c.p());
    for (const Neighbor& nb : g.neighbors(i)) sigma += nb.weight * c[nb.node].data();
    Matrix gamma = c[i].data().transpose() * sigma;
    cert.gamma_asymmetry = std::max(cert.gamma_asymmetry, skew(gamma).norm());
    cert.gamma.push_back(std::move(gamma));
  }
  cert.is_equilibrium = cert.residual <= tol;
  return cert;
}

namespace {

void require_ring(std::size_t n_agents) {
  if (n_agents < 3) throw InvalidSize("splay states need N >= 3");
}

double phase(std::size_t i, std::size_t n_agents) {
  return 2.0 * std::numbers::pi * static_cast<double>(i) /
         static_cast<double>(n_agents);
}

}  // namespace

Configuration splay_circle(std::size_t n_agents) {
  require_ring(n_agents);
  std::vector<StiefelPoint> agents;
  for (std::size_t i = 0; i < n_agents; ++i) {
    Matrix x(2, 1);
    x << std::cos(phase(i, n_agents)), std::sin(phase(i, n_agents));
    agents.push_back(StiefelPoint::trusted(std::move(x)));
  }
  return Configuration(std::move(agents));
}

Configuration splay_sphere(std::size_t n_agents) {
  require_ring(n_agents);
  std::vector<StiefelPoint> agents;
  for (std::size_t i = 0; i < n_agents; ++i) {
    Matrix x(3, 1);
    x << std::cos(phase(i, n_agents)), std::sin(phase(i, n_agents)), 0.0;
    agents.push_back(StiefelPoint::trusted(std::move(x)));
  }
  return Configuration(std::move(agents));
}

Configuration splay_st23(std::size_t n_agents) {
  require_ring(n_agents);
  std::vector<StiefelPoint> agents;
  for (std::size_t i = 0; i < n_agents; ++i) {
    Matrix s(3, 2);
    s << 0.0, std::cos(phase(i, n_agents)),
         0.0, std::sin(phase(i, n_agents)),
         1.0, 0.0;
    agents.push_back(StiefelPoint::trusted(std::move(s)));
  }
  return Configuration(std::move(agents));
}

double distance_to_consensus(const Configuration& c) {
  return max_pairwise_distance(c);
}

std::vector<double> splay_distance_signature(std::size_t n_agents) {
  std::vector<double> d;
  for (std::size_t i = 0; i < n_agents; ++i) {
    for (std::size_t j = i + 1; j < n_agents; ++j) {
      d.push_back(2.0 * std::sin(std::numbers::pi * static_cast<double>(j - i) /
                                 static_cast<double>(n_agents)));
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> pairwise_distances(const Configuration& c) {
  std::vector<double> d;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      d.push_back(chordal_distance(c[i], c[j]));
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

double splay_signature_error(const Configuration& c) {
  const auto have = pairwise_distances(c);
  const auto want = splay_distance_signature(c.size());
  double err = 0.0;
  for (std::size_t k = 0; k < have.size(); ++k) {
    err = std::max(err, std::abs(have[k] - want[k]));
  }
  return err;
}

}  // namespace stiefel
