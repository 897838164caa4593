#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

using namespace stiefel;

namespace {

Configuration antipodal_pair() {
  Matrix x(2, 1);
  x << 1.0, 0.0;
  return Configuration({validate(x), validate(-x)});
}

const WeightedGraph& single_edge() {
  static const WeightedGraph g(2, {{0, 1, 1.0}});
  return g;
}

WeightedGraph random_weights(const WeightedGraph& g, Rng& rng) {
  std::uniform_real_distribution<double> w(1e-3, 2.0);
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.weight = w(rng);
  return WeightedGraph(g.n_nodes(), edges);
}

}  // namespace

TEST_CASE("potential") {
  Rng rng(31);
  CHECK(potential(oracle::consensus_config(5, 4, 2, rng), cycle_graph(5)) == 0.0);
  CHECK(potential(antipodal_pair(), single_edge()) == doctest::Approx(4.0));
  const double chord = 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi / 5.0));
  CHECK(std::abs(potential(splay_st23(5), cycle_graph(5)) - 5.0 * chord) <= 1e-12);
  CHECK(5.0 * chord == doctest::Approx(6.9098).epsilon(1e-4));
  CHECK_THROWS_AS(potential(splay_st23(5), cycle_graph(4)), SizeMismatch);

  // Both forms of V agree.
  const Configuration c = oracle::haar_config(6, 4, 2, rng);
  const WeightedGraph g = random_weights(complete_graph(6), rng);
  double inner_form = 0.0;
  for (const Edge& e : g.edges()) inner_form += 2.0 * e.weight * (2.0 - inner(c[e.i].data(), c[e.j].data()));
  CHECK(std::abs(potential(c, g) - inner_form) <= 1e-12);
}

TEST_CASE("gradient examples") {
  Rng rng(32);
  for (const auto& t : gradient(oracle::consensus_config(4, 3, 2, rng), complete_graph(4)))
    CHECK(t.data().norm() <= 1e-14);
  for (const auto& t : gradient(antipodal_pair(), single_edge())) CHECK(t.data().norm() == 0.0);

  const Configuration c = oracle::haar_config(5, 4, 2, rng);
  const auto grads = gradient(c, cycle_graph(5));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Matrix sigma = c[(i + 1) % 5].data() + c[(i + 4) % 5].data();
    CHECK((grads[i].data() + tangent_project(sigma, c[i]).data()).norm() <= 1e-14);
  }
}

TEST_CASE("gradient matches finite differences of half the potential") {
  Rng rng(33);
  const std::pair<int, int> shapes[] = {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {5, 3}};
  for (int trial = 0; trial < 20; ++trial) {
    const auto [n, p] = shapes[trial % 5];
    const std::size_t agents = std::array<std::size_t, 3>{2, 5, 8}[trial % 3];
    const WeightedGraph base = (trial % 2 == 0 && agents >= 3) ? cycle_graph(agents)
                                                               : complete_graph(agents);
    const WeightedGraph g = random_weights(base, rng);
    const Configuration c = oracle::haar_config(agents, n, p, rng);
    const auto grads = gradient(c, g);
    for (std::size_t i = 0; i < agents; ++i) {
      const Matrix t = tangent_project(oracle::gaussian(n, p, rng), c[i]).data();
      std::vector<Matrix> dirs(agents, Matrix::Zero(n, p));
      dirs[i] = t;
      const double fd = oracle::directional_derivative(c, g, dirs);
      const double exact = inner(grads[i].data(), t);
      CHECK(std::abs(fd - exact) <= 1e-6 * grads[i].data().norm() * t.norm());
    }
  }
}

TEST_CASE("flow field") {
  Rng rng(34);
  const Configuration c = oracle::haar_config(5, 3, 2, rng);
  const WeightedGraph g = cycle_graph(5);

  SUBCASE("no frequencies equals zero frequencies") {
    const auto a = flow_field(c, g);
    const auto b = flow_field(c, g, FrequencySet::common(5, Matrix::Zero(3, 3), Matrix::Zero(2, 2)));
    for (std::size_t i = 0; i < 5; ++i) CHECK(a[i].data() == b[i].data());
  }
  SUBCASE("sphere model") {
    const Configuration x = oracle::haar_config(5, 4, 1, rng);
    FrequencySet f;
    for (int i = 0; i < 5; ++i) {
      f.omega.push_back(oracle::random_skew(4, rng));
      f.xi.push_back(Matrix::Zero(1, 1));
    }
    const auto field = flow_field(x, g, f);
    for (std::size_t i = 0; i < 5; ++i) {
      const Matrix& xi = x[i].data();
      const Matrix sum = x[(i + 1) % 5].data() + x[(i + 4) % 5].data();
      const Matrix want = f.omega[i] * xi + (Matrix::Identity(4, 4) - xi * xi.transpose()) * sum;
      CHECK((field[i].data() - want).norm() <= 1e-13);
    }
  }
  SUBCASE("drift terms are tangent") {
    for (int k = 0; k < 20; ++k) {
      const StiefelPoint s = haar_sample(5, 3, rng);
      const Matrix drift = oracle::random_skew(5, rng) * s.data() + s.data() * oracle::random_skew(3, rng);
      CHECK(sym(s.data().transpose() * drift).norm() <= 1e-12);
    }
  }
  SUBCASE("invalid frequencies") {
    FrequencySet bad = FrequencySet::common(5, Matrix::Identity(3, 3), Matrix::Zero(2, 2));
    CHECK_THROWS_AS(flow_field(c, g, bad), NotSkew);
    FrequencySet short_set = FrequencySet::common(4, Matrix::Zero(3, 3), Matrix::Zero(2, 2));
    CHECK_THROWS_AS(flow_field(c, g, short_set), SizeMismatch);
  }
}

TEST_CASE("uncoupled circle agent rotates at its frequency") {
  const double omega = 0.7, t_end = 3.0;
  Matrix w(2, 2);
  w << 0.0, -omega, omega, 0.0;
  Matrix x(2, 1);
  x << 1.0, 0.0;
  const Configuration c0({validate(x)});
  const WeightedGraph lonely(1, {});
  const Trajectory t = integrate(c0, lonely, FrequencySet{{w}, {Matrix::Zero(1, 1)}},
                                 {t_end, 0.01, 1});
  const Matrix& last = t.states.back()[0].data();
  CHECK(std::abs(std::atan2(last(1, 0), last(0, 0)) - omega * t_end) <= 1e-6);
}

TEST_CASE("integrate") {
  Rng rng(35);
  const WeightedGraph g = cycle_graph(5);

  SUBCASE("t_end = 0 keeps only the initial state") {
    const Configuration c0 = oracle::haar_config(5, 3, 1, rng);
    const Trajectory t = integrate(c0, g, {}, {0.0, 0.01, 1});
    REQUIRE(t.states.size() == 1);
    CHECK(t.times[0] == 0.0);
    CHECK(t.states[0].packed() == c0.packed());
  }
  SUBCASE("recording cadence includes the final state") {
    const Configuration c0 = oracle::haar_config(5, 3, 1, rng);
    const Trajectory t = integrate(c0, g, {}, {1.005, 0.01, 25});
    CHECK(t.times.size() == 6);
    CHECK(t.times[1] == doctest::Approx(0.25));
    CHECK(t.times.back() == 1.005);
    for (std::size_t k = 1; k < t.times.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);
  }
  SUBCASE("descent and orthonormality over a long run") {
    const Configuration c0 = oracle::haar_config(5, 4, 2, rng);
    const Trajectory t = integrate(c0, g, {}, {100.0, 0.01, 10});
    double worst = 0.0;
    for (const auto& c : t.states)
      for (const auto& s : c.agents()) worst = std::max(worst, orthonormality_defect(s.data()));
    CHECK(worst <= 1e-9);
    for (std::size_t k = 1; k < t.potential_values.size(); ++k)
      CHECK(t.potential_values[k] <= t.potential_values[k - 1] + 1e-8);
  }
  SUBCASE("consensus is invariant") {
    const Configuration c0 = oracle::consensus_config(5, 3, 2, rng);
    const Trajectory t = integrate(c0, g, {}, {10.0, 0.01, 50});
    for (const auto& c : t.states) CHECK(max_pairwise_distance(c) <= 1e-9);
  }
  SUBCASE("left/right orthogonal transforms commute with the flow") {
    const Configuration c0 = oracle::haar_config(5, 4, 2, rng);
    const Matrix r = haar_orthogonal(4, rng);
    const Matrix q = haar_orthogonal(2, rng);
    std::vector<StiefelPoint> rotated;
    for (const auto& s : c0.agents()) rotated.push_back(StiefelPoint::trusted(r * s.data() * q));
    const Trajectory a = integrate(c0, g, {}, {5.0, 0.01, 100});
    const Trajectory b = integrate(Configuration(rotated), g, {}, {5.0, 0.01, 100});
    for (std::size_t k = 0; k < a.states.size(); ++k)
      for (std::size_t i = 0; i < 5; ++i)
        CHECK((r * a.states[k][i].data() * q - b.states[k][i].data()).norm() <= 1e-8);
  }
  SUBCASE("bad options") {
    const Configuration c0 = oracle::haar_config(5, 3, 1, rng);
    CHECK_THROWS(integrate(c0, g, {}, {1.0, 0.0, 1}));
    CHECK_THROWS(integrate(c0, g, {}, {-1.0, 0.01, 1}));
    CHECK_THROWS_AS(integrate(c0, cycle_graph(4), {}, {1.0, 0.01, 1}), SizeMismatch);
  }
  SUBCASE("absurd step sizes surface as rank loss") {
    const Configuration c0 = oracle::haar_config(5, 3, 2, rng);
    CHECK_THROWS_AS(integrate(c0, complete_graph(5, 1e200), {}, {1e200, 1e200, 1}),
                    RankDeficient);
  }
}

TEST_CASE("rotating frame") {
  Rng rng(36);
  const WeightedGraph g = cycle_graph(5);
  const Configuration c0 = oracle::haar_config(5, 4, 2, rng);

  SUBCASE("zero frequencies leave the trajectory unchanged") {
    const Trajectory t = integrate(c0, g, {}, {1.0, 0.01, 10});
    const Trajectory r = rotating_frame(t, Matrix::Zero(4, 4), Matrix::Zero(2, 2));
    for (std::size_t k = 0; k < t.states.size(); ++k)
      CHECK(r.states[k].packed() == t.states[k].packed());
  }
  SUBCASE("common frequencies reduce to the gradient flow") {
    const Matrix omega = oracle::random_skew(4, rng);
    const Matrix xi = oracle::random_skew(2, rng);
    const Trajectory kuramoto =
        integrate(c0, g, FrequencySet::common(5, omega, xi), {3.0, 0.01, 20});
    const Trajectory framed = rotating_frame(kuramoto, omega, xi);
    const Trajectory flow = integrate(c0, g, {}, {3.0, 0.01, 20});
    double sup = 0.0;
    for (std::size_t k = 0; k < flow.states.size(); ++k) {
      sup = std::max(sup, (framed.states[k].packed() - flow.states[k].packed()).cwiseAbs().maxCoeff());
      for (const auto& s : framed.states[k].agents()) CHECK(orthonormality_defect(s.data()) <= 1e-10);
    }
    CHECK(sup <= 1e-6);
  }
  SUBCASE("matrix exponential of a skew matrix is orthogonal") {
    const Matrix a = oracle::random_skew(5, rng, 3.0);
    const Matrix e = expm_skew(a);
    CHECK((e.transpose() * e - Matrix::Identity(5, 5)).norm() <= 1e-12);
    // exp(A)exp(-A) = I
    CHECK((e * expm_skew(-a) - Matrix::Identity(5, 5)).norm() <= 1e-12);
    Matrix w(2, 2);
    w << 0, -0.4, 0.4, 0;
    const Matrix rot = expm_skew(w);
    CHECK(rot(0, 0) == doctest::Approx(std::cos(0.4)).epsilon(1e-14));
    CHECK(rot(1, 0) == doctest::Approx(std::sin(0.4)).epsilon(1e-14));
  }
  SUBCASE("non-skew inputs are rejected") {
    const Trajectory t = integrate(c0, g, {}, {0.1, 0.01, 10});
    CHECK_THROWS_AS(rotating_frame(t, Matrix::Identity(4, 4), Matrix::Zero(2, 2)), NotSkew);
  }
}

TEST_CASE("sync_state") {
  Rng rng(37);
  CHECK(sync_state(oracle::consensus_config(6, 3, 2, rng), 1e-300));
  CHECK_FALSE(sync_state(antipodal_pair(), 0.1));
  CHECK_THROWS(sync_state(antipodal_pair(), 0.0));

  // Synchronized states have tiny potential: V ≤ |E| max a eps².
  const WeightedGraph g = random_weights(complete_graph(6), rng);
  const Trajectory t = integrate(oracle::haar_config(6, 3, 1, rng), g, {}, {60.0, 0.01, 6000});
  const Configuration& last = t.states.back();
  REQUIRE(sync_state(last, 1e-6));
  CHECK(potential(last, g) <= 36.0 * g.max_weight() * 1e-12);
}
