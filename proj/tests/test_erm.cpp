#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "tcc/errors.hpp"
#include "tcc/eval.hpp"
#include "tcc/model.hpp"
#include "tcc/risk.hpp"
#include "tcc/train.hpp"

using namespace tcc;

namespace {

const LossKind kAll[] = {LossKind::Squared, LossKind::DoubleHinge,
                         LossKind::Logistic};

PointwiseBags single_point_bags(std::vector<double> x) {
  PointwiseBags bags;
  bags.dim = x.size();
  bags.bag1 = {x};
  bags.bag2 = {x};
  bags.bag3 = {x};
  return bags;
}

PointwiseBags random_bags(std::size_t dim, std::size_t per_bag, Rng& rng) {
  PointwiseBags bags;
  bags.dim = dim;
  auto fill = [&](std::vector<std::vector<double>>& bag) {
    for (std::size_t i = 0; i < per_bag; ++i) {
      std::vector<double> x(dim);
      for (double& v : x) v = 4.0 * rng.next_double() - 2.0;
      bag.push_back(std::move(x));
    }
  };
  fill(bags.bag1);
  fill(bags.bag2);
  fill(bags.bag3);
  return bags;
}

Model random_mlp(std::size_t dim, std::size_t hidden, Rng& rng) {
  Model m = make_mlp1_model(dim, hidden, rng);
  for (double& p : m.params) p += 0.2 * (rng.next_double() - 0.5);
  return m;
}

}  // namespace

TEST_CASE("model scoring") {
  SUBCASE("linear") {
    Model zero = make_linear_model(2);
    CHECK(zero.score({3.0, 4.0}) == 0.0);
    CHECK(zero.predict({3.0, 4.0}) == 1);  // score 0 maps to +1

    Model m = make_linear_model(2);
    m.params = {1.0, 0.0, -1.0};
    CHECK(m.score({3.0, 5.0}) == 2.0);
    CHECK(m.predict({3.0, 5.0}) == 1);
    CHECK(m.predict({0.0, 9.0}) == -1);
    CHECK_THROWS_AS(m.score({1.0}), std::invalid_argument);
  }

  SUBCASE("mlp1 with zero hidden path is the output bias") {
    Model m;
    m.kind = ModelKind::Mlp1;
    m.dim = 3;
    m.hidden_width = 4;
    m.params.assign(model_param_count(ModelKind::Mlp1, 3, 4), 0.0);
    m.params.back() = -2.5;
    CHECK(m.score({1.0, 2.0, 3.0}) == -2.5);
    CHECK(m.predict({1.0, 2.0, 3.0}) == -1);
  }

  SUBCASE("parameter counts") {
    CHECK(model_param_count(ModelKind::Linear, 5, 0) == 6);
    CHECK(model_param_count(ModelKind::Mlp1, 3, 4) == 21);
    CHECK(model_param_count(ModelKind::Mlp1, 30, 100) == 3201);
  }

  SUBCASE("mlp init is fan-in bounded with zero biases") {
    Rng rng(11);
    const Model m = make_mlp1_model(4, 10, rng);
    const double in_scale = 1.0 / std::sqrt(4.0);
    for (std::size_t i = 0; i < 40; ++i) CHECK(std::abs(m.params[i]) <= in_scale);
    for (std::size_t i = 40; i < 50; ++i) CHECK(m.params[i] == 0.0);
    CHECK(m.params.back() == 0.0);
  }
}

TEST_CASE("model persistence round-trips exactly") {
  Rng rng(3);
  Model m = random_mlp(3, 5, rng);
  m.params[0] = 0.1 + 1e-17;  // not representable shortly; still exact
  const Model back = model_from_json(model_to_json(m));
  CHECK(back.kind == m.kind);
  CHECK(back.dim == m.dim);
  CHECK(back.hidden_width == m.hidden_width);
  REQUIRE(back.params.size() == m.params.size());
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    CHECK(back.params[i] == m.params[i]);
  }
  CHECK_THROWS_AS(model_from_json("not json"), DataError);
  CHECK_THROWS_AS(model_from_json("{\"kind\":\"linear\",\"d\":2,\"params\":[1.0]}"),
                  DataError);
}

TEST_CASE("empirical risk of the constant-zero model") {
  PointwiseBags bags = single_point_bags({0.5, -0.5});
  bags.bag1.push_back({2.0, 1.0});
  const Model zero = make_linear_model(2);
  for (double p : {0.6, 0.7, 0.9, 1.0}) {
    const RiskWeights w = risk_weights(p, p);
    // every score is 0, so the loss constants factor out through the
    // weight-sum identities
    CHECK(empirical_risk(zero, bags, w, LossKind::DoubleHinge) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(empirical_risk(zero, bags, w, LossKind::Squared) ==
          doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("empirical risk on single-point bags is the weighted loss") {
  const std::vector<double> x = {1.0, 2.0};
  const PointwiseBags bags = single_point_bags(x);
  Model m = make_linear_model(2);
  m.params = {0.5, -0.25, 0.1};  // score 0.1
  const RiskWeights w = risk_weights(0.7, 0.7);
  const double z = m.score(x);
  for (LossKind kind : kAll) {
    const double expect =
        (w.w1_pos + w.w2_pos + w.w3_pos) * loss_value(kind, z, 1) +
        (w.w1_neg + w.w2_neg + w.w3_neg) * loss_value(kind, z, -1);
    CHECK(empirical_risk(m, bags, w, kind) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("empirical risk rejects empty bags by name") {
  const RiskWeights w = risk_weights(0.7, 0.7);
  const Model m = make_linear_model(1);
  PointwiseBags bags;
  bags.dim = 1;
  bags.bag1 = {{1.0}};
  bags.bag2 = {{1.0}};
  CHECK_THROWS_WITH_AS(empirical_risk(m, bags, w, LossKind::Squared),
                       doctest::Contains("bag3"), DataError);
  bags.bag3 = {{1.0}};
  bags.bag2.clear();
  CHECK_THROWS_WITH_AS(empirical_risk(m, bags, w, LossKind::Squared),
                       doctest::Contains("bag2"), DataError);
}

TEST_CASE("constant loss makes the estimator exactly one") {
  Rng rng(5);
  const PointwiseBags bags = random_bags(3, 7, rng);
  Model m = random_mlp(3, 4, rng);
  for (double p : {0.55, 0.7, 0.95}) {
    for (double pt : {0.3, 0.7, 1.0}) {
      const RiskWeights w = risk_weights(p, pt);
      const double risk = empirical_risk(m, bags, w, [](double, int) { return 1.0; });
      CHECK(risk == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("risk gradient") {
  SUBCASE("all-zero weights give a zero gradient") {
    Rng rng(6);
    const PointwiseBags bags = random_bags(2, 4, rng);
    const Model m = random_mlp(2, 3, rng);
    const RiskWeights zero{0, 0, 0, 0, 0, 0, 0.5};
    for (double g : risk_gradient(m, bags, zero, LossKind::Squared)) {
      CHECK(g == 0.0);
    }
  }

  SUBCASE("matches central finite differences") {
    Rng rng(7);
    for (int instance = 0; instance < 10; ++instance) {
      const bool use_mlp = instance % 2 == 1;
      const PointwiseBags bags = random_bags(3, 5, rng);
      Model m = use_mlp ? random_mlp(3, 4, rng) : make_linear_model(3);
      if (!use_mlp) {
        for (double& p : m.params) p = rng.next_double() - 0.5;
      }
      const double prior = 0.55 + 0.4 * rng.next_double();
      const RiskWeights w = risk_weights(prior, prior);
      const LossKind kind = kAll[instance % 3];
      const std::vector<double> grad = risk_gradient(m, bags, w, kind);
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        const double fd = oracle::central_difference(
            [&](double v) {
              Model probe = m;
              probe.params[i] = v;
              return empirical_risk(probe, bags, w, kind);
            },
            m.params[i]);
        CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }

  SUBCASE("linear bias component is the mean weighted slope") {
    Rng rng(8);
    const PointwiseBags bags = random_bags(2, 6, rng);
    Model m = make_linear_model(2);
    m.params = {0.3, -0.2, 0.05};
    const RiskWeights w = risk_weights(0.7, 0.7);
    const std::vector<double> grad = risk_gradient(m, bags, w, LossKind::Logistic);
    const double w_pos[3] = {w.w1_pos, w.w2_pos, w.w3_pos};
    const double w_neg[3] = {w.w1_neg, w.w2_neg, w.w3_neg};
    const std::vector<std::vector<double>>* bag[3] = {&bags.bag1, &bags.bag2,
                                                      &bags.bag3};
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) {
      double sum = 0.0;
      for (const auto& x : *bag[i]) {
        const double z = m.score(x);
        sum += w_pos[i] * loss_derivative(LossKind::Logistic, z, 1) +
               w_neg[i] * loss_derivative(LossKind::Logistic, z, -1);
      }
      expect += sum / static_cast<double>(bag[i]->size());
    }
    CHECK(grad[2] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("estimator expectation equals the true risk on a finite domain") {
  oracle::DiscreteDomain domain;
  domain.points = {{0.0, 1.0}, {1.0, -0.5}, {-1.0, 0.25}, {2.0, 2.0}, {0.5, -2.0}};
  domain.p_plus = {0.4, 0.1, 0.2, 0.2, 0.1};
  domain.p_minus = {0.05, 0.35, 0.3, 0.1, 0.2};

  Model m = make_linear_model(2);
  m.params = {0.7, -0.3, 0.1};

  for (const auto& [prior, pi_test] : std::vector<std::pair<double, double>>{
           {0.7, 0.7}, {0.8, 0.6}}) {
    const oracle::PositionMarginals marg = oracle::position_marginals(domain, prior);
    const RiskWeights w = risk_weights(prior, pi_test);
    for (LossKind kind : kAll) {
      // exhaustive expectation of the estimator over single-sample bags
      double expectation = 0.0;
      for (std::size_t i = 0; i < domain.points.size(); ++i) {
        for (std::size_t j = 0; j < domain.points.size(); ++j) {
          for (std::size_t k = 0; k < domain.points.size(); ++k) {
            PointwiseBags bags;
            bags.dim = 2;
            bags.bag1 = {domain.points[i]};
            bags.bag2 = {domain.points[j]};
            bags.bag3 = {domain.points[k]};
            const double mass = marg.pmf[0][0][i] * marg.pmf[0][1][j] *
                                marg.pmf[1][1][k];
            expectation += mass * empirical_risk(m, bags, w, kind);
          }
        }
      }
      // true risk under the test prior, straight from the definitions
      double truth = 0.0;
      for (std::size_t i = 0; i < domain.points.size(); ++i) {
        const double z = m.score(domain.points[i]);
        truth += pi_test * domain.p_plus[i] * loss_value(kind, z, 1);
        truth += (1.0 - pi_test) * domain.p_minus[i] * loss_value(kind, z, -1);
      }
      CHECK(expectation == doctest::Approx(truth).epsilon(1e-10));
    }
  }
}

TEST_CASE("training") {
  GaussianSource source({{1.0, 1.0}, {-1.0, -1.0}, 1.0, 0.7});

  SUBCASE("zero epochs returns the initialized model") {
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(source, 50, 2));
    TrainConfig config;
    config.epochs = 0;
    const TrainResult r = train(bags, config);
    for (double p : r.model.params) CHECK(p == 0.0);
    CHECK(r.risk_trace.empty());
    CHECK(r.pi_plus > 0.5);
  }

  SUBCASE("deterministic given the seed") {
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(source, 100, 3));
    TrainConfig config;
    config.model = ModelKind::Mlp1;
    config.hidden_width = 8;
    config.epochs = 20;
    config.batch_size = 16;
    config.seed = 77;
    const TrainResult a = train(bags, config);
    const TrainResult b = train(bags, config);
    CHECK(a.model.params == b.model.params);
    CHECK(a.risk_trace == b.risk_trace);
  }

  SUBCASE("explicit prior and test prior are honored") {
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(source, 100, 4));
    TrainConfig config;
    config.epochs = 1;
    config.pi_plus = 0.8;
    config.pi_test = 0.6;
    const TrainResult r = train(bags, config);
    CHECK(r.pi_plus == 0.8);
    CHECK(r.pi_test == 0.6);
    CHECK(r.weights.pi_test == 0.6);
  }

  SUBCASE("learns the two-Gaussian problem") {
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(source, 1000, 5));
    TrainConfig config;
    config.loss = LossKind::DoubleHinge;
    config.epochs = 200;
    config.seed = 9;
    const TrainResult r = train(bags, config);
    // the inversion amplifies count noise, so only sanity-check the estimate
    CHECK(r.pi_plus > 0.55);
    CHECK(r.pi_plus < 0.85);

    GaussianSource held_out({{1.0, 1.0}, {-1.0, -1.0}, 1.0, 0.7});
    const auto test = sample_labeled(held_out, 10000, 123);
    CHECK(classification_accuracy(r.model, test) >= 0.85);
  }

  SUBCASE("estimated prior in the guard band aborts") {
    // 3 keeps to 1 flip puts the estimate exactly at pi_t = 0.75, pi+ = 0.5
    TripletDataset d;
    d.dim = 1;
    d.keep = {{{0.0}, {1.0}, {2.0}}, {{0.1}, {1.1}, {2.1}}, {{0.2}, {1.2}, {2.2}}};
    d.flip = {{{0.3}, {1.3}, {2.3}}};
    const PointwiseBags bags = aggregate_pointwise(d);
    TrainConfig config;
    config.epochs = 1;
    CHECK_THROWS_AS(train(bags, config), NumericalError);
    // an explicit prior inside the band is rejected the same way
    config.pi_plus = 0.501;
    CHECK_THROWS_AS(train(bags, config), NumericalError);
  }

  SUBCASE("empty bags abort by name") {
    GaussianSource pure({{1.0}, {-1.0}, 1.0, 1.0});
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(pure, 50, 7));
    TrainConfig config;
    CHECK_THROWS_WITH_AS(train(bags, config), doctest::Contains("bag3"), DataError);
  }

  SUBCASE("divergence is reported") {
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(source, 50, 8));
    TrainConfig config;
    config.loss = LossKind::Squared;
    config.learning_rate = 1e160;
    config.epochs = 3;
    CHECK_THROWS_AS(train(bags, config), NumericalError);
  }

  SUBCASE("risk floor flag trains") {
    const PointwiseBags bags =
        aggregate_pointwise(generate_triplets(source, 100, 9));
    TrainConfig config;
    config.epochs = 10;
    config.floor_risk_at_zero = true;
    const TrainResult r = train(bags, config);
    CHECK(r.risk_trace.size() == 10);
  }
}

TEST_CASE("full-batch descent on a convex loss never increases the risk") {
  GaussianSource source({{1.0, 0.0}, {-1.0, 0.5}, 1.0, 0.7});
  const PointwiseBags bags = aggregate_pointwise(generate_triplets(source, 200, 10));
  const RiskWeights w = risk_weights(0.7, 0.7);
  for (LossKind kind : {LossKind::Squared, LossKind::Logistic}) {
    Model m = make_linear_model(2);
    double previous = empirical_risk(m, bags, w, kind);
    for (int it = 0; it < 200; ++it) {
      const std::vector<double> grad = risk_gradient(m, bags, w, kind);
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        m.params[i] -= 0.05 * grad[i];
      }
      const double risk = empirical_risk(m, bags, w, kind);
      CHECK(risk <= previous + 1e-9);
      previous = risk;
    }
  }
}
