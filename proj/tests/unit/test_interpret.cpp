#include <doctest.h>

#include <vector>

#include "sngbm/errors.hpp"
#include "sngbm/interpret.hpp"
#include "sngbm/synth.hpp"

using namespace sngbm;

namespace {

// Depth-1 tree splitting `feature` with `gain`.
RegressionTree stump(int feature, double gain) {
  RegressionTree t;
  t.nodes.push_back({feature, 0.5, 1, 2, gain, 0.0, 10});
  t.nodes.push_back({-1, 0.0, -1, -1, 0.0, -1.0, 5});
  t.nodes.push_back({-1, 0.0, -1, -1, 0.0, 1.0, 5});
  return t;
}

BoostModel model_with(const std::vector<std::pair<RegressionTree, RegressionTree>>& trees,
                      std::size_t d) {
  BoostModel m;
  for (std::size_t f = 0; f < d; ++f) m.feature_names.push_back("f" + std::to_string(f));
  for (const auto& [mu, psi] : trees) m.iterations.push_back({1.0, mu, psi});
  return m;
}

}  // namespace

TEST_CASE("single-leaf variance trees give zero variance importance") {
  const RegressionTree leaf = RegressionTree::leaf(0.1, 10);
  const BoostModel m = model_with({{stump(0, 3.0), leaf}, {stump(1, 2.0), leaf}}, 3);
  const ImportanceTable t = feature_importance(m, ParamSet::variance);
  for (const auto& f : t.features) {
    CHECK(f.weight == 0);
    CHECK(f.gain == 0.0);
    CHECK(f.total_gain == 0.0);
  }
}

TEST_CASE("weight counts splits, gain averages them") {
  const RegressionTree leaf = RegressionTree::leaf(0.0, 10);
  const BoostModel m = model_with({{leaf, stump(3, 4.0)}, {leaf, stump(3, 6.0)}}, 4);
  const ImportanceTable t = feature_importance(m, ParamSet::variance);
  CHECK(t.set == ParamSet::variance);
  CHECK(t.features[3].weight == 2);
  CHECK(t.features[3].gain == 5.0);
  CHECK(t.features[3].total_gain == 10.0);
  CHECK(t.column(ImportanceKind::weight) == std::vector<double>{0, 0, 0, 2});
  CHECK(t.column(ImportanceKind::gain) == std::vector<double>{0, 0, 0, 5});
}

TEST_CASE("combined ranking arithmetic") {
  const RegressionTree leaf = RegressionTree::leaf(0.0, 10);
  // Mean gains 8 and 2 -> shares (0.8, 0.2); variance only on feature 1.
  const BoostModel m = model_with({{stump(0, 8.0), stump(1, 5.0)}, {stump(1, 2.0), leaf}}, 2);
  const auto ranked = combined_ranking(m, 0.5, ImportanceKind::gain);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].index == 1);
  CHECK(ranked[0].score == doctest::Approx(0.6));
  CHECK(ranked[1].index == 0);
  CHECK(ranked[1].score == doctest::Approx(0.4));
  CHECK(ranked[1].mean_share == doctest::Approx(0.8));
  CHECK(ranked[1].variance_share == 0.0);
  CHECK_THROWS_AS(combined_ranking(m, 1.5), InvalidInput);
}

TEST_CASE("importance properties on a trained model") {
  SynthConfig sc;
  sc.n = 3000;
  sc.seed = 8;
  const SynthData s = generate(sc);
  BoostConfig cfg;
  cfg.iterations = 60;
  cfg.learning_rate = 0.1;
  cfg.tree.max_depth = 3;
  const BoostModel model = train(s.data, cfg).model;

  for (ParamSet set : {ParamSet::mean, ParamSet::variance}) {
    const ImportanceTable t = feature_importance(model, set);
    std::size_t weights = 0, internal = 0;
    for (const auto& f : t.features) {
      weights += f.weight;
      CHECK(f.gain >= 0.0);
      if (f.weight == 0) CHECK(f.gain == 0.0);
    }
    for (const auto& it : model.iterations) {
      internal += (set == ParamSet::mean ? it.tree_mu : it.tree_psi).internal_count();
    }
    CHECK(weights == internal);
  }

  for (ImportanceKind kind : {ImportanceKind::weight, ImportanceKind::gain}) {
    const auto mean_order = rank_features(feature_importance(model, ParamSet::mean).column(kind));
    const auto var_order = rank_features(feature_importance(model, ParamSet::variance).column(kind));
    const auto at_one = combined_ranking(model, 1.0, kind);
    const auto at_zero = combined_ranking(model, 0.0, kind);
    for (std::size_t i = 0; i < mean_order.size(); ++i) {
      CHECK(at_one[i].index == mean_order[i]);
      CHECK(at_zero[i].index == var_order[i]);
    }
  }

  BoostModel renamed = model;
  for (auto& name : renamed.feature_names) name = "renamed_" + name;
  const auto a = combined_ranking(model, 0.3);
  const auto b = combined_ranking(renamed, 0.3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].score == b[i].score);
  }

  // sigma depends on x2 only; x1 drives the mean.
  const auto var_gain = feature_importance(model, ParamSet::variance).column(ImportanceKind::gain);
  CHECK(rank_features(var_gain)[0] == 1);
}
