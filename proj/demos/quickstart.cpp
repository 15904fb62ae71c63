// Robust k-means on the three-cluster mixture with a cloud of outliers,
// next to plain k-means++ on the same data.

#include <iostream>

#include "rul/rul.hpp"

int main() {
  const rul::Dataset train = rul::gen_clusters_with_outliers(rul::three_cluster_spec(), 7);
  const rul::Dataset test = rul::gen_clusters_with_outliers(rul::three_cluster_spec(false), 8);

  rul::FitConfig cfg;
  cfg.k = 3;
  cfg.max_iters = 10;
  cfg.restarts = 30;
  cfg.seed = 7;

  cfg.weight = rul::WeightFunction::hard(0.75);
  const auto robust = rul::fit(train, cfg);

  cfg.weight = rul::WeightFunction::identity();
  cfg.init = rul::InitKind::KMeansPP;
  const auto plain = rul::fit(train, cfg);

  std::cout << "robust centers:\n" << std::get<rul::CenterSet>(robust.model).centers << "\n";
  std::cout << "plain centers:\n" << std::get<rul::CenterSet>(plain.model).centers << "\n";
  std::cout << "clean test error  robust=" << rul::reconstruction_error(test, robust.model)
            << "  plain=" << rul::reconstruction_error(test, plain.model) << "\n";
}
