#pragma once

#include <string>
#include <vector>

#include "core/types.hpp"

namespace persim {

struct WeightMatrix {
  std::vector<std::string> human_ids;    // rows
  std::vector<std::string> persona_ids;  // columns, m >= n
  std::vector<std::vector<double>> w;    // n x m, entries in [0,1]

  size_t n() const { return human_ids.size(); }
  size_t m() const { return persona_ids.size(); }
  void validate() const;
};

struct Assignment {
  std::vector<size_t> mapping;  // human index -> persona index, injective
  double total_weight = 0.0;
  std::vector<size_t> zero_weight_rows;  // humans whose matched weight is 0
};

// Likelihood that the persona matches every one of the human's traits: the
// product over schema traits of the persona's mass on the human's category.
double match_weight(const HumanParticipant& human, const TraitProfile& profile,
                    const TraitSchema& schema);

WeightMatrix build_weight_matrix(const std::vector<HumanParticipant>& humans,
                                 const std::vector<TraitProfile>& profiles,
                                 const TraitSchema& schema);

// Exact maximum-weight assignment (Hungarian algorithm on the padded square
// matrix). Deterministic scan order; among exact ties the result is
// canonicalized toward the smallest persona indices.
Assignment optimal_assignment(const WeightMatrix& weights);

}  // namespace persim
