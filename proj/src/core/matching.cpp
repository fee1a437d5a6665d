#include "core/matching.hpp"

#include <iostream>
#include <limits>
#include <set>

namespace persim {

void WeightMatrix::validate() const {
  if (n() == 0 || m() == 0) throw Error(Errc::dimension, "weight matrix must be non-empty");
  if (m() < n())
    throw Error(Errc::dimension, "persona pool (" + std::to_string(m()) +
                                     ") smaller than roster (" + std::to_string(n()) + ")");
  if (w.size() != n()) throw Error(Errc::dimension, "weight matrix row count mismatch");
  for (const auto& row : w) {
    if (row.size() != m()) throw Error(Errc::dimension, "weight matrix column count mismatch");
    for (double v : row)
      if (!(v >= 0.0 && v <= 1.0))
        throw Error(Errc::dimension, "weight " + std::to_string(v) + " outside [0,1]");
  }
}

double match_weight(const HumanParticipant& human, const TraitProfile& profile,
                    const TraitSchema& schema) {
  double weight = 1.0;  // empty product over an empty schema
  for (const auto& trait : schema.traits) {
    auto it = human.traits.find(trait.name);
    if (it == human.traits.end())
      throw Error(Errc::schema_mismatch,
                  "participant " + human.id + " lacks trait '" + trait.name + "'");
    if (profile.traits.find(trait.name) == profile.traits.end())
      throw Error(Errc::schema_mismatch,
                  "profile " + profile.persona_id + " lacks trait '" + trait.name + "'");
    weight *= profile.mass(trait.name, it->second);
  }
  return weight;
}

WeightMatrix build_weight_matrix(const std::vector<HumanParticipant>& humans,
                                 const std::vector<TraitProfile>& profiles,
                                 const TraitSchema& schema) {
  if (humans.empty()) throw Error(Errc::empty_roster, "roster is empty");
  if (profiles.size() < humans.size())
    throw Error(Errc::dimension, "need at least as many personas as humans (" +
                                     std::to_string(profiles.size()) + " < " +
                                     std::to_string(humans.size()) + ")");
  std::set<std::string> human_ids, persona_ids;
  for (const auto& h : humans)
    if (!human_ids.insert(h.id).second)
      throw Error(Errc::spec_violation, "duplicate human id '" + h.id + "'");
  for (const auto& p : profiles)
    if (!persona_ids.insert(p.persona_id).second)
      throw Error(Errc::spec_violation, "duplicate persona id '" + p.persona_id + "'");

  WeightMatrix matrix;
  for (const auto& h : humans) matrix.human_ids.push_back(h.id);
  for (const auto& p : profiles) matrix.persona_ids.push_back(p.persona_id);
  matrix.w.resize(humans.size());
  for (size_t i = 0; i < humans.size(); ++i) {
    matrix.w[i].resize(profiles.size());
    for (size_t j = 0; j < profiles.size(); ++j)
      matrix.w[i][j] = match_weight(humans[i], profiles[j], schema);
  }
  matrix.validate();
  return matrix;
}

namespace {

// Shortest-augmenting-path assignment on an N x N cost matrix (minimizes).
// Returns row_of_col: column j -> assigned row. Deterministic: columns are
// always scanned in ascending order.
std::vector<int> solve_square_min_cost(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, inf);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    do {
      used[static_cast<size_t>(j0)] = true;
      int i0 = p[static_cast<size_t>(j0)], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        double cur = cost[static_cast<size_t>(i0 - 1)][static_cast<size_t>(j - 1)] -
                     u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_of_col(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j) row_of_col[static_cast<size_t>(j - 1)] = p[static_cast<size_t>(j)] - 1;
  return row_of_col;
}

}  // namespace

Assignment optimal_assignment(const WeightMatrix& weights) {
  weights.validate();
  const size_t n = weights.n(), m = weights.m();

  // Pad with zero-weight dummy humans to make the problem square; their
  // assignments are discarded afterwards.
  std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) cost[i][j] = -weights.w[i][j];

  std::vector<int> row_of_col = solve_square_min_cost(cost);

  Assignment result;
  result.mapping.assign(n, 0);
  std::vector<bool> taken(m, false);
  for (size_t j = 0; j < m; ++j) {
    int i = row_of_col[j];
    if (i >= 0 && static_cast<size_t>(i) < n) {
      result.mapping[static_cast<size_t>(i)] = j;
      taken[j] = true;
    }
  }

  // Canonicalize exact ties toward low persona indices: first by moving a
  // human to a free equal-weight column, then by swapping pairs whose swap
  // is weight-neutral. Only exact equality moves anything, so the optimum is
  // untouched.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < result.mapping[i]; ++j) {
      if (!taken[j] && weights.w[i][j] == weights.w[i][result.mapping[i]]) {
        taken[result.mapping[i]] = false;
        result.mapping[i] = j;
        taken[j] = true;
        break;
      }
    }
  }
  for (size_t i1 = 0; i1 < n; ++i1) {
    for (size_t i2 = i1 + 1; i2 < n; ++i2) {
      size_t a = result.mapping[i1], b = result.mapping[i2];
      if (b < a && weights.w[i1][b] + weights.w[i2][a] == weights.w[i1][a] + weights.w[i2][b]) {
        std::swap(result.mapping[i1], result.mapping[i2]);
      }
    }
  }

  std::set<size_t> seen;
  for (size_t i = 0; i < n; ++i) {
    if (!seen.insert(result.mapping[i]).second)
      throw Error(Errc::internal, "assignment is not injective");
    result.total_weight += weights.w[i][result.mapping[i]];
    if (weights.w[i][result.mapping[i]] == 0.0) result.zero_weight_rows.push_back(i);
  }
  if (!result.zero_weight_rows.empty()) {
    std::cerr << "[match] warning: " << result.zero_weight_rows.size()
              << " participant(s) matched at weight 0:";
    for (size_t i : result.zero_weight_rows) std::cerr << ' ' << weights.human_ids[i];
    std::cerr << '\n';
  }
  return result;
}

}  // namespace persim
