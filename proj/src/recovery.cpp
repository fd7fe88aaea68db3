// Inverse search for integer rating rows that reproduce a column of published
// weights under every share vector of the sensitivity protocol.

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

#include "floodga/errors.hpp"
#include "floodga/weights.hpp"

namespace floodga {

namespace {

class RowSearch {
 public:
  RowSearch(std::span<const double> targets, std::span<const std::vector<double>> share_sets,
            const RecoveryOptions& options)
      : targets_(targets.begin(), targets.end()),
        shares_(share_sets.begin(), share_sets.end()),
        opts_(options),
        width_(share_sets.front().size()) {
    // Reachable contribution of positions p..n-1 for each equation.
    rest_lo_.assign((width_ + 1) * shares_.size(), 0.0);
    rest_hi_.assign((width_ + 1) * shares_.size(), 0.0);
    for (std::size_t p = width_; p-- > 0;) {
      for (std::size_t k = 0; k < shares_.size(); ++k) {
        const double a = shares_[k][p] * opts_.min_rating;
        const double b = shares_[k][p] * opts_.max_rating;
        rest_lo_[p * shares_.size() + k] = rest_lo_[(p + 1) * shares_.size() + k] + std::min(a, b);
        rest_hi_[p * shares_.size() + k] = rest_hi_[(p + 1) * shares_.size() + k] + std::max(a, b);
      }
    }
  }

  /// All matches whose first rating is `first`, in lexicographic order.
  std::vector<std::vector<int>> search_from(int first) const {
    std::vector<std::vector<int>> found;
    std::vector<int> row(width_);
    std::vector<double> partial(shares_.size(), 0.0);
    row[0] = first;
    for (std::size_t k = 0; k < shares_.size(); ++k) partial[k] = shares_[k][0] * first;
    if (feasible(1, partial)) descend(1, row, partial, found);
    return found;
  }

 private:
  bool feasible(std::size_t next, const std::vector<double>& partial) const {
    const auto m = shares_.size();
    for (std::size_t k = 0; k < m; ++k) {
      const double lo = partial[k] + rest_lo_[next * m + k];
      const double hi = partial[k] + rest_hi_[next * m + k];
      if (lo > targets_[k] + opts_.tolerance || hi < targets_[k] - opts_.tolerance) return false;
    }
    return true;
  }

  void descend(std::size_t pos, std::vector<int>& row, std::vector<double>& partial,
               std::vector<std::vector<int>>& found) const {
    if (pos == width_) {
      found.push_back(row);
      return;
    }
    const auto m = shares_.size();
    for (int v = opts_.min_rating; v <= opts_.max_rating; ++v) {
      row[pos] = v;
      for (std::size_t k = 0; k < m; ++k) partial[k] += shares_[k][pos] * v;
      if (feasible(pos + 1, partial)) descend(pos + 1, row, partial, found);
      for (std::size_t k = 0; k < m; ++k) partial[k] -= shares_[k][pos] * v;
    }
  }

  std::vector<double> targets_;
  std::vector<std::vector<double>> shares_;
  RecoveryOptions opts_;
  std::size_t width_;
  std::vector<double> rest_lo_;
  std::vector<double> rest_hi_;
};

}  // namespace

std::vector<std::vector<int>> recover_rating_row(std::span<const double> targets,
                                                 std::span<const std::vector<double>> share_sets,
                                                 const RecoveryOptions& options) {
  if (share_sets.empty() || share_sets.front().empty()) throw DimensionError("no share vectors to match");
  if (targets.size() != share_sets.size()) {
    throw DimensionError(fmt::format("{} targets for {} share vectors", targets.size(), share_sets.size()));
  }
  for (const auto& s : share_sets) {
    if (s.size() != share_sets.front().size()) throw DimensionError("share vectors differ in length");
  }
  if (options.min_rating > options.max_rating || !(options.tolerance >= 0.0)) {
    throw ConfigError("recovery needs min_rating <= max_rating and a non-negative tolerance");
  }

  const RowSearch search(targets, share_sets, options);
  const int span = options.max_rating - options.min_rating + 1;
  // One bucket per leading rating; concatenating buckets in order keeps the
  // result sorted regardless of which thread filled which bucket.
  std::vector<std::vector<std::vector<int>>> buckets(static_cast<std::size_t>(span));

  if (options.parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < span; ++i) {
      try {
        buckets[static_cast<std::size_t>(i)] = search.search_from(options.min_rating + i);
      } catch (...) {
#pragma omp critical(floodga_recovery_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int i = 0; i < span; ++i) {
      buckets[static_cast<std::size_t>(i)] = search.search_from(options.min_rating + i);
    }
  }

  std::vector<std::vector<int>> out;
  for (auto& b : buckets) {
    for (auto& row : b) out.push_back(std::move(row));
  }
  if (out.empty()) {
    throw NoSolutionError(fmt::format(
        "no integer rating row in {}..{} matches all {} targets within {}; check the tolerance "
        "or the transcribed weights",
        options.min_rating, options.max_rating, targets.size(), options.tolerance));
  }
  return out;
}

std::vector<std::vector<int>> recover_rating_row(std::span<const double> targets,
                                                 const AspectPercentages& shares,
                                                 const RecoveryOptions& options) {
  std::vector<std::vector<double>> sets;
  for (const auto& s : perturbed_share_sets(shares)) sets.push_back(s.shares.shares());
  return recover_rating_row(targets, sets, options);
}

}  // namespace floodga
