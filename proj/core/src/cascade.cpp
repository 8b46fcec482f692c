#include <future>
#include <sstream>

#include "anisodnl/norms.hpp"
#include "anisodnl/solver.hpp"

namespace anisodnl {

CascadeResult regularization_cascade(const ProblemSpec& spec, const GridPtr& grid,
                                     const SolverConfig& config, const std::vector<int>& ks,
                                     bool parallel) {
  spec.exponents.validate();
  if (auto axis = spec.exponents.closeness_failure()) {
    std::ostringstream msg;
    msg << "regularization_cascade: closeness condition fails on axis " << (*axis + 1);
    throw DomainError(msg.str());
  }
  if (ks.empty()) throw DomainError("regularization_cascade: no truncation levels given");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1) throw DomainError("regularization_cascade: truncation levels must be >= 1");
    if (i > 0 && ks[i] <= ks[i - 1])
      throw DomainError("regularization_cascade: truncation levels must be strictly increasing");
  }

  auto run = [&](int k) {
    SolverConfig c = config;
    c.mode = Mode::truncated;
    c.k = k;
    return solve_problem(spec, grid, c);
  };

  CascadeResult result;
  auto fail = [&](std::size_t i, const std::exception& e) {
    std::ostringstream msg;
    msg << "regularization_cascade: level k = " << ks[i] << " failed: " << e.what();
    throw CascadeError(msg.str(), std::move(result));
  };

  if (parallel) {
    std::vector<std::future<Solution>> futures;
    for (int k : ks) futures.push_back(std::async(std::launch::async, run, k));
    std::vector<std::optional<Solution>> done(ks.size());
    std::optional<std::size_t> first_failure;
    std::string failure_text;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      try {
        done[i] = futures[i].get();
      } catch (const std::exception& e) {
        if (!first_failure) {
          first_failure = i;
          failure_text = e.what();
        }
      }
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (first_failure && i >= *first_failure) break;
      result.ks.push_back(ks[i]);
      result.members.push_back(std::move(*done[i]));
    }
    if (first_failure) fail(*first_failure, Error(failure_text));
  } else {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      try {
        result.members.push_back(run(ks[i]));
        result.ks.push_back(ks[i]);
      } catch (const std::exception& e) {
        fail(i, e);
      }
    }
  }

  for (std::size_t i = 0; i + 1 < result.members.size(); ++i) {
    const TimeSeries& lo = result.members[i].series;
    const TimeSeries& hi = result.members[i + 1].series;
    result.ordering_excess.push_back(max_positive_part(hi, lo));
    result.distances.push_back(vpm_distance(lo, hi, spec.exponents));
  }
  return result;
}

}  // namespace anisodnl
