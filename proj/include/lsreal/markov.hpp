#pragma once

#include <span>
#include <string>
#include <vector>

#include "lsreal/series_family.hpp"

namespace lsreal {

/// Generalized Markov parameters of a finite family of input-output maps,
/// complete up to `max_order`.
///
/// For every series index j and word w the family stores the stacked vector
/// (S_{σ1,j}(w), ..., S_{σD,j}(w)) in R^{p·D}; block k holds the parameter
/// whose output mode is the (k+1)-th letter. The index set is the canonical
/// one: input channels (q0, j) first, then initial-state tags by name.
class MarkovFamily {
 public:
  MarkovFamily(Alphabet alphabet, int p, int m, std::vector<std::string> tags, int max_order);

  const Alphabet& alphabet() const { return series_.alphabet(); }
  int p() const { return p_; }
  int m() const { return m_; }
  int max_order() const { return series_.horizon(); }
  const std::vector<std::string>& tags() const { return tags_; }
  const std::vector<SeriesIndex>& index_set() const { return series_.index_set(); }

  /// Stacked vector of length p·D.
  std::span<const double> stacked(const SeriesIndex& j, const Word& w) const {
    return series_.value(j, w);
  }
  /// The p-vector S_{q,j}(w) for output mode q.
  std::span<const double> markov(const SeriesIndex& j, int output_mode, const Word& w) const;

  const SeriesFamily& series() const { return series_; }
  SeriesFamily& series() { return series_; }

 private:
  int p_;
  int m_;
  std::vector<std::string> tags_;
  SeriesFamily series_;
};

}  // namespace lsreal
