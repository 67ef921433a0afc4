#pragma once

#include <string>
#include <vector>

namespace xlt {

struct WilcoxonResult {
  double w = 0.0;  // min(T+, T-)
  double p = 0.0;  // two-sided
  std::size_t n = 0;  // pairs remaining after dropping zero differences
  bool exact = false;
};

// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped,
// tied absolute differences get mid-ranks. Up to 25 effective pairs the
// p-value comes from the exact null distribution (union of both tails);
// beyond that a normal approximation with tie and continuity corrections is
// used. Inputs must have equal length of at least 5 and at least one nonzero
// difference.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x,
                                    const std::vector<double>& y);

// Paired effect size: mean(x-y) / sample standard deviation of (x-y) with the
// n-1 denominator. Requires equal lengths of at least 2 and nonzero spread.
double cohens_d(const std::vector<double>& x, const std::vector<double>& y);

// AP per variant (rows) across a shared dataset list (columns).
struct ApTable {
  std::vector<std::string> datasets;
  std::vector<std::string> variants;
  std::vector<std::vector<double>> ap;  // ap[variant][dataset]
};

struct PairComparison {
  std::string variant_a;
  std::string variant_b;
  double w = 0.0;
  double p = 0.0;
  double d = 0.0;
  bool significant = false;  // p < 0.05
  std::string status;        // "ok", or why this pair could not be tested
};

// Wilcoxon p and Cohen's d for every unordered variant pair. Pairs whose
// difference vector is degenerate (all zeros, or zero spread) are reported
// with a status message instead of aborting the whole comparison. The table
// itself must be rectangular with at least two variants.
std::vector<PairComparison> compare_models(const ApTable& table);

// comparison matrix rows: variant_a,variant_b,w,p,d,significant,status
void write_comparison_csv(const std::string& path,
                          const std::vector<PairComparison>& rows);

}  // namespace xlt
