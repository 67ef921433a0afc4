#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace xlt {
namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Exact two-sided p-value over the null distribution of T+. Ranks are passed
// doubled so mid-ranks stay integral. Counts fit a double exactly (n <= 25).
double exact_two_sided_p(const std::vector<long long>& doubled_ranks, long long w2) {
  long long total2 = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0LL);
  std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
  counts[0] = 1.0;
  long long reach = 0;
  for (long long r : doubled_ranks) {
    for (long long s = reach; s >= 0; --s) {
      if (counts[static_cast<std::size_t>(s)] != 0.0) {
        counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
      }
    }
    reach += r;
  }
  double in_tails = 0.0;
  double all = 0.0;
  for (long long s = 0; s <= total2; ++s) {
    double c = counts[static_cast<std::size_t>(s)];
    all += c;
    if (s <= w2 || s >= total2 - w2) in_tails += c;
  }
  return in_tails / all;
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  if (x.size() != y.size()) {
    fail(ErrorCode::invalid_argument, "wilcoxon: input lengths differ");
  }
  if (x.size() < 5) {
    fail(ErrorCode::invalid_argument, "wilcoxon: need at least 5 pairs");
  }

  std::vector<double> diffs;
  diffs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    fail(ErrorCode::invalid_argument, "wilcoxon: all differences are zero");
  }

  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(diffs[a]) < std::fabs(diffs[b]);
  });

  // Mid-ranks over tied absolute differences.
  std::vector<double> ranks(n);
  double tie_correction = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
    double mid = static_cast<double>(i + j + 1) / 2.0;  // ranks are 1-based
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    double t = static_cast<double>(j - i);
    tie_correction += t * t * t - t;
    i = j;
  }

  double t_plus = 0.0;
  double t_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0) {
      t_plus += ranks[i];
    } else {
      t_minus += ranks[i];
    }
  }

  WilcoxonResult result;
  result.n = n;
  result.w = std::min(t_plus, t_minus);

  if (n <= 25) {
    result.exact = true;
    std::vector<long long> doubled(n);
    for (std::size_t i = 0; i < n; ++i) doubled[i] = std::llround(2.0 * ranks[i]);
    result.p = exact_two_sided_p(doubled, std::llround(2.0 * result.w));
  } else {
    result.exact = false;
    double nd = static_cast<double>(n);
    double mean = nd * (nd + 1.0) / 4.0;
    double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_correction / 48.0;
    double z = (result.w - mean + 0.5) / std::sqrt(var);
    result.p = std::min(1.0, 2.0 * normal_cdf(z));
  }
  return result;
}

double cohens_d(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    fail(ErrorCode::invalid_argument, "cohens_d: input lengths differ");
  }
  if (x.size() < 2) {
    fail(ErrorCode::invalid_argument, "cohens_d: need at least 2 pairs");
  }
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += x[i] - y[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dev = (x[i] - y[i]) - mean;
    ss += dev * dev;
  }
  double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) {
    fail(ErrorCode::invalid_argument, "cohens_d: zero difference spread");
  }
  return mean / sd;
}

std::vector<PairComparison> compare_models(const ApTable& table) {
  if (table.variants.size() < 2) {
    fail(ErrorCode::invalid_argument, "compare: need at least two variants");
  }
  if (table.ap.size() != table.variants.size()) {
    fail(ErrorCode::invalid_argument, "compare: table rows do not match variants");
  }
  for (std::size_t v = 0; v < table.ap.size(); ++v) {
    if (table.ap[v].size() != table.datasets.size()) {
      fail(ErrorCode::invalid_argument,
           "compare: variant " + table.variants[v] + " covers " +
               std::to_string(table.ap[v].size()) + " datasets, expected " +
               std::to_string(table.datasets.size()));
    }
  }

  std::vector<PairComparison> rows;
  for (std::size_t a = 0; a < table.variants.size(); ++a) {
    for (std::size_t b = a + 1; b < table.variants.size(); ++b) {
      PairComparison row;
      row.variant_a = table.variants[a];
      row.variant_b = table.variants[b];
      try {
        WilcoxonResult wr = wilcoxon_signed_rank(table.ap[a], table.ap[b]);
        row.w = wr.w;
        row.p = wr.p;
        row.d = cohens_d(table.ap[a], table.ap[b]);
        row.significant = row.p < 0.05;
        row.status = "ok";
      } catch (const Error& e) {
        row.status = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_comparison_csv(const std::string& path,
                          const std::vector<PairComparison>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + path);
  out << "variant_a,variant_b,w,p,d,significant,status\n";
  for (const PairComparison& row : rows) {
    out << csv_field(row.variant_a) << ',' << csv_field(row.variant_b) << ',';
    if (row.status == "ok") {
      out << format_score(row.w) << ',' << format_score(row.p) << ','
          << format_score(row.d) << ',' << (row.significant ? "true" : "false");
    } else {
      out << ",,,";
    }
    out << ',' << csv_field(row.status) << '\n';
  }
  if (!out) fail(ErrorCode::io, "failed writing " + path);
}

}  // namespace xlt
