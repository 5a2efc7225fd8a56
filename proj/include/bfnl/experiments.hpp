#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bfnl/bounds.hpp"
#include "bfnl/nonlinearity.hpp"
#include "bfnl/parallel.hpp"
#include "bfnl/rational.hpp"
#include "bfnl/rng.hpp"

#include "json.hpp"

namespace bfnl {

// Reproducible experiment definition. Caps are validated against every (n, r)
// pair before any work starts.
struct ExperimentManifest {
  enum class Kind { kConverge, kJoint, kConcentration, kExactOracle };

  Kind kind = Kind::kConverge;
  std::vector<int> n_values;
  int r = 1;
  uint64_t samples = 0;
  uint64_t master_seed = kDefaultMasterSeed;
  std::string output_path;  // row destination; empty = caller-managed
  int jobs = 1;
  int spectrum_cap = kDefaultSpectrumCap;
  uint32_t enum_cap = kDefaultEnumCap;
};

inline void validate(const ExperimentManifest& mf) {
  require(!mf.n_values.empty(), "manifest: no n values");
  require(mf.r >= 0, "manifest: r must be nonnegative");
  for (const int n : mf.n_values) {
    require(n >= 1 && n <= kMaxVars, "manifest: n out of range");
    require(mf.r <= n, "manifest: r exceeds n");
    if (mf.kind == ExperimentManifest::Kind::kExactOracle) {
      require(n <= 4, "manifest: exact oracle needs n <= 4");
      continue;
    }
    require(mf.samples >= 1, "manifest: need at least one sample");
    if (mf.kind == ExperimentManifest::Kind::kJoint) continue;  // bounded per-call
    if (mf.r == 1) {
      require(n <= mf.spectrum_cap, "manifest: n exceeds spectrum cap");
    } else {
      require(rm_dimension(n, mf.r) <= int64_t(mf.enum_cap),
              "manifest: k=" + std::to_string(rm_dimension(n, mf.r)) +
                  " exceeds enumeration cap " + std::to_string(mf.enum_cap));
    }
  }
}

// One Monte Carlo draw. Field identities hold exactly: y = 2^n - 2 nonlinearity
// and ratio = y / lambda.
struct SampleRecord {
  int n = 0;
  int r = 0;
  uint64_t sample_index = 0;
  uint32_t nonlinearity = 0;
  int64_t y = 0;
  double lambda = 0.0;
  double ratio = 0.0;
};

struct ConvergenceSummary {
  int n = 0;
  int r = 0;
  uint64_t m = 0;
  uint64_t master_seed = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_y = 0.0;
  double e_ub = 0.0;        // expectation_upper_bound(n, r)
  double e_ub_ratio = 0.0;  // e_ub / lambda = sqrt(k / C(n,r))
  double frac_y_ge_lambda = 0.0;
};

struct ConvergenceResult {
  std::vector<SampleRecord> records;
  std::vector<ConvergenceSummary> summaries;
};

using RowSink = std::function<void(const SampleRecord&)>;

namespace detail {

inline uint32_t nonlinearity_for_sample(const TruthTable& f, const ExperimentManifest& mf) {
  if (mf.r == 1) return nonlinearity_order1(f, mf.spectrum_cap).value;
  return nonlinearity_exhaustive(f, mf.r, 1, mf.enum_cap).value;
}

// Runs fn(i) for i in [lo, hi) on up to `jobs` threads, pulling indices from a
// shared counter. fn must only write to state owned by index i.
inline void parallel_indices(uint64_t lo, uint64_t hi, int jobs,
                             const std::function<void(uint64_t)>& fn) {
  const uint64_t span = hi > lo ? hi - lo : 1;
  const int workers =
      static_cast<int>(std::min<uint64_t>(uint64_t(effective_jobs(jobs)), span));
  if (workers <= 1) {
    for (uint64_t i = lo; i < hi; ++i) fn(i);
    return;
  }
  std::atomic<uint64_t> next{lo};
  run_workers(size_t(workers), [&](size_t) {
    for (uint64_t i = next.fetch_add(1); i < hi; i = next.fetch_add(1)) fn(i);
  });
}

inline ConvergenceSummary summarize(const std::vector<SampleRecord>& recs, int n,
                                    const ExperimentManifest& mf) {
  ConvergenceSummary s;
  s.n = n;
  s.r = mf.r;
  s.m = recs.size();
  s.master_seed = mf.master_seed;
  const double lambda = lambda_n(n, mf.r);
  double sum = 0.0, sum_y = 0.0;
  s.min_ratio = recs.front().ratio;
  s.max_ratio = recs.front().ratio;
  uint64_t ge = 0;
  for (const auto& rec : recs) {
    sum += rec.ratio;
    sum_y += double(rec.y);
    s.min_ratio = std::min(s.min_ratio, rec.ratio);
    s.max_ratio = std::max(s.max_ratio, rec.ratio);
    if (double(rec.y) >= lambda) ++ge;
  }
  s.mean_ratio = sum / double(recs.size());
  double ss = 0.0;
  for (const auto& rec : recs) {
    const double d = rec.ratio - s.mean_ratio;
    ss += d * d;
  }
  s.std_ratio = recs.size() > 1 ? std::sqrt(ss / double(recs.size() - 1)) : 0.0;
  s.mean_y = sum_y / double(recs.size());
  s.e_ub = expectation_upper_bound(n, mf.r);
  s.e_ub_ratio = s.e_ub / lambda;
  s.frac_y_ge_lambda = double(ge) / double(recs.size());
  return s;
}

}  // namespace detail

// Monte Carlo sweep over the manifest's n values: sample i uses the stream
// (master_seed, i) at every n, so across n the draws are restrictions of one
// underlying function. Rows reach the sink in index order, block by block, so
// partial output survives interruption; results are byte-identical for any
// worker count.
inline ConvergenceResult run_convergence(const ExperimentManifest& mf, const RowSink& sink = {}) {
  require(mf.kind == ExperimentManifest::Kind::kConverge, "run_convergence: wrong manifest kind");
  validate(mf);
  ConvergenceResult out;
  constexpr uint64_t kBlock = 1024;
  for (const int n : mf.n_values) {
    const double lambda = lambda_n(n, mf.r);
    std::vector<SampleRecord> recs(mf.samples);
    for (uint64_t b0 = 0; b0 < mf.samples; b0 += kBlock) {
      const uint64_t b1 = std::min(b0 + kBlock, mf.samples);
      detail::parallel_indices(b0, b1, mf.jobs, [&](uint64_t i) {
        const TruthTable f = sample_uniform(SeedSpec{mf.master_seed, i}, n);
        SampleRecord rec;
        rec.n = n;
        rec.r = mf.r;
        rec.sample_index = i;
        rec.nonlinearity = detail::nonlinearity_for_sample(f, mf);
        rec.y = (int64_t(1) << n) - 2 * int64_t(rec.nonlinearity);
        rec.lambda = lambda;
        rec.ratio = double(rec.y) / lambda;
        recs[i] = rec;
      });
      if (sink)
        for (uint64_t i = b0; i < b1; ++i) sink(recs[i]);
    }
    out.summaries.push_back(detail::summarize(recs, n, mf));
    out.records.insert(out.records.end(), recs.begin(), recs.end());
  }
  return out;
}

inline std::string sample_record_csv_header() { return "n,r,sample_index,nonlinearity,y,lambda,ratio"; }

inline std::string sample_record_to_csv(const SampleRecord& rec) {
  return std::to_string(rec.n) + "," + std::to_string(rec.r) + "," +
         std::to_string(rec.sample_index) + "," + std::to_string(rec.nonlinearity) + "," +
         std::to_string(rec.y) + "," + detail::format_g9(rec.lambda) + "," +
         detail::format_g9(rec.ratio);
}

inline nlohmann::json summary_to_json(const ConvergenceSummary& s) {
  return nlohmann::json{{"n", s.n},
                        {"r", s.r},
                        {"m", s.m},
                        {"master_seed", s.master_seed},
                        {"mean_ratio", s.mean_ratio},
                        {"std_ratio", s.std_ratio},
                        {"min_ratio", s.min_ratio},
                        {"max_ratio", s.max_ratio},
                        {"mean_y", s.mean_y},
                        {"e_ub", s.e_ub},
                        {"e_ub_ratio", s.e_ub_ratio},
                        {"frac_y_ge_lambda", s.frac_y_ge_lambda},
                        {"format_version", kFormatVersion}};
}

// Joint upper-tail measurement for two fixed codewords g, h of degree <= r:
// P[Y_g >= lambda_n and Y_h >= lambda_n], exact over all tables when n <= 4,
// Monte Carlo otherwise. The near-orthogonality hypothesis |<g,h>| <= 2^n/C(n,r)
// under which the joint ceiling applies is checked
// exactly before any work.
struct JointReport {
  int n = 0;
  int r = 0;
  uint64_t m = 0;  // 2^{2^n} in exact mode
  bool exact = false;
  int64_t threshold = 0;  // parity-resolved integer threshold for Y >= lambda
  double estimate = 0.0;
  double mc_sigma = 0.0;  // 0 in exact mode
  double marginal_g = 0.0;
  double marginal_h = 0.0;
  double product_marginals = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

inline JointReport run_joint(const ExperimentManifest& mf, const TruthTable& g,
                             const TruthTable& h) {
  require(mf.kind == ExperimentManifest::Kind::kJoint, "run_joint: wrong manifest kind");
  require(g.vars() == h.vars(), "run_joint: dimension mismatch");
  const int n = g.vars();
  const int r = mf.r;
  const RMCodeSpec spec = RMCodeSpec::make(n, r);
  require(contains(spec, g) && contains(spec, h),
          "run_joint: g and h must have degree <= r");
  const int64_t sp = scalar_product_signs(g, h);
  const int64_t c_nr = binomial(n, r);
  require(static_cast<__int128>(sp < 0 ? -sp : sp) * c_nr <= (static_cast<__int128>(1) << n),
          "run_joint: near-orthogonality hypothesis |<g,h>| <= 2^n/C(n,r) violated");

  JointReport rep;
  rep.n = n;
  rep.r = r;
  const double lambda = lambda_n(n, r);
  rep.threshold = sign_threshold(uint64_t(1) << n, lambda);
  rep.bound = joint_tail_bound(n, r).value;

  if (n <= 4) {
    const uint32_t points = uint32_t(1) << n;
    const uint64_t n_tables = uint64_t(1) << points;
    // d(f,g) <= dmax  <=>  Y_g >= threshold
    const int64_t dmax = (int64_t(points) - rep.threshold) / 2;
    const uint32_t gbits = static_cast<uint32_t>(g.words()[0]);
    const uint32_t hbits = static_cast<uint32_t>(h.words()[0]);
    uint64_t joint = 0, cg = 0, ch = 0;
    for (uint64_t f = 0; f < n_tables; ++f) {
      const bool eg = int64_t(std::popcount(uint32_t(f) ^ gbits)) <= dmax;
      const bool eh = int64_t(std::popcount(uint32_t(f) ^ hbits)) <= dmax;
      cg += eg;
      ch += eh;
      joint += eg && eh;
    }
    rep.m = n_tables;
    rep.exact = true;
    rep.estimate = double(joint) / double(n_tables);
    rep.marginal_g = double(cg) / double(n_tables);
    rep.marginal_h = double(ch) / double(n_tables);
  } else {
    validate(mf);
    const uint64_t m = mf.samples;
    const auto ranges = detail::split_ranges(m, detail::effective_jobs(mf.jobs));
    std::vector<uint64_t> joint(ranges.size(), 0), cg(ranges.size(), 0), ch(ranges.size(), 0);
    detail::run_workers(ranges.size(), [&](size_t w) {
      const auto [lo, hi] = ranges[w];
      for (uint64_t i = lo; i < hi; ++i) {
        const TruthTable f = sample_uniform(SeedSpec{mf.master_seed, i}, n);
        const bool eg = correlation_y(f, g) >= rep.threshold;
        const bool eh = correlation_y(f, h) >= rep.threshold;
        cg[w] += eg;
        ch[w] += eh;
        joint[w] += eg && eh;
      }
    });
    uint64_t js = 0, gs = 0, hs = 0;
    for (size_t w = 0; w < ranges.size(); ++w) {
      js += joint[w];
      gs += cg[w];
      hs += ch[w];
    }
    rep.m = m;
    rep.exact = false;
    rep.estimate = double(js) / double(m);
    rep.marginal_g = double(gs) / double(m);
    rep.marginal_h = double(hs) / double(m);
    rep.mc_sigma = std::sqrt(rep.estimate * (1.0 - rep.estimate) / double(m));
  }
  rep.product_marginals = rep.marginal_g * rep.marginal_h;
  rep.satisfied = rep.estimate <= rep.bound + 3.0 * rep.mc_sigma;
  return rep;
}

inline nlohmann::json joint_report_to_json(const JointReport& rep) {
  return nlohmann::json{{"n", rep.n},
                        {"r", rep.r},
                        {"m", rep.m},
                        {"mode", rep.exact ? "exact" : "mc"},
                        {"threshold", rep.threshold},
                        {"estimate", rep.estimate},
                        {"mc_sigma", rep.mc_sigma},
                        {"marginal_g", rep.marginal_g},
                        {"marginal_h", rep.marginal_h},
                        {"product_marginals", rep.product_marginals},
                        {"bound", rep.bound},
                        {"satisfied", rep.satisfied},
                        {"format_version", kFormatVersion}};
}

inline BoundReport joint_report_to_bound_report(const JointReport& rep) {
  BoundReport br;
  br.name = "joint_tail";
  br.n = rep.n;
  br.r = rep.r;
  br.params = std::string(rep.exact ? "mode=exact" : "mode=mc") + ";m=" + std::to_string(rep.m) +
              ";threshold=" + std::to_string(rep.threshold);
  br.bound_value = rep.bound;
  br.comparison = rep.estimate;
  br.satisfied = rep.satisfied;
  return br;
}

// Concentration-inequality measurement: empirical P[|Y_n - mean| >= theta]
// against the clamped bound 2 exp(-theta^2/2^{n+1}) on the pinned theta grid
// theta_j = j 2^{(n+1)/2}/4, j = 0..12. The empirical mean stands in for
// E[Y_n]; the 3-sigma slack absorbs its estimation error.
struct ConcentrationPoint {
  double theta = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  double mc_sigma = 0.0;
  bool satisfied = false;
};

struct ConcentrationReport {
  int n = 0;
  int r = 0;
  uint64_t m = 0;
  uint64_t master_seed = 0;
  double mean_y = 0.0;
  std::vector<ConcentrationPoint> points;
};

inline std::vector<ConcentrationReport> run_concentration(const ExperimentManifest& mf) {
  require(mf.kind == ExperimentManifest::Kind::kConcentration,
          "run_concentration: wrong manifest kind");
  validate(mf);
  std::vector<ConcentrationReport> out;
  for (const int n : mf.n_values) {
    std::vector<int64_t> ys(mf.samples);
    detail::parallel_indices(0, mf.samples, mf.jobs, [&](uint64_t i) {
      const TruthTable f = sample_uniform(SeedSpec{mf.master_seed, i}, n);
      ys[i] = (int64_t(1) << n) - 2 * int64_t(detail::nonlinearity_for_sample(f, mf));
    });
    int64_t total = 0;  // integer sum: the mean is exact and order-independent
    for (const int64_t y : ys) total += y;
    ConcentrationReport rep;
    rep.n = n;
    rep.r = mf.r;
    rep.m = mf.samples;
    rep.master_seed = mf.master_seed;
    rep.mean_y = double(total) / double(mf.samples);
    for (int j = 0; j <= 12; ++j) {
      ConcentrationPoint pt;
      pt.theta = double(j) * std::exp2(double(n + 1) / 2.0) / 4.0;
      uint64_t cnt = 0;
      for (const int64_t y : ys)
        if (std::fabs(double(y) - rep.mean_y) >= pt.theta) ++cnt;
      pt.empirical = double(cnt) / double(mf.samples);
      pt.bound = concentration_bound(n, pt.theta);
      pt.mc_sigma = std::sqrt(pt.empirical * (1.0 - pt.empirical) / double(mf.samples));
      pt.satisfied = pt.empirical <= pt.bound + 3.0 * pt.mc_sigma;
      rep.points.push_back(pt);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

inline std::vector<BoundReport> concentration_to_bound_reports(const ConcentrationReport& rep) {
  std::vector<BoundReport> out;
  for (const auto& pt : rep.points) {
    BoundReport br;
    br.name = "concentration";
    br.n = rep.n;
    br.r = rep.r;
    br.params = "theta=" + detail::format_g9(pt.theta) + ";m=" + std::to_string(rep.m);
    br.bound_value = pt.bound;
    br.comparison = pt.empirical;
    br.satisfied = pt.satisfied;
    out.push_back(std::move(br));
  }
  return out;
}

inline nlohmann::json concentration_report_to_json(const ConcentrationReport& rep) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : rep.points)
    points.push_back(nlohmann::json{{"theta", pt.theta},
                                    {"empirical", pt.empirical},
                                    {"bound", pt.bound},
                                    {"mc_sigma", pt.mc_sigma},
                                    {"satisfied", pt.satisfied}});
  return nlohmann::json{{"n", rep.n},           {"r", rep.r},
                        {"m", rep.m},           {"master_seed", rep.master_seed},
                        {"mean_y", rep.mean_y}, {"points", points},
                        {"format_version", kFormatVersion}};
}

// Exact distribution of N_r over all 2^{2^n} truth tables (n <= 4).
struct ExactDistribution {
  int n = 0;
  int r = 0;
  uint32_t denominator_log2 = 0;  // log2 of 2^{2^n}
  std::vector<std::pair<uint32_t, uint64_t>> counts;  // N_r value -> #tables

  Rational mean_nr() const {
    int64_t num = 0;
    for (const auto& [v, c] : counts) num += int64_t(v) * int64_t(c);
    return Rational::make(num, int64_t(1) << denominator_log2);
  }

  Rational mean_y() const {
    const Rational m = mean_nr();
    return Rational::make((int64_t(1) << n) * m.den - 2 * m.num, m.den);
  }

  // P[Y >= threshold] with Y = 2^n - 2 N_r, as an exact count ratio.
  double tail_prob_y_ge(double threshold) const {
    uint64_t cnt = 0;
    for (const auto& [v, c] : counts)
      if (double((int64_t(1) << n) - 2 * int64_t(v)) >= threshold) cnt += c;
    return std::ldexp(double(cnt), -int(denominator_log2));
  }
};

// Exhaustive-search oracle: N_r of every table by scanning half the code and
// using d(f, c XOR 1) = 2^n - d(f, c) for the complementary half.
inline ExactDistribution exact_oracle_gray(int n, int r, int jobs = 1) {
  require(n >= 1 && n <= 4, "exact_oracle: n must satisfy 1 <= n <= 4");
  const RMCodeSpec spec = RMCodeSpec::make(n, r);
  const uint32_t points = uint32_t(1) << n;
  const uint64_t n_tables = uint64_t(1) << points;

  ExactDistribution dist;
  dist.n = n;
  dist.r = r;
  dist.denominator_log2 = points;

  if (r == n) {  // RM(n,n) is all of B_n
    dist.counts.emplace_back(0, n_tables);
    return dist;
  }

  // Codewords spanned by the non-constant monomials, one per complement pair.
  const MonomialBasis basis = build_basis(spec);
  std::vector<uint32_t> codewords;
  codewords.reserve(size_t(1) << (spec.k - 1));
  {
    uint32_t cw = 0;
    codewords.push_back(cw);
    const uint64_t half_total = uint64_t(1) << (spec.k - 1);
    std::vector<uint32_t> sub_tables(spec.k - 1);
    for (uint32_t j = 1; j < spec.k; ++j)
      sub_tables[j - 1] = static_cast<uint32_t>(basis.tables[j].words()[0]);
    for (uint64_t rank = 1; rank < half_total; ++rank) {
      cw ^= sub_tables[std::countr_zero(rank)];
      codewords.push_back(cw);
    }
  }

  const uint32_t max_value = points / 2;
  const auto ranges = detail::split_ranges(n_tables, detail::effective_jobs(jobs));
  std::vector<std::vector<uint64_t>> hists(ranges.size(),
                                           std::vector<uint64_t>(max_value + 1, 0));
  detail::run_workers(ranges.size(), [&](size_t w) {
    const auto [lo, hi] = ranges[w];
    auto& hist = hists[w];
    for (uint64_t f = lo; f < hi; ++f) {
      uint32_t best = max_value;
      for (const uint32_t cw : codewords) {
        const uint32_t d = uint32_t(std::popcount(uint32_t(f) ^ cw));
        const uint32_t dd = d < points - d ? d : points - d;
        if (dd < best) {
          best = dd;
          if (best == 0) break;
        }
      }
      hist[best] += 1;
    }
  });
  std::vector<uint64_t> hist(max_value + 1, 0);
  for (const auto& h : hists)
    for (uint32_t v = 0; v <= max_value; ++v) hist[v] += h[v];
  for (uint32_t v = 0; v <= max_value; ++v)
    if (hist[v]) dist.counts.emplace_back(v, hist[v]);
  return dist;
}

// Spectrum-path oracle for r = 1, independent of the Gray search.
inline ExactDistribution exact_oracle_wht(int n, int jobs = 1) {
  require(n >= 1 && n <= 4, "exact_oracle_wht: n must satisfy 1 <= n <= 4");
  const uint32_t points = uint32_t(1) << n;
  const uint64_t n_tables = uint64_t(1) << points;
  const uint32_t max_value = points / 2;
  const auto ranges = detail::split_ranges(n_tables, detail::effective_jobs(jobs));
  std::vector<std::vector<uint64_t>> hists(ranges.size(),
                                           std::vector<uint64_t>(max_value + 1, 0));
  detail::run_workers(ranges.size(), [&](size_t w) {
    const auto [lo, hi] = ranges[w];
    auto& hist = hists[w];
    for (uint64_t f = lo; f < hi; ++f) {
      const TruthTable tt = TruthTable::from_words(n, {f});
      hist[nonlinearity_order1(tt).value] += 1;
    }
  });
  ExactDistribution dist;
  dist.n = n;
  dist.r = 1;
  dist.denominator_log2 = points;
  std::vector<uint64_t> hist(max_value + 1, 0);
  for (const auto& h : hists)
    for (uint32_t v = 0; v <= max_value; ++v) hist[v] += h[v];
  for (uint32_t v = 0; v <= max_value; ++v)
    if (hist[v]) dist.counts.emplace_back(v, hist[v]);
  return dist;
}

// Full-enumeration oracle; for r = 1 the spectrum path is cross-computed and
// the two distributions must agree count for count.
inline ExactDistribution exact_oracle(int n, int r, int jobs = 1) {
  ExactDistribution dist = exact_oracle_gray(n, r, jobs);
  if (r == 1) {
    const ExactDistribution check = exact_oracle_wht(n, jobs);
    require(dist.counts == check.counts, "exact_oracle: spectrum cross-check failed");
  }
  return dist;
}

inline nlohmann::json exact_distribution_to_json(const ExactDistribution& dist) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [v, c] : dist.counts) counts.push_back(nlohmann::json::array({v, c}));
  const Rational mean = dist.mean_nr();
  return nlohmann::json{{"n", dist.n},
                        {"r", dist.r},
                        {"denominator_log2", dist.denominator_log2},
                        {"counts", counts},
                        {"mean_Nr_num", mean.num},
                        {"mean_Nr_den", mean.den},
                        {"format_version", kFormatVersion}};
}

}  // namespace bfnl
