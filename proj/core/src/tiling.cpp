#include "segspec/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>

#include "segspec/error.hpp"
#include "segspec/measure.hpp"

namespace segspec {
namespace {

constexpr const char* kModule = "tiling-1d";
constexpr std::int64_t kMaxCells = std::int64_t{1} << 22;
constexpr std::int64_t kNodeBudget = 4'000'000;
constexpr std::int64_t kFillSteps = 2'000'000;

BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

// --- cyclotomic bookkeeping --------------------------------------------------

struct PrimePower {
  std::int64_t value;
  std::int64_t prime;
};

std::vector<PrimePower> prime_powers_up_to(std::int64_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t m = p * p; m <= limit; m += p) composite[static_cast<std::size_t>(m)] = true;
    for (std::int64_t s = p; s <= limit; s *= p) {
      out.push_back({s, p});
      if (s > limit / p) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
  return out;
}

// Φ_{p^α} divides A(x) iff the residues of A mod p^α are equidistributed
// along each coset of p^{α-1}Z / p^αZ.
bool cyclotomic_prime_power_divides(const std::vector<std::int64_t>& cells, const PrimePower& s) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(s.value), 0);
  for (std::int64_t a : cells) ++counts[static_cast<std::size_t>(a % s.value)];
  const std::int64_t stride = s.value / s.prime;
  for (std::int64_t r = 0; r < stride; ++r) {
    const std::int64_t first = counts[static_cast<std::size_t>(r)];
    for (std::int64_t j = 1; j < s.prime; ++j) {
      if (counts[static_cast<std::size_t>(r + j * stride)] != first) return false;
    }
  }
  return true;
}

// A(ζ_n) = 0 for one (hence every) primitive n-th root of unity.
bool vanishes_at_primitive_root(const std::vector<std::int64_t>& cells, std::int64_t n) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  for (std::int64_t a : cells) ++counts[static_cast<std::size_t>(a % n)];
  std::complex<long double> sum{0.0L, 0.0L};
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::int64_t r = 0; r < n; ++r) {
    if (counts[static_cast<std::size_t>(r)] == 0) continue;
    const long double angle = two_pi * static_cast<long double>(r) / static_cast<long double>(n);
    sum += static_cast<long double>(counts[static_cast<std::size_t>(r)]) *
           std::complex<long double>(std::cos(angle), std::sin(angle));
  }
  return std::abs(sum) <= 1e-9L * static_cast<long double>(cells.size());
}

struct CyclotomicProfile {
  std::vector<PrimePower> s_a;
  bool t1 = false;
  bool t2 = false;
  std::int64_t lcm = 1;
  bool lcm_overflow = false;
  std::size_t distinct_primes_of_size = 0;
};

std::size_t distinct_prime_factors(std::int64_t n) {
  std::size_t count = 0;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ++count;
      while (n % p == 0) n /= p;
    }
  }
  return count + (n > 1 ? 1 : 0);
}

CyclotomicProfile cyclotomic_profile(const std::vector<std::int64_t>& cells, std::int64_t diam) {
  CyclotomicProfile prof;
  for (const auto& s : prime_powers_up_to(2 * diam + 2)) {
    if (cyclotomic_prime_power_divides(cells, s)) prof.s_a.push_back(s);
  }
  // T1: |A| = Π_{s ∈ S_A} Φ_s(1), and Φ_{p^α}(1) = p.
  BigInt product = 1;
  for (const auto& s : prof.s_a) product *= s.prime;
  prof.t1 = product == static_cast<long long>(cells.size());

  // T2: Φ_{s1···sk} | A whenever s1..sk ∈ S_A are powers of distinct primes.
  std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
  for (const auto& s : prof.s_a) by_prime[s.prime].push_back(s.value);
  std::vector<std::vector<std::int64_t>> groups;
  for (auto& [p, vals] : by_prime) groups.push_back(vals);
  prof.t2 = true;
  std::size_t combos = 1;
  for (const auto& g : groups) combos *= (g.size() + 1);
  if (combos > 200000) {
    prof.t2 = false;  // too many combinations to certify; treated as not established
  } else {
    std::vector<std::size_t> choice(groups.size(), 0);  // 0 = prime absent
    for (std::size_t c = 0; c < combos && prof.t2; ++c) {
      std::size_t rem = c;
      std::int64_t n = 1;
      std::size_t used = 0;
      bool overflow = false;
      for (std::size_t i = 0; i < groups.size(); ++i) {
        choice[i] = rem % (groups[i].size() + 1);
        rem /= (groups[i].size() + 1);
        if (choice[i] > 0) {
          const std::int64_t v = groups[i][choice[i] - 1];
          if (n > std::numeric_limits<std::int64_t>::max() / v) overflow = true;
          else n *= v;
          ++used;
        }
      }
      if (used < 2) continue;
      if (overflow || n > (std::int64_t{1} << 26)) {
        prof.t2 = false;
        break;
      }
      if (!vanishes_at_primitive_root(cells, n)) prof.t2 = false;
    }
  }
  for (const auto& s : prof.s_a) {
    const std::int64_t g = std::gcd(prof.lcm, s.value);
    if (prof.lcm / g > std::numeric_limits<std::int64_t>::max() / s.value) {
      prof.lcm_overflow = true;
      break;
    }
    prof.lcm = prof.lcm / g * s.value;
  }
  prof.distinct_primes_of_size = distinct_prime_factors(static_cast<std::int64_t>(cells.size()));
  return prof;
}

// --- complement search on Z_M ------------------------------------------------

class CyclicFill {
 public:
  CyclicFill(const std::vector<std::int64_t>& cells, std::int64_t period, std::int64_t budget)
      : cells_(cells), period_(period), budget_(budget), covered_(static_cast<std::size_t>(period), 0) {}

  // True when A ⊕ B = Z_M with 0 ∈ B.
  bool run() {
    std::vector<char> seen(static_cast<std::size_t>(period_), 0);
    for (std::int64_t a : cells_) {
      auto& slot = seen[static_cast<std::size_t>(a % period_)];
      if (slot) return false;
      slot = 1;
    }
    place(0, +1);
    offsets_.push_back(0);
    return descend(0);
  }

  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  std::int64_t nodes() const { return nodes_; }
  bool exhausted_budget() const { return nodes_ >= budget_; }

 private:
  bool fits(std::int64_t b) const {
    for (std::int64_t a : cells_) {
      if (covered_[static_cast<std::size_t>((b + a) % period_)]) return false;
    }
    return true;
  }

  void place(std::int64_t b, int delta) {
    for (std::int64_t a : cells_) covered_[static_cast<std::size_t>((b + a) % period_)] = static_cast<char>(delta > 0);
  }

  bool descend(std::int64_t from) {
    std::int64_t r = from;
    while (r < period_ && covered_[static_cast<std::size_t>(r)]) ++r;
    if (r == period_) return true;
    if (++nodes_ >= budget_) return false;
    for (std::int64_t a : cells_) {
      const std::int64_t b = ((r - a) % period_ + period_) % period_;
      if (!fits(b)) continue;
      place(b, +1);
      offsets_.push_back(b);
      if (descend(r + 1)) return true;
      offsets_.pop_back();
      place(b, -1);
      if (nodes_ >= budget_) return false;
    }
    return false;
  }

  const std::vector<std::int64_t>& cells_;
  std::int64_t period_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::vector<char> covered_;
  std::vector<std::int64_t> offsets_;
};

// Left-to-right fill of Z starting from an empty half line. Returns the first
// over-covered cell, if any, within the step cap.
std::optional<std::int64_t> canonical_fill_conflict(const std::vector<std::int64_t>& cells, std::int64_t diam) {
  const std::size_t width = static_cast<std::size_t>(diam + 1);
  std::vector<char> ring(width, 0);
  std::int64_t cursor = 0;
  for (std::int64_t step = 0; step < kFillSteps; ++step) {
    // Advance to the leftmost uncovered cell, clearing slots we pass.
    while (ring[static_cast<std::size_t>(cursor % static_cast<std::int64_t>(width))]) {
      ring[static_cast<std::size_t>(cursor % static_cast<std::int64_t>(width))] = 0;
      ++cursor;
    }
    for (std::int64_t a : cells) {
      auto& slot = ring[static_cast<std::size_t>((cursor + a) % static_cast<std::int64_t>(width))];
      if (slot) return cursor + a;
      slot = 1;
    }
  }
  return std::nullopt;
}

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace

// --- IntervalUnion -----------------------------------------------------------

IntervalUnion::IntervalUnion(std::vector<WeightedInterval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const WeightedInterval& a, const WeightedInterval& b) { return a.left < b.left; });
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (!(iv.left < iv.right)) throw Error(kModule, ErrorCode::InvalidArgument, "interval must have left < right");
    if (!(iv.weight > 0.0) || !std::isfinite(iv.weight)) {
      throw Error(kModule, ErrorCode::InvalidArgument, "interval weight must be positive");
    }
    if (i > 0 && intervals_[i - 1].right > iv.left) {
      throw Error(kModule, ErrorCode::InvalidArgument, "intervals overlap");
    }
  }
}

bool IntervalUnion::all_exact() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const WeightedInterval& iv) { return iv.left.is_exact() && iv.right.is_exact(); });
}

double IntervalUnion::measure() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += (iv.right - iv.left).to_double();
  return total;
}

double IntervalUnion::total_weight() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.weight * (iv.right - iv.left).to_double();
  return total;
}

// --- tiling identity ---------------------------------------------------------

TilingIdentityReport tiling_identity_check(const LineSample& sample, double level, std::span<const double> grid,
                                           double window) {
  if (!(window > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "window must be positive");
  if (grid.empty()) throw Error(kModule, ErrorCode::InvalidArgument, "grid must be nonempty");
  for (double x : grid) {
    if (!std::isfinite(x)) throw Error(kModule, ErrorCode::InvalidArgument, "grid points must be finite");
  }
  const auto [gmin_it, gmax_it] = std::minmax_element(grid.begin(), grid.end());
  const double lo = *gmin_it - window - 1.0;
  const double hi = *gmax_it + window + 1.0;

  std::vector<double> pts;
  if (const auto* finite = std::get_if<std::vector<double>>(&sample)) {
    pts = *finite;
  } else {
    const auto& per = std::get<PeriodicPoints>(sample);
    if (!(per.period > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "period must be positive");
    for (double o : per.offsets) {
      const auto n0 = static_cast<std::int64_t>(std::floor((lo - o) / per.period));
      const auto n1 = static_cast<std::int64_t>(std::ceil((hi - o) / per.period));
      for (std::int64_t n = n0; n <= n1; ++n) pts.push_back(o + static_cast<double>(n) * per.period);
    }
  }
  if (pts.empty()) throw Error(kModule, ErrorCode::EmptyCandidate, "no points to test");
  std::sort(pts.begin(), pts.end());

  TilingIdentityReport rep;
  rep.level = level;
  rep.window = window;
  rep.grid.assign(grid.begin(), grid.end());

  // Points per unit interval; the 1e-9 shave keeps a rounded period from
  // squeezing an extra point into [x, x + 1).
  std::size_t j = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (j < pts.size() && pts[j] < pts[i] + 1.0 - 1e-9) ++j;
    rep.density_max = std::max(rep.density_max, static_cast<double>(j - i));
  }

  std::size_t max_terms = 0;
  for (double x : grid) {
    const auto first = std::lower_bound(pts.begin(), pts.end(), x - window);
    const auto last = std::upper_bound(pts.begin(), pts.end(), x + window);
    double s = 0.0;
    for (auto it = first; it != last; ++it) {
      const double v = sinc(x - *it);
      s += v * v;
    }
    max_terms = std::max(max_terms, static_cast<std::size_t>(last - first));
    rep.sums.push_back(s);
    rep.residuals.push_back(std::fabs(s - level));
  }
  rep.max_residual = *std::max_element(rep.residuals.begin(), rep.residuals.end());
  const double pi2 = std::numbers::pi * std::numbers::pi;
  rep.truncation_bound = 2.0 * rep.density_max * (1.0 / window + 1.0 / (window * window)) / pi2;
  rep.evaluation_slack = 1e-12 + 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(max_terms) *
                                     std::max(1.0, std::fabs(level));
  rep.consistent = rep.max_residual <= rep.truncation_bound + rep.evaluation_slack;
  return rep;
}

void write_identity_csv(std::ostream& out, const TilingIdentityReport& report) {
  const auto old = out.precision(17);
  out << "x,S,residual\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out << report.grid[i] << ',' << report.sums[i] << ',' << report.residuals[i] << '\n';
  }
  out.precision(old);
}

std::string_view to_string(TilingStatus s) noexcept {
  switch (s) {
    case TilingStatus::tiles: return "tiles";
    case TilingStatus::does_not_tile: return "does_not_tile";
    case TilingStatus::unknown: return "unknown";
  }
  return "unknown";
}

// --- tiling decision ---------------------------------------------------------

std::optional<bool> two_interval_closed_form(const IntervalUnion& u) {
  const auto& iv = u.intervals();
  if (iv.size() != 2 || !u.all_exact()) return std::nullopt;
  const Rational len0 = iv[0].right.rational() - iv[0].left.rational();
  const Rational len1 = iv[1].right.rational() - iv[1].left.rational();
  if (len0 != len1) return std::nullopt;
  const Rational ratio = (iv[1].left.rational() - iv[0].right.rational()) / len0;
  return ratio >= 0 && den(ratio) == 1;
}

TilingDecision tiles_line(const IntervalUnion& u, std::int64_t period_bound) {
  if (u.empty()) throw Error(kModule, ErrorCode::EmptyCandidate, "empty interval union");
  if (period_bound < 1) throw Error(kModule, ErrorCode::InvalidArgument, "period bound must be >= 1");
  if (!u.all_exact()) throw Error(kModule, ErrorCode::NonRationalEndpoints, "tiling requires rational endpoints");
  const double w0 = u.intervals().front().weight;
  for (const auto& iv : u.intervals()) {
    if (std::fabs(iv.weight - w0) > 1e-12 * w0) {
      throw Error(kModule, ErrorCode::NonUniformWeights, "tiling is decided for sets; weights must agree");
    }
  }

  // Merge intervals that touch; tiling is a property of the set.
  std::vector<std::pair<Rational, Rational>> runs;
  for (const auto& iv : u.intervals()) {
    const Rational l = iv.left.rational();
    const Rational r = iv.right.rational();
    if (!runs.empty() && runs.back().second == l) {
      runs.back().second = r;
    } else {
      runs.emplace_back(l, r);
    }
  }

  TilingDecision d;
  d.period_bound_used = period_bound;
  d.closed_form = two_interval_closed_form(u);
  d.origin = runs.front().first;

  // Coarsest grid containing every endpoint.
  BigInt q = 1;
  for (const auto& [l, r] : runs) {
    q = lcm_big(q, den(l - d.origin));
    q = lcm_big(q, den(r - d.origin));
  }
  BigInt g = 0;
  std::vector<std::pair<BigInt, BigInt>> int_runs;
  for (const auto& [l, r] : runs) {
    const Rational lq = (l - d.origin) * Rational(q);
    const Rational rq = (r - d.origin) * Rational(q);
    int_runs.emplace_back(num(lq), num(rq));
    g = boost::multiprecision::gcd(g, num(lq));
    g = boost::multiprecision::gcd(g, num(rq));
  }
  d.cell_length = Rational(g, q);
  const BigInt diam_big = int_runs.back().second / g - 1;
  if (diam_big + 1 > kMaxCells) {
    throw Error(kModule, ErrorCode::InvalidArgument, "interval union is too fine for the cell search");
  }
  const auto diam = diam_big.convert_to<std::int64_t>();
  std::vector<std::int64_t> run_lengths;
  std::vector<std::int64_t> run_starts;
  for (const auto& [l, r] : int_runs) {
    const auto a = (l / g).convert_to<std::int64_t>();
    const auto b = (r / g).convert_to<std::int64_t>();
    run_starts.push_back(a);
    run_lengths.push_back(b - a);
    for (std::int64_t c = a; c < b; ++c) d.cells.push_back(c);
  }
  const auto n = static_cast<std::int64_t>(d.cells.size());

  auto finish_negative = [&](std::string certificate) {
    d.status = TilingStatus::does_not_tile;
    d.certificate = std::move(certificate);
    if (const auto cell = canonical_fill_conflict(d.cells, diam)) {
      d.witness = d.origin + (Rational(*cell) + Rational(1, 2)) * d.cell_length;
    } else {
      d.status = TilingStatus::unknown;
      d.certificate += "/no-fill-witness";
    }
  };
  auto finalize = [&]() -> TilingDecision {
    if (d.closed_form && d.status != TilingStatus::unknown) {
      d.closed_form_agrees = (*d.closed_form) == (d.status == TilingStatus::tiles);
    }
    return d;
  };

  // Every translate contributes runs of the same length a, so ℤ is partitioned
  // into length-a blocks: a coset of aℤ. With a > 1 on the coarsest grid some
  // run start is off that coset.
  const bool uniform_runs = std::all_of(run_lengths.begin(), run_lengths.end(),
                                        [&](std::int64_t len) { return len == run_lengths.front(); });
  if (uniform_runs && run_lengths.front() > 1) {
    const std::int64_t a = run_lengths.front();
    if (std::any_of(run_starts.begin(), run_starts.end(), [&](std::int64_t s) { return s % a != 0; })) {
      finish_negative("uniform-run-misalignment");
      return finalize();
    }
  }

  const CyclotomicProfile prof = cyclotomic_profile(d.cells, diam);
  if (!prof.t1) {
    finish_negative("coven-meyerowitz-T1");
    return finalize();
  }
  if (!prof.t2 && prof.distinct_primes_of_size <= 2) {
    finish_negative("coven-meyerowitz-T2");
    return finalize();
  }

  std::vector<std::int64_t> periods;
  const std::int64_t max_period = period_bound * (diam + 1);
  for (std::int64_t m = n; m <= max_period; m += n) periods.push_back(m);
  if (prof.t2 && !prof.lcm_overflow && prof.lcm > max_period && prof.lcm <= kMaxCells) periods.push_back(prof.lcm);

  std::int64_t budget = kNodeBudget;
  for (std::int64_t m : periods) {
    if (budget <= 0) break;
    if (m < diam + 1 && m % n != 0) continue;
    CyclicFill fill(d.cells, m, budget);
    const bool ok = fill.run();
    d.search_nodes += fill.nodes();
    budget -= fill.nodes();
    if (!ok) continue;

    TilingComplement comp;
    comp.cell_offsets = fill.offsets();
    std::sort(comp.cell_offsets.begin(), comp.cell_offsets.end());
    comp.period_cells = m;
    for (std::int64_t b : comp.cell_offsets) comp.offsets.push_back(Rational(b) * d.cell_length);
    comp.period = Rational(m) * d.cell_length;
    d.complement = std::move(comp);
    d.status = TilingStatus::tiles;
    d.certificate = "complement-found";
    return finalize();
  }
  d.status = TilingStatus::unknown;
  d.certificate = "search-exhausted";
  return finalize();
}

// --- gap statistics ----------------------------------------------------------

GapComplexity gap_complexity(std::span<const double> pts, double quantum) {
  if (pts.size() < 2) throw Error(kModule, ErrorCode::InvalidArgument, "need at least two points");
  if (!(quantum > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "quantum must be positive");
  std::vector<double> gaps;
  gaps.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] < pts[i - 1]) throw Error(kModule, ErrorCode::InvalidArgument, "points must be sorted");
    gaps.push_back(pts[i] - pts[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  GapComplexity out;
  out.quantum = quantum;
  out.gap_count = gaps.size();
  double cluster_start = gaps.front();
  double cluster_sum = 0.0;
  std::size_t cluster_n = 0;
  for (double gap : gaps) {
    if (gap - cluster_start > quantum) {
      out.representatives.push_back(cluster_sum / static_cast<double>(cluster_n));
      out.counts.push_back(cluster_n);
      cluster_start = gap;
      cluster_sum = 0.0;
      cluster_n = 0;
    }
    cluster_sum += gap;
    ++cluster_n;
  }
  out.representatives.push_back(cluster_sum / static_cast<double>(cluster_n));
  out.counts.push_back(cluster_n);
  return out;
}

PeriodDetection detect_period(std::span<const double> pts, double max_period, double quantum) {
  if (!(max_period > 0.0) || !(quantum > 0.0)) {
    throw Error(kModule, ErrorCode::InvalidArgument, "max_period and quantum must be positive");
  }
  PeriodDetection out;
  out.quantum = quantum;
  if (pts.size() < 2) throw Error(kModule, ErrorCode::InsufficientSpan, "need at least two points");
  out.span = pts.back() - pts.front();
  if (out.span < 3.0 * max_period) {
    throw Error(kModule, ErrorCode::InsufficientSpan, "data must span at least three times max_period");
  }
  const double lo = pts.front();
  const double hi = pts.back();
  auto contains = [&](double x) {
    const auto it = std::lower_bound(pts.begin(), pts.end(), x - quantum);
    return it != pts.end() && *it <= x + quantum;
  };
  for (std::size_t j = 1; j < pts.size(); ++j) {
    const double period = pts[j] - lo;
    if (period <= quantum) continue;
    if (period > max_period + quantum) break;
    bool ok = true;
    for (double x : pts) {
      if (x + period <= hi + quantum && !contains(x + period)) {
        ok = false;
        break;
      }
      if (x - period >= lo - quantum && !contains(x - period)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.period = period;
      out.twice_period_integer = std::fabs(2.0 * period - std::nearbyint(2.0 * period)) <= 2.0 * quantum;
      return out;
    }
  }
  return out;
}

}  // namespace segspec
