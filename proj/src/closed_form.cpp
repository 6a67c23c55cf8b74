#include "tcm/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "tcm/errors.hpp"

namespace tcm {

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::aa: return "aa";
    case Branch::ab: return "ab";
    case Branch::ba: return "ba";
    case Branch::bb: return "bb";
  }
  return "?";
}

std::string_view to_string(Convention c) noexcept {
  return c == Convention::paper_literal ? "literal" : "consistent";
}

Convention parse_convention(std::string_view text) {
  if (text == "literal" || text == "paper_literal") return Convention::paper_literal;
  if (text == "consistent") return Convention::consistent;
  throw ConfigurationError("unknown convention '" + std::string(text) + "' (expected literal or consistent)");
}

Complex& BranchAmplitudes::operator[](Branch b) noexcept {
  switch (b) {
    case Branch::aa: return aa;
    case Branch::ab: return ab;
    case Branch::ba: return ba;
    default: return bb;
  }
}

const Complex& BranchAmplitudes::operator[](Branch b) const noexcept {
  return const_cast<BranchAmplitudes&>(*this)[b];
}

double BranchAmplitudes::probability() const noexcept {
  return std::norm(aa) + std::norm(ab) + std::norm(ba) + std::norm(bb);
}

void EvolutionParams::validate() const {
  if (!(gt >= 0.0) || !std::isfinite(gt)) throw ConfigurationError("gt must be finite and >= 0");
  if (mode_count < 1) throw ConfigurationError("mode count must be >= 1");
}

AmplitudeSet::AmplitudeSet(double gt, Convention convention, ConfigGrid grid, std::vector<BranchAmplitudes> entries)
    : gt_(gt), convention_(convention), grid_(std::move(grid)), entries_(std::move(entries)) {
  if (entries_.size() != grid_.size()) throw ConfigurationError("amplitude set size does not match its grid");
}

Complex AmplitudeSet::amplitude(Branch branch, const FockConfig& config) const noexcept {
  const auto index = grid_.index_of(config);
  return index ? entries_[*index][branch] : Complex{};
}

double AmplitudeSet::norm() const noexcept {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.probability();
  return sum;
}

namespace {

constexpr Complex kMinusI{0.0, -1.0};

double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

// x1 = w1 p1 (cos(f1 gt) - 1), x2 = w2 (p2 (cos(f2 gt) - 1) + 1),
// x3 = x4 = w3 p3 sin(f3 gt). Both the single-mode and the multimode printed
// formulas fit this shape.
struct LiteralShape {
  Complex w1, w2, w3;
  double p1 = 0, p2 = 0, p3 = 0;
  double f1 = 0, f2 = 0, f3 = 0;

  bool vanishes() const { return w1 == Complex{} && w2 == Complex{} && w3 == Complex{}; }

  BranchAmplitudes evaluate(double gt) const {
    const Complex x1 = w1 * (p1 * (std::cos(f1 * gt) - 1.0));
    const Complex x2 = w2 * (p2 * (std::cos(f2 * gt) - 1.0) + 1.0);
    const Complex x3 = w3 * (p3 * std::sin(f3 * gt));
    return {.aa = x1, .ab = kMinusI * x3, .ba = kMinusI * x3, .bb = x2};
  }
};

LiteralShape single_mode_shape(std::size_t n, const FieldDistribution& field) {
  const double dn = static_cast<double>(n);
  const auto ni = static_cast<long long>(n);
  LiteralShape s;
  s.w1 = field.amplitude_or_zero(ni + 2);
  s.w2 = field.amplitude_or_zero(ni);
  s.w3 = field.amplitude_or_zero(ni + 1);
  s.p1 = std::sqrt((dn + 1.0) * (dn + 2.0)) / (2.0 * dn + 3.0);
  s.f1 = std::sqrt(4.0 * dn + 6.0);
  // At n = 0 the printed x2 reduces to c_0: the cosine term carries a factor n.
  if (n > 0) {
    s.p2 = dn / (2.0 * dn - 1.0);
    s.f2 = std::sqrt(4.0 * dn - 2.0);
  }
  s.p3 = std::sqrt((dn + 1.0) / (4.0 * dn + 2.0));
  s.f3 = std::sqrt(4.0 * dn + 2.0);
  return s;
}

// Pairwise sum over i < j of (sqrt(n_i + a) + sqrt(n_j + b))^2 + (sqrt(n_i + b) + sqrt(n_j + a))^2.
// Square roots of negative shifted occupations are taken as zero.
double pair_sum(std::span<const std::size_t> n, double a, double b) {
  double total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double ni = static_cast<double>(n[i]);
    for (std::size_t j = i + 1; j < n.size(); ++j) {
      const double nj = static_cast<double>(n[j]);
      const double first = sqrt_clamped(ni + a) + sqrt_clamped(nj + b);
      const double second = sqrt_clamped(ni + b) + sqrt_clamped(nj + a);
      total += first * first + second * second;
    }
  }
  return total;
}

LiteralShape multimode_shape(std::span<const std::size_t> n, std::span<const FieldDistribution> fields) {
  LiteralShape s;
  s.w1 = s.w2 = s.w3 = Complex{1.0, 0.0};
  double sum0 = 0.0;
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const auto nk = static_cast<long long>(n[k]);
    s.w1 *= fields[k].amplitude_or_zero(nk + 2);
    s.w2 *= fields[k].amplitude_or_zero(nk);
    s.w3 *= fields[k].amplitude_or_zero(nk + 1);
    const double dn = static_cast<double>(n[k]);
    sum0 += std::sqrt(dn);
    sum1 += std::sqrt(dn + 1.0);
    sum2 += std::sqrt(dn + 2.0);
  }
  if (s.vanishes()) return s;

  const double d1 = pair_sum(n, 2.0, 1.0);
  const double d2 = pair_sum(n, 0.0, -1.0);
  const double d3 = pair_sum(n, 1.0, 0.0);
  s.p1 = 2.0 * sum1 * sum2 / d1;
  s.f1 = std::sqrt(d1);
  // All-vacuum configs make both the x2 numerator and denominator vanish; the
  // cosine term then drops out and x2 is the bare weight.
  if (sum0 > 0.0) {
    s.p2 = 2.0 * sum0 * sum0 / d2;
    s.f2 = std::sqrt(d2);
  }
  s.p3 = sum1 / std::sqrt(d3);
  s.f3 = std::sqrt(d3);
  return s;
}

BranchAmplitudes collective(double alpha2, double beta2, double gt) {
  const double omega2 = alpha2 + beta2;
  const double omega = std::sqrt(omega2);
  const double alpha = std::sqrt(alpha2);
  const double c = std::cos(omega * gt);
  const double s = std::sin(omega * gt);
  const Complex emitted = kMinusI * (alpha * s / omega / std::numbers::sqrt2);
  return {.aa = (beta2 + alpha2 * c) / omega2,
          .ab = emitted,
          .ba = emitted,
          .bb = alpha * std::sqrt(beta2) * (c - 1.0) / omega2};
}

// Squared norms of A^dag |n> and (A^dag)^2 |n> with A = sum_k a_k.
std::pair<double, double> creation_norms(std::span<const std::size_t> n) {
  double one = 0.0;
  double two = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double nk = static_cast<double>(n[k]);
    one += nk + 1.0;
    two += (nk + 1.0) * (nk + 2.0);
    for (std::size_t l = k + 1; l < n.size(); ++l) two += 4.0 * (nk + 1.0) * (static_cast<double>(n[l]) + 1.0);
  }
  return {one, two};
}

std::vector<TruncationWindow> consistent_windows(std::span<const FieldDistribution> fields) {
  std::vector<TruncationWindow> windows;
  for (const auto& f : fields) windows.emplace_back(f.window().n_min, f.window().n_max + 2);
  return windows;
}

// Calls visit(occupations, multiplicity) for every nondecreasing sequence of
// length m inside the window; multiplicity counts its distinct permutations.
// bound[n - n_min] caps the magnitude a single mode at occupation n can
// contribute; sequences whose product of bounds is below `cutoff` are skipped
// (the discarded weight is far below every tolerance in use).
template <class Visit>
void for_each_sorted_config(std::size_t m, TruncationWindow window, std::span<const double> bound, double cutoff,
                            Visit&& visit) {
  const std::size_t width = window.size();
  // suffix_max[i] = max bound over occupations >= n_min + i
  std::vector<double> suffix_max(width + 1, 0.0);
  for (std::size_t i = width; i-- > 0;) suffix_max[i] = std::max(suffix_max[i + 1], bound[i]);
  std::vector<double> factorial(m + 1, 1.0);
  for (std::size_t i = 1; i <= m; ++i) factorial[i] = factorial[i - 1] * static_cast<double>(i);

  std::vector<std::size_t> n(m);
  auto recurse = [&](auto&& self, std::size_t k, std::size_t from, double partial) -> void {
    if (k == m) {
      double multiplicity = factorial[m];
      std::size_t run = 1;
      for (std::size_t j = 1; j <= m; ++j) {
        if (j < m && n[j] == n[j - 1]) {
          ++run;
        } else {
          multiplicity /= factorial[run];
          run = 1;
        }
      }
      visit(std::span<const std::size_t>(n), multiplicity);
      return;
    }
    const double rest = std::pow(suffix_max[from], static_cast<double>(m - k - 1));
    for (std::size_t i = from; i < width; ++i) {
      const double next = partial * bound[i];
      if (next * rest < cutoff) continue;
      n[k] = window.n_min + i;
      self(self, k + 1, i, next);
    }
  };
  recurse(recurse, 0, 0, 1.0);
}

// Largest |c_{n+s}| over the shifts |s| <= 2 that the closed forms touch.
std::vector<double> shifted_bound(const FieldDistribution& field, TruncationWindow window) {
  std::vector<double> bound(window.size(), 0.0);
  for (std::size_t i = 0; i < window.size(); ++i) {
    const auto n = static_cast<long long>(window.n_min + i);
    for (long long s = -2; s <= 2; ++s) bound[i] = std::max(bound[i], std::abs(field.amplitude_or_zero(n + s)));
  }
  return bound;
}

constexpr double kPruneCutoff = 1e-13;

void accumulate(TracedSums& sums, const BranchAmplitudes& a, double multiplicity) {
  const Eigen::Vector4cd v(a.aa, a.ab, a.ba, a.bb);
  sums.rho.noalias() += multiplicity * (v * v.adjoint());
  sums.excited += multiplicity * std::norm(a.aa);
  sums.ground += multiplicity * std::norm(a.bb);
}

std::vector<TruncationWindow> literal_windows(std::span<const FieldDistribution> fields) {
  std::vector<TruncationWindow> windows;
  for (const auto& f : fields) {
    const auto& w = f.window();
    windows.emplace_back(w.n_min >= 2 ? w.n_min - 2 : 0, w.n_max);
  }
  return windows;
}

}  // namespace

BranchAmplitudes single_mode_literal(std::size_t n, double gt, const FieldDistribution& field) {
  return single_mode_shape(n, field).evaluate(gt);
}

BranchAmplitudes single_mode_consistent(std::size_t n_init, double gt) {
  const double dn = static_cast<double>(n_init);
  return collective(2.0 * (dn + 1.0), 2.0 * (dn + 2.0), gt);
}

BranchAmplitudes multimode_literal(const FockConfig& config, double gt, std::span<const FieldDistribution> fields) {
  if (config.mode_count() != fields.size()) throw ConfigurationError("config and field mode counts differ");
  if (config.mode_count() < 2) {
    throw UnsupportedConfiguration(
        "multimode closed form needs at least two modes (the pairwise sums are empty for m = 1); "
        "use the single-mode formulas instead");
  }
  return multimode_shape(config.occupations, fields).evaluate(gt);
}

BranchAmplitudes multimode_consistent(const FockConfig& config, double gt) {
  if (config.mode_count() < 1) throw ConfigurationError("configuration has no modes");
  const auto [one, two] = creation_norms(config.occupations);
  return collective(2.0 * one, 2.0 * two / one, gt);
}

ClosedFormEvolution::ClosedFormEvolution(std::vector<FieldDistribution> fields, Convention convention,
                                         FormulaSet formulas)
    : fields_(std::move(fields)), convention_(convention) {
  if (fields_.empty()) throw ConfigurationError("at least one field mode is required");
  const bool multimode = fields_.size() > 1;
  if (convention_ == Convention::paper_literal) {
    if (formulas == FormulaSet::multimode && !multimode) {
      throw UnsupportedConfiguration(
          "the literal multimode formulas are undefined for a single mode; use the single-mode formulas");
    }
    if (formulas == FormulaSet::single_mode && multimode) {
      throw UnsupportedConfiguration("the single-mode formulas apply to one mode only");
    }
  }

  symmetric_ = multimode && std::ranges::all_of(fields_, [&](const FieldDistribution& f) {
                 return f.window() == fields_[0].window() &&
                        std::ranges::equal(f.amplitudes(), fields_[0].amplitudes());
               });

  const auto windows = convention_ == Convention::consistent ? consistent_windows(fields_) : literal_windows(fields_);
  double entries = 1.0;
  for (const auto& w : windows) entries *= static_cast<double>(w.size());
  if (entries > static_cast<double>(kMaxGridEntries)) {
    if (!symmetric_) {
      throw ConfigurationError("closed-form grid of " + std::to_string(static_cast<long long>(entries)) +
                               " configurations is too large; reduce the modes or the truncation window");
    }
    return;
  }
  if (convention_ == Convention::consistent) {
    prepare_consistent();
  } else {
    prepare_literal(multimode);
  }
  materialized_ = true;
}

void ClosedFormEvolution::require_grid() const {
  if (!materialized_) {
    throw ConfigurationError("amplitude grid too large to materialize; only field-traced sums are available");
  }
}

void ClosedFormEvolution::prepare_literal(bool multimode) {
  grid_ = ConfigGrid(literal_windows(fields_));
  std::vector<std::size_t> n(fields_.size());
  for (std::size_t index = 0; index < grid_.size(); ++index) {
    grid_.decode(index, n);
    const LiteralShape s = multimode ? multimode_shape(n, fields_) : single_mode_shape(n[0], fields_[0]);
    if (s.vanishes()) continue;
    literal_.push_back({index, s.w1, s.w2, s.w3, s.p1, s.p2, s.p3, s.f1, s.f2, s.f3});
  }
}

void ClosedFormEvolution::prepare_consistent() {
  std::vector<TruncationWindow> source_windows;
  std::vector<TruncationWindow> target_windows;
  for (const auto& f : fields_) {
    source_windows.push_back(f.window());
    target_windows.emplace_back(f.window().n_min, f.window().n_max + 2);
  }
  const ConfigGrid source(source_windows);
  grid_ = ConfigGrid(target_windows);
  const std::size_t m = fields_.size();

  std::vector<std::size_t> n(m);
  for (std::size_t s = 0; s < source.size(); ++s) {
    source.decode(s, n);
    Complex weight{1.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) weight *= fields_[k].at(n[k]);
    if (weight == Complex{}) continue;

    const std::size_t index = *grid_.index_of(n);
    const auto [one, two] = creation_norms(n);
    consistent_.push_back({index, weight, 2.0 * one, 2.0 * two / one, spread_.size()});

    const double inv_one = 1.0 / std::sqrt(one);
    const double inv_two = 1.0 / std::sqrt(two);
    for (std::size_t k = 0; k < m; ++k) {
      spread_.emplace_back(index + grid_.stride(k), std::sqrt(static_cast<double>(n[k]) + 1.0) * inv_one);
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double nk = static_cast<double>(n[k]);
      for (std::size_t l = k; l < m; ++l) {
        const double coefficient = k == l ? std::sqrt((nk + 1.0) * (nk + 2.0))
                                          : 2.0 * std::sqrt((nk + 1.0) * (static_cast<double>(n[l]) + 1.0));
        spread_.emplace_back(index + grid_.stride(k) + grid_.stride(l), coefficient * inv_two);
      }
    }
  }
}

void ClosedFormEvolution::evaluate_literal(double gt, std::vector<BranchAmplitudes>& out) const {
  for (const auto& t : literal_) {
    const LiteralShape s{t.w1, t.w2, t.w3, t.p1, t.p2, t.p3, t.f1, t.f2, t.f3};
    out[t.index] = s.evaluate(gt);
  }
}

void ClosedFormEvolution::evaluate_consistent(double gt, std::vector<BranchAmplitudes>& out) const {
  const std::size_t m = fields_.size();
  const std::size_t per_term = m + m * (m + 1) / 2;
  for (const auto& t : consistent_) {
    const BranchAmplitudes a = collective(t.alpha2, t.beta2, gt);
    out[t.index].aa += t.weight * a.aa;
    const Complex emitted = t.weight * a.ab;
    const Complex doubly = t.weight * a.bb;
    const auto* spread = spread_.data() + t.spread_offset;
    for (std::size_t k = 0; k < m; ++k) {
      auto& target = out[spread[k].first];
      target.ab += emitted * spread[k].second;
      target.ba += emitted * spread[k].second;
    }
    for (std::size_t p = m; p < per_term; ++p) out[spread[p].first].bb += doubly * spread[p].second;
  }
}

AmplitudeSet ClosedFormEvolution::at(double gt) const {
  EvolutionParams{gt, fields_.size()}.validate();
  require_grid();
  std::vector<BranchAmplitudes> entries(grid_.size());
  if (convention_ == Convention::consistent) {
    evaluate_consistent(gt, entries);
  } else {
    evaluate_literal(gt, entries);
  }
  return AmplitudeSet(gt, convention_, grid_, std::move(entries));
}

std::vector<TracedSums> ClosedFormEvolution::traced(std::span<const double> gts) const {
  for (double gt : gts) EvolutionParams{gt, fields_.size()}.validate();
  if (symmetric_) {
    return convention_ == Convention::consistent ? traced_symmetric_consistent(gts) : traced_symmetric_literal(gts);
  }
  std::vector<TracedSums> out;
  out.reserve(gts.size());
  for (double gt : gts) {
    const AmplitudeSet set = at(gt);
    TracedSums sums;
    sums.gt = gt;
    for (const auto& e : set.entries()) accumulate(sums, e, 1.0);
    out.push_back(sums);
  }
  return out;
}

std::vector<TracedSums> ClosedFormEvolution::traced_symmetric_literal(std::span<const double> gts) const {
  std::vector<TracedSums> out(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) out[g].gt = gts[g];
  const std::size_t m = fields_.size();
  const TruncationWindow window = literal_windows(fields_)[0];
  const auto bound = shifted_bound(fields_[0], window);
  for_each_sorted_config(m, window, bound, kPruneCutoff, [&](std::span<const std::size_t> n, double multiplicity) {
    const LiteralShape shape = multimode_shape(n, fields_);
    if (shape.vanishes()) return;
    for (std::size_t g = 0; g < gts.size(); ++g) accumulate(out[g], shape.evaluate(gts[g]), multiplicity);
  });
  return out;
}

std::vector<TracedSums> ClosedFormEvolution::traced_symmetric_consistent(std::span<const double> gts) const {
  std::vector<TracedSums> out(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) out[g].gt = gts[g];
  const std::size_t m = fields_.size();
  const FieldDistribution& field = fields_[0];
  const TruncationWindow target = consistent_windows(fields_)[0];
  const auto bound = shifted_bound(field, target);

  // Every final configuration f collects the aa amplitude of source f, the
  // one-photon manifold of sources f - e_k and the two-photon manifold of
  // sources f - e_k - e_l. Each term below is one such source.
  struct Source {
    Branch channel;
    Complex weight;  // initial weight times spread coefficient
    const std::vector<BranchAmplitudes>* evolution;  // per time point
  };
  // The collective amplitudes depend on the source only through the integer
  // pair (one, two), which repeats across many configurations.
  std::unordered_map<std::uint64_t, std::vector<BranchAmplitudes>> cache;
  std::vector<Source> sources;
  // c_n over the target window; zero outside the field's own window.
  std::vector<Complex> amp(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    amp[i] = field.amplitude_or_zero(static_cast<long long>(target.n_min + i));
  }

  // With u_k = n_k + 1: one = sum u, two = sum u + 2 (sum u)^2 - sum u^2.
  auto add_source = [&](Branch channel, Complex weight, double coefficient, double s1, double s2) {
    if (weight == Complex{}) return;
    const double one = s1;
    const double two = s1 + 2.0 * s1 * s1 - s2;
    if (channel == Branch::ab) coefficient /= std::sqrt(one);
    if (channel == Branch::bb) coefficient /= std::sqrt(two);
    const auto key = (static_cast<std::uint64_t>(std::llround(one)) << 40) | static_cast<std::uint64_t>(std::llround(two));
    auto [it, inserted] = cache.try_emplace(key);
    if (inserted) {
      it->second.reserve(gts.size());
      for (double gt : gts) it->second.push_back(collective(2.0 * one, 2.0 * two / one, gt));
    }
    sources.push_back({channel, weight * coefficient, &it->second});
  };
  auto c = [&](std::size_t n) { return amp[n - target.n_min]; };

  for_each_sorted_config(m, target, bound, kPruneCutoff, [&](std::span<const std::size_t> f, double multiplicity) {
    sources.clear();
    Complex weight{1.0, 0.0};
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      weight *= c(f[k]);
      const double u = static_cast<double>(f[k]) + 1.0;
      s1 += u;
      s2 += u * u;
    }
    add_source(Branch::aa, weight, 1.0, s1, s2);

    // Weight of f with mode k lowered by `down` photons (and mode l by one more).
    auto lowered = [&](std::size_t k, std::size_t down, std::size_t l) {
      Complex w{1.0, 0.0};
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t n = f[j];
        if (j == k) n -= down;
        if (j == l) n -= 1;
        if (n < target.n_min) return Complex{};
        w *= c(n);
      }
      return w;
    };
    for (std::size_t k = 0; k < m; ++k) {
      if (f[k] == 0) continue;
      const double u = static_cast<double>(f[k]) + 1.0;
      add_source(Branch::ab, lowered(k, 1, m), std::sqrt(static_cast<double>(f[k])), s1 - 1.0,
                 s2 - u * u + (u - 1.0) * (u - 1.0));
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double fk = static_cast<double>(f[k]);
      const double uk = fk + 1.0;
      if (f[k] >= 2) {
        add_source(Branch::bb, lowered(k, 2, m), std::sqrt((fk - 1.0) * fk), s1 - 2.0,
                   s2 - uk * uk + (uk - 2.0) * (uk - 2.0));
      }
      for (std::size_t l = k + 1; l < m; ++l) {
        if (f[k] == 0 || f[l] == 0) continue;
        const double ul = static_cast<double>(f[l]) + 1.0;
        add_source(Branch::bb, lowered(k, 1, l), 2.0 * std::sqrt(fk * static_cast<double>(f[l])), s1 - 2.0,
                   s2 - uk * uk - ul * ul + (uk - 1.0) * (uk - 1.0) + (ul - 1.0) * (ul - 1.0));
      }
    }
    if (sources.empty()) return;

    for (std::size_t g = 0; g < gts.size(); ++g) {
      BranchAmplitudes total;
      for (const auto& s : sources) {
        const BranchAmplitudes& a = (*s.evolution)[g];
        switch (s.channel) {
          case Branch::aa: total.aa += s.weight * a.aa; break;
          case Branch::ab:
            total.ab += s.weight * a.ab;
            total.ba += s.weight * a.ba;
            break;
          default: total.bb += s.weight * a.bb; break;
        }
      }
      accumulate(out[g], total, multiplicity);
    }
  });
  return out;
}

AmplitudeSet assemble(const EvolutionParams& params, std::span<const FieldDistribution> fields,
                      Convention convention, FormulaSet formulas) {
  params.validate();
  if (params.mode_count != fields.size()) {
    throw ConfigurationError("mode count " + std::to_string(params.mode_count) + " does not match " +
                             std::to_string(fields.size()) + " field distributions");
  }
  return ClosedFormEvolution({fields.begin(), fields.end()}, convention, formulas).at(params.gt);
}

}  // namespace tcm
