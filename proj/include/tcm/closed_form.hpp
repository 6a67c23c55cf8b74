#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tcm/fock_field.hpp"

namespace tcm {

/// Two-atom basis label, in the global basis order |aa>, |ab>, |ba>, |bb>.
/// The first letter is atom 1: `ab` is |a_1, b_2>.
enum class Branch : std::size_t { aa = 0, ab = 1, ba = 2, bb = 3 };

inline constexpr std::array<Branch, 4> kBranches{Branch::aa, Branch::ab, Branch::ba, Branch::bb};
std::string_view to_string(Branch b) noexcept;

/// paper_literal evaluates the printed amplitude formulas as they stand;
/// consistent fixes the index convention so that gt = 0 gives |a_1 a_2>.
enum class Convention { paper_literal, consistent };
std::string_view to_string(Convention c) noexcept;
Convention parse_convention(std::string_view text);

/// Which closed-form family drives the paper_literal convention.
enum class FormulaSet { automatic, single_mode, multimode };

struct BranchAmplitudes {
  Complex aa{};
  Complex ab{};
  Complex ba{};
  Complex bb{};

  Complex& operator[](Branch b) noexcept;
  const Complex& operator[](Branch b) const noexcept;
  double probability() const noexcept;
};

struct EvolutionParams {
  double gt = 0.0;  // dimensionless interaction time g*t
  std::size_t mode_count = 1;

  void validate() const;
};

/// Time-evolved amplitudes keyed by (branch, final field configuration). The
/// configurations live on a dense grid; entries outside it are zero.
class AmplitudeSet {
 public:
  AmplitudeSet(double gt, Convention convention, ConfigGrid grid, std::vector<BranchAmplitudes> entries);

  std::size_t mode_count() const noexcept { return grid_.mode_count(); }
  double time() const noexcept { return gt_; }
  Convention convention() const noexcept { return convention_; }
  const ConfigGrid& grid() const noexcept { return grid_; }
  std::span<const BranchAmplitudes> entries() const noexcept { return entries_; }

  Complex amplitude(Branch branch, const FockConfig& config) const noexcept;
  double norm() const noexcept;
  /// 1 - norm; positive when truncation (or the literal formulas) lose weight.
  double norm_deficit() const noexcept { return 1.0 - norm(); }

 private:
  double gt_;
  Convention convention_;
  ConfigGrid grid_;
  std::vector<BranchAmplitudes> entries_;
};

/// Printed single-mode amplitudes for summation index n. Branch attachment:
/// x1 -> aa, x2 -> bb, -i x3 -> ba, -i x4 -> ab, all at field n.
BranchAmplitudes single_mode_literal(std::size_t n, double gt, const FieldDistribution& field);

/// Exact single-mode evolution of |a_1 a_2, n_init> (unit initial weight).
/// aa sits at field n_init, ab/ba at n_init + 1 and bb at n_init + 2.
BranchAmplitudes single_mode_consistent(std::size_t n_init, double gt);

/// Printed multimode amplitudes, all four branches attached to `config`.
/// Throws UnsupportedConfiguration for a single mode.
BranchAmplitudes multimode_literal(const FockConfig& config, double gt, std::span<const FieldDistribution> fields);

/// Three-state collective evolution of |a_1 a_2, config> (unit initial weight).
/// ab/ba hold the amplitude of the whole one-photon-emitted manifold and bb the
/// two-photon manifold; assemble() spreads them over config + e_k (+ e_l).
/// Reduces to single_mode_consistent for one mode.
BranchAmplitudes multimode_consistent(const FockConfig& config, double gt);

/// Unnormalized sums over final field configurations at one time point:
/// rho(b, b') = sum_f amp(b, f) conj(amp(b', f)).
struct TracedSums {
  double gt = 0.0;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  double excited = 0.0;  // sum_f |amp(aa, f)|^2
  double ground = 0.0;   // sum_f |amp(bb, f)|^2

  double norm() const { return rho.trace().real(); }
};

/// Precomputes the time-independent parts of the closed form for a fixed set
/// of initial fields so that many time points can be evaluated cheaply.
class ClosedFormEvolution {
 public:
  ClosedFormEvolution(std::vector<FieldDistribution> fields, Convention convention,
                      FormulaSet formulas = FormulaSet::automatic);

  /// Materializes the amplitude set; throws ConfigurationError when the dense
  /// grid would exceed kMaxGridEntries.
  AmplitudeSet at(double gt) const;

  /// Field-traced sums for every requested time. When all modes carry the same
  /// distribution (m >= 2), amplitudes are symmetric under mode permutations
  /// and the sum runs over sorted configurations weighted by multiplicity,
  /// which keeps large mode counts tractable.
  std::vector<TracedSums> traced(std::span<const double> gts) const;

  bool uses_symmetric_trace() const noexcept { return symmetric_; }
  static constexpr std::size_t kMaxGridEntries = 4'000'000;

  std::size_t mode_count() const noexcept { return fields_.size(); }
  Convention convention() const noexcept { return convention_; }
  const std::vector<FieldDistribution>& fields() const noexcept { return fields_; }
  const ConfigGrid& grid() const noexcept { return grid_; }

 private:
  struct LiteralTerm {
    std::size_t index;
    Complex w1, w2, w3;
    double p1, p2, p3;
    double f1, f2, f3;
  };
  struct ConsistentTerm {
    std::size_t index;
    Complex weight;
    double alpha2, beta2;
    std::size_t spread_offset;  // into spread_
  };

  void prepare_literal(bool multimode);
  void prepare_consistent();
  void require_grid() const;
  std::vector<TracedSums> traced_symmetric_literal(std::span<const double> gts) const;
  std::vector<TracedSums> traced_symmetric_consistent(std::span<const double> gts) const;
  void evaluate_literal(double gt, std::vector<BranchAmplitudes>& out) const;
  void evaluate_consistent(double gt, std::vector<BranchAmplitudes>& out) const;

  std::vector<FieldDistribution> fields_;
  Convention convention_;
  bool symmetric_ = false;
  bool materialized_ = false;
  ConfigGrid grid_;
  std::vector<LiteralTerm> literal_;
  std::vector<ConsistentTerm> consistent_;
  // Per consistent term: m (grid offset, coefficient) pairs for the one-photon
  // manifold followed by m(m+1)/2 pairs for the two-photon manifold.
  std::vector<std::pair<std::size_t, double>> spread_;
};

/// Full atom-field amplitude set at params.gt.
AmplitudeSet assemble(const EvolutionParams& params, std::span<const FieldDistribution> fields,
                      Convention convention, FormulaSet formulas = FormulaSet::automatic);

}  // namespace tcm
