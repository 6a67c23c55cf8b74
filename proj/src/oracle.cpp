#include "tcm/oracle.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "tcm/errors.hpp"

namespace tcm {

std::size_t excited_atoms(Branch label) noexcept {
  switch (label) {
    case Branch::aa: return 2;
    case Branch::ab:
    case Branch::ba: return 1;
    case Branch::bb: return 0;
  }
  return 0;
}

namespace {

// Configs inside `windows` with occupation sum `total`, lexicographic order.
void configs_with_total(std::span<const TruncationWindow> windows, std::size_t total, std::vector<std::size_t>& prefix,
                        std::vector<FockConfig>& out) {
  const std::size_t k = prefix.size();
  if (k == windows.size()) {
    if (total == 0) out.emplace_back(prefix);
    return;
  }
  std::size_t rest_min = 0;
  std::size_t rest_max = 0;
  for (std::size_t j = k + 1; j < windows.size(); ++j) {
    rest_min += windows[j].n_min;
    rest_max += windows[j].n_max;
  }
  for (std::size_t n = windows[k].n_min; n <= windows[k].n_max && n <= total; ++n) {
    const std::size_t remaining = total - n;
    if (remaining < rest_min || remaining > rest_max) continue;
    prefix.push_back(n);
    configs_with_total(windows, remaining, prefix, out);
    prefix.pop_back();
  }
}

// Lowering atom `atom` (0 or 1) of an excited label.
std::optional<Branch> lower_atom(Branch label, int atom) {
  switch (label) {
    case Branch::aa: return atom == 0 ? Branch::ba : Branch::ab;
    case Branch::ab: return atom == 0 ? std::optional{Branch::bb} : std::nullopt;
    case Branch::ba: return atom == 1 ? std::optional{Branch::bb} : std::nullopt;
    case Branch::bb: return std::nullopt;
  }
  return std::nullopt;
}

std::size_t state_key(Branch label, std::size_t grid_index) { return grid_index * 4 + static_cast<std::size_t>(label); }

}  // namespace

SectorBasis build_sector_basis(std::size_t excitation, std::size_t mode_count,
                               std::span<const TruncationWindow> windows) {
  if (mode_count < 1 || windows.size() != mode_count) {
    throw ConfigurationError("sector basis needs one window per mode");
  }
  SectorBasis basis;
  basis.excitation = excitation;
  for (Branch label : kBranches) {
    const std::size_t atoms = excited_atoms(label);
    if (atoms > excitation) continue;
    std::vector<FockConfig> configs;
    std::vector<std::size_t> prefix;
    configs_with_total(windows, excitation - atoms, prefix, configs);
    for (auto& c : configs) basis.states.push_back({label, std::move(c)});
  }
  return basis;
}

HamiltonianBlock build_hamiltonian(const SectorBasis& sector) {
  const std::size_t dim = sector.states.size();
  HamiltonianBlock block{sector, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
  if (dim == 0) return block;

  std::map<std::pair<Branch, FockConfig>, std::size_t> position;
  for (std::size_t i = 0; i < dim; ++i) position.emplace(std::pair{sector.states[i].label, sector.states[i].config}, i);

  // S_- a_k^dag lowers one atom and adds a photon to mode k with amplitude
  // sqrt(n_k + 1); S_+ a_k is its adjoint and fills the mirrored entry.
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& from = sector.states[i];
    for (int atom = 0; atom < 2; ++atom) {
      const auto lowered = lower_atom(from.label, atom);
      if (!lowered) continue;
      for (std::size_t k = 0; k < from.config.mode_count(); ++k) {
        FockConfig to = from.config;
        ++to[k];
        const auto it = position.find({*lowered, to});
        if (it == position.end()) continue;
        const double coupling = std::sqrt(static_cast<double>(from.config[k]) + 1.0);
        const auto r = static_cast<Eigen::Index>(it->second);
        const auto c = static_cast<Eigen::Index>(i);
        block.matrix(r, c) += coupling;
        block.matrix(c, r) += coupling;
      }
    }
  }
  return block;
}

struct OracleState::Layout {
  struct Sector {
    SectorBasis basis;
    std::vector<std::size_t> keys;  // state_key per basis state
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;
    Eigen::VectorXcd initial;  // initial state in the eigenbasis
  };
  ConfigGrid grid;
  std::vector<Sector> sectors;
};

std::vector<BranchAmplitudes> OracleState::branch_amplitudes() const {
  std::vector<BranchAmplitudes> out(layout_->grid.size());
  for (std::size_t s = 0; s < coefficients_.size(); ++s) {
    const auto& keys = layout_->sectors[s].keys;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out[keys[i] / 4][static_cast<Branch>(keys[i] % 4)] = coefficients_[s][static_cast<Eigen::Index>(i)];
    }
  }
  return out;
}

const ConfigGrid& OracleState::grid() const noexcept { return layout_->grid; }

double OracleState::norm() const noexcept {
  double sum = 0.0;
  for (const auto& c : coefficients_) sum += c.squaredNorm();
  return sum;
}

std::vector<double> OracleState::sector_populations() const {
  std::vector<double> out;
  out.reserve(coefficients_.size());
  for (const auto& c : coefficients_) out.push_back(c.squaredNorm());
  return out;
}

ExactEvolution::ExactEvolution(std::vector<FieldDistribution> fields) : fields_(std::move(fields)) {
  if (fields_.empty()) throw ConfigurationError("at least one field mode is required");
  const std::size_t m = fields_.size();

  std::vector<TruncationWindow> windows;
  std::size_t lowest = 0;
  std::size_t highest = 0;
  for (const auto& f : fields_) {
    const auto& w = f.window();
    windows.emplace_back(w.n_min >= 2 ? w.n_min - 2 : 0, w.n_max + 2);
    lowest += w.n_min;
    highest += w.n_max;
  }

  auto layout = std::make_shared<OracleState::Layout>();
  layout->grid = ConfigGrid(windows);

  // The initial state |aa, n> lives in sector sum(n) + 2.
  for (std::size_t excitation = lowest + 2; excitation <= highest + 2; ++excitation) {
    OracleState::Layout::Sector sector;
    sector.basis = build_sector_basis(excitation, m, windows);
    const auto dim = static_cast<Eigen::Index>(sector.basis.states.size());

    Eigen::VectorXcd initial = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& st = sector.basis.states[static_cast<std::size_t>(i)];
      sector.keys.push_back(state_key(st.label, *layout->grid.index_of(st.config)));
      if (st.label != Branch::aa) continue;
      bool inside = true;
      for (std::size_t k = 0; k < m; ++k) inside = inside && fields_[k].window().contains(st.config[k]);
      if (inside) initial[i] = joint_weight(st.config, fields_);
    }
    if (initial.squaredNorm() == 0.0) continue;

    const HamiltonianBlock block = build_hamiltonian(sector.basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.matrix);
    if (solver.info() != Eigen::Success) throw NumericalFailure("sector diagonalization failed");
    sector.energies = solver.eigenvalues();
    sector.vectors = solver.eigenvectors();
    sector.initial = sector.vectors.transpose() * initial;
    initial_norm_ += initial.squaredNorm();
    layout->sectors.push_back(std::move(sector));
  }
  layout_ = std::move(layout);
}

ExactEvolution::~ExactEvolution() = default;
ExactEvolution::ExactEvolution(ExactEvolution&&) noexcept = default;
ExactEvolution& ExactEvolution::operator=(ExactEvolution&&) noexcept = default;

const ConfigGrid& ExactEvolution::grid() const noexcept { return layout_->grid; }
std::size_t ExactEvolution::sector_count() const noexcept { return layout_->sectors.size(); }

std::size_t ExactEvolution::largest_sector() const noexcept {
  std::size_t largest = 0;
  for (const auto& s : layout_->sectors) largest = std::max(largest, s.basis.states.size());
  return largest;
}

const SectorBasis& ExactEvolution::sector_basis(std::size_t i) const { return layout_->sectors.at(i).basis; }

OracleState ExactEvolution::initial_state() const { return evolve(0.0); }

OracleState ExactEvolution::evolve(double gt) const {
  if (!(gt >= 0.0) || !std::isfinite(gt)) throw ConfigurationError("gt must be finite and >= 0");
  std::vector<Eigen::VectorXcd> coefficients;
  coefficients.reserve(layout_->sectors.size());
  for (const auto& s : layout_->sectors) {
    Eigen::VectorXcd phased = s.initial;
    for (Eigen::Index i = 0; i < phased.size(); ++i) phased[i] *= std::polar(1.0, -s.energies[i] * gt);
    coefficients.push_back(s.vectors * phased);
  }
  OracleState state(layout_, gt, std::move(coefficients));
  check_norm(state);
  return state;
}

OracleState ExactEvolution::propagate(const OracleState& state, double dgt) const {
  if (state.layout_ != layout_) throw ConfigurationError("state was produced by a different oracle");
  if (!std::isfinite(dgt)) throw ConfigurationError("time step must be finite");
  std::vector<Eigen::VectorXcd> coefficients;
  coefficients.reserve(layout_->sectors.size());
  for (std::size_t k = 0; k < layout_->sectors.size(); ++k) {
    const auto& s = layout_->sectors[k];
    Eigen::VectorXcd eigen = s.vectors.transpose() * state.coefficients_[k];
    for (Eigen::Index i = 0; i < eigen.size(); ++i) eigen[i] *= std::polar(1.0, -s.energies[i] * dgt);
    coefficients.push_back(s.vectors * eigen);
  }
  OracleState next(layout_, state.gt_ + dgt, std::move(coefficients));
  check_norm(next);
  return next;
}

void ExactEvolution::check_norm(const OracleState& state) const {
  const double drift = std::abs(state.norm() - initial_norm_);
  if (drift > 1e-8) {
    std::ostringstream msg;
    msg << "oracle norm drift " << drift << " exceeds 1e-8 at gt = " << state.time();
    throw NumericalFailure(msg.str());
  }
}

TwoAtomDensity rho_atom_exact(const OracleState& state) { return density_from_amplitudes(state.branch_amplitudes()); }

InversionPoint exact_inversion(const OracleState& state) {
  double excited = 0.0;
  double ground = 0.0;
  for (const auto& e : state.branch_amplitudes()) {
    excited += std::norm(e.aa);
    ground += std::norm(e.bb);
  }
  return {state.time(), excited - ground};
}

// ---------------------------------------------------------------------------
// Power-expansion diagnostic

namespace {

using Mat = Eigen::MatrixXd;

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

Mat power(const Mat& x, int e) {
  Mat result = Mat::Identity(x.rows(), x.cols());
  for (int i = 0; i < e; ++i) result = result * x;
  return result;
}

Mat power_by_squaring(Mat base, int e) {
  Mat result = Mat::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

struct AtomOps {
  Mat raise[2], lower[2], excited[2], ground[2];
};

AtomOps atom_operators() {
  // Single-atom basis (a, b); two-atom index 2*s1 + s2 gives aa, ab, ba, bb.
  Mat up = Mat::Zero(2, 2);
  up(0, 1) = 1.0;
  Mat pa = Mat::Zero(2, 2);
  pa(0, 0) = 1.0;
  Mat pb = Mat::Zero(2, 2);
  pb(1, 1) = 1.0;
  const Mat id = Mat::Identity(2, 2);
  AtomOps ops;
  for (int j = 0; j < 2; ++j) {
    auto embed = [&](const Mat& o) { return j == 0 ? kron(o, id) : kron(id, o); };
    ops.raise[j] = embed(up);
    ops.lower[j] = embed(up.transpose());
    ops.excited[j] = embed(pa);
    ops.ground[j] = embed(pb);
  }
  return ops;
}

// sum over ordered atom pairs i != j of left_i * right_j
Mat pair_sum(const Mat (&left)[2], const Mat (&right)[2]) { return left[0] * right[1] + left[1] * right[0]; }

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

ExpansionReport expansion_diagnostic(int p, std::size_t mode_count, std::size_t max_occupancy) {
  if (p < 1) throw ConfigurationError("expansion order p must be >= 1");
  if (mode_count < 1) throw ConfigurationError("mode count must be >= 1");
  if (p > 3 || max_occupancy > 3 || mode_count > 3) {
    throw ConfigurationError("expansion diagnostic is limited to p <= 3, m <= 3 and occupancy <= 3");
  }
  const auto levels = static_cast<Eigen::Index>(max_occupancy + 1);

  Mat a_single = Mat::Zero(levels, levels);
  for (Eigen::Index n = 1; n < levels; ++n) a_single(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Mat id_single = Mat::Identity(levels, levels);

  Eigen::Index field_dim = 1;
  for (std::size_t k = 0; k < mode_count; ++k) field_dim *= levels;
  Mat a_sum = Mat::Zero(field_dim, field_dim);
  for (std::size_t k = 0; k < mode_count; ++k) {
    Mat op = Mat::Identity(1, 1);
    for (std::size_t j = 0; j < mode_count; ++j) op = kron(op, j == k ? a_single : id_single);
    a_sum += op;
  }
  const Mat a_dag = a_sum.transpose();

  const AtomOps atoms = atom_operators();
  const Mat s_plus = atoms.raise[0] + atoms.raise[1];
  const Mat s_minus = atoms.lower[0] + atoms.lower[1];
  const Mat v = kron(s_plus, a_sum) + kron(s_minus, a_dag);

  const Mat x = a_sum * a_dag + a_dag * a_sum;
  const Mat x_p = power(x, p);
  const Mat x_pm1 = power(x, p - 1);
  const double two_pm1 = std::ldexp(1.0, p - 1);
  const double two_p = std::ldexp(1.0, p);

  const Mat even_rhs = kron(pair_sum(atoms.raise, atoms.raise), two_pm1 * a_sum * x_pm1 * a_sum) +
                       kron(pair_sum(atoms.lower, atoms.lower), two_pm1 * a_dag * x_pm1 * a_dag) +
                       kron(pair_sum(atoms.raise, atoms.lower), two_pm1 * x_p) +
                       kron(pair_sum(atoms.excited, atoms.excited), two_pm1 * a_sum * x_pm1 * a_dag) +
                       kron(pair_sum(atoms.ground, atoms.ground), two_pm1 * a_dag * x_pm1 * a_sum) +
                       kron(pair_sum(atoms.excited, atoms.ground), two_pm1 * x_p);
  const Mat odd_rhs = kron(pair_sum(atoms.excited, atoms.raise), two_p * a_sum * x_p) +
                      kron(pair_sum(atoms.ground, atoms.raise), two_p * x_p * a_sum) +
                      kron(pair_sum(atoms.excited, atoms.lower), two_p * x_p * a_dag) +
                      kron(pair_sum(atoms.ground, atoms.lower), two_p * a_dag * x_p);

  const Mat v_even = power(v, 2 * p);
  const Mat v_odd = v_even * v;

  ExpansionReport report;
  report.p = p;
  report.mode_count = mode_count;
  report.max_occupancy = max_occupancy;
  report.dimension = static_cast<std::size_t>(v.rows());
  report.even_deviation = max_abs(v_even - even_rhs);
  report.odd_deviation = max_abs(v_odd - odd_rhs);
  report.power_route_deviation = max_abs(v_even - power_by_squaring(v, 2 * p));
  report.trace_v2 = (v * v).trace();

  // Columns whose occupations cannot reach the cutoff within 2p+1 steps.
  std::vector<Eigen::Index> interior;
  for (Eigen::Index col = 0; col < v.cols(); ++col) {
    Eigen::Index field = col % field_dim;
    bool inside = true;
    for (std::size_t k = 0; k < mode_count; ++k) {
      const auto n = static_cast<std::size_t>(field % levels);
      field /= levels;
      inside = inside && n + static_cast<std::size_t>(2 * p + 1) <= max_occupancy;
    }
    if (inside) interior.push_back(col);
  }
  if (!interior.empty()) {
    double even = 0.0;
    double odd = 0.0;
    for (auto col : interior) {
      even = std::max(even, (v_even.col(col) - even_rhs.col(col)).cwiseAbs().maxCoeff());
      odd = std::max(odd, (v_odd.col(col) - odd_rhs.col(col)).cwiseAbs().maxCoeff());
    }
    report.even_interior_deviation = even;
    report.odd_interior_deviation = odd;
  }

  // Direct count: each allowed emission (one atom a -> b, photon into mode k
  // with n_k < cutoff) contributes its squared coupling n_k + 1 twice.
  const std::size_t field_states = static_cast<std::size_t>(field_dim);
  std::vector<std::size_t> n(mode_count);
  for (std::size_t label = 0; label < 4; ++label) {
    const std::size_t excited = excited_atoms(static_cast<Branch>(label));
    for (std::size_t f = 0; f < field_states; ++f) {
      std::size_t rest = f;
      for (std::size_t k = mode_count; k-- > 0;) {
        n[k] = rest % static_cast<std::size_t>(levels);
        rest /= static_cast<std::size_t>(levels);
      }
      for (std::size_t k = 0; k < mode_count; ++k) {
        if (n[k] < max_occupancy) report.trace_v2_enumerated += 2.0 * static_cast<double>(excited * (n[k] + 1));
      }
    }
  }
  return report;
}

std::string ExpansionReport::format() const {
  std::ostringstream out;
  out.precision(12);
  out << "p = " << p << "\n"
      << "modes = " << mode_count << "\n"
      << "max_occupancy = " << max_occupancy << "\n"
      << "dimension = " << dimension << "\n"
      << "even_power_max_deviation = " << even_deviation << "\n"
      << "odd_power_max_deviation = " << odd_deviation << "\n";
  out << "even_power_interior_deviation = ";
  if (even_interior_deviation) out << *even_interior_deviation; else out << "n/a";
  out << "\nodd_power_interior_deviation = ";
  if (odd_interior_deviation) out << *odd_interior_deviation; else out << "n/a";
  out << "\ntrace_V2 = " << trace_v2 << "\n"
      << "trace_V2_enumerated = " << trace_v2_enumerated << "\n"
      << "power_route_deviation = " << power_route_deviation << "\n";
  return out.str();
}

}  // namespace tcm
