#include "lagdirac/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lagdirac/orthogonal.hpp"
#include "lagdirac/spectral.hpp"

namespace lagdirac {

namespace {
constexpr double kPi = 3.14159265358979323846;
const std::complex<double> kI(0.0, 1.0);
}  // namespace

ComplexStructure::ComplexStructure(Eigen::MatrixXd j, double tol)
    : d(j.rows()), J(std::move(j)) {
  if (J.rows() != J.cols() || d % 2 != 0)
    throw DimensionMismatch("ComplexStructure: need even square size");
  const double scale = std::max(1.0, J.norm());
  if ((J + J.transpose()).norm() > 1e3 * tol * scale)
    throw std::invalid_argument("ComplexStructure: J not skew");
  if ((J * J + Eigen::MatrixXd::Identity(d, d)).norm() > 1e3 * tol * scale)
    throw std::invalid_argument("ComplexStructure: J^2 != -I");
}

ComplexStructure complex_structure_from_skew(const Eigen::MatrixXd& d,
                                             double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      Eigen::MatrixXcd(-kI * d.cast<std::complex<double>>()));
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().cwiseAbs().minCoeff() <= tol * std::max(top, 1.0))
    throw SingularOperator("complex_structure_from_skew: kernel present");
  return ComplexStructure(
      skew_matrix_function(d,
                           [](std::complex<double> z) {
                             return std::complex<double>(
                                 0.0, z.imag() >= 0.0 ? 1.0 : -1.0);
                           }),
      tol);
}

SpinorModule::SpinorModule(ComplexStructure j, double tol_in)
    : J(std::move(j)), tol(tol_in) {
  const Eigen::MatrixXcd jc = J.J.cast<std::complex<double>>();
  plus_basis = nullspace(
      Eigen::MatrixXcd(jc - kI * Eigen::MatrixXcd::Identity(J.d, J.d)), tol);
  if (plus_basis.cols() != J.d / 2)
    throw DimensionMismatch("SpinorModule: dim V_+ != d/2");
}

namespace {

// Sign for inserting mode a into the ascending-ordered wedge of `mask`.
inline int insert_sign(std::uint64_t mask, int a) {
  const std::uint64_t below = mask & ((std::uint64_t(1) << a) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

}  // namespace

Eigen::MatrixXcd clifford_action(const SpinorModule& s,
                                 const Eigen::VectorXcd& v) {
  if (v.size() != s.J.d)
    throw DimensionMismatch("clifford_action: vector size != d");
  const Eigen::Index p = s.modes();
  const Eigen::Index dim = s.wedge_dim();
  // eps coefficients pair v against the Hermitian basis, iota coefficients
  // against the bilinear one; isotropy of V_+ makes the projections implicit.
  const Eigen::VectorXcd c = s.plus_basis.adjoint() * v;
  const Eigen::VectorXcd dd = s.plus_basis.transpose() * v;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index mask = 0; mask < dim; ++mask)
    for (Eigen::Index a = 0; a < p; ++a) {
      const std::uint64_t bit = std::uint64_t(1) << a;
      if (!(mask & bit)) {
        // creation: |mask> -> sign |mask + a>
        m(mask | bit, mask) += r2 * c(a) * double(insert_sign(mask, a));
      } else {
        m(mask & ~bit, mask) +=
            r2 * dd(a) * double(insert_sign(mask & ~bit, a));
      }
    }
  return m;
}

Eigen::MatrixXd grading(const SpinorModule& s) {
  const Eigen::Index dim = s.wedge_dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index mask = 0; mask < dim; ++mask)
    g(mask, mask) =
        std::popcount(static_cast<std::uint64_t>(mask)) % 2 == 0 ? 1.0 : -1.0;
  return g;
}

Parity ss_parity(const ComplexStructure& j1, const ComplexStructure& j2) {
  if (j1.d != j2.d) throw DimensionMismatch("ss_parity: sizes differ");
  const Eigen::Index k =
      j1.d - numeric_rank(Eigen::MatrixXd(j1.J + j2.J), kDefaultTol);
  if (k % 2 != 0)
    throw OddKernel("ss_parity: odd-dimensional kernel of J1 + J2");
  return ((k / 2) % 2 == 0) ? Parity::Even : Parity::Odd;
}

WedgeState WedgeState::make(std::vector<int> added_in,
                            std::vector<int> removed_in) {
  for (int a : added_in)
    if (a <= 0) throw std::invalid_argument("WedgeState: added must be > 0");
  for (int r : removed_in)
    if (r > 0) throw std::invalid_argument("WedgeState: removed must be <= 0");
  std::sort(added_in.begin(), added_in.end(), std::greater<int>());
  std::sort(removed_in.begin(), removed_in.end());
  added_in.erase(std::unique(added_in.begin(), added_in.end()),
                 added_in.end());
  removed_in.erase(std::unique(removed_in.begin(), removed_in.end()),
                   removed_in.end());
  WedgeState k;
  k.added = std::move(added_in);
  k.removed = std::move(removed_in);
  return k;
}

int weight(const WedgeState& k) {
  return static_cast<int>(k.added.size()) - static_cast<int>(k.removed.size());
}

WedgeState shift(const WedgeState& k) {
  std::vector<int> added, removed;
  for (int a : k.added) added.push_back(a + 1);
  const bool zero_removed =
      std::find(k.removed.begin(), k.removed.end(), 0) != k.removed.end();
  // 0 in K shifts to a particle at 1; a hole at 0 shifts to a hole at 1,
  // which the encoding expresses by 1 simply being absent.
  if (!zero_removed) added.push_back(1);
  for (int r : k.removed)
    if (r + 1 <= 0) removed.push_back(r + 1);
  return WedgeState::make(std::move(added), std::move(removed));
}

WedgeWindow::WedgeWindow(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("WedgeWindow: need window >= 1");
  if (n > 12)
    throw WindowTooLarge("WedgeWindow: window " + std::to_string(n) +
                         " exceeds the cap of 12");
}

WedgeWindow wedge_operators(int n) { return WedgeWindow(n); }

std::uint64_t WedgeWindow::vacuum() const {
  // modes -N..0 occupied
  return (std::uint64_t(1) << (n_ + 1)) - 1;
}

std::uint64_t WedgeWindow::encode(const WedgeState& k) const {
  std::uint64_t mask = vacuum();
  for (int a : k.added) {
    if (a > n_) throw WindowTooLarge("encode: particle outside window");
    mask |= std::uint64_t(1) << bit(a);
  }
  for (int r : k.removed) {
    if (r < -n_) throw WindowTooLarge("encode: hole outside window");
    mask &= ~(std::uint64_t(1) << bit(r));
  }
  return mask;
}

WedgeState WedgeWindow::decode(std::uint64_t mask) const {
  std::vector<int> added, removed;
  for (int k = 1; k <= n_; ++k)
    if (mask & (std::uint64_t(1) << bit(k))) added.push_back(k);
  for (int k = -n_; k <= 0; ++k)
    if (!(mask & (std::uint64_t(1) << bit(k)))) removed.push_back(k);
  return WedgeState::make(std::move(added), std::move(removed));
}

int WedgeWindow::create(int k, std::uint64_t in, std::uint64_t* out) const {
  if (k < -n_ || k > n_) throw WindowTooLarge("create: mode outside window");
  const std::uint64_t b = std::uint64_t(1) << bit(k);
  if (in & b) return 0;
  *out = in | b;
  // wedge order is descending in the mode index, so the sign counts
  // occupied modes above k
  const std::uint64_t above = in >> (bit(k) + 1);
  return std::popcount(above) % 2 == 0 ? 1 : -1;
}

int WedgeWindow::annihilate(int k, std::uint64_t in, std::uint64_t* out) const {
  if (k < -n_ || k > n_)
    throw WindowTooLarge("annihilate: mode outside window");
  const std::uint64_t b = std::uint64_t(1) << bit(k);
  if (!(in & b)) return 0;
  *out = in & ~b;
  const std::uint64_t above = in >> (bit(k) + 1);
  return std::popcount(above) % 2 == 0 ? 1 : -1;
}

int WedgeWindow::tau(std::uint64_t in, std::uint64_t* out) const {
  const std::uint64_t top = std::uint64_t(1) << bit(n_);
  if (in & top) return 0;  // pushed out of the window: truncate to zero
  // every index moves up one slot; the sea supplies a particle at -N
  *out = ((in << 1) | 1) & ((std::uint64_t(1) << mode_count()) - 1);
  return 1;
}

int WedgeWindow::weight_of(std::uint64_t mask) const {
  const std::uint64_t vac = vacuum();
  const int added = std::popcount(mask & ~vac);
  const int removed = std::popcount(vac & ~mask);
  return added - removed;
}

namespace {

Eigen::SparseMatrix<double> op_matrix(
    const WedgeWindow& w,
    const std::function<int(std::uint64_t, std::uint64_t*)>& apply) {
  if (w.dim() > 4096)
    throw WindowTooLarge("op_matrix: dense window matrices capped at 2^12");
  const Eigen::Index dim = static_cast<Eigen::Index>(w.dim());
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index in = 0; in < dim; ++in) {
    std::uint64_t out = 0;
    const int sign = apply(static_cast<std::uint64_t>(in), &out);
    if (sign != 0)
      trip.emplace_back(static_cast<Eigen::Index>(out), in, double(sign));
  }
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

}  // namespace

Eigen::SparseMatrix<double> WedgeWindow::create_matrix(int k) const {
  return op_matrix(*this, [this, k](std::uint64_t in, std::uint64_t* out) {
    return create(k, in, out);
  });
}

Eigen::SparseMatrix<double> WedgeWindow::annihilate_matrix(int k) const {
  return op_matrix(*this, [this, k](std::uint64_t in, std::uint64_t* out) {
    return annihilate(k, in, out);
  });
}

Eigen::SparseMatrix<double> WedgeWindow::tau_matrix() const {
  return op_matrix(*this, [this](std::uint64_t in, std::uint64_t* out) {
    return tau(in, out);
  });
}

So2Report so2_model(double s, int window, double tol) {
  WedgeWindow w(window);  // validates the window size
  So2Report rep;
  rep.s = s;
  rep.window = window;
  for (int k = -window; k <= window; ++k) {
    const double ev = 2.0 * kPi * (k - 0.5 + s);
    rep.ladder.push_back(ev);
    if (ev > tol) rep.vplus_modes.push_back(k);
  }
  rep.kernel_crossing = false;
  for (double ev : rep.ladder)
    if (std::abs(ev) <= 2.0 * kPi * tol) rep.kernel_crossing = true;

  int flow = 0;
  for (int k = -window; k <= window; ++k) {
    const bool pos0 = (k - 0.5) > 0.0;
    const bool poss = (k - 0.5 + s) > tol;
    if (poss && !pos0) ++flow;
    if (!poss && pos0 && (k - 0.5 + s) < -tol) --flow;
  }
  rep.spectral_flow = flow;

  // Weight histogram of the window module relative to the s-polarization:
  // P particle slots, Q hole slots, count(w) = C(P + Q, Q + w).
  const int p = static_cast<int>(rep.vplus_modes.size());
  const int q = w.mode_count() - p;
  rep.min_weight = -q;
  std::vector<long long> binom(w.mode_count() + 1, 0);
  binom[0] = 1;
  for (int i = 1; i <= w.mode_count(); ++i)
    for (int j = i; j >= 1; --j) binom[j] += binom[j - 1];
  for (int weight_val = -q; weight_val <= p; ++weight_val)
    rep.weight_histogram.push_back(binom[q + weight_val]);

  // Cross-check the ladder against the boundary operator's analytic spectrum.
  const double th = 2.0 * kPi * s;
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const BoundaryOperator b(rot, tol);
  const auto lines = analytic_spectrum(b, -window - 2, window + 2);
  double worst = 0.0;
  for (double ev : rep.ladder) {
    double best = 1e300;
    for (const auto& line : lines)
      best = std::min(best, std::abs(line.eigenvalue.imag() - ev));
    worst = std::max(worst, best);
  }
  rep.ladder_match_residual = worst;
  return rep;
}

}  // namespace lagdirac
