#include "lagdirac/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lagdirac/errors.hpp"

namespace lagdirac {

namespace {
constexpr double kPi = 3.14159265358979323846;
const std::complex<double> kI(0.0, 1.0);
}  // namespace

BoundaryOperator::BoundaryOperator(Eigen::MatrixXcd a, double tol_in)
    : n(a.rows()), A(std::move(a)), field(Field::Complex), tol(tol_in) {
  if (A.rows() != A.cols())
    throw DimensionMismatch("BoundaryOperator: A must be square");
  if (A.imag().norm() <= tol * std::max(1.0, A.norm())) field = Field::Real;
  const double defect =
      (A.adjoint() * A - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (defect > 1e3 * tol * std::max(1.0, static_cast<double>(n)))
    throw NotOrthogonal("BoundaryOperator: A not unitary, defect " +
                        std::to_string(defect));
}

BoundaryOperator::BoundaryOperator(const Eigen::MatrixXd& a, double tol_in)
    : BoundaryOperator(Eigen::MatrixXcd(a.cast<std::complex<double>>()),
                       tol_in) {}

AnalyticSpectrum base_spectrum(const BoundaryOperator& b) {
  // A is unitary hence normal: the complex Schur form is diagonal and the
  // Schur basis is a unitary eigenbasis.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(b.A);
  AnalyticSpectrum out;
  out.vectors = schur.matrixU();
  out.lambdas.resize(b.n);
  for (Eigen::Index r = 0; r < b.n; ++r) {
    double lam = std::arg(schur.matrixT()(r, r)) / (2.0 * kPi);
    if (lam < 0.0) lam += 1.0;
    if (lam >= 1.0 - b.tol || lam <= b.tol) lam = 0.0;
    if (std::abs(lam - 0.5) <= b.tol) lam = 0.5;
    out.lambdas(r) = lam;
  }
  return out;
}

std::vector<SpectralLine> analytic_spectrum(const BoundaryOperator& b,
                                            int k_min, int k_max) {
  const AnalyticSpectrum base = base_spectrum(b);
  std::vector<SpectralLine> lines;
  for (Eigen::Index r = 0; r < b.n; ++r)
    for (int k = k_min; k <= k_max; ++k) {
      const double im = 2.0 * kPi * (base.lambdas(r) + k - 0.5);
      lines.push_back(SpectralLine{std::complex<double>(0.0, im),
                                   base.lambdas(r), k, static_cast<int>(r)});
    }
  std::sort(lines.begin(), lines.end(),
            [](const SpectralLine& x, const SpectralLine& y) {
              return x.eigenvalue.imag() < y.eigenvalue.imag();
            });
  return lines;
}

Eigen::Index kernel_dim(const BoundaryOperator& b) {
  return b.n - numeric_rank(Eigen::MatrixXcd(
                   b.A + Eigen::MatrixXcd::Identity(b.n, b.n)),
               1e3 * b.tol);
}

DiscretizedOperator discretize(const BoundaryOperator& b, Eigen::Index N) {
  if (N < 8) throw std::invalid_argument("discretize: need N >= 8");
  const Eigen::Index n = b.n;
  const double h = 1.0 / static_cast<double>(N);
  const double c = 1.0 / (2.0 * h);
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  trip.reserve(static_cast<size_t>(2 * N * n * n));
  auto add_block = [&](Eigen::Index bi, Eigen::Index bj,
                       const Eigen::MatrixXcd& m) {
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = 0; q < n; ++q)
        if (m(p, q) != std::complex<double>(0.0, 0.0))
          trip.emplace_back(bi * n + p, bj * n + q, m(p, q));
  };
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index j = 0; j + 1 < N; ++j) {
    add_block(j, j + 1, c * id);
    add_block(j + 1, j, -c * id);
  }
  // Wrap terms: f at index N is -A f_0, f at index -1 is -A^H f_{N-1}.
  add_block(0, N - 1, c * b.A.adjoint());
  add_block(N - 1, 0, -c * b.A);
  Eigen::SparseMatrix<std::complex<double>> m(n * N, n * N);
  m.setFromTriplets(trip.begin(), trip.end());
  return DiscretizedOperator{N, h, std::move(m)};
}

namespace {

// Shift-inverted subspace iteration on -M^2 with Rayleigh-Ritz against
// H = -i M.  An optional filter matrix (commuting with M) is applied each
// sweep to bias the iteration toward a distinguished invariant subspace.
SmallestModes modes_impl(
    const Eigen::SparseMatrix<std::complex<double>>& skew,
    const Eigen::SparseMatrix<std::complex<double>>* filter, int nev,
    int max_iters, double res_tol) {
  const Eigen::Index d = skew.rows();
  const int q = std::min<Eigen::Index>(d, nev + 8);
  // B = (-i M)^2 = -M^2 is Hermitian PSD; invert a slightly shifted copy and
  // run subspace iteration, then Rayleigh-Ritz with H = -i M for signed
  // eigenvalues.
  Eigen::SparseMatrix<std::complex<double>> b =
      (-(skew * skew).eval()).pruned();
  const double scale = skew.coeffs().cwiseAbs().maxCoeff();
  Eigen::SparseMatrix<std::complex<double>> ident(d, d);
  ident.setIdentity();
  b = (b + (1e-12 * scale * scale) * ident).eval();
  Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu;
  lu.compute(b);
  if (lu.info() != Eigen::Success)
    throw SingularOperator("smallest_magnitude_modes: factorization failed");

  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(d, q);
  Eigen::MatrixXcd ritz_vecs;
  Eigen::VectorXd ritz_vals;
  Eigen::VectorXd residuals = Eigen::VectorXd::Constant(nev, 1e300);
  for (int it = 0; it < max_iters; ++it) {
    x = lu.solve(x);
    if (filter) x = (*filter * x).eval();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
    x = qr.householderQ() * Eigen::MatrixXcd::Identity(d, q);
    if (it % 5 != 4 && it != max_iters - 1) continue;
    const Eigen::MatrixXcd hx = -kI * (skew * x);
    Eigen::MatrixXcd s = x.adjoint() * hx;
    s = 0.5 * (s + s.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
    // Sort Ritz pairs by |value|.
    std::vector<int> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a2, int b2) {
      return std::abs(es.eigenvalues()(a2)) < std::abs(es.eigenvalues()(b2));
    });
    ritz_vals.resize(nev);
    ritz_vecs.resize(d, nev);
    bool done = true;
    for (int j = 0; j < nev; ++j) {
      ritz_vals(j) = es.eigenvalues()(order[j]);
      ritz_vecs.col(j) = x * es.eigenvectors().col(order[j]);
      residuals(j) =
          (-kI * (skew * ritz_vecs.col(j)) - ritz_vals(j) * ritz_vecs.col(j))
              .norm();
      if (residuals(j) > res_tol * std::max(1.0, scale)) done = false;
    }
    if (done) break;
  }
  return SmallestModes{std::move(ritz_vals), std::move(ritz_vecs),
                       std::move(residuals)};
}

}  // namespace

SmallestModes smallest_magnitude_modes(
    const Eigen::SparseMatrix<std::complex<double>>& skew, int nev,
    int max_iters, double res_tol) {
  return modes_impl(skew, nullptr, nev, max_iters, res_tol);
}

SmallestModes smallest_magnitude_modes(const DiscretizedOperator& op, int nev,
                                       int max_iters, double res_tol) {
  // The centered stencil has a sawtooth branch: its symbol sin(theta)/h also
  // vanishes at theta = pi, mirroring every physical mode into a spurious
  // high-frequency partner with the same eigenvalue.  The wrap shift S
  // (S f)_j = f_{j+1}, f_N = -A f_0, commutes with the stencil, and the
  // averaging filter (I + S)/2 has eigenvalue cos(theta/2): ~1 on physical
  // modes, ~0 on the mirror branch.  Iterating with it projects the spurious
  // branch out without perturbing eigenvalues.
  const Eigen::Index dim = op.matrix.rows();
  const Eigen::Index n = dim / op.N;
  const Eigen::MatrixXcd wrap =
      -2.0 * op.h *
      Eigen::MatrixXcd(op.matrix).block((op.N - 1) * n, 0, n, n);  // = A
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  trip.reserve(static_cast<size_t>(dim + op.N * n * n));
  for (Eigen::Index i = 0; i < dim; ++i)
    trip.emplace_back(i, i, std::complex<double>(0.5, 0.0));
  for (Eigen::Index j = 0; j + 1 < op.N; ++j)
    for (Eigen::Index p = 0; p < n; ++p)
      trip.emplace_back(j * n + p, (j + 1) * n + p,
                        std::complex<double>(0.5, 0.0));
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q2 = 0; q2 < n; ++q2)
      if (wrap(p, q2) != std::complex<double>(0.0, 0.0))
        trip.emplace_back((op.N - 1) * n + p, q2, -0.5 * wrap(p, q2));
  Eigen::SparseMatrix<std::complex<double>> filt(dim, dim);
  filt.setFromTriplets(trip.begin(), trip.end());
  return modes_impl(op.matrix, &filt, nev, max_iters, res_tol);
}

HsDiagnostic hs_divergence_diagnostic(const BoundaryOperator& b1,
                                      const BoundaryOperator& b2,
                                      long long m_max) {
  if (b1.n != b2.n)
    throw DimensionMismatch("hs_divergence_diagnostic: sizes differ");
  const AnalyticSpectrum s1 = base_spectrum(b1);
  const AnalyticSpectrum s2 = base_spectrum(b2);
  struct PairTerm {
    double c;        // |<v, v'>|^2 |e^{2 pi i dl} - 1|^2 / (4 pi^2)
    double overlap;  // |<v, v'>|^2, the limit value at integer shifts
    double dl;       // lambda' - lambda
    long long k0;    // positive region: k >= k0
    long long l1;    // nonpositive region: l <= l1
  };
  std::vector<PairTerm> pairs;
  double first_term = 0.0;
  for (Eigen::Index r = 0; r < b1.n; ++r)
    for (Eigen::Index s = 0; s < b2.n; ++s) {
      const double ov =
          std::norm(s1.vectors.col(r).dot(s2.vectors.col(s)));
      const double dl = s2.lambdas(s) - s1.lambdas(r);
      const double c =
          ov * std::norm(std::exp(2.0 * kPi * kI * dl) - 1.0) /
          (4.0 * kPi * kPi);
      // Rounding makes coinciding eigenpairs produce O(eps^2) dust whose
      // partial sums still grow; snap them to the exact-coincidence value 0.
      if (c < 1e-20 * std::max(1.0, ov)) continue;
      const long long k0 = s1.lambdas(r) > 0.5 ? 0 : 1;
      const long long l1 = s2.lambdas(s) > 0.5 ? -1 : 0;
      pairs.push_back(PairTerm{c, ov, dl, k0, l1});
      if (c > 1e-300) {
        const double corner = dl + static_cast<double>(l1 - k0);
        if (corner != 0.0)
          first_term = std::max(first_term, c / (corner * corner));
      }
    }

  // Sum over k in [k0, M], l in [-M, l1] grouped by d = l - k; the number of
  // lattice pairs at fixed d is min(M, l1 - d) - max(k0, -M - d) + 1.
  auto partial_sum = [&](long long m) {
    double total = 0.0;
    for (const PairTerm& p : pairs) {
      if (p.c <= 1e-300 && p.overlap <= 1e-300) continue;
      for (long long d = -2 * m; d <= p.l1 - p.k0; ++d) {
        const long long lo = std::max(p.k0, -m - d);
        const long long hi = std::min(m, p.l1 - d);
        if (hi < lo) continue;
        const double count = static_cast<double>(hi - lo + 1);
        const double den = p.dl + static_cast<double>(d);
        if (std::abs(den) < 1e-12)
          total += p.overlap * count;
        else
          total += p.c / (den * den) * count;
      }
    }
    return total;
  };

  HsDiagnostic out;
  std::vector<long long> cps;
  for (long long m = 8; m < m_max; m = std::max(m + 1, (m * 13) / 10))
    cps.push_back(m);
  cps.push_back(m_max);
  out.checkpoints = cps;
  out.partial_sums.reserve(cps.size());
  for (long long m : cps) out.partial_sums.push_back(partial_sum(m));

  // Least-squares slope of S against ln M over the final decade.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (size_t i = 0; i < cps.size(); ++i) {
    if (10 * cps[i] < m_max) continue;
    const double x = std::log(static_cast<double>(cps[i]));
    const double y = out.partial_sums[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  const double denom = cnt * sxx - sx * sx;
  out.slope = std::abs(denom) > 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
  out.threshold = 0.1 * first_term;
  out.divergent = out.slope > out.threshold && first_term > 0.0;
  return out;
}

double conjugation_identity(
    const BoundaryOperator& b_to, const BoundaryOperator& b_from,
    const std::function<Eigen::MatrixXcd(double)>& gamma, Eigen::Index N) {
  if (b_to.n != b_from.n)
    throw DimensionMismatch("conjugation_identity: sizes differ");
  const Eigen::Index n = b_to.n;
  const double h = 1.0 / static_cast<double>(N);
  std::vector<Eigen::MatrixXcd> g(N), mu(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const double t = (j + 0.5) * h;
    g[j] = gamma(t);
    if ((g[j].adjoint() * g[j] - Eigen::MatrixXcd::Identity(n, n)).norm() >
        1e-6 * n)
      throw NonUnitarySample("conjugation_identity: gamma not unitary at t=" +
                             std::to_string(t));
    // One-sided difference quotient for gamma'; the O(h) error here sets the
    // convergence rate of the whole identity.
    mu[j] = -((gamma(t + h) - g[j]) / h) * g[j].adjoint();
  }
  const Eigen::MatrixXcd g0 = gamma(0.0), g1 = gamma(1.0);
  if ((b_to.A * g0 - g1 * b_from.A).norm() > 1e-6 * n)
    throw std::invalid_argument(
        "conjugation_identity: need A gamma(0) = gamma(1) A'");

  const DiscretizedOperator dp = discretize(b_from, N);
  const DiscretizedOperator da = discretize(b_to, N);
  const AnalyticSpectrum base = base_spectrum(b_from);

  auto conj_apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w(v.size());
    for (Eigen::Index j = 0; j < N; ++j)
      w.segment(j * n, n) = g[j].adjoint() * v.segment(j * n, n);
    w = dp.matrix * w;
    for (Eigen::Index j = 0; j < N; ++j)
      w.segment(j * n, n) = (g[j] * w.segment(j * n, n)).eval();
    return w;
  };
  auto target_apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w = da.matrix * v;
    for (Eigen::Index j = 0; j < N; ++j)
      w.segment(j * n, n) += mu[j] * v.segment(j * n, n);
    return w;
  };

  // The discrete identity cannot hold at grid-scale frequencies, so the
  // residual is measured on smooth probes from the domain of D_{A'}:
  // transported analytic eigenfunctions.
  double worst = 0.0;
  for (Eigen::Index r = 0; r < n; ++r)
    for (int k = -1; k <= 2; ++k) {
      Eigen::VectorXcd probe(n * N);
      for (Eigen::Index j = 0; j < N; ++j) {
        const double t = (j + 0.5) * h;
        probe.segment(j * n, n) =
            g[j] * (std::exp(2.0 * kPi * kI * (base.lambdas(r) + k - 0.5) * t) *
                    base.vectors.col(r));
      }
      const double res =
          (conj_apply(probe) - target_apply(probe)).norm() / probe.norm();
      worst = std::max(worst, res);
    }
  return worst;
}

namespace {

/// Largest singular value of op (given with its adjoint) by power iteration.
double operator_norm_impl(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& op,
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& op_adj,
    Eigen::Index dim, int iters) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(dim);
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = op_adj(op(v));
    const double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    v = w / nrm;
    const double next = std::sqrt(nrm);
    if (it > 10 && std::abs(next - sigma) <= 1e-12 * std::max(1.0, next)) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

}  // namespace

double operator_norm_estimate(const Eigen::MatrixXcd& m, int iters) {
  if (m.size() == 0) return 0.0;
  return operator_norm_impl(
      [&](const Eigen::VectorXcd& v) { return Eigen::VectorXcd(m * v); },
      [&](const Eigen::VectorXcd& v) {
        return Eigen::VectorXcd(m.adjoint() * v);
      },
      m.cols(), iters);
}

std::pair<double, double> resolvent_continuity(const BoundaryOperator& b,
                                               const Eigen::MatrixXcd& a,
                                               Eigen::Index N) {
  if (a.rows() != b.n || a.cols() != b.n)
    throw DimensionMismatch("resolvent_continuity: perturbation shape");
  if ((a + a.adjoint()).norm() > 1e-9 * std::max(1.0, a.norm()))
    throw std::invalid_argument("resolvent_continuity: a must be antihermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> aes(
      Eigen::MatrixXcd(-kI * a));
  const Eigen::MatrixXcd expa =
      aes.eigenvectors() *
      (kI * aes.eigenvalues().cast<std::complex<double>>()).array().exp()
          .matrix().asDiagonal() *
      aes.eigenvectors().adjoint();
  const BoundaryOperator ba(Eigen::MatrixXcd(expa * b.A), b.tol);
  const Eigen::Index dim = b.n * N;
  Eigen::SparseMatrix<std::complex<double>> ident(dim, dim);
  ident.setIdentity();
  Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu0, lua;
  lu0.compute((discretize(b, N).matrix - ident).eval());
  lua.compute((discretize(ba, N).matrix - ident).eval());
  if (lu0.info() != Eigen::Success || lua.info() != Eigen::Success)
    throw SingularOperator("resolvent_continuity: factorization failed");
  // The difference of resolvents is skew-field-normal enough that power
  // iteration on M^H M is reliable; M v = (Da-1)^{-1} v - (D0-1)^{-1} v.
  auto op = [&](const Eigen::VectorXcd& v) {
    return Eigen::VectorXcd(lua.solve(v) - lu0.solve(v));
  };
  auto op_adj = [&](const Eigen::VectorXcd& v) {
    return Eigen::VectorXcd(lua.adjoint().solve(v) - lu0.adjoint().solve(v));
  };
  const double lhs = operator_norm_impl(op, op_adj, dim, 300);
  const double rhs = 3.0 * operator_norm_estimate(a);
  return {lhs, rhs};
}

namespace {

Eigen::VectorXd skew_adjoint_spectrum(const Eigen::MatrixXcd& d,
                                      Eigen::MatrixXcd* vectors) {
  const double scale = std::max(1.0, d.norm());
  if ((d + d.adjoint()).norm() > 1e-9 * scale)
    throw std::invalid_argument("expected a skew-adjoint matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      Eigen::MatrixXcd(-kI * d));
  if (vectors) *vectors = es.eigenvectors();
  return es.eigenvalues();
}

}  // namespace

Eigen::MatrixXcd polarization_j(const Eigen::MatrixXcd& d, double tol) {
  Eigen::MatrixXcd v;
  const Eigen::VectorXd lam = skew_adjoint_spectrum(d, &v);
  const double top = lam.cwiseAbs().maxCoeff();
  Eigen::VectorXcd sgn(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    if (std::abs(lam(j)) <= tol * std::max(top, 1.0))
      throw SingularOperator("polarization_j: eigenvalue at zero");
    sgn(j) = kI * (lam(j) > 0.0 ? 1.0 : -1.0);
  }
  return v * sgn.asDiagonal() * v.adjoint();
}

std::pair<double, double> finite_hs_bound(const Eigen::MatrixXcd& d,
                                          const Eigen::MatrixXcd& q,
                                          double tol) {
  const Eigen::VectorXd l1 = skew_adjoint_spectrum(d, nullptr);
  const Eigen::VectorXd l2 =
      skew_adjoint_spectrum(Eigen::MatrixXcd(d + q), nullptr);
  const double gap = std::min(l1.cwiseAbs().minCoeff(),
                              l2.cwiseAbs().minCoeff());
  const double top =
      std::max(l1.cwiseAbs().maxCoeff(), l2.cwiseAbs().maxCoeff());
  if (gap <= tol * std::max(top, 1.0))
    throw SingularOperator("finite_hs_bound: spectrum touches zero");
  const double lhs =
      (polarization_j(Eigen::MatrixXcd(d + q), tol) - polarization_j(d, tol))
          .norm();
  return {lhs, q.norm() / gap};
}

double integral_representation_residual(const Eigen::MatrixXcd& d,
                                        double tol) {
  const Eigen::Index n = d.rows();
  const Eigen::MatrixXcd j_exact = polarization_j(d, tol);
  const Eigen::MatrixXcd d2 = d * d;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  // -(1/pi) int_0^inf (R_t + R_{-t}) dt with R_t + R_{-t} = 2 D (D^2 - t^2)^{-1};
  // substitute t = tan(theta) and use composite Simpson on [0, pi/2].
  auto integrand = [&](double theta) -> Eigen::MatrixXcd {
    if (theta >= kPi / 2.0) return Eigen::MatrixXcd(-2.0 * d);
    const double t = std::tan(theta);
    const double sec2 = 1.0 + t * t;
    return Eigen::MatrixXcd(
        2.0 * sec2 * (d * (d2 - (t * t) * id).partialPivLu().inverse()));
  };
  const int m = 2048;  // even
  const double hh = (kPi / 2.0) / m;
  Eigen::MatrixXcd acc = integrand(0.0) + integrand(kPi / 2.0);
  for (int k = 1; k < m; ++k)
    acc += (k % 2 == 1 ? 4.0 : 2.0) * integrand(k * hh);
  const Eigen::MatrixXcd j_quad = (-1.0 / kPi) * (hh / 3.0) * acc;
  return (j_quad - j_exact).norm();
}

}  // namespace lagdirac
